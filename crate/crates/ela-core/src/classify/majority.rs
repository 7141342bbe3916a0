//! Median-distance voting classifier.
//!
//! Training reduces each (feature, class) cell to the median of its training
//! values. To classify a vector ζ, the model computes per class the median
//! over features of |ζ_i − M(i, class)| and outputs the class minimizing
//! that median distance.

use std::fmt;

use crate::error::{CoreError, Result};
use crate::util::{median, Matrix};

#[derive(Clone, Debug, PartialEq)]
pub struct MjModel {
    /// Class labels, ascending; column `j` of `medians` belongs to
    /// `labels[j]`.
    labels: Vec<u8>,
    /// k × classes matrix of per-feature, per-class training medians.
    medians: Matrix,
}

impl MjModel {
    /// Computes the median table from training rows. Every class must
    /// contribute at least one row; even-sized cells take the mean of the
    /// two central values.
    pub fn train(data: &[Vec<f64>], labels: &[u8]) -> Result<MjModel> {
        if data.is_empty() {
            return Err(CoreError::invalid("no training rows"));
        }
        if data.len() != labels.len() {
            return Err(CoreError::invalid("row/label count mismatch"));
        }
        let k = data[0].len();
        if k == 0 || data.iter().any(|r| r.len() != k) {
            return Err(CoreError::invalid("training rows must share a positive width"));
        }
        let mut classes: Vec<u8> = labels.to_vec();
        classes.sort_unstable();
        classes.dedup();

        let mut medians = Matrix::zeros(k, classes.len());
        let mut cell = Vec::new();
        for (j, &class) in classes.iter().enumerate() {
            for i in 0..k {
                cell.clear();
                cell.extend(
                    data.iter()
                        .zip(labels)
                        .filter(|(_, &l)| l == class)
                        .map(|(row, _)| row[i]),
                );
                // Non-empty by construction: `class` came from `labels`.
                medians.set(i, j, median(&cell));
            }
        }
        Ok(MjModel {
            labels: classes,
            medians,
        })
    }

    /// Builds a model directly from a median table (`k × labels.len()`),
    /// e.g. for inspection or worked examples.
    pub fn from_medians(labels: Vec<u8>, medians: Matrix) -> Result<MjModel> {
        if labels.is_empty() || medians.cols() != labels.len() || medians.rows() == 0 {
            return Err(CoreError::invalid("median table shape mismatch"));
        }
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted != labels {
            return Err(CoreError::invalid("labels must be ascending and distinct"));
        }
        Ok(MjModel { labels, medians })
    }

    pub fn feature_count(&self) -> usize {
        self.medians.rows()
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    /// Per-class median of the absolute per-feature distances to the class
    /// medians, in label order.
    pub fn median_distances(&self, row: &[f64]) -> Vec<f64> {
        assert_eq!(row.len(), self.medians.rows(), "feature count mismatch");
        let mut dist = vec![0.0; self.medians.rows()];
        (0..self.labels.len())
            .map(|j| {
                for (i, d) in dist.iter_mut().enumerate() {
                    *d = (row[i] - self.medians.get(i, j)).abs();
                }
                median(&dist)
            })
            .collect()
    }

    /// Class with the smallest median distance; ties resolve to the smaller
    /// label (labels are stored ascending).
    pub fn predict(&self, row: &[f64]) -> u8 {
        let distances = self.median_distances(row);
        let mut best = 0;
        for j in 1..distances.len() {
            if distances[j] < distances[best] {
                best = j;
            }
        }
        self.labels[best]
    }
}

impl fmt::Display for MjModel {
    /// Renders the median table, one row per feature, one column per class.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "class    ")?;
        for l in &self.labels {
            write!(f, " {l:>8}")?;
        }
        writeln!(f)?;
        for i in 0..self.medians.rows() {
            write!(f, "feature {i}")?;
            for j in 0..self.labels.len() {
                write!(f, " {:>8.4}", self.medians.get(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
