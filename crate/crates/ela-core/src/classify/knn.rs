//! K-nearest-neighbors classifier with plurality voting.
//!
//! Neighbors are ranked by squared Euclidean distance; distance ties break
//! toward the lower training-row index, and vote ties toward the smallest
//! label, so prediction is fully deterministic.

use crate::error::{CoreError, Result};

use super::majority_label;

#[derive(Clone, Debug, PartialEq)]
pub struct KnnModel {
    data: Vec<Vec<f64>>,
    labels: Vec<u8>,
    k: usize,
}

impl KnnModel {
    pub fn train(data: &[Vec<f64>], labels: &[u8], k: usize) -> Result<KnnModel> {
        if data.is_empty() {
            return Err(CoreError::invalid("no training rows"));
        }
        if data.len() != labels.len() {
            return Err(CoreError::invalid("row/label count mismatch"));
        }
        let width = data[0].len();
        if width == 0 || data.iter().any(|r| r.len() != width) {
            return Err(CoreError::invalid("training rows must share a positive width"));
        }
        if k == 0 || k > data.len() {
            return Err(CoreError::invalid(format!(
                "neighbor count {k} outside 1..={}",
                data.len()
            )));
        }
        Ok(KnnModel {
            data: data.to_vec(),
            labels: labels.to_vec(),
            k,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn predict(&self, row: &[f64]) -> u8 {
        let mut ranked: Vec<(f64, usize)> = self
            .data
            .iter()
            .enumerate()
            .map(|(i, train)| (crate::util::dist_sq(row, train), i))
            .collect();
        ranked.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let votes: Vec<u8> = ranked[..self.k].iter().map(|&(_, i)| self.labels[i]).collect();
        majority_label(&votes)
    }
}
