//! CART-style decision tree, grown unpruned.
//!
//! Splits minimize weighted Gini impurity over candidate thresholds at the
//! midpoints of consecutive distinct sorted feature values. A node keeps
//! splitting while it is impure and any valid split exists — including
//! splits with zero immediate impurity decrease, which are required to
//! shatter patterns (such as XOR) whose first cut alone separates nothing.
//! Ties between candidate splits resolve to the lower feature index, then
//! the lower threshold; prediction sends values `<=` threshold to the left.

use std::fmt;

use crate::error::{CoreError, Result};

use super::majority_label;

#[derive(Clone, Debug, PartialEq)]
enum Node {
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
    Leaf {
        label: u8,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct TreeModel {
    nodes: Vec<Node>,
}

struct Builder<'a> {
    data: &'a [Vec<f64>],
    labels: &'a [u8],
    features: usize,
    nodes: Vec<Node>,
}

impl TreeModel {
    pub fn train(data: &[Vec<f64>], labels: &[u8]) -> Result<TreeModel> {
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
        let mut builder = Builder {
            data,
            labels,
            features: k,
            nodes: Vec::new(),
        };
        let all: Vec<usize> = (0..data.len()).collect();
        builder.build(all);
        Ok(TreeModel {
            nodes: builder.nodes,
        })
    }

    pub fn predict(&self, row: &[f64]) -> u8 {
        let mut at = 0;
        loop {
            match &self.nodes[at] {
                Node::Leaf { label } => return *label,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    at = if row[*feature] <= *threshold {
                        *left
                    } else {
                        *right
                    };
                }
            }
        }
    }

    /// Number of nodes (splits + leaves).
    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    pub fn depth(&self) -> usize {
        fn walk(nodes: &[Node], at: usize) -> usize {
            match &nodes[at] {
                Node::Leaf { .. } => 1,
                Node::Split { left, right, .. } => 1 + walk(nodes, *left).max(walk(nodes, *right)),
            }
        }
        walk(&self.nodes, 0)
    }
}

/// Candidate split chosen for a node.
struct BestSplit {
    feature: usize,
    threshold: f64,
    /// Weighted Gini numerator; lower is better.
    score: f64,
}

impl Builder<'_> {
    /// Builds the subtree over `indices`, returning its node id.
    fn build(&mut self, indices: Vec<usize>) -> usize {
        if self.is_pure(&indices) {
            return self.push_leaf(&indices);
        }
        match self.best_split(&indices) {
            None => self.push_leaf(&indices),
            Some(split) => {
                let (mut left, mut right) = (Vec::new(), Vec::new());
                for &i in &indices {
                    if self.data[i][split.feature] <= split.threshold {
                        left.push(i);
                    } else {
                        right.push(i);
                    }
                }
                debug_assert!(!left.is_empty() && !right.is_empty());
                let id = self.nodes.len();
                self.nodes.push(Node::Leaf { label: 0 }); // placeholder
                let left_id = self.build(left);
                let right_id = self.build(right);
                self.nodes[id] = Node::Split {
                    feature: split.feature,
                    threshold: split.threshold,
                    left: left_id,
                    right: right_id,
                };
                id
            }
        }
    }

    fn is_pure(&self, indices: &[usize]) -> bool {
        let first = self.labels[indices[0]];
        indices.iter().all(|&i| self.labels[i] == first)
    }

    fn push_leaf(&mut self, indices: &[usize]) -> usize {
        let labels: Vec<u8> = indices.iter().map(|&i| self.labels[i]).collect();
        self.nodes.push(Node::Leaf {
            label: majority_label(&labels),
        });
        self.nodes.len() - 1
    }

    /// Lowest weighted-Gini split over all features and thresholds, or None
    /// when every feature is constant on this node. Strict improvement
    /// comparisons keep the first-found split on ties, which realizes the
    /// (feature index, threshold) preference order.
    fn best_split(&self, indices: &[usize]) -> Option<BestSplit> {
        let n = indices.len();
        let mut best: Option<BestSplit> = None;
        let mut keyed: Vec<(f64, u8)> = Vec::with_capacity(n);
        for feature in 0..self.features {
            keyed.clear();
            keyed.extend(
                indices
                    .iter()
                    .map(|&i| (self.data[i][feature], self.labels[i])),
            );
            keyed.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));

            // Sweep thresholds between consecutive distinct values,
            // maintaining left/right class counts and their squared sums.
            let mut left_counts = [0u32; 256];
            let mut right_counts = [0u32; 256];
            for &(_, l) in keyed.iter() {
                right_counts[l as usize] += 1;
            }
            let mut left_sq = 0.0f64;
            let mut right_sq: f64 = right_counts
                .iter()
                .map(|&c| (c as f64) * (c as f64))
                .sum();
            let mut n_left = 0usize;

            for i in 0..n - 1 {
                let (value, label) = keyed[i];
                let c = label as usize;
                left_sq += 2.0 * left_counts[c] as f64 + 1.0;
                right_sq -= 2.0 * right_counts[c] as f64 - 1.0;
                left_counts[c] += 1;
                right_counts[c] -= 1;
                n_left += 1;

                let next = keyed[i + 1].0;
                if next == value {
                    continue;
                }
                let n_right = n - n_left;
                // Weighted Gini, scaled by n: nL(1 − ΣpL²) + nR(1 − ΣpR²).
                let score =
                    n as f64 - left_sq / n_left as f64 - right_sq / n_right as f64;
                if best.as_ref().is_none_or(|b| score < b.score) {
                    best = Some(BestSplit {
                        feature,
                        threshold: (value + next) / 2.0,
                        score,
                    });
                }
            }
        }
        best
    }
}

impl fmt::Display for TreeModel {
    /// Indented text rendering of the tree structure.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn walk(
            nodes: &[Node],
            at: usize,
            depth: usize,
            f: &mut fmt::Formatter<'_>,
        ) -> fmt::Result {
            let pad = "  ".repeat(depth);
            match &nodes[at] {
                Node::Leaf { label } => writeln!(f, "{pad}=> {label}"),
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    writeln!(f, "{pad}x[{feature}] <= {threshold}")?;
                    walk(nodes, *left, depth + 1, f)?;
                    writeln!(f, "{pad}x[{feature}] >  {threshold}")?;
                    walk(nodes, *right, depth + 1, f)
                }
            }
        }
        walk(&self.nodes, 0, 0, f)
    }
}
