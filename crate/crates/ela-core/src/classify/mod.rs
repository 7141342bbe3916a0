//! Three interchangeable multi-class classifiers over feature vectors:
//! median-distance voting, a CART decision tree, and K-nearest neighbors.
//!
//! All tie-breaking (vote ties, argmin ties, split ties, distance ties)
//! resolves toward the smaller index or label so that training and
//! prediction are fully deterministic.

mod knn;
mod majority;
mod tree;

pub use knn::KnnModel;
pub use majority::MjModel;
pub use tree::TreeModel;

use crate::error::{CoreError, Result};

/// Classifier selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassifierKind {
    MajorityJudgment,
    DecisionTree,
    Knn,
}

impl ClassifierKind {
    pub const ALL: [ClassifierKind; 3] = [
        ClassifierKind::MajorityJudgment,
        ClassifierKind::DecisionTree,
        ClassifierKind::Knn,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClassifierKind::MajorityJudgment => "mj",
            ClassifierKind::DecisionTree => "dt",
            ClassifierKind::Knn => "knn",
        }
    }
}

impl std::fmt::Display for ClassifierKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ClassifierKind {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self> {
        ClassifierKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| CoreError::invalid(format!("unknown classifier {s:?}")))
    }
}

/// A trained model of any supported kind.
#[derive(Clone, Debug)]
pub enum Model {
    MajorityJudgment(MjModel),
    DecisionTree(TreeModel),
    Knn(KnnModel),
}

impl Model {
    /// Trains a model of the requested kind on `data` (one row per training
    /// example) with class `labels`. `knn_k` only affects the KNN model.
    pub fn train(
        kind: ClassifierKind,
        data: &[Vec<f64>],
        labels: &[u8],
        knn_k: usize,
    ) -> Result<Model> {
        Ok(match kind {
            ClassifierKind::MajorityJudgment => {
                Model::MajorityJudgment(MjModel::train(data, labels)?)
            }
            ClassifierKind::DecisionTree => Model::DecisionTree(TreeModel::train(data, labels)?),
            ClassifierKind::Knn => Model::Knn(KnnModel::train(data, labels, knn_k)?),
        })
    }

    pub fn predict(&self, row: &[f64]) -> u8 {
        match self {
            Model::MajorityJudgment(m) => m.predict(row),
            Model::DecisionTree(m) => m.predict(row),
            Model::Knn(m) => m.predict(row),
        }
    }
}

/// Majority vote over labels; ties resolve to the smallest label. Panics on
/// an empty slice.
pub(crate) fn majority_label(labels: &[u8]) -> u8 {
    let mut counts = [0u32; 256];
    for &l in labels {
        counts[l as usize] += 1;
    }
    let mut best = 0usize;
    for l in 1..256 {
        if counts[l] > counts[best] {
            best = l;
        }
    }
    assert!(counts[best] > 0, "majority of empty label set");
    best as u8
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kind_names_round_trip() {
        for kind in ClassifierKind::ALL {
            assert_eq!(kind.as_str().parse::<ClassifierKind>().unwrap(), kind);
        }
        assert!("forest".parse::<ClassifierKind>().is_err());
    }

    #[test]
    fn majority_prefers_smaller_label_on_ties() {
        assert_eq!(majority_label(&[3, 1, 3, 1]), 1);
        assert_eq!(majority_label(&[2, 2, 5]), 2);
        assert_eq!(majority_label(&[9]), 9);
    }

    #[test]
    fn dispatch_trains_each_kind() {
        let data = vec![vec![0.0], vec![0.1], vec![1.0], vec![1.1], vec![1.2]];
        let labels = vec![1, 1, 2, 2, 2];
        for kind in ClassifierKind::ALL {
            let model = Model::train(kind, &data, &labels, 3).unwrap();
            assert_eq!(model.predict(&[0.05]), 1, "{kind}");
            assert_eq!(model.predict(&[1.1]), 2, "{kind}");
        }
    }
}
