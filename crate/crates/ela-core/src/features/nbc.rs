//! Nearest-better graph: each point links to its closest strictly better
//! point; the indegree of a point counts how many others it attracts.

use crate::util::{dist_sq, pearson, Matrix};

/// For each point, the row index of its nearest strictly better point
/// (smallest Euclidean distance among `y_j < y_i`, ties to the lower
/// index), or `None` for points with no better point — in particular every
/// global best.
pub fn nearest_better_neighbors(x: &Matrix, y: &[f64]) -> Vec<Option<usize>> {
    let n = x.rows();
    assert_eq!(y.len(), n);
    (0..n)
        .map(|i| {
            let row = x.row(i);
            let mut best = f64::INFINITY;
            let mut best_j = None;
            for j in 0..n {
                if y[j] < y[i] {
                    let d = dist_sq(row, x.row(j));
                    // Strict comparison keeps the lowest index on ties.
                    if d < best {
                        best = d;
                        best_j = Some(j);
                    }
                }
            }
            best_j
        })
        .collect()
}

/// Pearson correlation between the fitness values and the nearest-better
/// indegrees. Degenerate variance on either side yields `(0.0, true)`.
pub fn nearest_better_correlation(x: &Matrix, y: &[f64]) -> (f64, bool) {
    let mut indegree = vec![0.0f64; x.rows()];
    for target in nearest_better_neighbors(x, y).into_iter().flatten() {
        indegree[target] += 1.0;
    }
    match pearson(y, &indegree) {
        Some(r) => (r, false),
        None => (0.0, true),
    }
}
