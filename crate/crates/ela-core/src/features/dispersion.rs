//! Dispersion of the best-performing points relative to the whole design.

use crate::error::{CoreError, Result};
use crate::util::{dist, Matrix};

/// Ratio of the mean pairwise distance among the best 2% of points (by
/// fitness, ties by lower row index) to the mean pairwise distance among all
/// points. The best subset has `m = ceil(0.02 n)` points; `m >= 2` required.
pub fn dispersion(x: &Matrix, y: &[f64]) -> Result<f64> {
    let n = x.rows();
    assert_eq!(y.len(), n);
    let m = (0.02 * n as f64).ceil() as usize;
    if m < 2 {
        return Err(CoreError::invalid(format!(
            "best-2% subset of a {n}-point design has fewer than 2 points"
        )));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| y[a].total_cmp(&y[b]).then(a.cmp(&b)));

    let best = mean_pairwise(x, &order[..m]);
    let all: Vec<usize> = (0..n).collect();
    let overall = mean_pairwise(x, &all);
    if overall == 0.0 {
        return Err(CoreError::invalid("all design points coincide"));
    }
    Ok(best / overall)
}

fn mean_pairwise(x: &Matrix, idx: &[usize]) -> f64 {
    let k = idx.len();
    let mut acc = 0.0;
    for a in 0..k {
        let ra = x.row(idx[a]);
        for &b in &idx[a + 1..] {
            acc += dist(ra, x.row(b));
        }
    }
    acc / (k * (k - 1) / 2) as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::tests::random_sample;

    /// Independent re-derivation: explicit sort, explicit double loops.
    fn brute_force(x: &Matrix, y: &[f64]) -> f64 {
        let n = x.rows();
        let m = (0.02 * n as f64).ceil() as usize;
        let mut keyed: Vec<(f64, usize)> = y.iter().cloned().zip(0..n).collect();
        keyed.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let best: Vec<usize> = keyed[..m].iter().map(|&(_, i)| i).collect();

        let mean_over = |rows: &[usize]| {
            let mut total = 0.0;
            let mut count = 0usize;
            for &i in rows {
                for &j in rows {
                    if i < j {
                        total += dist(x.row(i), x.row(j));
                        count += 1;
                    }
                }
            }
            total / count as f64
        };
        let all: Vec<usize> = (0..n).collect();
        mean_over(&best) / mean_over(&all)
    }

    #[test]
    fn agrees_with_brute_force_on_random_designs() {
        for seed in 0..3 {
            let (x, y) = random_sample(seed, 200, 4);
            let got = dispersion(&x, &y).unwrap();
            let want = brute_force(&x, &y);
            assert!((got - want).abs() < 1e-10, "seed {seed}: {got} vs {want}");
        }
    }

    #[test]
    fn coincident_best_points_give_zero() {
        let (mut x, mut y) = random_sample(9, 100, 2);
        // Rows 0 and 1 coincide and hold the two smallest fitness values;
        // m = ceil(0.02 * 100) = 2.
        x.set(1, 0, x.get(0, 0));
        x.set(1, 1, x.get(0, 1));
        y[0] = -1e6;
        y[1] = -1e6;
        assert_eq!(dispersion(&x, &y).unwrap(), 0.0);
    }

    #[test]
    fn constant_fitness_selects_by_row_index() {
        let (x, _) = random_sample(10, 100, 2);
        let y = vec![1.0; 100];
        // Ties resolve to rows 0 and 1.
        let expected = dist(x.row(0), x.row(1));
        let got = dispersion(&x, &y).unwrap();
        let all: Vec<usize> = (0..100).collect();
        let overall = mean_pairwise(&x, &all);
        assert!((got - expected / overall).abs() < 1e-12);
    }

    #[test]
    fn tiny_designs_are_rejected() {
        let (x, y) = random_sample(11, 40, 2);
        assert!(dispersion(&x, &y).is_err()); // m = ceil(0.8) = 1
        let (x, y) = random_sample(11, 51, 2);
        assert!(dispersion(&x, &y).is_ok()); // m = ceil(1.02) = 2
    }
}
