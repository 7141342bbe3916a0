//! Minimal dense linear algebra: Householder least squares and a cyclic
//! Jacobi eigensolver for small symmetric matrices. The model matrices here
//! are at most a few dozen columns wide, so simple textbook routines are both
//! fast enough and easy to audit.

use crate::util::Matrix;

/// Result of a least-squares solve.
pub struct LsqFit {
    pub coefs: Vec<f64>,
    /// True when the design matrix was numerically rank deficient and the
    /// minimum-norm solution was substituted.
    pub rank_deficient: bool,
}

/// Solves `min ||X b - y||_2` for `b` via Householder QR. On numerical rank
/// deficiency it falls back to the minimum-norm solution computed from the
/// eigendecomposition of `X^T X`.
pub fn lstsq(x: &Matrix, y: &[f64]) -> LsqFit {
    let n = x.rows();
    let p = x.cols();
    assert_eq!(y.len(), n, "row count mismatch");
    assert!(n >= p, "underdetermined system: {n} rows, {p} cols");

    // Working copies; the factorization overwrites both.
    let mut a = x.clone();
    let mut b = y.to_vec();

    let mut col_scale: f64 = 0.0;
    for i in 0..n {
        for &v in a.row(i) {
            col_scale = col_scale.max(v.abs());
        }
    }
    if col_scale == 0.0 {
        // All-zero design: minimum-norm solution is all zeros.
        return LsqFit { coefs: vec![0.0; p], rank_deficient: true };
    }

    let mut deficient = false;
    let mut v = vec![0.0; n];
    for j in 0..p {
        // Householder vector for column j, rows j..n.
        let mut norm_sq = 0.0;
        for i in j..n {
            let t = a.get(i, j);
            norm_sq += t * t;
        }
        let norm = norm_sq.sqrt();
        if norm == 0.0 {
            deficient = true;
            continue;
        }
        let pivot = a.get(j, j);
        let alpha = if pivot >= 0.0 { -norm } else { norm };
        let mut vnorm_sq = 0.0;
        for i in j..n {
            let t = if i == j { a.get(i, j) - alpha } else { a.get(i, j) };
            v[i] = t;
            vnorm_sq += t * t;
        }
        if vnorm_sq == 0.0 {
            deficient = true;
            continue;
        }
        // Apply H = I - 2 v v^T / (v^T v) to the trailing columns and to b.
        for k in j..p {
            let mut dot = 0.0;
            for i in j..n {
                dot += v[i] * a.get(i, k);
            }
            let s = 2.0 * dot / vnorm_sq;
            for i in j..n {
                let t = a.get(i, k) - s * v[i];
                a.set(i, k, t);
            }
        }
        let mut dot = 0.0;
        for i in j..n {
            dot += v[i] * b[i];
        }
        let s = 2.0 * dot / vnorm_sq;
        for i in j..n {
            b[i] -= s * v[i];
        }
    }

    // Rank check on the diagonal of R.
    let mut max_diag: f64 = 0.0;
    for j in 0..p {
        max_diag = max_diag.max(a.get(j, j).abs());
    }
    let tol = max_diag * (n.max(p) as f64) * f64::EPSILON;
    for j in 0..p {
        if a.get(j, j).abs() <= tol {
            deficient = true;
        }
    }

    if deficient {
        return LsqFit { coefs: min_norm_via_normal_eq(x, y), rank_deficient: true };
    }

    // Back substitution on R b = Q^T y.
    let mut coefs = vec![0.0; p];
    for j in (0..p).rev() {
        let mut acc = b[j];
        for k in j + 1..p {
            acc -= a.get(j, k) * coefs[k];
        }
        coefs[j] = acc / a.get(j, j);
    }
    LsqFit { coefs, rank_deficient: false }
}

/// Minimum-norm least-squares solution via the pseudo-inverse of `X^T X`.
fn min_norm_via_normal_eq(x: &Matrix, y: &[f64]) -> Vec<f64> {
    let p = x.cols();
    let mut gram = Matrix::zeros(p, p);
    for i in 0..x.rows() {
        let row = x.row(i);
        for a in 0..p {
            for b in a..p {
                let t = gram.get(a, b) + row[a] * row[b];
                gram.set(a, b, t);
            }
        }
    }
    for a in 0..p {
        for b in 0..a {
            gram.set(a, b, gram.get(b, a));
        }
    }
    let xty = x.mat_vec_t(y);
    let (eigvals, eigvecs) = jacobi_eigen(&gram);
    let lmax = eigvals.iter().cloned().fold(0.0f64, f64::max);
    let tol = lmax * (p as f64) * f64::EPSILON;
    // b = V diag(1/lambda_i) V^T (X^T y), dropping tiny eigenvalues.
    let mut proj = vec![0.0; p];
    for (k, &lam) in eigvals.iter().enumerate() {
        if lam <= tol {
            continue;
        }
        let mut dot = 0.0;
        for i in 0..p {
            dot += eigvecs.get(i, k) * xty[i];
        }
        proj[k] = dot / lam;
    }
    let mut coefs = vec![0.0; p];
    for i in 0..p {
        let mut acc = 0.0;
        for k in 0..p {
            acc += eigvecs.get(i, k) * proj[k];
        }
        coefs[i] = acc;
    }
    coefs
}

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
/// Returns eigenvalues in descending order with matching eigenvector columns.
pub fn jacobi_eigen(m: &Matrix) -> (Vec<f64>, Matrix) {
    let n = m.rows();
    assert_eq!(n, m.cols(), "matrix must be square");
    let mut a = m.clone();
    let mut v = Matrix::zeros(n, n);
    for i in 0..n {
        v.set(i, i, 1.0);
    }

    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                off += a.get(i, j).abs();
            }
        }
        if off == 0.0 {
            break;
        }
        let mut scale = 0.0f64;
        for i in 0..n {
            scale = scale.max(a.get(i, i).abs());
        }
        if off <= scale * 1e-15 * (n * n) as f64 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let app = a.get(p, p);
                let aqq = a.get(q, q);
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Rotate rows/columns p and q of `a`.
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, c * akp - s * akq);
                    a.set(k, q, s * akp + c * akq);
                }
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, c * apk - s * aqk);
                    a.set(q, k, s * apk + c * aqk);
                }
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, c * vkp - s * vkq);
                    v.set(k, q, s * vkp + c * vkq);
                }
            }
        }
    }

    let mut pairs: Vec<(f64, usize)> = (0..n).map(|i| (a.get(i, i), i)).collect();
    pairs.sort_by(|x, y| y.0.partial_cmp(&x.0).expect("non-finite eigenvalue"));
    let eigvals: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let mut vecs = Matrix::zeros(n, n);
    for (newcol, &(_, oldcol)) in pairs.iter().enumerate() {
        for i in 0..n {
            vecs.set(i, newcol, v.get(i, oldcol));
        }
    }
    (eigvals, vecs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_linear_fit_recovers_coefficients() {
        // y = 3 + 2 x on five points, intercept column first.
        let x = Matrix::from_rows(&[
            vec![1.0, 0.0],
            vec![1.0, 1.0],
            vec![1.0, 2.0],
            vec![1.0, 3.0],
            vec![1.0, 4.0],
        ]);
        let y = [3.0, 5.0, 7.0, 9.0, 11.0];
        let fit = lstsq(&x, &y);
        assert!(!fit.rank_deficient);
        assert!((fit.coefs[0] - 3.0).abs() < 1e-12);
        assert!((fit.coefs[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rank_deficient_design_yields_min_norm_solution() {
        // Two identical predictor columns: solutions b1 + b2 = 2 form a line;
        // the minimum-norm representative splits the weight evenly.
        let x = Matrix::from_rows(&[
            vec![1.0, 1.0],
            vec![2.0, 2.0],
            vec![3.0, 3.0],
        ]);
        let y = [2.0, 4.0, 6.0];
        let fit = lstsq(&x, &y);
        assert!(fit.rank_deficient);
        assert!((fit.coefs[0] - 1.0).abs() < 1e-9, "{:?}", fit.coefs);
        assert!((fit.coefs[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn jacobi_matches_known_spectrum() {
        // [[2,1],[1,2]] has eigenvalues 3 and 1.
        let m = Matrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]);
        let (vals, vecs) = jacobi_eigen(&m);
        assert!((vals[0] - 3.0).abs() < 1e-12);
        assert!((vals[1] - 1.0).abs() < 1e-12);
        // Eigenvector for 3 is (1,1)/sqrt(2) up to sign.
        let ratio = vecs.get(0, 0) / vecs.get(1, 0);
        assert!((ratio - 1.0).abs() < 1e-9);
    }

    #[test]
    fn lstsq_agrees_with_hand_solved_normal_equations() {
        // Small overdetermined system solved by hand via 2x2 normal equations.
        let x = Matrix::from_rows(&[
            vec![1.0, 1.0],
            vec![1.0, 2.0],
            vec![1.0, 3.0],
            vec![1.0, 4.0],
        ]);
        let y = [1.1, 1.9, 3.2, 3.8];
        // X^T X = [[4, 10], [10, 30]], X^T y = [10, 29.7]
        // det = 20; b = ([30, -10; -10, 4] X^T y) / 20
        let b0 = (30.0 * 10.0 - 10.0 * 29.7) / 20.0;
        let b1 = (-10.0 * 10.0 + 4.0 * 29.7) / 20.0;
        let fit = lstsq(&x, &y);
        assert!((fit.coefs[0] - b0).abs() < 1e-10);
        assert!((fit.coefs[1] - b1).abs() < 1e-10);
    }
}
