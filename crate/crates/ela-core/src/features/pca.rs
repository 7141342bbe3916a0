//! Share of total variance carried by the first principal component.

use crate::error::{CoreError, Result};
use crate::linalg::jacobi_eigen;
use crate::util::Matrix;

/// Proportion of total variance explained by the largest eigenvalue of the
/// sample covariance (1/(n−1) normalization) of the analyzed matrix. By
/// default that matrix is `[X | y]` — the design augmented with the fitness
/// column; `design_only` restricts it to `X`.
pub fn pca_first_component(x: &Matrix, y: &[f64], design_only: bool) -> Result<f64> {
    let n = x.rows();
    assert_eq!(y.len(), n);
    if n < 2 {
        return Err(CoreError::invalid("covariance needs at least 2 rows"));
    }
    let d = x.cols();
    let cols = if design_only { d } else { d + 1 };

    let mut means = vec![0.0; cols];
    for i in 0..n {
        for (j, m) in means.iter_mut().enumerate().take(d) {
            *m += x.get(i, j);
        }
        if !design_only {
            means[d] += y[i];
        }
    }
    for m in &mut means {
        *m /= n as f64;
    }

    let mut cov = Matrix::zeros(cols, cols);
    let mut dev = vec![0.0; cols];
    for i in 0..n {
        for j in 0..d {
            dev[j] = x.get(i, j) - means[j];
        }
        if !design_only {
            dev[d] = y[i] - means[d];
        }
        for a in 0..cols {
            let da = dev[a];
            for b in a..cols {
                let v = cov.get(a, b) + da * dev[b];
                cov.set(a, b, v);
            }
        }
    }
    let norm = (n - 1) as f64;
    for a in 0..cols {
        for b in a..cols {
            let v = cov.get(a, b) / norm;
            cov.set(a, b, v);
            cov.set(b, a, v);
        }
    }

    let trace: f64 = (0..cols).map(|j| cov.get(j, j)).sum();
    if trace <= 0.0 {
        return Err(CoreError::invalid("zero total variance"));
    }
    let (eigenvalues, _) = jacobi_eigen(&cov);
    Ok(eigenvalues[0] / trace)
}
