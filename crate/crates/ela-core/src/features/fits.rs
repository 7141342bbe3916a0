//! Linear- and quadratic-model features via least squares.

use crate::error::{CoreError, Result};
use crate::linalg;
use crate::util::Matrix;

/// Result of the linear-model fit behind the `lr2`, `int`, and `max`
/// features.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearFit {
    pub intercept: f64,
    pub coefficients: Vec<f64>,
    pub adj_r2: f64,
    /// Largest absolute value among the non-intercept coefficients.
    pub max_abs_coefficient: f64,
    pub rank_deficient: bool,
}

/// Least-squares fit of `y` against an explicit design matrix whose first
/// column is all ones. Returns the coefficient vector and the adjusted R²
/// `1 − (1−R²)(n−1)/(n−p−1)` with `p` the number of non-intercept predictors.
///
/// A constant `y` has no variance to explain; R² is defined as 0 there (the
/// adjusted value then goes negative). Rank-deficient designs are solved in
/// the least-norm sense and flagged.
pub fn fit_least_squares(design: &Matrix, y: &[f64]) -> Result<(Vec<f64>, f64, bool)> {
    let n = design.rows();
    let p_free = design.cols() - 1;
    if y.len() != n {
        return Err(CoreError::invalid(format!(
            "{} responses for {n} design rows",
            y.len()
        )));
    }
    if n < p_free + 2 {
        return Err(CoreError::invalid(format!(
            "{n} rows cannot support {p_free} predictors with a residual degree of freedom"
        )));
    }
    for i in 0..n {
        if design.get(i, 0) != 1.0 {
            return Err(CoreError::invalid("design matrix must start with an all-ones column"));
        }
    }

    let fit = linalg::lstsq(design, y);
    let predicted = design.mat_vec(&fit.coefs);

    let mean = y.iter().sum::<f64>() / n as f64;
    let mut ss_res = 0.0;
    let mut ss_tot = 0.0;
    for i in 0..n {
        let r = y[i] - predicted[i];
        ss_res += r * r;
        let t = y[i] - mean;
        ss_tot += t * t;
    }
    let r2 = if ss_tot == 0.0 { 0.0 } else { 1.0 - ss_res / ss_tot };
    let adj = 1.0 - (1.0 - r2) * (n as f64 - 1.0) / ((n - p_free) as f64 - 1.0);
    Ok((fit.coefs, adj, fit.rank_deficient))
}

/// Fits `y ~ 1 + x` and reports the adjusted R², the intercept, and the
/// largest absolute slope.
pub fn linear_fit_features(x: &Matrix, y: &[f64]) -> Result<LinearFit> {
    let (n, d) = (x.rows(), x.cols());
    let mut design = Matrix::zeros(n, d + 1);
    for i in 0..n {
        design.set(i, 0, 1.0);
        design.row_mut(i)[1..].copy_from_slice(x.row(i));
    }
    let (coefs, adj_r2, rank_deficient) = fit_least_squares(&design, y)?;
    let max_abs = coefs[1..].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    Ok(LinearFit {
        intercept: coefs[0],
        coefficients: coefs[1..].to_vec(),
        adj_r2,
        max_abs_coefficient: max_abs,
        rank_deficient,
    })
}

/// Fits the interaction-free quadratic model `y ~ 1 + Σ x_i + Σ x_i²` and
/// returns its adjusted R² (with `2d` predictors) plus the rank flag.
pub fn quadratic_r2(x: &Matrix, y: &[f64]) -> Result<(f64, bool)> {
    let (n, d) = (x.rows(), x.cols());
    let mut design = Matrix::zeros(n, 2 * d + 1);
    for i in 0..n {
        design.set(i, 0, 1.0);
        let row = x.row(i);
        for j in 0..d {
            design.set(i, 1 + j, row[j]);
            design.set(i, 1 + d + j, row[j] * row[j]);
        }
    }
    let (_, adj_r2, rank_deficient) = fit_least_squares(&design, y)?;
    Ok((adj_r2, rank_deficient))
}
