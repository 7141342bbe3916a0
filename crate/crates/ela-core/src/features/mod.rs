//! Landscape features computed from a sampled design `(X, y)`.
//!
//! The feature vocabulary is fixed: ten named statistics, always reported in
//! the canonical order `disp, skew, lr2, int, max, eps_s, eps_ratio, nbc,
//! pca, qr2`. Each feature is a pure function of the sample (and, for the
//! information-content pair, of the documented grid and tour options), so
//! identical samples always produce identical vectors.

mod dispersion;
mod fits;
mod info_content;
mod nbc;
mod pca;

pub use dispersion::dispersion;
pub use fits::{linear_fit_features, quadratic_r2, LinearFit};
pub use info_content::{ic_curve, ic_features, IcCurve, IcFeatures};
pub use nbc::{nearest_better_correlation, nearest_better_neighbors};
pub use pca::pca_first_component;

use crate::error::{CoreError, Result};
use crate::util::Matrix;

/// The ten feature names, in canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FeatureName {
    /// Mean pairwise distance of the best 2% of points over that of all points.
    Disp,
    /// Skewness of the fitness distribution.
    Skew,
    /// Adjusted R² of a linear fit.
    Lr2,
    /// Intercept of the linear fit.
    Int,
    /// Largest absolute non-intercept coefficient of the linear fit.
    Max,
    /// Settling sensitivity: log₁₀ of the smallest slope dead-zone at which
    /// the symbol-pair entropy falls below 0.05.
    EpsS,
    /// Half partial information sensitivity: log₁₀ of the largest dead-zone
    /// keeping partial information above half its zero-dead-zone value.
    EpsRatio,
    /// Correlation between fitness and indegree in the nearest-better graph.
    Nbc,
    /// Variance share of the first principal component of `[X | y]`.
    Pca,
    /// Adjusted R² of a pure quadratic fit (no interactions).
    Qr2,
}

impl FeatureName {
    pub const ALL: [FeatureName; 10] = [
        FeatureName::Disp,
        FeatureName::Skew,
        FeatureName::Lr2,
        FeatureName::Int,
        FeatureName::Max,
        FeatureName::EpsS,
        FeatureName::EpsRatio,
        FeatureName::Nbc,
        FeatureName::Pca,
        FeatureName::Qr2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FeatureName::Disp => "disp",
            FeatureName::Skew => "skew",
            FeatureName::Lr2 => "lr2",
            FeatureName::Int => "int",
            FeatureName::Max => "max",
            FeatureName::EpsS => "eps_s",
            FeatureName::EpsRatio => "eps_ratio",
            FeatureName::Nbc => "nbc",
            FeatureName::Pca => "pca",
            FeatureName::Qr2 => "qr2",
        }
    }

    /// Position in the canonical order.
    pub fn index(self) -> usize {
        Self::ALL.iter().position(|&f| f == self).unwrap()
    }
}

impl std::fmt::Display for FeatureName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for FeatureName {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self> {
        FeatureName::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| CoreError::invalid(format!("unknown feature name {s:?}")))
    }
}

/// A sampled design: `n` search points with their fitness values.
#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    x: Matrix,
    y: Vec<f64>,
}

impl Sample {
    /// Validates and wraps a design. Requires `n >= 2d + 2` rows (enough to
    /// fit the quadratic model with one residual degree of freedom) and
    /// finite values throughout.
    pub fn new(x: Matrix, y: Vec<f64>) -> Result<Self> {
        let (n, d) = (x.rows(), x.cols());
        if d == 0 {
            return Err(CoreError::invalid("sample has zero columns"));
        }
        if y.len() != n {
            return Err(CoreError::invalid(format!(
                "{} fitness values for {n} points",
                y.len()
            )));
        }
        if n < 2 * d + 2 {
            return Err(CoreError::invalid(format!(
                "{n} points insufficient for dimension {d}; need at least {}",
                2 * d + 2
            )));
        }
        for i in 0..n {
            if x.row(i).iter().any(|v| !v.is_finite()) {
                return Err(CoreError::invalid(format!("non-finite coordinate in row {i}")));
            }
        }
        if let Some(i) = y.iter().position(|v| !v.is_finite()) {
            return Err(CoreError::invalid(format!("non-finite fitness value at row {i}")));
        }
        Ok(Sample { x, y })
    }

    pub fn x(&self) -> &Matrix {
        &self.x
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn len(&self) -> usize {
        self.x.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.x.rows() == 0
    }

    pub fn dimension(&self) -> usize {
        self.x.cols()
    }
}

/// Dead-zone grid for the information-content features: `count` values of
/// `10^t` with `t` equally spaced in `[min_exp, max_exp]`, preceded by the
/// zero dead-zone.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IcGrid {
    pub min_exp: f64,
    pub max_exp: f64,
    pub count: usize,
}

impl Default for IcGrid {
    fn default() -> Self {
        IcGrid {
            min_exp: -5.0,
            max_exp: 15.0,
            count: 1000,
        }
    }
}

impl IcGrid {
    /// The grid exponents, low to high.
    pub fn exponents(&self) -> Vec<f64> {
        let span = self.max_exp - self.min_exp;
        (0..self.count)
            .map(|k| self.min_exp + span * k as f64 / (self.count - 1) as f64)
            .collect()
    }
}

/// Knobs that alter a feature's definition. Everything here is recorded in
/// experiment metadata so a vector is interpretable after the fact.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FeatureOptions {
    /// When true, the principal-component feature uses the search points
    /// only; by default the fitness column is part of the analyzed matrix.
    pub pca_design_only: bool,
    pub ic_grid: IcGrid,
    /// Starting point of the nearest-neighbor tour.
    pub ic_start_index: usize,
}

impl Default for FeatureOptions {
    fn default() -> Self {
        FeatureOptions {
            pca_design_only: false,
            ic_grid: IcGrid::default(),
            ic_start_index: 0,
        }
    }
}

/// One computed feature vector plus any degeneracy notes collected along the
/// way (zero-variance fallbacks, rank-deficient fits, grid-boundary clamps).
#[derive(Clone, Debug, PartialEq)]
pub struct FeatureValues {
    values: [f64; 10],
    pub diagnostics: Vec<String>,
}

impl FeatureValues {
    pub fn get(&self, name: FeatureName) -> f64 {
        self.values[name.index()]
    }

    /// Values in canonical order.
    pub fn as_array(&self) -> &[f64; 10] {
        &self.values
    }
}

/// Sample skewness of `y` using the moment estimator `m₃ / m₂^{3/2}` with
/// `1/n`-normalized central moments. Zero variance yields `(0.0, true)`.
pub fn skewness(y: &[f64]) -> Result<(f64, bool)> {
    let n = y.len();
    if n < 3 {
        return Err(CoreError::invalid(format!(
            "skewness needs at least 3 values, got {n}"
        )));
    }
    let nf = n as f64;
    let mean = y.iter().sum::<f64>() / nf;
    let mut m2 = 0.0;
    let mut m3 = 0.0;
    for &v in y {
        let d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
    }
    m2 /= nf;
    m3 /= nf;
    if m2 == 0.0 {
        return Ok((0.0, true));
    }
    Ok((m3 / m2.powf(1.5), false))
}

/// Computes all ten features for one sample, in canonical order.
pub fn compute_features(sample: &Sample, opts: &FeatureOptions) -> Result<FeatureValues> {
    let x = sample.x();
    let y = sample.y();
    let mut diagnostics = Vec::new();

    let disp = dispersion(x, y).map_err(|e| attach(FeatureName::Disp, e))?;

    let (skew, degenerate) = skewness(y).map_err(|e| attach(FeatureName::Skew, e))?;
    if degenerate {
        diagnostics.push("skew: zero fitness variance, value set to 0".to_string());
    }

    let lin = linear_fit_features(x, y).map_err(|e| attach(FeatureName::Lr2, e))?;
    if lin.rank_deficient {
        diagnostics.push("lr2: rank-deficient linear design, least-norm fit".to_string());
    }

    let ic = ic_features(x, y, opts).map_err(|e| attach(FeatureName::EpsS, e))?;
    diagnostics.extend(ic.diagnostics.iter().cloned());

    let (nbc, degenerate) = nearest_better_correlation(x, y);
    if degenerate {
        diagnostics.push("nbc: degenerate fitness or indegree variance, value set to 0".to_string());
    }

    let pca = pca_first_component(x, y, opts.pca_design_only)
        .map_err(|e| attach(FeatureName::Pca, e))?;

    let (qr2, deficient) = quadratic_r2(x, y).map_err(|e| attach(FeatureName::Qr2, e))?;
    if deficient {
        diagnostics.push("qr2: rank-deficient quadratic design, least-norm fit".to_string());
    }

    Ok(FeatureValues {
        values: [
            disp,
            skew,
            lin.adj_r2,
            lin.intercept,
            lin.max_abs_coefficient,
            ic.eps_s,
            ic.eps_ratio,
            nbc,
            pca,
            qr2,
        ],
        diagnostics,
    })
}

fn attach(name: FeatureName, err: CoreError) -> CoreError {
    CoreError::invalid(format!("{name}: {err}"))
}
