//! Information-content features: entropy and partial information of the
//! slope-sign sequence along a nearest-neighbor tour of the sample.

use crate::error::{CoreError, Result};
use crate::util::{dist, dist_sq, Matrix};

use super::FeatureOptions;

/// Entropy `H` and partial information `M` evaluated on a dead-zone grid.
/// `epsilons[0]` is conventionally the zero dead-zone anchoring `M(0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct IcCurve {
    pub epsilons: Vec<f64>,
    pub h: Vec<f64>,
    pub m: Vec<f64>,
}

/// The two sensitivity features extracted from an [`IcCurve`] on the
/// default log grid.
#[derive(Clone, Debug, PartialEq)]
pub struct IcFeatures {
    /// log₁₀ of the smallest dead-zone with `H(ε) < 0.05`.
    pub eps_s: f64,
    /// log₁₀ of the largest dead-zone with `M(ε) > 0.5·M(0)`.
    pub eps_ratio: f64,
    pub curve: IcCurve,
    pub diagnostics: Vec<String>,
}

/// Greedy nearest-neighbor tour: repeatedly visit the nearest unvisited
/// point, distance ties resolved toward the lower row index.
fn nn_tour(x: &Matrix, start: usize) -> Vec<usize> {
    let n = x.rows();
    let mut visited = vec![false; n];
    let mut tour = Vec::with_capacity(n);
    visited[start] = true;
    tour.push(start);
    let mut current = start;
    for _ in 1..n {
        let row = x.row(current);
        let mut best = f64::INFINITY;
        let mut best_j = usize::MAX;
        for (j, seen) in visited.iter().enumerate() {
            if !seen {
                let d = dist_sq(row, x.row(j));
                // Strict comparison keeps the lowest index on ties.
                if d < best {
                    best = d;
                    best_j = j;
                }
            }
        }
        visited[best_j] = true;
        tour.push(best_j);
        current = best_j;
    }
    tour
}

/// Fitness slopes along consecutive tour legs. Legs between coincident
/// points have no defined slope and are skipped; the count of skips is
/// returned for diagnostics.
fn tour_slopes(x: &Matrix, y: &[f64], tour: &[usize]) -> (Vec<f64>, usize) {
    let mut slopes = Vec::with_capacity(tour.len().saturating_sub(1));
    let mut skipped = 0;
    for w in tour.windows(2) {
        let d = dist(x.row(w[0]), x.row(w[1]));
        if d == 0.0 {
            skipped += 1;
        } else {
            slopes.push((y[w[1]] - y[w[0]]) / d);
        }
    }
    (slopes, skipped)
}

/// Entropy and partial information of one symbol sequence.
///
/// Symbols are `sign(δ)` with dead-zone `|δ| <= eps`. `H` is the entropy
/// (base 6) of the six ordered unequal consecutive symbol pairs; `M` is the
/// length of the symbol string after deleting zeros and collapsing runs,
/// divided by `denominator` (the number of tour legs).
fn curve_point(slopes: &[f64], eps: f64, denominator: usize) -> (f64, f64) {
    let mut counts = [[0usize; 3]; 3];
    let mut prev: Option<usize> = None;
    let mut collapsed = 0usize;
    let mut last_nonzero: Option<usize> = None;
    for &s in slopes {
        let sym = if s.abs() <= eps {
            1 // zero symbol
        } else if s > 0.0 {
            2
        } else {
            0
        };
        if let Some(p) = prev {
            counts[p][sym] += 1;
        }
        prev = Some(sym);
        if sym != 1 && last_nonzero != Some(sym) {
            collapsed += 1;
            last_nonzero = Some(sym);
        }
    }

    let pairs: usize = counts.iter().flatten().sum();
    let mut h = 0.0;
    if pairs > 0 {
        for a in 0..3 {
            for b in 0..3 {
                if a != b && counts[a][b] > 0 {
                    let p = counts[a][b] as f64 / pairs as f64;
                    h -= p * p.log(6.0);
                }
            }
        }
    }
    let m = collapsed as f64 / denominator as f64;
    (h, m)
}

fn validate(x: &Matrix, y: &[f64], start_index: usize) -> Result<()> {
    let n = x.rows();
    assert_eq!(y.len(), n);
    if n < 2 {
        return Err(CoreError::invalid("information content needs at least 2 points"));
    }
    if start_index >= n {
        return Err(CoreError::invalid(format!(
            "tour start {start_index} out of range for {n} points"
        )));
    }
    Ok(())
}

fn evaluate_grid(slopes: &[f64], denominator: usize, epsilons: &[f64]) -> IcCurve {
    let mut h = Vec::with_capacity(epsilons.len());
    let mut m = Vec::with_capacity(epsilons.len());
    for &eps in epsilons {
        let (hv, mv) = curve_point(slopes, eps, denominator);
        h.push(hv);
        m.push(mv);
    }
    IcCurve {
        epsilons: epsilons.to_vec(),
        h,
        m,
    }
}

/// Evaluates the information-content curve on an explicit dead-zone list
/// (non-negative, typically starting at 0). The tour starts at
/// `start_index`.
pub fn ic_curve(x: &Matrix, y: &[f64], start_index: usize, epsilons: &[f64]) -> Result<IcCurve> {
    validate(x, y, start_index)?;
    if let Some(e) = epsilons.iter().find(|e| !e.is_finite() || **e < 0.0) {
        return Err(CoreError::invalid(format!("invalid dead-zone {e}")));
    }
    let tour = nn_tour(x, start_index);
    let (slopes, _) = tour_slopes(x, y, &tour);
    Ok(evaluate_grid(&slopes, x.rows() - 1, epsilons))
}

/// Computes the settling sensitivity and the half partial information
/// sensitivity on the configured grid.
///
/// The grid pairs each positive dead-zone `10^t` with its exponent `t`, so
/// the reported log₁₀ values are grid exponents rather than round-tripped
/// logarithms. The zero dead-zone leads the grid to anchor `M(0)`; the
/// sensitivity searches run over the positive entries (their defining log
/// would be meaningless at 0). When no grid point satisfies a condition the
/// corresponding boundary exponent is reported and flagged.
pub fn ic_features(x: &Matrix, y: &[f64], opts: &FeatureOptions) -> Result<IcFeatures> {
    let grid = &opts.ic_grid;
    if grid.count < 2 || !(grid.min_exp < grid.max_exp) {
        return Err(CoreError::invalid("dead-zone grid needs count >= 2 and min_exp < max_exp"));
    }
    validate(x, y, opts.ic_start_index)?;

    let exponents = grid.exponents();
    let mut epsilons = Vec::with_capacity(exponents.len() + 1);
    epsilons.push(0.0);
    epsilons.extend(exponents.iter().map(|t| 10.0f64.powf(*t)));

    let tour = nn_tour(x, opts.ic_start_index);
    let (slopes, skipped) = tour_slopes(x, y, &tour);
    let curve = evaluate_grid(&slopes, x.rows() - 1, &epsilons);

    let mut diagnostics = Vec::new();
    if skipped > 0 {
        diagnostics.push(format!(
            "information content: {skipped} coincident tour leg(s) skipped"
        ));
    }

    // Smallest positive dead-zone where the entropy has settled below 0.05.
    let eps_s = match (1..curve.h.len()).find(|&i| curve.h[i] < 0.05) {
        Some(i) => exponents[i - 1],
        None => {
            diagnostics.push(format!(
                "eps_s: entropy never fell below 0.05; clamped to grid boundary {}",
                grid.max_exp
            ));
            grid.max_exp
        }
    };

    // Largest positive dead-zone keeping partial information above half its
    // zero-dead-zone value.
    let m0 = curve.m[0];
    let eps_ratio = match (1..curve.m.len()).rev().find(|&i| curve.m[i] > 0.5 * m0) {
        Some(i) => exponents[i - 1],
        None => {
            diagnostics.push(format!(
                "eps_ratio: partial information never exceeded half its base value; \
                 clamped to grid boundary {}",
                grid.min_exp
            ));
            grid.min_exp
        }
    };

    Ok(IcFeatures {
        eps_s,
        eps_ratio,
        curve,
        diagnostics,
    })
}
