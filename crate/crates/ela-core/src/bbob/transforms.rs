//! Shared coordinate transforms for the benchmark suite: irregular
//! oscillation, asymmetry, ill-conditioning ramps, boundary penalty, and
//! seeded orthogonal matrices.

use rand::Rng;

use crate::util::Matrix;

/// Index ratio `(i - 1) / (d - 1)` for a 0-based index, with the 1-D
/// convention that the ratio is 0.
#[inline]
pub fn index_ratio(idx: usize, d: usize) -> f64 {
    if d > 1 {
        idx as f64 / (d - 1) as f64
    } else {
        0.0
    }
}

/// Oscillation transform applied to one coordinate: warps the magnitude
/// logarithmically while preserving sign and fixing 0.
pub fn t_osz_scalar(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let xhat = x.abs().ln();
    let (c1, c2) = if x > 0.0 { (10.0, 7.9) } else { (5.5, 3.1) };
    let warped = xhat + 0.049 * ((c1 * xhat).sin() + (c2 * xhat).sin());
    x.signum() * warped.exp()
}

/// Componentwise oscillation transform.
pub fn t_osz(v: &[f64]) -> Vec<f64> {
    v.iter().map(|&x| t_osz_scalar(x)).collect()
}

/// Asymmetry transform: positive coordinates are raised to a power that
/// grows with the coordinate index; non-positive coordinates pass through.
pub fn t_asy(v: &[f64], beta: f64) -> Vec<f64> {
    let d = v.len();
    v.iter()
        .enumerate()
        .map(|(i, &x)| {
            if x > 0.0 {
                x.powf(1.0 + beta * index_ratio(i, d) * x.sqrt())
            } else {
                x
            }
        })
        .collect()
}

/// Diagonal of the conditioning matrix `Lambda^alpha`: a geometric ramp from
/// 1 up to `sqrt(alpha)` across the coordinates.
pub fn lambda_diag(alpha: f64, d: usize) -> Vec<f64> {
    (0..d).map(|i| alpha.powf(0.5 * index_ratio(i, d))).collect()
}

/// Boundary penalty: zero inside `[-5, 5]^d`, quadratic in the overshoot
/// outside.
pub fn f_pen(x: &[f64]) -> f64 {
    x.iter()
        .map(|&v| {
            let over = v.abs() - 5.0;
            if over > 0.0 {
                over * over
            } else {
                0.0
            }
        })
        .sum()
}

/// Draws a uniformly random orthogonal matrix: fills a `d x d` matrix with
/// standard normal entries and orthonormalizes its columns by Gram–Schmidt.
/// A second orthogonalization pass scrubs the rounding error left by the
/// first, keeping `Q^T Q` within ~1e-14 of the identity. Degenerate draws
/// (numerically dependent columns) are rejected and redrawn.
pub fn random_rotation<R: Rng>(rng: &mut R, d: usize) -> Matrix {
    loop {
        let mut m = Matrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                m.set(i, j, crate::util::standard_normal(rng));
            }
        }
        if orthonormalize_columns(&mut m) && orthonormalize_columns(&mut m) {
            return m;
        }
    }
}

/// In-place Gram–Schmidt on the columns. Returns false when a column
/// collapses to (numerical) zero, i.e. the input was rank deficient.
fn orthonormalize_columns(m: &mut Matrix) -> bool {
    let d = m.rows();
    for j in 0..d {
        for k in 0..j {
            let mut dot = 0.0;
            for i in 0..d {
                dot += m.get(i, j) * m.get(i, k);
            }
            for i in 0..d {
                let t = m.get(i, j) - dot * m.get(i, k);
                m.set(i, j, t);
            }
        }
        let mut norm_sq = 0.0;
        for i in 0..d {
            norm_sq += m.get(i, j) * m.get(i, j);
        }
        let norm = norm_sq.sqrt();
        if norm < 1e-8 {
            return false;
        }
        for i in 0..d {
            let t = m.get(i, j) / norm;
            m.set(i, j, t);
        }
    }
    true
}

/// Largest absolute entry of `M^T M - I`; zero for a perfectly orthogonal
/// matrix.
pub fn orthogonality_defect(m: &Matrix) -> f64 {
    let d = m.rows();
    let mut worst = 0.0f64;
    for a in 0..d {
        for b in 0..d {
            let mut dot = 0.0;
            for i in 0..d {
                dot += m.get(i, a) * m.get(i, b);
            }
            let target = if a == b { 1.0 } else { 0.0 };
            worst = worst.max((dot - target).abs());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn oscillation_fixes_zero_and_preserves_sign() {
        assert_eq!(t_osz_scalar(0.0), 0.0);
        assert!(t_osz_scalar(2.5) > 0.0);
        assert!(t_osz_scalar(-2.5) < 0.0);
        // The transform is a warped identity: magnitudes stay within a
        // modest factor of the input.
        for &x in &[0.01, 0.1, 1.0, 3.0, 4.9] {
            let y = t_osz_scalar(x);
            assert!(y > 0.5 * x && y < 2.0 * x, "t_osz({x}) = {y}");
        }
    }

    #[test]
    fn asymmetry_passes_non_positive_coordinates_through() {
        let v = [-2.0, 0.0, 2.0];
        let out = t_asy(&v, 0.5);
        assert_eq!(out[0], -2.0);
        assert_eq!(out[1], 0.0);
        // Index 2 of 3 has ratio 1: 2^(1 + 0.5*sqrt(2)).
        let expected = 2.0f64.powf(1.0 + 0.5 * 2.0f64.sqrt());
        assert!((out[2] - expected).abs() < 1e-12);
    }

    #[test]
    fn conditioning_ramp_endpoints() {
        let diag = lambda_diag(100.0, 2);
        assert_eq!(diag, vec![1.0, 10.0]);
        let diag = lambda_diag(10.0, 5);
        assert_eq!(diag[0], 1.0);
        assert!((diag[4] - 10.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn penalty_is_zero_inside_the_domain() {
        assert_eq!(f_pen(&[5.0, -5.0, 0.0, 3.2]), 0.0);
        let p = f_pen(&[5.5, -6.0]);
        assert!((p - (0.25 + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn rotations_are_orthogonal_and_deterministic() {
        for d in [2usize, 5, 10, 40] {
            let mut rng = ChaCha8Rng::seed_from_u64(42);
            let r = random_rotation(&mut rng, d);
            assert!(
                orthogonality_defect(&r) < 1e-12,
                "defect {} at d={d}",
                orthogonality_defect(&r)
            );
            let mut rng2 = ChaCha8Rng::seed_from_u64(42);
            let r2 = random_rotation(&mut rng2, d);
            assert_eq!(r, r2);
        }
    }
}
