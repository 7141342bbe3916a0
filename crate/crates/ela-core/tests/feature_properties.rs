//! Randomized property checks: feature invariances under objective-value
//! translation and positive scaling, information-curve shape constraints,
//! normalization idempotence, and split determinism.

use ela_core::dataset::{subsample_split, FeatureDataset, FeatureRow, RowMeta};
use ela_core::features::{compute_features, ic_curve, FeatureName, FeatureOptions, Sample};
use ela_core::util::Matrix;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A varied synthetic landscape: quadratic bowl + ripples + noise.
fn random_sample(seed: u64, n: usize, d: usize) -> (Matrix, Vec<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = Matrix::zeros(n, d);
    for i in 0..n {
        for j in 0..d {
            x.set(i, j, rng.gen_range(-5.0..5.0));
        }
    }
    let y: Vec<f64> = (0..n)
        .map(|i| {
            let r = x.row(i);
            let bowl: f64 = r.iter().map(|v| v * v).sum();
            let ripple: f64 = r.iter().map(|v| (3.0 * v).sin()).sum();
            bowl + 5.0 * ripple + rng.gen_range(-0.5..0.5)
        })
        .collect();
    (x, y)
}

fn features_of(x: &Matrix, y: &[f64]) -> [f64; 10] {
    let sample = Sample::new(x.clone(), y.to_vec()).unwrap();
    *compute_features(&sample, &FeatureOptions::default())
        .unwrap()
        .as_array()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Adding a constant to every objective value leaves all features
    /// except the intercept unchanged; the intercept shifts by exactly
    /// that constant.
    #[test]
    fn translation_of_y_shifts_only_the_intercept(
        seed in 0u64..100_000,
        c in -1000.0f64..1000.0,
        n in 52usize..90,
        d in 2usize..5,
    ) {
        let (x, y) = random_sample(seed, n, d);
        let shifted: Vec<f64> = y.iter().map(|v| v + c).collect();
        let base = features_of(&x, &y);
        let moved = features_of(&x, &shifted);

        for name in [
            FeatureName::Disp,
            FeatureName::Skew,
            FeatureName::Lr2,
            FeatureName::Max,
            FeatureName::EpsS,
            FeatureName::EpsRatio,
            FeatureName::Nbc,
            FeatureName::Pca,
            FeatureName::Qr2,
        ] {
            let k = name.index();
            prop_assert!(
                (base[k] - moved[k]).abs() <= 1e-9,
                "{name} moved under translation: {} vs {}",
                base[k],
                moved[k]
            );
        }
        let int = FeatureName::Int.index();
        prop_assert!(
            ((moved[int] - base[int]) - c).abs() <= 1e-9 * (1.0 + c.abs()),
            "intercept shifted by {} instead of {c}",
            moved[int] - base[int]
        );
    }

    /// Scaling the objective by a positive power of two (exact in floats)
    /// leaves the scale-free features untouched.
    #[test]
    fn dyadic_scaling_of_y_preserves_scale_free_features(
        seed in 0u64..100_000,
        k in -3i32..=3,
        n in 52usize..90,
        d in 2usize..5,
    ) {
        let a = (2.0f64).powi(k);
        let (x, y) = random_sample(seed, n, d);
        let scaled: Vec<f64> = y.iter().map(|v| a * v).collect();
        let base = features_of(&x, &y);
        let moved = features_of(&x, &scaled);

        let disp = FeatureName::Disp.index();
        prop_assert_eq!(base[disp], moved[disp]); // ranking-only, bit-exact
        for name in [FeatureName::Skew, FeatureName::Lr2, FeatureName::Qr2, FeatureName::Nbc] {
            let i = name.index();
            prop_assert!(
                (base[i] - moved[i]).abs() <= 1e-9,
                "{name} moved under scaling: {} vs {}",
                base[i],
                moved[i]
            );
        }
    }

    /// The entropy curve of a·y on the grid a·ε matches the curve of y on
    /// ε pointwise (a a power of two, so every comparison is preserved
    /// exactly).
    #[test]
    fn scaled_entropy_curves_match_on_scaled_grids(
        seed in 0u64..100_000,
        k in -3i32..=3,
        n in 52usize..90,
        d in 2usize..5,
    ) {
        let a = (2.0f64).powi(k);
        let (x, y) = random_sample(seed, n, d);
        let scaled: Vec<f64> = y.iter().map(|v| a * v).collect();
        let eps: Vec<f64> = vec![0.0, 1e-4, 1e-2, 1.0, 100.0];
        let eps_scaled: Vec<f64> = eps.iter().map(|e| a * e).collect();
        let base = ic_curve(&x, &y, 0, &eps).unwrap();
        let moved = ic_curve(&x, &scaled, 0, &eps_scaled).unwrap();
        prop_assert_eq!(&base.h, &moved.h);
        prop_assert_eq!(&base.m, &moved.m);
    }

    /// Shape constraints of the information curve on the default grid.
    #[test]
    fn information_curves_are_bounded_and_monotone(
        seed in 0u64..100_000,
        n in 52usize..90,
        d in 2usize..5,
    ) {
        let (x, y) = random_sample(seed, n, d);
        let opts = FeatureOptions::default();
        let ic = ela_core::features::ic_features(&x, &y, &opts).unwrap();
        for &h in &ic.curve.h {
            prop_assert!((0.0..=1.0).contains(&h));
        }
        for w in ic.curve.m.windows(2) {
            prop_assert!(w[1] <= w[0] + 1e-15, "M increased: {} -> {}", w[0], w[1]);
        }
        prop_assert_eq!(*ic.curve.m.last().unwrap(), 0.0);
    }

    /// Identical inputs always give bitwise-identical feature vectors.
    #[test]
    fn features_are_deterministic(seed in 0u64..100_000, n in 52usize..70, d in 2usize..4) {
        let (x, y) = random_sample(seed, n, d);
        prop_assert_eq!(features_of(&x, &y), features_of(&x, &y));
    }

    /// Min-max normalization maps into [0,1] and is idempotent.
    #[test]
    fn normalization_is_bounded_and_idempotent(seed in 0u64..100_000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rows = Vec::new();
        for fid in 1..=4u8 {
            for rep in 0..8u32 {
                let mut values = [0.0; 10];
                for v in values.iter_mut() {
                    *v = rng.gen_range(-50.0..50.0);
                }
                values[9] = 3.25; // one constant column exercises the span-0 rule
                rows.push(FeatureRow {
                    meta: RowMeta {
                        function_id: fid,
                        instance_id: 1,
                        dimension: 3,
                        sample_size: 60,
                        repetition: rep,
                        seed: 0,
                    },
                    values,
                });
            }
        }
        let ds = FeatureDataset::new(rows).unwrap();
        let (once, _) = ds.normalize().unwrap();
        for r in once.rows() {
            for &v in &r.values {
                prop_assert!((0.0..=1.0).contains(&v));
            }
        }
        let (twice, _) = once.normalize().unwrap();
        prop_assert_eq!(once.to_file_string(&[]), twice.to_file_string(&[]));
    }

    /// Splits partition the dataset and are reproducible for any seed.
    #[test]
    fn splits_partition_and_replay(seed in proptest::num::u64::ANY, run in 0u32..50) {
        let mut rows = Vec::new();
        for fid in 1..=3u8 {
            for rep in 0..10u32 {
                rows.push(FeatureRow {
                    meta: RowMeta {
                        function_id: fid,
                        instance_id: 1,
                        dimension: 2,
                        sample_size: 40,
                        repetition: rep,
                        seed: 0,
                    },
                    values: [0.5; 10],
                });
            }
        }
        let ds = FeatureDataset::new(rows).unwrap();
        let a = subsample_split(&ds, run, seed).unwrap();
        let b = subsample_split(&ds, run, seed).unwrap();
        prop_assert_eq!(&a, &b);
        let mut all: Vec<usize> = a.train.iter().chain(&a.test).copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..ds.len()).collect::<Vec<_>>());
        prop_assert!(a.train.iter().all(|i| !a.test.contains(i)));
        // 10 rows per function → 8 train / 2 test.
        prop_assert_eq!(a.train.len(), 24);
        prop_assert_eq!(a.test.len(), 6);
    }
}
