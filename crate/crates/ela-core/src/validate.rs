//! Validation protocols, the per-run accuracy gate, the exhaustive wrapper
//! feature-subset search, and the instance-spread invariance report.
//!
//! The gate is deliberately strict: a feature subset passes only when EVERY
//! validation run reaches the accuracy threshold (default 98%), not the
//! average. A single bad run — e.g. 470 correct out of 480 — disqualifies
//! the subset. The wrapper search exploits this by discarding a subset on
//! its first failing run.

use crate::classify::{ClassifierKind, Model};
use crate::dataset::{
    loio_split, multi_instance_split, subsample_split, FeatureDataset, Protocol, SplitPlan,
};
use crate::error::{CoreError, Result};
use crate::exec::{run_jobs, Execution};
use crate::features::FeatureName;
use crate::util::median;

/// Number of target classes; labels are function ids 1..=24.
pub const CLASS_COUNT: usize = crate::bbob::FUNCTION_COUNT as usize;

pub const DEFAULT_GATE: f64 = 0.98;
pub const DEFAULT_RUNS: u32 = 20;
pub const DEFAULT_KNN_K: usize = 5;
pub const DEFAULT_INVARIANCE_THETA: f64 = 0.1;

/// Absolute slack for gate comparisons, so an accuracy that equals the gate
/// up to float rounding (e.g. 0.98 reconstructed from counts) still passes.
const GATE_EPS: f64 = 1e-12;

/// Class-confusion counts: `[true label − 1][predicted label − 1]`.
pub type Confusion = [[u64; CLASS_COUNT]; CLASS_COUNT];

#[derive(Clone, Copy, Debug)]
pub struct ValidationOptions {
    pub protocol: Protocol,
    /// Number of random splits. Ignored for leave-one-instance-out, which
    /// always runs one fold per instance.
    pub runs: u32,
    pub master_seed: u64,
    /// Minimum accuracy every run must reach.
    pub gate: f64,
    pub knn_k: usize,
    /// When set, each run re-derives min-max constants from its training
    /// rows only and applies them to both partitions (leak-free variant).
    /// Off by default: datasets are expected to be normalized up front over
    /// all rows, which is the procedure the experiments reproduce.
    pub train_only_normalization: bool,
    /// Parallelism for the subset search; single validations run inline.
    pub execution: Execution,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions {
            protocol: Protocol::Subsample,
            runs: DEFAULT_RUNS,
            master_seed: 0,
            gate: DEFAULT_GATE,
            knn_k: DEFAULT_KNN_K,
            train_only_normalization: false,
            execution: Execution::default(),
        }
    }
}

/// Outcome of validating one (subset, classifier, protocol) combination.
#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub protocol: Protocol,
    pub classifier: ClassifierKind,
    pub subset: Vec<FeatureName>,
    /// One accuracy per executed run. Shorter than the requested run count
    /// only for reports produced inside the subset search, which abandons a
    /// subset at its first failing run.
    pub per_run_accuracies: Vec<f64>,
    /// Confusion counts summed over the executed runs.
    pub confusion: Box<Confusion>,
    pub gate: f64,
    pub pass: bool,
}

impl ValidationReport {
    pub fn min_accuracy(&self) -> f64 {
        self.per_run_accuracies
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    pub fn mean_accuracy(&self) -> f64 {
        self.per_run_accuracies.iter().sum::<f64>() / self.per_run_accuracies.len() as f64
    }

    /// (diagonal sum, total count) of the confusion matrix.
    pub fn confusion_totals(&self) -> (u64, u64) {
        let mut diag = 0;
        let mut total = 0;
        for (t, row) in self.confusion.iter().enumerate() {
            for (p, &c) in row.iter().enumerate() {
                total += c;
                if t == p {
                    diag += c;
                }
            }
        }
        (diag, total)
    }
}

/// Fraction of positions where prediction matches truth.
pub fn accuracy(predicted: &[u8], truth: &[u8]) -> f64 {
    assert_eq!(predicted.len(), truth.len(), "prediction/truth length mismatch");
    assert!(!truth.is_empty(), "accuracy of zero predictions");
    let correct = predicted
        .iter()
        .zip(truth)
        .filter(|(p, t)| p == t)
        .count();
    correct as f64 / truth.len() as f64
}

/// True when every run reaches the gate (empty lists never pass).
pub fn passes_gate(accuracies: &[f64], gate: f64) -> bool {
    !accuracies.is_empty() && accuracies.iter().all(|&a| a >= gate - GATE_EPS)
}

/// Materializes the split for every run of a protocol. Subsampling
/// protocols produce `runs` independent splits seeded from `master_seed`;
/// leave-one-instance-out produces one fold per instance id, ascending.
pub fn build_splits(
    ds: &FeatureDataset,
    protocol: Protocol,
    runs: u32,
    master_seed: u64,
) -> Result<Vec<SplitPlan>> {
    match protocol {
        Protocol::Subsample | Protocol::MultiInstanceSubsample => {
            if runs == 0 {
                return Err(CoreError::invalid("need at least one validation run"));
            }
            (0..runs)
                .map(|r| match protocol {
                    Protocol::Subsample => subsample_split(ds, r, master_seed),
                    _ => multi_instance_split(ds, r, master_seed),
                })
                .collect()
        }
        Protocol::LeaveOneInstanceOut => ds
            .instance_ids()
            .into_iter()
            .map(|iid| loio_split(ds, iid))
            .collect(),
    }
}

/// Validates one feature subset with one classifier: per run, train on the
/// split's training rows, predict its test rows, and record accuracy plus
/// confusion counts. Deterministic given the options.
pub fn run_validation(
    ds: &FeatureDataset,
    subset: &[FeatureName],
    classifier: ClassifierKind,
    opts: &ValidationOptions,
) -> Result<ValidationReport> {
    check_subset(subset)?;
    check_gate(opts.gate)?;
    check_labels(ds)?;
    let splits = build_splits(ds, opts.protocol, opts.runs, opts.master_seed)?;
    evaluate_subset(ds, subset, classifier, &splits, opts, false).map(|o| o.report)
}

/// Result of the exhaustive minimal-portfolio search.
#[derive(Clone, Debug)]
pub struct PortfolioResult {
    pub dimension: usize,
    pub sample_size: usize,
    /// Smallest subset size at which any subset passed; 0 when none did.
    pub minimal_size: usize,
    /// Every passing subset of `minimal_size`, with full reports, in
    /// enumeration order. Empty when no subset of any size passed.
    pub passing: Vec<ValidationReport>,
    /// Diagnostic when `passing` is empty: the failing subset whose worst
    /// executed run was best. Its accuracy list stops at the failing run.
    pub best_found: Option<ValidationReport>,
    /// Total subsets evaluated (at most 2^10 − 1 = 1023).
    pub subsets_examined: usize,
}

/// Exhaustive wrapper search for the smallest feature subsets that pass the
/// gate in every run. Sizes are searched in increasing order; within a size,
/// subsets are enumerated lexicographically in canonical feature order. All
/// subsets share the same per-run splits. A subset is abandoned at its
/// first failing run; once any subset of the current size passes, the whole
/// size level is still finished (so ties surface), then the search stops.
pub fn enumerate_minimal_portfolios(
    ds: &FeatureDataset,
    classifier: ClassifierKind,
    opts: &ValidationOptions,
) -> Result<PortfolioResult> {
    check_gate(opts.gate)?;
    check_labels(ds)?;
    let splits = build_splits(ds, opts.protocol, opts.runs, opts.master_seed)?;
    let mut examined = 0;
    let mut best: Option<ValidationReport> = None;
    for size in 1..=FeatureName::ALL.len() {
        let subsets = combinations(&FeatureName::ALL, size);
        examined += subsets.len();
        let outcomes = run_jobs(opts.execution, subsets, |s| {
            evaluate_subset(ds, &s, classifier, &splits, opts, true)
        });
        let mut passing = Vec::new();
        for outcome in outcomes {
            let report = outcome?.report;
            if report.pass {
                passing.push(report);
            } else if best
                .as_ref()
                .is_none_or(|b| report.min_accuracy() > b.min_accuracy())
            {
                best = Some(report);
            }
        }
        if !passing.is_empty() {
            return Ok(PortfolioResult {
                dimension: ds.dimension(),
                sample_size: ds.sample_size(),
                minimal_size: size,
                passing,
                best_found: None,
                subsets_examined: examined,
            });
        }
    }
    Ok(PortfolioResult {
        dimension: ds.dimension(),
        sample_size: ds.sample_size(),
        minimal_size: 0,
        passing: Vec::new(),
        best_found: best,
        subsets_examined: examined,
    })
}

/// Per-feature instance-robustness flags. A feature counts as invariant
/// when, for every function, the spread (max − min) of its per-instance
/// medians stays within `theta` normalized units.
#[derive(Clone, Debug)]
pub struct InvarianceReport {
    pub theta: f64,
    /// Per feature: the largest across-instance median spread over all
    /// functions, in canonical feature order.
    pub spreads: [f64; 10],
    pub invariant: [bool; 10],
}

pub fn invariance_report(ds: &FeatureDataset, theta: f64) -> Result<InvarianceReport> {
    if !(theta.is_finite() && theta >= 0.0) {
        return Err(CoreError::invalid(format!(
            "invariance threshold must be a finite non-negative number, got {theta}"
        )));
    }
    check_labels(ds)?;
    // function id → instance id → feature values over repetitions
    let mut groups: std::collections::BTreeMap<(u8, u32), Vec<&[f64; 10]>> =
        std::collections::BTreeMap::new();
    for r in ds.rows() {
        groups
            .entry((r.meta.function_id, r.meta.instance_id))
            .or_default()
            .push(&r.values);
    }
    let functions = ds.function_ids();
    for &fid in &functions {
        let instances = groups.keys().filter(|(f, _)| *f == fid).count();
        if instances < 2 {
            return Err(CoreError::invalid(format!(
                "function {fid} has {instances} instance(s); the invariance report needs at least 2 per function"
            )));
        }
    }
    let mut spreads = [0.0f64; 10];
    for &fid in &functions {
        for k in 0..10 {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for ((_, _), rows) in groups.range((fid, 0)..=(fid, u32::MAX)) {
                let values: Vec<f64> = rows.iter().map(|v| v[k]).collect();
                let m = median(&values);
                lo = lo.min(m);
                hi = hi.max(m);
            }
            spreads[k] = spreads[k].max(hi - lo);
        }
    }
    let mut invariant = [false; 10];
    for k in 0..10 {
        invariant[k] = spreads[k] <= theta;
    }
    Ok(InvarianceReport {
        theta,
        spreads,
        invariant,
    })
}

struct SubsetOutcome {
    report: ValidationReport,
}

/// Runs the splits in order; with `short_circuit`, stops at the first run
/// below the gate, leaving the report's accuracy list truncated.
fn evaluate_subset(
    ds: &FeatureDataset,
    subset: &[FeatureName],
    classifier: ClassifierKind,
    splits: &[SplitPlan],
    opts: &ValidationOptions,
    short_circuit: bool,
) -> Result<SubsetOutcome> {
    let mut per_run = Vec::with_capacity(splits.len());
    let mut confusion: Box<Confusion> = Box::new([[0; CLASS_COUNT]; CLASS_COUNT]);
    let mut pass = true;
    for plan in splits {
        let acc = run_one(ds, subset, classifier, plan, opts, &mut confusion)?;
        per_run.push(acc);
        if acc < opts.gate - GATE_EPS {
            pass = false;
            if short_circuit {
                break;
            }
        }
    }
    Ok(SubsetOutcome {
        report: ValidationReport {
            protocol: opts.protocol,
            classifier,
            subset: subset.to_vec(),
            per_run_accuracies: per_run,
            confusion,
            gate: opts.gate,
            pass,
        },
    })
}

fn run_one(
    ds: &FeatureDataset,
    subset: &[FeatureName],
    classifier: ClassifierKind,
    plan: &SplitPlan,
    opts: &ValidationOptions,
    confusion: &mut Confusion,
) -> Result<f64> {
    let leak_free;
    let view = if opts.train_only_normalization {
        let constants = ds.constants_over(Some(&plan.train))?;
        leak_free = ds.apply_normalization(&constants);
        &leak_free
    } else {
        ds
    };
    let (train_x, train_y) = view.subset_matrix(&plan.train, subset);
    let (test_x, test_y) = view.subset_matrix(&plan.test, subset);
    let model = Model::train(classifier, &train_x, &train_y, opts.knn_k)?;
    let mut correct = 0usize;
    for (row, &truth) in test_x.iter().zip(&test_y) {
        let predicted = model.predict(row);
        confusion[truth as usize - 1][predicted as usize - 1] += 1;
        if predicted == truth {
            correct += 1;
        }
    }
    Ok(correct as f64 / test_y.len() as f64)
}

fn check_subset(subset: &[FeatureName]) -> Result<()> {
    if subset.is_empty() {
        return Err(CoreError::invalid("empty feature subset"));
    }
    for (i, a) in subset.iter().enumerate() {
        if subset[..i].contains(a) {
            return Err(CoreError::invalid(format!("duplicate feature {a} in subset")));
        }
    }
    Ok(())
}

fn check_gate(gate: f64) -> Result<()> {
    if !(gate > 0.0 && gate <= 1.0) {
        return Err(CoreError::invalid(format!(
            "accuracy gate must lie in (0, 1], got {gate}"
        )));
    }
    Ok(())
}

fn check_labels(ds: &FeatureDataset) -> Result<()> {
    if ds.is_empty() {
        return Err(CoreError::invalid("empty dataset"));
    }
    for r in ds.rows() {
        let fid = r.meta.function_id;
        if fid == 0 || fid as usize > CLASS_COUNT {
            return Err(CoreError::invalid(format!(
                "function id {fid} outside 1..={CLASS_COUNT}"
            )));
        }
    }
    Ok(())
}

/// All size-`c` combinations of `items`, lexicographic by index.
fn combinations<T: Copy>(items: &[T], c: usize) -> Vec<Vec<T>> {
    let n = items.len();
    if c == 0 || c > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..c).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // Advance to the next combination, rightmost index first.
        let mut i = c;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - c {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..c {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{FeatureDataset, FeatureRow, RowMeta};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Builds a dataset where feature columns come from a per-row closure.
    fn synthetic(
        functions: &[u8],
        instances: &[u32],
        reps: u32,
        mut value: impl FnMut(u8, u32, u32, usize, &mut ChaCha8Rng) -> f64,
    ) -> FeatureDataset {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut rows = Vec::new();
        for &fid in functions {
            for &iid in instances {
                for rep in 0..reps {
                    let mut values = [0.0; 10];
                    for (k, v) in values.iter_mut().enumerate() {
                        *v = value(fid, iid, rep, k, &mut rng);
                    }
                    rows.push(FeatureRow {
                        meta: RowMeta {
                            function_id: fid,
                            instance_id: iid,
                            dimension: 5,
                            sample_size: 100,
                            repetition: rep,
                            seed: 0,
                        },
                        values,
                    });
                }
            }
        }
        FeatureDataset::new(rows).unwrap()
    }

    /// Feature 0 identifies the function exactly; everything else is noise.
    fn separable_dataset() -> FeatureDataset {
        synthetic(&[1, 2, 3, 4, 5, 6, 7, 8], &[1], 20, |fid, _, _, k, rng| {
            if k == 0 {
                fid as f64 * 0.04
            } else {
                rng.gen_range(0.0..1.0)
            }
        })
    }

    #[test]
    fn single_function_data_is_classified_perfectly() {
        let ds = synthetic(&[7], &[1], 30, |_, _, _, _, rng| rng.gen_range(0.0..1.0));
        let opts = ValidationOptions {
            runs: 4,
            ..ValidationOptions::default()
        };
        for kind in ClassifierKind::ALL {
            let report = run_validation(&ds, &[FeatureName::Disp], kind, &opts).unwrap();
            assert!(report.pass, "{kind} failed on one-class data");
            assert!(report.per_run_accuracies.iter().all(|&a| a == 1.0));
            // 30 rows per function → 6 test rows per run, all on the diagonal.
            assert_eq!(report.confusion[6][6], 6 * 4);
            let (diag, total) = report.confusion_totals();
            assert_eq!((diag, total), (24, 24));
        }
    }

    #[test]
    fn reports_are_deterministic_for_a_fixed_seed() {
        let ds = separable_dataset();
        let opts = ValidationOptions {
            runs: 5,
            master_seed: 1234,
            ..ValidationOptions::default()
        };
        let subset = [FeatureName::Disp, FeatureName::Nbc];
        let a = run_validation(&ds, &subset, ClassifierKind::Knn, &opts).unwrap();
        let b = run_validation(&ds, &subset, ClassifierKind::Knn, &opts).unwrap();
        assert_eq!(a.per_run_accuracies, b.per_run_accuracies);
        assert_eq!(a.confusion, b.confusion);
        assert_eq!(a.pass, b.pass);
    }

    #[test]
    fn gate_quantifies_over_every_run() {
        assert!(passes_gate(&[1.0, 0.98, 0.99], 0.98));
        // One bad run sinks the subset even with a high mean: 470/480.
        let one_bad = [1.0, 1.0, 470.0 / 480.0];
        assert!(!passes_gate(&one_bad, 0.98));
        // Float slack: a gate value reconstructed from counts still passes.
        assert!(passes_gate(&[0.98 - 1e-13], 0.98));
        assert!(!passes_gate(&[], 0.98));
    }

    #[test]
    fn accuracy_counts_matches() {
        assert_eq!(accuracy(&[1, 2, 3], &[1, 2, 3]), 1.0);
        assert_eq!(accuracy(&[4, 4, 4], &[1, 2, 3]), 0.0);
        let mut predicted = vec![9u8; 480];
        let truth = vec![9u8; 480];
        for p in predicted.iter_mut().take(10) {
            *p = 8;
        }
        let acc = accuracy(&predicted, &truth);
        assert!((acc - 470.0 / 480.0).abs() < 1e-15);
        assert!(!passes_gate(&[acc], 0.98));
    }

    #[test]
    fn confusion_diagonal_sums_run_correct_counts() {
        let ds = separable_dataset();
        let opts = ValidationOptions {
            runs: 6,
            ..ValidationOptions::default()
        };
        let report =
            run_validation(&ds, &[FeatureName::Skew], ClassifierKind::DecisionTree, &opts)
                .unwrap();
        let (diag, total) = report.confusion_totals();
        // 8 functions × 4 test rows per run.
        assert_eq!(total, 8 * 4 * 6);
        let per_run_total = total / 6;
        let correct: u64 = report
            .per_run_accuracies
            .iter()
            .map(|a| (a * per_run_total as f64).round() as u64)
            .sum();
        assert_eq!(diag, correct);
    }

    #[test]
    fn separating_feature_yields_a_singleton_portfolio() {
        let ds = separable_dataset();
        let opts = ValidationOptions {
            runs: 5,
            ..ValidationOptions::default()
        };
        let result =
            enumerate_minimal_portfolios(&ds, ClassifierKind::MajorityJudgment, &opts).unwrap();
        assert_eq!(result.minimal_size, 1);
        assert_eq!(result.passing.len(), 1);
        assert_eq!(result.passing[0].subset, vec![FeatureName::Disp]);
        assert!(result.best_found.is_none());
        // Search stopped after the ten singletons.
        assert_eq!(result.subsets_examined, 10);
        assert_eq!(result.dimension, 5);
        assert_eq!(result.sample_size, 100);
    }

    #[test]
    fn paired_features_stop_the_search_at_size_two() {
        // Features 0 and 1 each split the four classes into two unresolved
        // pairs; only together do they identify the class.
        let ds = synthetic(&[1, 2, 3, 4], &[1], 20, |fid, _, _, k, rng| match k {
            0 => ((fid - 1) & 1) as f64,
            1 => ((fid - 1) >> 1) as f64,
            _ => rng.gen_range(0.0..1.0),
        });
        let opts = ValidationOptions {
            runs: 5,
            ..ValidationOptions::default()
        };
        let result =
            enumerate_minimal_portfolios(&ds, ClassifierKind::MajorityJudgment, &opts).unwrap();
        assert_eq!(result.minimal_size, 2);
        assert!(result
            .passing
            .iter()
            .any(|r| r.subset == vec![FeatureName::Disp, FeatureName::Skew]));
        // All 10 singletons plus all 45 pairs were examined.
        assert_eq!(result.subsets_examined, 55);
    }

    #[test]
    fn hopeless_data_exhausts_the_search_with_a_diagnostic() {
        // Pure noise: no subset can hit 98% on 8 classes.
        let ds = synthetic(&[1, 2, 3, 4, 5, 6, 7, 8], &[1], 10, |_, _, _, _, rng| {
            rng.gen_range(0.0..1.0)
        });
        let opts = ValidationOptions {
            runs: 3,
            ..ValidationOptions::default()
        };
        let result =
            enumerate_minimal_portfolios(&ds, ClassifierKind::MajorityJudgment, &opts).unwrap();
        assert_eq!(result.minimal_size, 0);
        assert!(result.passing.is_empty());
        assert_eq!(result.subsets_examined, 1023);
        let best = result.best_found.expect("diagnostic subset");
        assert!(!best.pass);
        assert!(best.min_accuracy() < 0.98);
    }

    #[test]
    fn loio_runs_one_fold_per_instance() {
        let ds = synthetic(&[1, 2, 3], &[1, 4, 9], 6, |fid, _, _, k, rng| {
            if k == 0 {
                fid as f64 / 10.0
            } else {
                rng.gen_range(0.0..1.0)
            }
        });
        let opts = ValidationOptions {
            protocol: Protocol::LeaveOneInstanceOut,
            runs: 99, // ignored for LOIO
            ..ValidationOptions::default()
        };
        let report =
            run_validation(&ds, &[FeatureName::Disp], ClassifierKind::Knn, &opts).unwrap();
        assert_eq!(report.per_run_accuracies.len(), 3);
        assert!(report.pass);

        let single = synthetic(&[1, 2, 3], &[1], 6, |_, _, _, _, rng| rng.gen_range(0.0..1.0));
        assert!(run_validation(&single, &[FeatureName::Disp], ClassifierKind::Knn, &opts).is_err());
    }

    #[test]
    fn train_only_normalization_is_deterministic() {
        // Raw, un-normalized values with very different scales.
        let ds = synthetic(&[1, 2], &[1], 10, |fid, _, rep, k, _| {
            fid as f64 * 100.0 + rep as f64 + k as f64 * 3.0
        });
        let opts = ValidationOptions {
            runs: 4,
            train_only_normalization: true,
            ..ValidationOptions::default()
        };
        let subset = [FeatureName::Disp, FeatureName::Pca];
        let a = run_validation(&ds, &subset, ClassifierKind::Knn, &opts).unwrap();
        let b = run_validation(&ds, &subset, ClassifierKind::Knn, &opts).unwrap();
        assert_eq!(a.per_run_accuracies, b.per_run_accuracies);
        assert!(a.per_run_accuracies.iter().all(|&x| (0.0..=1.0).contains(&x)));
    }

    #[test]
    fn invariance_report_separates_spread_from_stability() {
        // Feature 0 drifts with the instance id; the rest barely move.
        let ds = synthetic(&[1, 2], &[1, 2, 3], 5, |_, iid, _, k, rng| {
            if k == 0 {
                iid as f64 * 0.2
            } else {
                0.5 + rng.gen_range(-0.01..0.01)
            }
        });
        let report = invariance_report(&ds, DEFAULT_INVARIANCE_THETA).unwrap();
        assert!(!report.invariant[0]);
        assert!((report.spreads[0] - 0.4).abs() < 1e-12);
        for k in 1..10 {
            assert!(report.invariant[k], "feature {k} wrongly flagged");
            assert!(report.spreads[k] <= 0.02);
        }

        let single = synthetic(&[1, 2], &[1], 5, |_, _, _, _, rng| rng.gen_range(0.0..1.0));
        assert!(invariance_report(&single, DEFAULT_INVARIANCE_THETA).is_err());
        assert!(invariance_report(&ds, f64::NAN).is_err());
    }

    #[test]
    fn subset_and_gate_inputs_are_checked() {
        let ds = separable_dataset();
        let opts = ValidationOptions::default();
        assert!(run_validation(&ds, &[], ClassifierKind::Knn, &opts).is_err());
        assert!(run_validation(
            &ds,
            &[FeatureName::Disp, FeatureName::Disp],
            ClassifierKind::Knn,
            &opts
        )
        .is_err());
        let bad_gate = ValidationOptions {
            gate: 1.5,
            ..ValidationOptions::default()
        };
        assert!(run_validation(&ds, &[FeatureName::Disp], ClassifierKind::Knn, &bad_gate).is_err());
    }

    #[test]
    fn combinations_enumerate_lexicographically() {
        let pairs = combinations(&[0, 1, 2, 3, 4], 2);
        assert_eq!(pairs.len(), 10);
        assert_eq!(pairs[0], vec![0, 1]);
        assert_eq!(pairs[1], vec![0, 2]);
        assert_eq!(pairs[9], vec![3, 4]);
        assert_eq!(combinations(&[1, 2, 3], 3), vec![vec![1, 2, 3]]);
        assert!(combinations(&[1, 2, 3], 4).is_empty());
        let total: usize = (1..=10).map(|c| combinations(&FeatureName::ALL, c).len()).sum();
        assert_eq!(total, 1023);
    }
}
