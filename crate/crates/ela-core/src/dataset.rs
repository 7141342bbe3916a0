//! Labeled feature datasets: normalization, train/test splitting, and
//! persistence.
//!
//! A dataset holds the feature vectors of one `(dimension, sample_size)`
//! group — the unit on which normalization and classification operate. Row
//! identity is the `(function_id, instance_id, repetition)` triple; the
//! function id is the class label.

use std::fmt::Write as _;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{CoreError, Result};
use crate::features::FeatureName;
use crate::util::mix_seed;

/// Identifying metadata of one feature vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RowMeta {
    pub function_id: u8,
    pub instance_id: u32,
    pub dimension: usize,
    pub sample_size: usize,
    pub repetition: u32,
    /// Skip offset used for the underlying sample design.
    pub seed: u64,
}

/// One labeled feature vector, values in canonical feature order.
#[derive(Clone, Debug, PartialEq)]
pub struct FeatureRow {
    pub meta: RowMeta,
    pub values: [f64; 10],
}

/// Per-feature normalization constants (pooled minima and maxima).
#[derive(Clone, Debug, PartialEq)]
pub struct MinMax {
    pub min: [f64; 10],
    pub max: [f64; 10],
}

/// A collection of feature rows sharing one `(dimension, sample_size)`
/// group, with unique row identities.
#[derive(Clone, Debug, PartialEq)]
pub struct FeatureDataset {
    rows: Vec<FeatureRow>,
}

/// Expected file header: identity columns followed by the canonical feature
/// names.
pub const FILE_HEADER: &str =
    "function_id,instance_id,dimension,sample_size,repetition,seed,disp,skew,lr2,int,max,eps_s,eps_ratio,nbc,pca,qr2";

impl FeatureDataset {
    /// Validates shared grouping and identity uniqueness.
    pub fn new(rows: Vec<FeatureRow>) -> Result<Self> {
        if let Some(first) = rows.first() {
            let (d, n) = (first.meta.dimension, first.meta.sample_size);
            for r in &rows {
                if r.meta.dimension != d || r.meta.sample_size != n {
                    return Err(CoreError::invalid(format!(
                        "mixed groups: ({d}, {n}) and ({}, {})",
                        r.meta.dimension, r.meta.sample_size
                    )));
                }
            }
            let mut keys: Vec<(u8, u32, u32)> = rows
                .iter()
                .map(|r| (r.meta.function_id, r.meta.instance_id, r.meta.repetition))
                .collect();
            keys.sort_unstable();
            if let Some(w) = keys.windows(2).find(|w| w[0] == w[1]) {
                return Err(CoreError::invalid(format!(
                    "duplicate row identity (function {}, instance {}, repetition {})",
                    w[0].0, w[0].1, w[0].2
                )));
            }
        }
        Ok(FeatureDataset { rows })
    }

    pub fn rows(&self) -> &[FeatureRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Dimension of the group. Panics on an empty dataset.
    pub fn dimension(&self) -> usize {
        self.rows[0].meta.dimension
    }

    /// Sample size of the group. Panics on an empty dataset.
    pub fn sample_size(&self) -> usize {
        self.rows[0].meta.sample_size
    }

    /// Distinct function ids, ascending.
    pub fn function_ids(&self) -> Vec<u8> {
        let mut ids: Vec<u8> = self.rows.iter().map(|r| r.meta.function_id).collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    /// Distinct instance ids, ascending.
    pub fn instance_ids(&self) -> Vec<u32> {
        let mut ids: Vec<u32> = self.rows.iter().map(|r| r.meta.instance_id).collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    /// Min-max constants over the given row indices (or the whole dataset).
    pub fn constants_over(&self, rows: Option<&[usize]>) -> Result<MinMax> {
        let indices: Vec<usize> = match rows {
            Some(r) => r.to_vec(),
            None => (0..self.rows.len()).collect(),
        };
        if indices.is_empty() {
            return Err(CoreError::invalid("normalization over an empty row set"));
        }
        let mut min = [f64::INFINITY; 10];
        let mut max = [f64::NEG_INFINITY; 10];
        for &i in &indices {
            for (j, &v) in self.rows[i].values.iter().enumerate() {
                min[j] = min[j].min(v);
                max[j] = max[j].max(v);
            }
        }
        Ok(MinMax { min, max })
    }

    /// Applies min-max scaling with the given constants: `(v − min) /
    /// (max − min)`, with constant columns mapping to 0.
    pub fn apply_normalization(&self, c: &MinMax) -> FeatureDataset {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut values = [0.0; 10];
                for j in 0..10 {
                    let span = c.max[j] - c.min[j];
                    values[j] = if span == 0.0 {
                        0.0
                    } else {
                        (r.values[j] - c.min[j]) / span
                    };
                }
                FeatureRow {
                    meta: r.meta,
                    values,
                }
            })
            .collect();
        FeatureDataset { rows }
    }

    /// Pooled min-max normalization over all rows (train and test together),
    /// returning the scaled dataset and the constants used.
    pub fn normalize(&self) -> Result<(FeatureDataset, MinMax)> {
        let c = self.constants_over(None)?;
        Ok((self.apply_normalization(&c), c))
    }

    /// Serializes to the documented delimiter-separated format. Floats are
    /// written in shortest round-trip form, so `load` reproduces them
    /// bit-exactly.
    pub fn to_file_string(&self, comments: &[String]) -> String {
        let mut out = String::new();
        for c in comments {
            let _ = writeln!(out, "# {c}");
        }
        out.push_str(FILE_HEADER);
        out.push('\n');
        for r in &self.rows {
            let m = &r.meta;
            let _ = write!(
                out,
                "{},{},{},{},{},{}",
                m.function_id, m.instance_id, m.dimension, m.sample_size, m.repetition, m.seed
            );
            for v in &r.values {
                let _ = write!(out, ",{v}");
            }
            out.push('\n');
        }
        out
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        self.save_with_comments(path, &[])
    }

    pub fn save_with_comments(&self, path: &Path, comments: &[String]) -> Result<()> {
        std::fs::write(path, self.to_file_string(comments))
            .map_err(|e| CoreError::io(path.display().to_string(), e))
    }

    /// Parses the documented format. `#` lines are comments; the header must
    /// list every canonical column. Malformed content is rejected with
    /// line/field diagnostics.
    pub fn from_file_string(content: &str) -> Result<FeatureDataset> {
        let mut rows = Vec::new();
        let mut header_seen = false;
        for (lineno, line) in content.lines().enumerate() {
            let lineno = lineno + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            if !header_seen {
                if trimmed != FILE_HEADER {
                    return Err(CoreError::parse(
                        lineno,
                        None,
                        format!("header must be {FILE_HEADER:?}, got {trimmed:?}"),
                    ));
                }
                header_seen = true;
                continue;
            }
            let fields: Vec<&str> = trimmed.split(',').collect();
            if fields.len() != 16 {
                return Err(CoreError::parse(
                    lineno,
                    None,
                    format!("expected 16 fields, got {}", fields.len()),
                ));
            }
            let field = |idx: usize| -> (usize, &str) { (idx + 1, fields[idx]) };
            fn num<T: std::str::FromStr>(lineno: usize, (col, s): (usize, &str)) -> Result<T> {
                s.parse().map_err(|_| {
                    CoreError::parse(lineno, Some(col), format!("invalid value {s:?}"))
                })
            }
            let meta = RowMeta {
                function_id: num(lineno, field(0))?,
                instance_id: num(lineno, field(1))?,
                dimension: num(lineno, field(2))?,
                sample_size: num(lineno, field(3))?,
                repetition: num(lineno, field(4))?,
                seed: num(lineno, field(5))?,
            };
            let mut values = [0.0; 10];
            for (j, v) in values.iter_mut().enumerate() {
                *v = num(lineno, field(6 + j))?;
            }
            rows.push(FeatureRow { meta, values });
        }
        if !header_seen {
            return Err(CoreError::parse(1, None, "missing header line"));
        }
        FeatureDataset::new(rows)
    }

    pub fn load(path: &Path) -> Result<FeatureDataset> {
        let content = std::fs::read_to_string(path)
            .map_err(|e| CoreError::io(path.display().to_string(), e))?;
        Self::from_file_string(&content)
    }

    /// Extracts the named feature columns of the given rows as a dense
    /// matrix (row per dataset row, column per subset feature) plus labels.
    pub fn subset_matrix(&self, rows: &[usize], subset: &[FeatureName]) -> (Vec<Vec<f64>>, Vec<u8>) {
        let mut data = Vec::with_capacity(rows.len());
        let mut labels = Vec::with_capacity(rows.len());
        for &i in rows {
            let r = &self.rows[i];
            data.push(subset.iter().map(|f| r.values[f.index()]).collect());
            labels.push(r.meta.function_id);
        }
        (data, labels)
    }
}

/// Train/test protocols supported by the validation harness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Protocol {
    /// Per function, a random 80/20 partition of its rows.
    Subsample,
    /// Per (function, instance), a random 80/20 partition of repetitions.
    MultiInstanceSubsample,
    /// Train on all instances but one; test on the held-out instance.
    LeaveOneInstanceOut,
}

impl Protocol {
    fn tag(self) -> u64 {
        match self {
            Protocol::Subsample => 1,
            Protocol::MultiInstanceSubsample => 2,
            Protocol::LeaveOneInstanceOut => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Protocol::Subsample => "subsample",
            Protocol::MultiInstanceSubsample => "multi",
            Protocol::LeaveOneInstanceOut => "loio",
        }
    }
}

/// A reproducible train/test partition (disjoint row-index sets).
#[derive(Clone, Debug, PartialEq)]
pub struct SplitPlan {
    pub protocol: Protocol,
    pub run_index: u32,
    pub rng_seed: u64,
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

/// Shared 80/20 machinery: groups rows, orders each group canonically,
/// shuffles it with a per-group stream, and takes `ceil(0.8·r)` for
/// training. Selection depends only on row identities, never on storage
/// order.
fn split_by_groups<K: Ord + Copy + Into<GroupKey>>(
    ds: &FeatureDataset,
    protocol: Protocol,
    run_index: u32,
    rng_seed: u64,
    group_of: impl Fn(&RowMeta) -> K,
) -> Result<SplitPlan> {
    if ds.is_empty() {
        return Err(CoreError::invalid("cannot split an empty dataset"));
    }
    let mut groups: std::collections::BTreeMap<K, Vec<usize>> = std::collections::BTreeMap::new();
    for (i, r) in ds.rows().iter().enumerate() {
        groups.entry(group_of(&r.meta)).or_default().push(i);
    }
    let mut train = Vec::new();
    let mut test = Vec::new();
    for (key, mut indices) in groups {
        let r = indices.len();
        if r < 5 {
            return Err(CoreError::invalid(format!(
                "group {:?} has {r} rows; need at least 5 for an 80/20 split",
                key.into()
            )));
        }
        indices.sort_by_key(|&i| {
            let m = &ds.rows()[i].meta;
            (m.instance_id, m.repetition)
        });
        let gk: GroupKey = key.into();
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(&[
            rng_seed,
            run_index as u64,
            protocol.tag(),
            gk.0,
            gk.1,
        ]));
        indices.shuffle(&mut rng);
        let n_train = (4 * r).div_ceil(5);
        train.extend_from_slice(&indices[..n_train]);
        test.extend_from_slice(&indices[n_train..]);
    }
    train.sort_unstable();
    test.sort_unstable();
    Ok(SplitPlan {
        protocol,
        run_index,
        rng_seed,
        train,
        test,
    })
}

/// Group key normalized to two integers for seed mixing.
#[derive(Clone, Copy, Debug)]
struct GroupKey(u64, u64);

impl From<u8> for GroupKey {
    fn from(fid: u8) -> Self {
        GroupKey(fid as u64, 0)
    }
}

impl From<(u8, u32)> for GroupKey {
    fn from((fid, iid): (u8, u32)) -> Self {
        GroupKey(fid as u64, iid as u64)
    }
}

/// Random 80/20 partition per function, pooled over instances.
pub fn subsample_split(ds: &FeatureDataset, run_index: u32, rng_seed: u64) -> Result<SplitPlan> {
    split_by_groups(ds, Protocol::Subsample, run_index, rng_seed, |m| m.function_id)
}

/// Random 80/20 partition of repetitions per (function, instance).
pub fn multi_instance_split(
    ds: &FeatureDataset,
    run_index: u32,
    rng_seed: u64,
) -> Result<SplitPlan> {
    split_by_groups(
        ds,
        Protocol::MultiInstanceSubsample,
        run_index,
        rng_seed,
        |m| (m.function_id, m.instance_id),
    )
}

/// Holds out every row of one instance for testing.
pub fn loio_split(ds: &FeatureDataset, held_out_instance: u32) -> Result<SplitPlan> {
    let instances = ds.instance_ids();
    if !instances.contains(&held_out_instance) {
        return Err(CoreError::invalid(format!(
            "instance {held_out_instance} not present (have {instances:?})"
        )));
    }
    if instances.len() < 2 {
        return Err(CoreError::invalid(
            "leave-one-instance-out needs at least two instances",
        ));
    }
    let mut train = Vec::new();
    let mut test = Vec::new();
    for (i, r) in ds.rows().iter().enumerate() {
        if r.meta.instance_id == held_out_instance {
            test.push(i);
        } else {
            train.push(i);
        }
    }
    Ok(SplitPlan {
        protocol: Protocol::LeaveOneInstanceOut,
        run_index: held_out_instance,
        rng_seed: 0,
        train,
        test,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn toy_dataset(functions: u8, instances: u32, reps: u32) -> FeatureDataset {
        let mut rows = Vec::new();
        for fid in 1..=functions {
            for iid in 1..=instances {
                for rep in 0..reps {
                    let base = fid as f64 + 0.01 * rep as f64 + 0.1 * iid as f64;
                    let mut values = [0.0; 10];
                    for (j, v) in values.iter_mut().enumerate() {
                        *v = base + j as f64;
                    }
                    rows.push(FeatureRow {
                        meta: RowMeta {
                            function_id: fid,
                            instance_id: iid,
                            dimension: 5,
                            sample_size: 1250,
                            repetition: rep,
                            seed: 1000 + rep as u64,
                        },
                        values,
                    });
                }
            }
        }
        FeatureDataset::new(rows).unwrap()
    }

    #[test]
    fn rejects_mixed_groups_and_duplicate_keys() {
        let mut ds = toy_dataset(2, 1, 6);
        let mut bad = ds.rows()[0].clone();
        bad.meta.dimension = 10;
        assert!(FeatureDataset::new(vec![ds.rows()[0].clone(), bad]).is_err());

        let dup = ds.rows[0].clone();
        ds.rows.push(dup);
        assert!(FeatureDataset::new(ds.rows).is_err());
    }

    #[test]
    fn normalization_maps_extremes_to_unit_interval() {
        let ds = toy_dataset(3, 1, 6);
        let (norm, c) = ds.normalize().unwrap();
        for j in 0..10 {
            let col: Vec<f64> = norm.rows().iter().map(|r| r.values[j]).collect();
            let lo = col.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = col.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            assert_eq!(lo, 0.0);
            assert_eq!(hi, 1.0);
            assert!(c.max[j] > c.min[j]);
        }
    }

    #[test]
    fn explicit_column_normalizes_as_expected() {
        let mut ds = toy_dataset(3, 1, 5);
        // Overwrite one feature column with (2, 4, 6, ...) pattern rows 0..2.
        for (i, r) in ds.rows.iter_mut().enumerate() {
            r.values[0] = 2.0 + 2.0 * (i % 3) as f64; // range {2, 4, 6}
            r.values[1] = 5.0; // constant column
        }
        let (norm, _) = ds.normalize().unwrap();
        for (i, r) in norm.rows().iter().enumerate() {
            let expect = [0.0, 0.5, 1.0][i % 3];
            assert_eq!(r.values[0], expect);
            assert_eq!(r.values[1], 0.0);
        }
    }

    #[test]
    fn normalization_is_idempotent() {
        let ds = toy_dataset(4, 2, 5);
        let (once, _) = ds.normalize().unwrap();
        let (twice, _) = once.normalize().unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn subsample_split_partitions_each_function() {
        let ds = toy_dataset(3, 1, 30);
        let plan = subsample_split(&ds, 0, 42).unwrap();
        assert_eq!(plan.train.len(), 3 * 24);
        assert_eq!(plan.test.len(), 3 * 6);
        // Disjoint and exhaustive.
        let mut all: Vec<usize> = plan.train.iter().chain(&plan.test).cloned().collect();
        all.sort_unstable();
        assert_eq!(all, (0..ds.len()).collect::<Vec<_>>());
        // Per-function counts.
        for fid in 1..=3 {
            let count = plan
                .test
                .iter()
                .filter(|&&i| ds.rows()[i].meta.function_id == fid)
                .count();
            assert_eq!(count, 6);
        }
    }

    #[test]
    fn splits_are_deterministic_and_vary_by_run() {
        let ds = toy_dataset(4, 1, 10);
        let a = subsample_split(&ds, 3, 7).unwrap();
        let b = subsample_split(&ds, 3, 7).unwrap();
        assert_eq!(a, b);
        let plans: Vec<SplitPlan> = (0..20)
            .map(|run| subsample_split(&ds, run, 7).unwrap())
            .collect();
        for i in 0..plans.len() {
            for j in i + 1..plans.len() {
                assert_ne!(plans[i].test, plans[j].test, "runs {i} and {j} collided");
            }
        }
    }

    #[test]
    fn split_depends_on_identity_not_storage_order() {
        let ds = toy_dataset(2, 1, 8);
        let mut reversed_rows = ds.rows().to_vec();
        reversed_rows.reverse();
        let rev = FeatureDataset::new(reversed_rows).unwrap();
        let a = subsample_split(&ds, 1, 9).unwrap();
        let b = subsample_split(&rev, 1, 9).unwrap();
        let keys = |ds: &FeatureDataset, idx: &[usize]| {
            let mut k: Vec<(u8, u32, u32)> = idx
                .iter()
                .map(|&i| {
                    let m = &ds.rows()[i].meta;
                    (m.function_id, m.instance_id, m.repetition)
                })
                .collect();
            k.sort_unstable();
            k
        };
        assert_eq!(keys(&ds, &a.test), keys(&rev, &b.test));
    }

    #[test]
    fn multi_instance_split_partitions_per_instance() {
        let ds = toy_dataset(2, 3, 10);
        let plan = multi_instance_split(&ds, 0, 5).unwrap();
        for fid in 1..=2 {
            for iid in 1..=3 {
                let test_count = plan
                    .test
                    .iter()
                    .filter(|&&i| {
                        let m = &ds.rows()[i].meta;
                        m.function_id == fid && m.instance_id == iid
                    })
                    .count();
                assert_eq!(test_count, 2, "f{fid} i{iid}");
            }
        }
    }

    #[test]
    fn loio_folds_cover_the_dataset_disjointly() {
        let ds = toy_dataset(3, 5, 4);
        let mut seen = vec![false; ds.len()];
        for held in 1..=5 {
            let plan = loio_split(&ds, held).unwrap();
            assert_eq!(plan.test.len(), 3 * 4);
            assert_eq!(plan.train.len(), 3 * 4 * 4);
            for &i in &plan.test {
                assert_eq!(ds.rows()[i].meta.instance_id, held);
                assert!(!seen[i], "row {i} tested twice");
                seen[i] = true;
            }
        }
        assert!(seen.iter().all(|&s| s));
        assert!(loio_split(&ds, 9).is_err());
        let single = toy_dataset(3, 1, 4);
        assert!(loio_split(&single, 1).is_err());
    }

    #[test]
    fn too_few_repetitions_rejected() {
        let ds = toy_dataset(2, 1, 4);
        assert!(subsample_split(&ds, 0, 1).is_err());
    }

    #[test]
    fn file_round_trip_is_bit_exact() {
        let mut ds = toy_dataset(3, 2, 5);
        // Exercise full float precision.
        for (i, r) in ds.rows.iter_mut().enumerate() {
            for (j, v) in r.values.iter_mut().enumerate() {
                *v = (i as f64 + 1.0) / (j as f64 + 3.0) * 1e-3 + 1.0 / 3.0;
            }
        }
        let text = ds.to_file_string(&["config_hash=deadbeef".to_string()]);
        assert!(text.starts_with("# config_hash=deadbeef\n"));
        let back = FeatureDataset::from_file_string(&text).unwrap();
        assert_eq!(ds, back);
    }

    #[test]
    fn malformed_files_are_rejected_with_location() {
        let missing_column = FILE_HEADER.replace(",qr2", "");
        let err = FeatureDataset::from_file_string(&format!("{missing_column}\n")).unwrap_err();
        assert!(err.to_string().contains("line 1"), "{err}");

        let good_header = FILE_HEADER;
        let bad_row = format!("{good_header}\n1,1,5,1250,0,7,0.1,0.2,0.3,0.4,0.5,0.6,0.7,oops,0.9,1.0\n");
        let err = FeatureDataset::from_file_string(&bad_row).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 2") && msg.contains("14"), "{msg}");

        let short_row = format!("{good_header}\n1,1,5,1250,0,7,0.1\n");
        assert!(FeatureDataset::from_file_string(&short_row).is_err());
    }

    #[test]
    fn subset_matrix_projects_named_columns() {
        let ds = toy_dataset(2, 1, 5);
        let (data, labels) = ds.subset_matrix(&[0, 5], &[FeatureName::Lr2, FeatureName::Qr2]);
        assert_eq!(labels, vec![1, 2]);
        assert_eq!(data[0][0], ds.rows()[0].values[2]);
        assert_eq!(data[0][1], ds.rows()[0].values[9]);
        assert_eq!(data[1][0], ds.rows()[5].values[2]);
    }
}
