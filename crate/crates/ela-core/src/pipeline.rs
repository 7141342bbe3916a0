//! End-to-end generation: Sobol' designs, scaled to the search domain and
//! evaluated on benchmark instances, reduced to labeled feature rows.
//!
//! Every repetition gets its own skip offset into the Sobol' sequence,
//! derived from the master seed and the problem coordinates, so a whole
//! experiment replays byte-for-byte from one integer while repetitions stay
//! decorrelated.

use crate::bbob::{ProblemInstance, DOMAIN_HI, DOMAIN_LO, FUNCTION_COUNT};
use crate::dataset::{FeatureDataset, FeatureRow, RowMeta};
use crate::error::{CoreError, Result};
use crate::exec::{run_jobs, Execution};
use crate::features::{compute_features, FeatureOptions, Sample};
use crate::sobol::{scale_to_domain, sobol_points, SobolTable};
use crate::util::mix_seed;

/// Exclusive upper bound for skip offsets; keeps `offset + n` far below the
/// 2^32 index capacity of the sequence while leaving a million distinct
/// starting points.
const MAX_SKIP: u64 = 1 << 20;

/// One (dimension, sample-size) dataset job: which functions, instances,
/// and repetition count to generate, from which master seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatasetSpec {
    pub dimension: usize,
    pub sample_size: usize,
    /// Function ids, strictly ascending.
    pub functions: Vec<u8>,
    /// Instance ids, strictly ascending.
    pub instances: Vec<u32>,
    pub repetitions: u32,
    pub master_seed: u64,
}

impl DatasetSpec {
    /// Spec over all 24 functions for one (dimension, sample size) cell.
    pub fn full_suite(
        dimension: usize,
        sample_size: usize,
        instances: Vec<u32>,
        repetitions: u32,
        master_seed: u64,
    ) -> DatasetSpec {
        DatasetSpec {
            dimension,
            sample_size,
            functions: (1..=FUNCTION_COUNT).collect(),
            instances,
            repetitions,
            master_seed,
        }
    }

    fn check(&self) -> Result<()> {
        if self.functions.is_empty() {
            return Err(CoreError::invalid("no functions requested"));
        }
        if !self.functions.windows(2).all(|w| w[0] < w[1]) {
            return Err(CoreError::invalid("function ids must be strictly ascending"));
        }
        if self.instances.is_empty() {
            return Err(CoreError::invalid("no instances requested"));
        }
        if !self.instances.windows(2).all(|w| w[0] < w[1]) {
            return Err(CoreError::invalid("instance ids must be strictly ascending"));
        }
        if self.repetitions == 0 {
            return Err(CoreError::invalid("need at least one repetition"));
        }
        Ok(())
    }
}

/// Deterministic Sobol' skip offset for one repetition of one problem.
pub fn skip_offset(
    master_seed: u64,
    function_id: u8,
    instance_id: u32,
    dimension: usize,
    sample_size: usize,
    repetition: u32,
) -> u64 {
    mix_seed(&[
        master_seed,
        function_id as u64,
        instance_id as u64,
        dimension as u64,
        sample_size as u64,
        repetition as u64,
    ]) % MAX_SKIP
}

/// Draws `n` Sobol' points starting at `skip`, scales them to the search
/// domain, and evaluates the instance at every point.
pub fn generate_sample(inst: &ProblemInstance, n: usize, skip: u64) -> Result<Sample> {
    let design = sobol_points(inst.dimension(), n, skip, SobolTable::embedded())?;
    let x = scale_to_domain(&design, DOMAIN_LO, DOMAIN_HI)?;
    let y = (0..x.rows())
        .map(|i| inst.evaluate(x.row(i)))
        .collect::<Result<Vec<f64>>>()?;
    Sample::new(x, y)
}

/// Generates the full labeled feature dataset for a spec. Rows come out
/// sorted by (function, instance, repetition); `meta.seed` records each
/// row's skip offset.
pub fn generate_dataset(
    spec: &DatasetSpec,
    opts: &FeatureOptions,
    exec: Execution,
) -> Result<FeatureDataset> {
    spec.check()?;
    let mut jobs = Vec::new();
    for &fid in &spec.functions {
        for &iid in &spec.instances {
            for rep in 0..spec.repetitions {
                jobs.push((fid, iid, rep));
            }
        }
    }
    let rows = run_jobs(exec, jobs, |(fid, iid, rep)| -> Result<FeatureRow> {
        let inst = ProblemInstance::new(fid, iid, spec.dimension)?;
        let skip = skip_offset(
            spec.master_seed,
            fid,
            iid,
            spec.dimension,
            spec.sample_size,
            rep,
        );
        let sample = generate_sample(&inst, spec.sample_size, skip)?;
        let features = compute_features(&sample, opts)?;
        Ok(FeatureRow {
            meta: RowMeta {
                function_id: fid,
                instance_id: iid,
                dimension: spec.dimension,
                sample_size: spec.sample_size,
                repetition: rep,
                seed: skip,
            },
            values: *features.as_array(),
        })
    });
    FeatureDataset::new(rows.into_iter().collect::<Result<Vec<_>>>()?)
}
