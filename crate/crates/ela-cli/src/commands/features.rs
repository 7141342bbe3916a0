//! `ela features` — one labeled feature file per (dimension, sample size).
//!
//! When `ela sample` has already materialized the designs for a cell, the
//! feature values are computed from those files (so externally produced or
//! archived designs can be substituted); otherwise the designs are generated
//! in memory. Both routes yield byte-identical feature files because the
//! design serialization round-trips floats exactly.

use ela_core::dataset::{FeatureDataset, FeatureRow, RowMeta};
use ela_core::exec::{run_jobs, Execution};
use ela_core::features::compute_features;
use ela_core::pipeline::{generate_dataset, DatasetSpec};

use crate::commands::{sample, Ctx};
use crate::error::{CliError, CliResult};

pub fn run(ctx: &Ctx) -> CliResult<()> {
    ctx.subdir("features")?;
    let e = &ctx.cfg.experiment;
    for &dim in &e.dimensions {
        for n in ctx.cfg.sample_sizes(dim) {
            let spec = DatasetSpec::full_suite(dim, n, e.instances.clone(), e.repetitions, e.seed);
            let ds = if ctx.samples_dir(dim, n).is_dir() {
                ingest(ctx, &spec)?
            } else {
                generate_dataset(&spec, &ctx.cfg.feature_options(), Execution::default())?
            };
            let path = ctx.features_path(dim, n);
            ds.save_with_comments(&path, &[format!("config-hash: {}", ctx.hash)])?;
            println!("features: {} ({} rows)", path.display(), ds.len());
        }
    }
    ctx.log_completion("features");
    Ok(())
}

/// Computes features from previously written design files, in the same
/// (function, instance, repetition) order the in-memory route uses.
fn ingest(ctx: &Ctx, spec: &DatasetSpec) -> CliResult<FeatureDataset> {
    let dir = ctx.samples_dir(spec.dimension, spec.sample_size);
    let mut jobs = Vec::new();
    for &fid in &spec.functions {
        for &iid in &spec.instances {
            for rep in 0..spec.repetitions {
                jobs.push((fid, iid, rep, dir.join(sample::file_name(fid, iid, rep))));
            }
        }
    }
    let opts = ctx.cfg.feature_options();
    let outcomes = run_jobs(Execution::default(), jobs, |(fid, iid, rep, path)| {
        if !path.exists() {
            return Err(CliError::Data(format!(
                "design file {} is missing; re-run `ela sample` or remove {} to generate in memory",
                path.display(),
                dir.display()
            )));
        }
        let (sample, seed) = sample::parse(&path)?;
        if sample.dimension() != spec.dimension || sample.len() != spec.sample_size {
            return Err(CliError::Data(format!(
                "{}: shape {}x{} does not match the configured cell {}x{}",
                path.display(),
                sample.len(),
                sample.dimension(),
                spec.sample_size,
                spec.dimension
            )));
        }
        let values = compute_features(&sample, &opts)?;
        Ok(FeatureRow {
            meta: RowMeta {
                function_id: fid,
                instance_id: iid,
                dimension: spec.dimension,
                sample_size: spec.sample_size,
                repetition: rep,
                seed,
            },
            values: *values.as_array(),
        })
    });
    let mut rows = Vec::with_capacity(outcomes.len());
    for o in outcomes {
        rows.push(o?);
    }
    Ok(FeatureDataset::new(rows)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{Config, Overrides};

    fn tiny_ctx(dir: &std::path::Path) -> Ctx {
        let over = Overrides {
            dimensions: Some(vec![2]),
            samples_per_dim: Some(vec![30]),
            repetitions: Some(2),
            out: Some(dir.to_path_buf()),
            ..Overrides::default()
        };
        Ctx::new(Config::resolve(None, &over).unwrap()).unwrap()
    }

    #[test]
    fn ingest_route_matches_in_memory_route() {
        let dir = tempfile::tempdir().unwrap();
        let ctx = tiny_ctx(dir.path());
        // In-memory route.
        run(&ctx).unwrap();
        let direct = std::fs::read_to_string(ctx.features_path(2, 60)).unwrap();
        // Design-file route.
        sample::run(&ctx).unwrap();
        run(&ctx).unwrap();
        let ingested = std::fs::read_to_string(ctx.features_path(2, 60)).unwrap();
        assert_eq!(direct, ingested);
        assert!(direct.starts_with("# config-hash: "));
    }

    #[test]
    fn partially_missing_designs_are_reported_with_the_path() {
        let dir = tempfile::tempdir().unwrap();
        let ctx = tiny_ctx(dir.path());
        sample::run(&ctx).unwrap();
        let victim = ctx.samples_dir(2, 60).join(sample::file_name(5, 1, 1));
        std::fs::remove_file(&victim).unwrap();
        let err = run(&ctx).unwrap_err();
        assert!(err.to_string().contains("f05_i01_r001.csv"), "{err}");
    }
}
