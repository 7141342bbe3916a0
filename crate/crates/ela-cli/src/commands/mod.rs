//! The five commands and their shared output-directory plumbing.

pub mod features;
pub mod report;
pub mod sample;
pub mod select;
pub mod validate;

use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use ela_core::classify::ClassifierKind;

use crate::config::Config;
use crate::error::{io_err, CliError, CliResult};

/// Resolved configuration plus the output layout every command shares.
/// Constructing a context creates the output root and serializes the
/// effective configuration next to the artifacts it will produce.
pub struct Ctx {
    pub cfg: Config,
    /// FNV-1a hash of the canonical configuration serialization; embedded
    /// in every produced file.
    pub hash: String,
    started: Instant,
}

impl Ctx {
    pub fn new(cfg: Config) -> CliResult<Ctx> {
        let hash = cfg.hash();
        let root = cfg.output.dir.clone();
        std::fs::create_dir_all(&root).map_err(|e| io_err(&root, e))?;
        let config_path = root.join("config.toml");
        std::fs::write(&config_path, cfg.canonical_toml())
            .map_err(|e| io_err(&config_path, e))?;
        Ok(Ctx {
            cfg,
            hash,
            started: Instant::now(),
        })
    }

    pub fn out(&self) -> &Path {
        &self.cfg.output.dir
    }

    /// Creates (if needed) and returns a subdirectory of the output root.
    pub fn subdir(&self, name: &str) -> CliResult<PathBuf> {
        let dir = self.out().join(name);
        std::fs::create_dir_all(&dir).map_err(|e| io_err(&dir, e))?;
        Ok(dir)
    }

    pub fn features_path(&self, dimension: usize, n: usize) -> PathBuf {
        self.out()
            .join("features")
            .join(format!("d{dimension}_n{n}.csv"))
    }

    pub fn samples_dir(&self, dimension: usize, n: usize) -> PathBuf {
        self.out()
            .join("samples")
            .join(format!("d{dimension}"))
            .join(format!("n{n}"))
    }

    /// Appends one completion line to the `run.log` sidecar — the only
    /// artifact that carries wall-clock timestamps, so every other output
    /// stays byte-identical across reruns.
    pub fn log_completion(&self, command: &str) {
        let stamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let line = format!(
            "[{stamp}] {command} completed in {} ms (config {})\n",
            self.started.elapsed().as_millis(),
            self.hash
        );
        let path = self.out().join("run.log");
        let previous = std::fs::read_to_string(&path).unwrap_or_default();
        let _ = std::fs::write(&path, previous + &line);
    }
}

/// "d5_n1250_mj" — the cell identifier used in output file names.
pub fn cell_stem(dimension: usize, n: usize, classifier: ClassifierKind) -> String {
    format!("d{dimension}_n{n}_{}", classifier.as_str())
}

/// Loads the feature file for one cell, with a hint when it is missing.
pub fn load_cell(
    ctx: &Ctx,
    dimension: usize,
    n: usize,
) -> CliResult<ela_core::dataset::FeatureDataset> {
    let path = ctx.features_path(dimension, n);
    if !path.exists() {
        return Err(CliError::Data(format!(
            "no feature file at {}; run `ela features` first",
            path.display()
        )));
    }
    Ok(ela_core::dataset::FeatureDataset::load(&path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Overrides;

    #[test]
    fn context_writes_config_and_layout_helpers_agree() {
        let dir = tempfile::tempdir().unwrap();
        let over = Overrides {
            out: Some(dir.path().join("artifacts")),
            ..Overrides::default()
        };
        let cfg = Config::resolve(None, &over).unwrap();
        let ctx = Ctx::new(cfg).unwrap();
        assert!(dir.path().join("artifacts/config.toml").exists());
        assert_eq!(
            ctx.features_path(5, 1250),
            dir.path().join("artifacts/features/d5_n1250.csv")
        );
        assert!(ctx
            .samples_dir(5, 1250)
            .ends_with("artifacts/samples/d5/n1250"));
        assert_eq!(cell_stem(5, 1250, ClassifierKind::Knn), "d5_n1250_knn");
    }

    #[test]
    fn missing_feature_file_is_a_data_error() {
        let dir = tempfile::tempdir().unwrap();
        let over = Overrides {
            out: Some(dir.path().to_path_buf()),
            ..Overrides::default()
        };
        let ctx = Ctx::new(Config::resolve(None, &over).unwrap()).unwrap();
        match load_cell(&ctx, 5, 1250) {
            Err(CliError::Data(msg)) => assert!(msg.contains("ela features")),
            other => panic!("expected data error, got {other:?}"),
        }
    }
}
