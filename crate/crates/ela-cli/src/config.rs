//! Experiment configuration: defaults, TOML file layer, flag overrides.
//!
//! The effective configuration is built in three layers — built-in defaults,
//! then an optional TOML file, then command-line flags — and is serialized
//! next to every run's outputs together with a 64-bit FNV-1a hash of that
//! serialization so downstream files can state exactly which configuration
//! produced them.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use ela_core::classify::ClassifierKind;
use ela_core::dataset::Protocol;
use ela_core::features::{FeatureName, FeatureOptions, IcGrid};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct Config {
    pub experiment: Experiment,
    pub features: Features,
    pub output: Output,
}

/// Sampling grid and validation parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Experiment {
    /// Problem dimensions to cover.
    pub dimensions: Vec<usize>,
    /// Sample sizes, expressed as multiples of the dimension.
    pub samples_per_dim: Vec<usize>,
    /// Independent repetitions per (function, instance).
    pub repetitions: u32,
    /// Instance identifiers to instantiate.
    pub instances: Vec<u32>,
    /// Classifiers to drive: any of "mj", "dt", "knn".
    pub classifiers: Vec<String>,
    /// Train/test protocol: "subsample", "multi", or "loio".
    pub protocol: String,
    /// Master seed for sampling and split shuffling.
    pub seed: u64,
    /// Validation runs per subset.
    pub runs: u32,
    /// Accuracy every run must reach during subset selection.
    pub gate: f64,
    /// Neighbor count for the KNN classifier.
    pub knn_k: usize,
    /// Feature names for `validate` (empty = all ten).
    pub subset: Vec<String>,
    /// Worker threads for data-parallel stages (0 = library default).
    pub workers: usize,
}

impl Default for Experiment {
    fn default() -> Self {
        Experiment {
            dimensions: vec![5, 10, 15, 20, 25, 30],
            samples_per_dim: vec![30, 50, 100, 250, 650, 800, 1000],
            repetitions: 100,
            instances: vec![1],
            classifiers: vec!["mj".to_string()],
            protocol: "subsample".to_string(),
            seed: 42,
            runs: 20,
            gate: 0.98,
            knn_k: 5,
            subset: Vec::new(),
            workers: 0,
        }
    }
}

/// Feature-computation knobs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Features {
    /// Restrict the principal-component feature to the design points.
    pub pca_design_only: bool,
    /// Information-content threshold grid: 10^t for `ic_grid_count` values of
    /// `t` evenly spaced over [ic_min_exp, ic_max_exp], plus zero.
    pub ic_min_exp: f64,
    pub ic_max_exp: f64,
    pub ic_grid_count: usize,
    /// Spread threshold for the instance-invariance report.
    pub invariance_theta: f64,
}

impl Default for Features {
    fn default() -> Self {
        let g = IcGrid::default();
        Features {
            pca_design_only: false,
            ic_min_exp: g.min_exp,
            ic_max_exp: g.max_exp,
            ic_grid_count: g.count,
            invariance_theta: 0.1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Output {
    /// Root directory for all artifacts.
    pub dir: PathBuf,
}

impl Default for Output {
    fn default() -> Self {
        Output {
            dir: PathBuf::from("out"),
        }
    }
}

/// Flag-level overrides collected by the argument parser; every field is
/// optional and, when present, replaces the corresponding config value.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub dimensions: Option<Vec<usize>>,
    pub samples_per_dim: Option<Vec<usize>>,
    pub repetitions: Option<u32>,
    pub instances: Option<Vec<u32>>,
    pub classifiers: Option<Vec<String>>,
    pub protocol: Option<String>,
    pub subset: Option<Vec<String>>,
    pub out: Option<PathBuf>,
}

impl Config {
    /// Builds the effective configuration: defaults, then the TOML file (if
    /// given), then flag overrides; the result is validated.
    pub fn resolve(file: Option<&Path>, over: &Overrides) -> CliResult<Config> {
        let mut cfg = match file {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    CliError::Usage(format!("cannot read config {}: {e}", path.display()))
                })?;
                toml::from_str(&text).map_err(|e| {
                    CliError::Usage(format!("invalid config {}: {e}", path.display()))
                })?
            }
            None => Config::default(),
        };

        let e = &mut cfg.experiment;
        macro_rules! take {
            ($field:ident, $target:expr) => {
                if let Some(v) = over.$field.clone() {
                    $target = v;
                }
            };
        }
        take!(seed, e.seed);
        take!(dimensions, e.dimensions);
        take!(samples_per_dim, e.samples_per_dim);
        take!(repetitions, e.repetitions);
        take!(instances, e.instances);
        take!(classifiers, e.classifiers);
        take!(protocol, e.protocol);
        take!(subset, e.subset);
        take!(out, cfg.output.dir);

        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> CliResult<()> {
        let e = &self.experiment;
        let usage = |msg: String| Err(CliError::Usage(msg));
        fn ascending<T: PartialOrd>(v: &[T]) -> bool {
            v.windows(2).all(|w| w[0] < w[1])
        }
        if e.dimensions.is_empty() || !ascending(&e.dimensions) {
            return usage("dimensions must be non-empty and strictly ascending".into());
        }
        if e.samples_per_dim.is_empty() || !ascending(&e.samples_per_dim) {
            return usage("samples_per_dim must be non-empty and strictly ascending".into());
        }
        if e.instances.is_empty() || !ascending(&e.instances) {
            return usage("instances must be non-empty and strictly ascending".into());
        }
        if e.repetitions == 0 {
            return usage("repetitions must be >= 1".into());
        }
        if e.runs == 0 {
            return usage("runs must be >= 1".into());
        }
        if !(e.gate > 0.0 && e.gate <= 1.0) {
            return usage(format!("gate {} outside (0, 1]", e.gate));
        }
        if e.knn_k == 0 {
            return usage("knn_k must be >= 1".into());
        }
        if e.classifiers.is_empty() {
            return usage("classifiers must not be empty".into());
        }
        for c in &e.classifiers {
            self.parse_classifier(c)?;
        }
        self.protocol()?;
        self.subset()?;
        let f = &self.features;
        if f.ic_grid_count < 2 || f.ic_min_exp >= f.ic_max_exp {
            return usage("information-content grid needs >= 2 thresholds and min_exp < max_exp".into());
        }
        if f.invariance_theta < 0.0 {
            return usage("invariance_theta must be >= 0".into());
        }
        Ok(())
    }

    fn parse_classifier(&self, name: &str) -> CliResult<ClassifierKind> {
        name.parse()
            .map_err(|_| CliError::Usage(format!("unknown classifier {name:?} (expected mj, dt, or knn)")))
    }

    pub fn classifiers(&self) -> CliResult<Vec<ClassifierKind>> {
        self.experiment
            .classifiers
            .iter()
            .map(|c| self.parse_classifier(c))
            .collect()
    }

    pub fn protocol(&self) -> CliResult<Protocol> {
        match self.experiment.protocol.as_str() {
            "subsample" => Ok(Protocol::Subsample),
            "multi" => Ok(Protocol::MultiInstanceSubsample),
            "loio" => Ok(Protocol::LeaveOneInstanceOut),
            other => Err(CliError::Usage(format!(
                "unknown protocol {other:?} (expected subsample, multi, or loio)"
            ))),
        }
    }

    /// Feature subset for `validate`; empty config means all ten features.
    pub fn subset(&self) -> CliResult<Vec<FeatureName>> {
        if self.experiment.subset.is_empty() {
            return Ok(FeatureName::ALL.to_vec());
        }
        self.experiment
            .subset
            .iter()
            .map(|s| {
                s.parse()
                    .map_err(|_| CliError::Usage(format!("unknown feature name {s:?}")))
            })
            .collect()
    }

    pub fn feature_options(&self) -> FeatureOptions {
        FeatureOptions {
            pca_design_only: self.features.pca_design_only,
            ic_grid: IcGrid {
                min_exp: self.features.ic_min_exp,
                max_exp: self.features.ic_max_exp,
                count: self.features.ic_grid_count,
            },
            ic_start_index: 0,
        }
    }

    /// Sample sizes for one dimension, in file order.
    pub fn sample_sizes(&self, dimension: usize) -> Vec<usize> {
        self.experiment
            .samples_per_dim
            .iter()
            .map(|m| m * dimension)
            .collect()
    }

    /// Canonical serialization — the text written to `config.toml`.
    pub fn canonical_toml(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }

    /// FNV-1a 64 hash of the result-determining configuration, as
    /// fixed-width hex. The output directory is deliberately excluded, so
    /// relocating artifacts does not change their bytes.
    pub fn hash(&self) -> String {
        let science = Config {
            experiment: self.experiment.clone(),
            features: self.features.clone(),
            output: Output::default(),
        };
        let canonical = toml::to_string_pretty(&science).expect("config serializes");
        let mut out = String::new();
        let _ = write!(out, "{:016x}", fnv1a64(canonical.as_bytes()));
        out
    }
}

/// FNV-1a with the standard 64-bit offset basis and prime.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}
