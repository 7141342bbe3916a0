//! Core library for landscape-aware benchmark function classification.
//!
//! The crate provides the full pipeline from raw optimization landscapes to a
//! classified function identity:
//!
//! * [`bbob`] — the 24 standard noiseless benchmark functions on `[-5, 5]^d`
//!   with deterministic, instance-seeded translations and rotations,
//! * [`sobol`] — Sobol' low-discrepancy sample designs (Joe–Kuo direction
//!   numbers, Gray-code ordering),
//! * [`features`] — ten exploratory landscape features computed from one
//!   sampled design,
//! * [`dataset`] — labelled feature datasets, min–max normalization, and
//!   train/test split plans,
//! * [`classify`] — three 24-class classifiers (majority judgment, CART
//!   decision tree, k-nearest-neighbors),
//! * [`validate`] — repeated validation runs, an exhaustive minimal feature
//!   portfolio search, and instance-invariance reporting,
//! * [`pipeline`] — orchestration that turns an experiment description into a
//!   feature dataset, optionally in parallel (see [`exec`]).
//!
//! Everything is deterministic given a master seed: the same inputs produce
//! bit-identical samples, features, splits, and reports.

pub mod bbob;
pub mod classify;
pub mod dataset;
pub mod error;
pub mod exec;
pub mod features;
pub(crate) mod linalg;
pub mod pipeline;
pub mod sobol;
pub mod util;
pub mod validate;

pub use error::CoreError;
