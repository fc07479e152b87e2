//! Sampling engine, residual aggregation and reports.

pub mod classify;
pub mod config;
pub mod report;
pub mod suite;

pub use classify::{classification_table, classify, Classification};
pub use config::{RunConfig, Tolerances, DEFAULT_SAMPLES};
pub use report::{Bound, CheckRecord, VerificationReport};
pub use suite::{run_classify, run_sample, run_verify, run_witness, SampleKind};
