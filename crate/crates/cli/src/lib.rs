//! Experiment runners, output formats and configuration for the `ampforge`
//! command-line harness.
//!
//! Every experiment is a pure function of its configuration and seed: the
//! ChaCha12 generator in the core crate makes identical (config, seed) pairs
//! produce identical output files byte for byte. Parallelism (rayon) only
//! fans out across independent seeded trials; results are merged in seed
//! order before anything is written.

pub mod config;
pub mod experiments;
pub mod fuzz;
pub mod output;
