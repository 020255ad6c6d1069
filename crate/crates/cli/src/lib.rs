//! Command-line experiments over `swarmsec-core`: seeded runs, algorithm
//! comparisons, eavesdropper sweeps, baselines and CSV export.

pub mod commands;
pub mod experiments;
pub mod export;
