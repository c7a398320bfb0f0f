//! Seeds, experiment configuration, parallel execution and reporting.

pub mod config;
pub mod emit;
pub mod experiment;
pub mod seed;

pub use config::{ExperimentConfig, ExperimentKind, OutputFormat};
pub use emit::{emit, parse_csv, render, summary_svg, to_csv, to_json};
pub use experiment::{columns, run_experiment, Cell, ResultRow, ResultTable};
pub use seed::{derive_seed, substream};
