//! Experiment runner behind the `amplearn` binary.

pub mod config;
pub mod experiments;
pub mod table;

pub use config::{load, Diagnostic, Diagnostics, Experiment, ExperimentConfig, Level};
pub use experiments::run;
pub use table::{render_csv, write_outputs, ResultTable};
