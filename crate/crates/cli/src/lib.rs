//! Command-line runner and local HTTP API over `paradoxlab-core`.

pub mod cli;
pub mod error;
pub mod params;
pub mod render;
pub mod run;
pub mod serve;

pub use error::{CliError, ErrorCode};
pub use params::{Paradox, Params};
pub use run::{GeometryOutput, IterationReport, LabeledCurve, RunOutput, Settings};
