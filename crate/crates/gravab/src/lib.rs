//! Mission presets, run configuration, reports and file formats on top of
//! `gravab-core`.

pub mod config;
pub mod error;
pub mod io;
pub mod pipeline;
pub mod report;

pub use config::{OrbitSource, OutputFormat, RunConfig};
pub use error::CliError;
pub use pipeline::{run_pipeline, PipelineOutput, ResolvedRun};
pub use report::Report;
