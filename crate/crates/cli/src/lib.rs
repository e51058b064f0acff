//! Command-line layer over `lefschetz-core`: spec files, the reference corpus, randomized
//! trials and report rendering.

pub mod app;
pub mod corpus;
pub mod error;
pub mod report;
pub mod spec_file;
pub mod trials;

pub use app::{run, Outcome};
pub use error::CliError;
pub use report::RunReport;
pub use spec_file::{parse_ideal_spec, render_ideal_spec};
