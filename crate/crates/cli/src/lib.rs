//! Batch front end for `gapspace`: instance files in, reports out.

pub mod app;
pub mod error;
pub mod instance;
pub mod render;

pub use app::run;
pub use error::CliError;
pub use instance::{InstanceDocument, Model};
