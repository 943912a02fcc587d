//! File formats and helpers behind the `jetrank` command line.

pub mod config_file;
pub mod error;
pub mod output;
pub mod report;
pub mod weight_arg;

pub use error::{CliError, ExitStatus};
