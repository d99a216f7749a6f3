//! Command-line front end for the `wishful` library.
//!
//! Each scenario (`binary`, `health`, `voting`, `finite`, `investor`) is
//! described by a JSON [`config::ScenarioConfig`], evaluated into a
//! [`table::Table`] and written as CSV. Named presets reproduce the standard
//! figures; a config may carry a sweep over one numeric parameter.

pub mod cli;
pub mod config;
pub mod error;
pub mod presets;
pub mod scenario;
pub mod table;

pub use cli::{main_with, resolve, Args};
pub use config::ScenarioConfig;
pub use error::{CliError, CliResult};
pub use scenario::{execute, run, summary, sweep};
pub use table::{format_g12, Cell, Table};
