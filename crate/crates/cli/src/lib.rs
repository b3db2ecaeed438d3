//! Command-line tool and JSON API over `envelope-core`: root solving and
//! classification, SVG figures of the line family and its envelope, CSV
//! samples of the envelope and of discrete Legendre transforms.

pub mod api;
pub mod commands;
pub mod config;
pub mod csv_io;
pub mod error;
pub mod format;
pub mod payload;
pub mod svg;

pub use commands::{run, Cli};
pub use config::Settings;
pub use error::{CliError, CliResult};
