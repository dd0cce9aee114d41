//! File formats and the command-line interface for `char2-core`.

pub mod cli;
pub mod format;

pub use cli::run;
