//! Instance files, report documents and the `quadinv` command line.

pub mod cli;
pub mod instance;
pub mod report;

pub use cli::run;
