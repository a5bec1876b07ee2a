//! File formats, parallel sweeps and the `twrc` command-line tool on top of
//! [`twrc_core`].

pub mod cli;
pub mod config;
mod error;
pub mod grid_io;
pub mod parallel;
pub mod report;
pub mod scheme_file;

pub use error::{Error, Result};
pub use grid_io::{read_grid, write_grid, GridRow};
pub use parallel::run_sweep_parallel;
