//! Sweeps over the `(phi, kappa)` plane that produce plot-ready tables.

pub mod config;
pub mod error;
pub mod output;
pub mod sweeps;

pub use config::{Format, Range, SweepConfig};
pub use error::CliError;
pub use output::{Table, Value};
