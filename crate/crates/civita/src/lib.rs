//! Std companion to `civita-core`: the LC calculator, JSON and CSV formats,
//! seeded random generators and the acceptance suite behind the `civita`
//! command-line tool.

pub mod calc;
pub mod config;
pub mod error;
pub mod formats;
pub mod gen;
pub mod suite;

pub use config::{Mode, OutputFormat, RunConfig};
pub use error::AppError;
