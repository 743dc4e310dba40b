use clap::ValueEnum;
use civita_core::Truncation;

use crate::error::AppError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// `f64` coefficients with the zero threshold `zeta`.
    Float,
    /// Exact rational coefficients.
    Exact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunConfig {
    pub depth: u32,
    pub zeta: f64,
    pub tol: f64,
    pub mode: Mode,
    pub output: OutputFormat,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            depth: Truncation::DEFAULT_DEPTH,
            zeta: Truncation::DEFAULT_ZETA,
            tol: civita_core::integrate::DEFAULT_TOL,
            mode: Mode::Float,
            output: OutputFormat::Json,
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), AppError> {
        if self.depth < 4 {
            return Err(AppError::Usage(format!("depth must be at least 4, got {}", self.depth)));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(AppError::Usage(format!("tol must be positive, got {}", self.tol)));
        }
        if self.mode == Mode::Float && (self.zeta.is_nan() || self.zeta <= 0.0) {
            return Err(AppError::Usage("float mode needs a positive zeta".into()));
        }
        Ok(())
    }

    pub fn truncation(&self) -> Truncation {
        match self.mode {
            Mode::Exact => Truncation::exact(self.depth),
            Mode::Float => Truncation::new(self.depth, self.zeta),
        }
    }
}
