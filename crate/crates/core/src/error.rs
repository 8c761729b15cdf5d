//! Crate error type.

use thiserror::Error;

/// Errors surfaced by the solver and diagnostics layers.
#[derive(Debug, Error)]
pub enum CoreError {
    /// Invalid grid construction parameters.
    #[error("grid: {0}")]
    Grid(String),

    /// Operands live on different grids or lattices.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A momentum weight was requested that is not integrable.
    #[error("integrability: {0}")]
    Integrability(String),

    /// The coupling coefficient N_c lost positivity.
    #[error("coupling positivity: min N_c = {min_nc:.6e} at step {step}")]
    CouplingPositivity { min_nc: f64, step: u64 },

    /// The kinetic field developed a negative part beyond the diagnostic bound.
    #[error("positivity diagnostic: min f = {min_f:.6e} against max f = {max_f:.6e}")]
    Positivity { min_f: f64, max_f: f64 },

    /// Not enough usable samples for a fit.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// Degenerate input (for example a zero denominator in a quotient).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// Time-series bookkeeping error (missing channel, NaN entry, ...).
    #[error("series: {0}")]
    Series(String),

    /// Configuration rejected with one message per problem found.
    #[error("invalid configuration:\n{}", .0.join("\n"))]
    Config(Vec<String>),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
