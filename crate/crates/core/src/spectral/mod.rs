//! Grid, transform, and Fourier-multiplier infrastructure shared by the
//! kinetic and NLS solvers.

pub mod fft;
pub mod grid;
pub mod lp;
pub mod multiplier;
pub mod symbols;

pub use fft::SpatialFft;
pub use grid::Grid;
pub use symbols::SymbolTable;
