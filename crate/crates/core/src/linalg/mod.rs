//! Dense complex matrices and the structural operations on multipartite
//! states: Kronecker products, partial traces, partial transposes and the
//! Hermitian eigendecomposition everything else is built on.
//!
//! Subsystem 0 is the leftmost tensor factor. A global basis index
//! decomposes big-endian over the subsystem dimensions, so for dims
//! `[d0, d1, d2]` the index of `|i0 i1 i2>` is `(i0 * d1 + i1) * d2 + i2`.

mod density;
mod eig;
mod matrix;

pub use density::{partial_transpose, DensityMatrix, Residuals, Spectrum};
pub use eig::{hermitian_eig, Eigen};
pub use matrix::{kron, ComplexMatrix};

pub type C64 = num_complex::Complex<f64>;

/// Tolerance on `max |M - M^dagger|` for inputs treated as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Tolerance on `|Tr(rho) - 1|`.
pub const TRACE_TOL: f64 = 1e-10;
/// Eigenvalues in `[-CLAMP_TOL, 0)` are rounded up to zero; anything lower
/// means the matrix is not positive semidefinite.
pub const CLAMP_TOL: f64 = 1e-9;
