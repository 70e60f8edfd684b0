//! # qcorr-core
//!
//! Entropic measures of nonclassical correlation for multipartite density
//! matrices, plus the negativity baseline they are compared against.
//!
//! A state is classically correlated when its density matrix has an
//! eigenbasis built as a tensor product of local orthonormal bases. Two
//! measures quantify the departure from that:
//!
//! | Measure | Definition | How it is computed |
//! |---------|------------|--------------------|
//! | [`measure_d`] | min over product bases of H(diag) − S(ρ) | randomized search, upper bound |
//! | [`measure_g`] | max over subsystems of the best block-sum mimic of the local spectrum | exact enumeration |
//! | [`negativity`] | (‖ρ^{T_B}‖₁ − 1)/2 | eigendecomposition of the partial transpose |
//!
//! Entropies are in bits throughout.
//!
//! ```
//! use qcorr_core::{measure_g, states};
//!
//! let rho = states::bell_mixture(0.5).unwrap();
//! let g = measure_g::compute_g(&rho).unwrap();
//! assert!(g.value < 1e-9);
//! ```
//!
//! The crate is `no_std` and needs only `alloc`. File formats, the parallel
//! trial driver and the command-line front end live in the `qcorr` crate.

#![no_std]
#![forbid(unsafe_code)]
// `!(x <= tol)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod basis;
pub mod entropy;
mod error;
pub mod linalg;
pub mod measure_d;
pub mod measure_g;
pub mod negativity;
pub mod states;

pub use basis::LocalBasis;
pub use entropy::ProbabilityVector;
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, DensityMatrix, Spectrum, C64};
