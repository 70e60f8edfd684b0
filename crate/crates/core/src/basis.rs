//! Product bases, one unitary per subsystem, and their random generation.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::{kron, ComplexMatrix, C64};
use crate::{Error, Result};

/// Columns whose norm drops below this after orthogonalization are redrawn.
const RESTART_NORM: f64 = 1e-8;
/// Tolerance on `max |U^dagger U - I|`.
pub const UNITARY_TOL: f64 = 1e-10;

/// A product basis: column `j` of unitary `k` is basis vector `|e_j>` of
/// subsystem `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalBasis {
    unitaries: Vec<ComplexMatrix>,
}

impl LocalBasis {
    pub fn new(unitaries: Vec<ComplexMatrix>) -> Result<Self> {
        if unitaries.is_empty() {
            return Err(Error::InvalidDims("at least one subsystem is required"));
        }
        for u in &unitaries {
            if !u.is_square() {
                return Err(Error::NotSquare {
                    rows: u.rows(),
                    cols: u.cols(),
                });
            }
            if u.rows() < 2 {
                return Err(Error::InvalidDims("every subsystem dimension must be at least 2"));
            }
            if !(u.unitarity_residual() <= UNITARY_TOL) {
                return Err(Error::InvalidDims("local basis matrix is not unitary"));
            }
        }
        Ok(Self { unitaries })
    }

    pub(crate) fn from_trusted(unitaries: Vec<ComplexMatrix>) -> Self {
        Self { unitaries }
    }

    /// Computational basis on every subsystem.
    pub fn identity(dims: &[usize]) -> Self {
        Self {
            unitaries: dims.iter().map(|&d| ComplexMatrix::identity(d)).collect(),
        }
    }

    pub fn unitaries(&self) -> &[ComplexMatrix] {
        &self.unitaries
    }

    pub fn dims(&self) -> Vec<usize> {
        self.unitaries.iter().map(|u| u.rows()).collect()
    }

    /// `U_1 ⊗ U_2 ⊗ ... ⊗ U_m`.
    pub fn full_unitary(&self) -> ComplexMatrix {
        let mut it = self.unitaries.iter();
        let first = it.next().cloned().unwrap_or_else(|| ComplexMatrix::identity(1));
        it.fold(first, |acc, u| kron(&acc, u))
    }
}

/// Deterministic random stream for trial `trial` under `seed`.
///
/// ChaCha is counter based: the stream id selects an independent
/// keystream, so trial `i` sees the same numbers whichever worker runs it.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn gaussian<R: RngCore + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    C64::new(re, im)
}

/// Modified Gram-Schmidt with one re-orthogonalization pass, in place.
/// Returns the norm of `v` before normalization.
fn orthonormalize_against(v: &mut [C64], basis: &[Vec<C64>]) -> f64 {
    for _ in 0..2 {
        for q in basis {
            let overlap: C64 = q.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
            for (x, a) in v.iter_mut().zip(q) {
                *x -= overlap * a;
            }
        }
    }
    let norm = libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum::<f64>());
    if norm >= RESTART_NORM {
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
    norm
}

/// Random `d x d` unitary from complex Gaussian columns orthonormalized by
/// modified Gram-Schmidt with one re-orthogonalization pass.
pub fn random_unitary<R: RngCore + ?Sized>(d: usize, rng: &mut R) -> ComplexMatrix {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(d);
    while cols.len() < d {
        let mut v: Vec<C64> = (0..d).map(|_| gaussian(rng)).collect();
        if orthonormalize_against(&mut v, &cols) >= RESTART_NORM {
            cols.push(v);
        }
    }
    ComplexMatrix::from_fn(d, d, |i, j| cols[j][i])
}

/// Unitary near `u`: the columns of `u (I + scale G)` with `G` complex
/// Gaussian, orthonormalized. Falls back to `u` on a degenerate draw.
pub fn perturb_unitary<R: RngCore + ?Sized>(u: &ComplexMatrix, scale: f64, rng: &mut R) -> ComplexMatrix {
    let d = u.rows();
    let mut kick = ComplexMatrix::identity(d);
    for i in 0..d {
        for j in 0..d {
            kick[(i, j)] += gaussian(rng) * scale;
        }
    }
    let m = match u.matmul(&kick) {
        Ok(m) => m,
        Err(_) => return u.clone(),
    };
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(d);
    for j in 0..d {
        let mut v = m.column(j);
        if orthonormalize_against(&mut v, &cols) < RESTART_NORM {
            return u.clone();
        }
        cols.push(v);
    }
    ComplexMatrix::from_fn(d, d, |i, j| cols[j][i])
}

/// One independent random unitary per subsystem, drawn in subsystem order.
pub fn random_local_basis<R: RngCore + ?Sized>(dims: &[usize], rng: &mut R) -> LocalBasis {
    LocalBasis {
        unitaries: dims.iter().map(|&d| random_unitary(d, rng)).collect(),
    }
}
