//! Shannon, binary and von Neumann entropies, all in bits.

use alloc::vec::Vec;

use crate::linalg::{DensityMatrix, CLAMP_TOL};
use crate::{Error, Result};

/// Tolerance on `|sum(p) - 1|`.
pub const SUM_TOL: f64 = 1e-9;

/// A discrete distribution: entries in `[0, 1]` summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector {
    probs: Vec<f64>,
}

impl ProbabilityVector {
    /// Clamps entries in `[-1e-9, 0)` to zero and checks the sum.
    pub fn new(mut probs: Vec<f64>) -> Result<Self> {
        for p in probs.iter_mut() {
            if !p.is_finite() {
                return Err(Error::NonFinite);
            }
            if *p < 0.0 {
                if *p < -CLAMP_TOL {
                    return Err(Error::InvalidProbabilities("negative entry"));
                }
                *p = 0.0;
            }
            if *p > 1.0 + CLAMP_TOL {
                return Err(Error::InvalidProbabilities("entry above one"));
            }
        }
        let sum: f64 = probs.iter().sum();
        if !((sum - 1.0).abs() <= SUM_TOL) {
            return Err(Error::InvalidProbabilities("entries do not sum to one"));
        }
        Ok(Self { probs })
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.probs
    }
}

/// `-sum p log2 p` over a validated distribution.
pub fn shannon(p: &ProbabilityVector) -> f64 {
    shannon_bits(&p.probs)
}

/// `-sum p log2 p` over raw weights, with `0 log 0 = 0`. Non-positive
/// entries contribute nothing; no normalization check is done.
#[inline]
pub fn shannon_bits(p: &[f64]) -> f64 {
    let mut h = 0.0;
    for &x in p {
        if x > 0.0 {
            h -= x * libm::log2(x);
        }
    }
    // rounding can push a deterministic distribution to -1e-16 or -0.0
    if h > 0.0 {
        h
    } else {
        0.0
    }
}

/// `H(x) = -x log2 x - (1-x) log2 (1-x)`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::ParameterOutOfRange {
            name: "x",
            value: x,
            min: 0.0,
            max: 1.0,
        });
    }
    Ok(shannon_bits(&[x, 1.0 - x]))
}

/// Shannon entropy of the spectrum of `rho`.
pub fn vn_entropy(rho: &DensityMatrix) -> Result<f64> {
    Ok(shannon_bits(rho.spectrum()?.values()))
}
