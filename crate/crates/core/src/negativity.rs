//! Negativity `(‖rho^{T_B}‖₁ − 1)/2` and its extremes over bipartitions.
//!
//! The partial transpose of a Hermitian matrix is Hermitian, so the trace
//! norm is the sum of absolute eigenvalues and the negativity is the total
//! weight of the negative ones.

use alloc::vec::Vec;

use crate::linalg::{hermitian_eig, DensityMatrix, CLAMP_TOL};
use crate::{Error, Result};

/// A split of the subsystems into two nonempty groups. Canonical form has
/// subsystem 0 on side A.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bipartition {
    side_a: Vec<usize>,
    side_b: Vec<usize>,
}

impl Bipartition {
    /// Builds the split with `side` on one side and the rest on the other,
    /// swapping sides if needed so that subsystem 0 is on side A.
    pub fn new(side: &[usize], num_subsystems: usize) -> Result<Self> {
        let mut mask = alloc::vec![false; num_subsystems];
        for &k in side {
            if k >= num_subsystems {
                return Err(Error::SubsystemOutOfRange {
                    index: k,
                    count: num_subsystems,
                });
            }
            mask[k] = true;
        }
        let n_in = mask.iter().filter(|&&b| b).count();
        if n_in == 0 || n_in == num_subsystems {
            return Err(Error::InvalidBipartition("both sides must be nonempty"));
        }
        if !mask[0] {
            mask.iter_mut().for_each(|b| *b = !*b);
        }
        Ok(Self {
            side_a: (0..num_subsystems).filter(|&k| mask[k]).collect(),
            side_b: (0..num_subsystems).filter(|&k| !mask[k]).collect(),
        })
    }

    /// All `2^(m-1) - 1` canonical splits of `m` subsystems.
    pub fn all(num_subsystems: usize) -> Vec<Self> {
        if !(2..usize::BITS as usize).contains(&num_subsystems) {
            return Vec::new();
        }
        let m = num_subsystems;
        (0..(1usize << (m - 1)) - 1)
            .map(|mask| {
                // subsystem 0 always on side A; bits of `mask` place 1..m
                let side_b: Vec<usize> = (1..m).filter(|&k| mask >> (k - 1) & 1 == 0).collect();
                let side_a: Vec<usize> = (0..m).filter(|k| !side_b.contains(k)).collect();
                Self { side_a, side_b }
            })
            .collect()
    }

    pub fn side_a(&self) -> &[usize] {
        &self.side_a
    }

    pub fn side_b(&self) -> &[usize] {
        &self.side_b
    }
}

/// Negativity with the subsystems in `transposed` partially transposed.
pub fn negativity_transposing(rho: &DensityMatrix, transposed: &[usize]) -> Result<f64> {
    let pt = rho.partial_transpose_many(transposed)?;
    let neg: f64 = hermitian_eig(&pt)?
        .values
        .iter()
        .filter(|&&v| v < 0.0)
        .map(|v| -v)
        .sum();
    Ok(if neg <= CLAMP_TOL { 0.0 } else { neg })
}

pub fn negativity(rho: &DensityMatrix, split: &Bipartition) -> Result<f64> {
    if split.side_a.len() + split.side_b.len() != rho.num_subsystems() {
        return Err(Error::InvalidBipartition("split does not match the state's subsystems"));
    }
    negativity_transposing(rho, &split.side_b)
}

#[derive(Debug, Clone, PartialEq)]
pub struct NegativityExtremes {
    pub min: f64,
    pub max: f64,
    pub argmin: Bipartition,
    pub argmax: Bipartition,
}

/// Minimum and maximum negativity over every bipartition. The first split
/// in [`Bipartition::all`] order wins ties.
pub fn negativity_extremes(rho: &DensityMatrix) -> Result<NegativityExtremes> {
    let m = rho.num_subsystems();
    let splits = Bipartition::all(m);
    if splits.is_empty() {
        return Err(Error::TooFewSubsystems { required: 2, actual: m });
    }
    let values = splits.iter().map(|s| negativity(rho, s)).collect::<Result<Vec<_>>>()?;
    let (mut imin, mut imax) = (0, 0);
    for (i, &v) in values.iter().enumerate() {
        if v < values[imin] {
            imin = i;
        }
        if v > values[imax] {
            imax = i;
        }
    }
    Ok(NegativityExtremes {
        min: values[imin],
        max: values[imax],
        argmin: splits[imin].clone(),
        argmax: splits[imax].clone(),
    })
}
