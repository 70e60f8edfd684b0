use alloc::vec::Vec;

use super::{hermitian_eig, ComplexMatrix, Eigen, CLAMP_TOL, HERMITIAN_TOL, TRACE_TOL};
use crate::{Error, Result};

/// Eigenvalues of a density matrix: sorted descending, all non-negative.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    /// Sorts descending and clamps values in `[-1e-9, 0)` to zero.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        for v in values.iter_mut() {
            if !v.is_finite() {
                return Err(Error::NonFinite);
            }
            if *v < 0.0 {
                if *v < -CLAMP_TOL {
                    return Err(Error::NotPositive { min_eigenvalue: *v });
                }
                *v = 0.0;
            }
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.values
    }
}

/// A validated density matrix over an ordered list of subsystems.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    dims: Vec<usize>,
}

/// Residuals measured by [`DensityMatrix::residuals`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residuals {
    pub hermitian: f64,
    pub trace: f64,
    pub min_eigenvalue: f64,
}

impl DensityMatrix {
    /// Validates shape, Hermiticity, unit trace and positivity, then stores
    /// the Hermitian part of `mat`.
    pub fn new(mat: ComplexMatrix, dims: Vec<usize>) -> Result<Self> {
        check_shape(&mat, &dims)?;
        let residual = mat.hermitian_residual();
        if !(residual <= HERMITIAN_TOL) {
            return Err(Error::NotHermitian { residual });
        }
        let mat = mat.hermitian_part();
        let residual = (mat.trace() - 1.0).norm();
        if !(residual <= TRACE_TOL) {
            return Err(Error::TraceNotUnit { residual });
        }
        let min_eigenvalue = hermitian_eig(&mat)?.values.last().copied().unwrap_or(0.0);
        if min_eigenvalue < -CLAMP_TOL {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        Ok(Self { mat, dims })
    }

    /// Measures every invariant without failing on the first violation.
    /// Shape problems and non-Hermitian input (which the eigensolver cannot
    /// handle) still return an error.
    pub fn residuals(mat: &ComplexMatrix, dims: &[usize]) -> Result<Residuals> {
        check_shape(mat, dims)?;
        let hermitian = mat.hermitian_residual();
        let herm = mat.hermitian_part();
        let trace = (herm.trace() - 1.0).norm();
        let min_eigenvalue = if hermitian <= HERMITIAN_TOL {
            hermitian_eig(&herm)?.values.last().copied().unwrap_or(0.0)
        } else {
            f64::NAN
        };
        Ok(Residuals {
            hermitian,
            trace,
            min_eigenvalue,
        })
    }

    /// Output of operations that preserve the invariants by construction.
    pub(crate) fn from_trusted(mat: ComplexMatrix, dims: Vec<usize>) -> Self {
        debug_assert_eq!(mat.rows(), dims.iter().product::<usize>());
        Self {
            mat: mat.hermitian_part(),
            dims,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Total Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn num_subsystems(&self) -> usize {
        self.dims.len()
    }

    pub fn eigen(&self) -> Result<Eigen> {
        hermitian_eig(&self.mat)
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        Spectrum::new(self.eigen()?.values)
    }

    /// Same matrix, different tensor-factor bookkeeping (e.g. reading a 2x4
    /// state as 2x2x2).
    pub fn with_dims(&self, dims: Vec<usize>) -> Result<Self> {
        check_shape(&self.mat, &dims)?;
        Ok(Self {
            mat: self.mat.clone(),
            dims,
        })
    }

    /// `U rho U^dagger` for a unitary `U` on the full space.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Result<Self> {
        if u.unitarity_residual() > 1e-10 {
            return Err(Error::InvalidDims("conjugating matrix is not unitary"));
        }
        Ok(Self::from_trusted(self.mat.conjugate_by(u)?, self.dims.clone()))
    }

    /// `self ⊗ other`, with `other`'s subsystems appended after ours.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Self::from_trusted(super::kron(&self.mat, &other.mat), dims)
    }

    /// Reduced state on the subsystems in `keep` (any order, duplicates
    /// ignored); the result lists them in ascending order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        let m = self.dims.len();
        if keep.is_empty() {
            return Err(Error::EmptySubsystemSet);
        }
        let kept = vec_of_flags(m, keep)?;
        let digits = Digits::new(&self.dims);
        let kept_dims: Vec<usize> = (0..m).filter(|&k| kept[k]).map(|k| self.dims[k]).collect();
        let d_out: usize = kept_dims.iter().product();
        let d = self.dim();

        let mut kept_index = Vec::with_capacity(d);
        let mut traced_index = Vec::with_capacity(d);
        for i in 0..d {
            let (mut ki, mut ti) = (0usize, 0usize);
            for (k, &is_kept) in kept.iter().enumerate() {
                let digit = digits.digit(i, k);
                if is_kept {
                    ki = ki * self.dims[k] + digit;
                } else {
                    ti = ti * self.dims[k] + digit;
                }
            }
            kept_index.push(ki);
            traced_index.push(ti);
        }

        let mut out = ComplexMatrix::zeros(d_out, d_out);
        for i in 0..d {
            for j in 0..d {
                if traced_index[i] == traced_index[j] {
                    out[(kept_index[i], kept_index[j])] += self.mat[(i, j)];
                }
            }
        }
        Ok(Self::from_trusted(out, kept_dims))
    }

    /// Transposes the tensor factor `subsystem` only.
    pub fn partial_transpose(&self, subsystem: usize) -> Result<ComplexMatrix> {
        self.partial_transpose_many(&[subsystem])
    }

    /// Transposes every tensor factor listed in `subsystems`. The partial
    /// transposes on distinct factors commute, so order is irrelevant.
    pub fn partial_transpose_many(&self, subsystems: &[usize]) -> Result<ComplexMatrix> {
        partial_transpose(&self.mat, &self.dims, subsystems)
    }
}

/// Partial transpose of any square matrix over the tensor factors `dims`,
/// transposing the factors listed in `subsystems`.
pub fn partial_transpose(mat: &ComplexMatrix, dims: &[usize], subsystems: &[usize]) -> Result<ComplexMatrix> {
    check_shape(mat, dims)?;
    let flags = vec_of_flags(dims.len(), subsystems)?;
    let digits = Digits::new(dims);
    let d = mat.rows();
    let mut out = ComplexMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let (mut ti, mut tj) = (i, j);
            for (k, &flag) in flags.iter().enumerate() {
                if flag {
                    let di = digits.digit(i, k);
                    let dj = digits.digit(j, k);
                    let stride = digits.strides[k];
                    ti = ti - di * stride + dj * stride;
                    tj = tj - dj * stride + di * stride;
                }
            }
            out[(ti, tj)] = mat[(i, j)];
        }
    }
    Ok(out)
}

fn check_shape(mat: &ComplexMatrix, dims: &[usize]) -> Result<()> {
    if !mat.is_square() {
        return Err(Error::NotSquare {
            rows: mat.rows(),
            cols: mat.cols(),
        });
    }
    if dims.is_empty() {
        return Err(Error::InvalidDims("at least one subsystem is required"));
    }
    if dims.iter().any(|&d| d < 2) {
        return Err(Error::InvalidDims("every subsystem dimension must be at least 2"));
    }
    let total = dims
        .iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .ok_or(Error::InvalidDims("dimension product overflows"))?;
    if total != mat.rows() {
        return Err(Error::DimensionMismatch {
            expected: total,
            actual: mat.rows(),
        });
    }
    if mat.as_slice().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(())
}

fn vec_of_flags(m: usize, indices: &[usize]) -> Result<Vec<bool>> {
    let mut flags = alloc::vec![false; m];
    for &k in indices {
        if k >= m {
            return Err(Error::SubsystemOutOfRange { index: k, count: m });
        }
        flags[k] = true;
    }
    Ok(flags)
}

/// Big-endian digit extraction for a mixed-radix index.
pub(crate) struct Digits<'a> {
    dims: &'a [usize],
    strides: Vec<usize>,
}

impl<'a> Digits<'a> {
    pub(crate) fn new(dims: &'a [usize]) -> Self {
        let mut strides = alloc::vec![1usize; dims.len()];
        for k in (0..dims.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * dims[k + 1];
        }
        Self { dims, strides }
    }

    #[inline]
    pub(crate) fn digit(&self, index: usize, k: usize) -> usize {
        (index / self.strides[k]) % self.dims[k]
    }
}

impl From<&DensityMatrix> for ComplexMatrix {
    fn from(rho: &DensityMatrix) -> Self {
        rho.mat.clone()
    }
}
