//! Density-matrix families used throughout the crate's tests and sweeps.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use crate::basis::LocalBasis;
use crate::entropy::ProbabilityVector;
use crate::linalg::{ComplexMatrix, DensityMatrix, C64};
use crate::{Error, Result};

const NORM_TOL: f64 = 1e-10;

fn check_range(name: &'static str, value: f64, min: f64, max: f64) -> Result<()> {
    if !(min..=max).contains(&value) {
        return Err(Error::ParameterOutOfRange { name, value, min, max });
    }
    Ok(())
}

fn real(v: f64) -> C64 {
    C64::new(v, 0.0)
}

/// `(|00> + |11>)/sqrt 2`.
pub fn bell_phi_plus() -> Vec<C64> {
    vec![real(FRAC_1_SQRT_2), real(0.0), real(0.0), real(FRAC_1_SQRT_2)]
}

/// `(|01> + |10>)/sqrt 2`.
pub fn bell_psi_plus() -> Vec<C64> {
    vec![real(0.0), real(FRAC_1_SQRT_2), real(FRAC_1_SQRT_2), real(0.0)]
}

/// `(|0...0> + |1...1>)/sqrt 2` on `n` qubits.
pub fn ghz_vector(n: usize) -> Vec<C64> {
    let d = 1usize << n;
    let mut v = vec![real(0.0); d];
    v[0] = real(FRAC_1_SQRT_2);
    v[d - 1] = real(FRAC_1_SQRT_2);
    v
}

/// `p |psi><psi| + (1 - p) I/d`.
pub fn pseudo_pure(psi: &[C64], p: f64, dims: &[usize]) -> Result<DensityMatrix> {
    check_range("p", p, 0.0, 1.0)?;
    let norm = libm::sqrt(psi.iter().map(|z| z.norm_sqr()).sum::<f64>());
    if !((norm - 1.0).abs() <= NORM_TOL) {
        return Err(Error::Unnormalized { norm });
    }
    let d = psi.len();
    let mixed = ComplexMatrix::identity(d).scale(real((1.0 - p) / d as f64));
    let pure = ComplexMatrix::outer(psi).scale(real(p));
    DensityMatrix::new(pure.add(&mixed)?, dims.to_vec())
}

/// `p |Phi+><Phi+| + (1 - p) |Psi+><Psi+|`.
pub fn bell_mixture(p: f64) -> Result<DensityMatrix> {
    check_range("p", p, 0.0, 1.0)?;
    let a = ComplexMatrix::outer(&bell_phi_plus()).scale(real(p));
    let b = ComplexMatrix::outer(&bell_psi_plus()).scale(real(1.0 - p));
    DensityMatrix::new(a.add(&b)?, vec![2, 2])
}

/// Two-qubit mixture of `|00>`, `|11>` and `(|01> + |10>)/sqrt 2`:
/// diagonal `(1/2 - p, p, p, 1/2 - p)` with `p` on the central off-diagonal.
pub fn sigma_p(p: f64) -> Result<DensityMatrix> {
    check_range("p", p, 0.0, 0.5)?;
    let mut m = ComplexMatrix::from_diagonal(&[0.5 - p, p, p, 0.5 - p]);
    m[(1, 2)] = real(p);
    m[(2, 1)] = real(p);
    DensityMatrix::new(m, vec![2, 2])
}

/// Horodecki's 2x4 bound entangled family `sigma_b`, optionally read as three
/// qubits (`dims = [2, 2, 2]`). The matrix is the same for both readings.
pub fn horodecki_2x4(b: f64, dims: &[usize]) -> Result<DensityMatrix> {
    check_range("b", b, 0.0, 1.0)?;
    if dims != [2, 4] && dims != [2, 2, 2] {
        return Err(Error::InvalidDims("horodecki_2x4 takes dims [2, 4] or [2, 2, 2]"));
    }
    let mut m = ComplexMatrix::zeros(8, 8);
    for i in 0..4 {
        m[(i, i)] = real(b);
    }
    for i in 0..3 {
        m[(i, i + 5)] = real(b);
        m[(i + 5, i)] = real(b);
        m[(i + 5, i + 5)] = real(b);
    }
    let diag = (1.0 + b) / 2.0;
    let off = libm::sqrt((1.0 - b * b).max(0.0)) / 2.0;
    m[(4, 4)] = real(diag);
    m[(7, 7)] = real(diag);
    m[(4, 7)] = real(off);
    m[(7, 4)] = real(off);
    DensityMatrix::new(m.scale(real(1.0 / (7.0 * b + 1.0))), dims.to_vec())
}

/// `p |GHZ><GHZ| + (1 - p) I/2^n` on `n >= 3` qubits.
pub fn pseudo_ghz(p: f64, n: usize) -> Result<DensityMatrix> {
    if n < 3 {
        return Err(Error::TooFewSubsystems { required: 3, actual: n });
    }
    if n > 10 {
        return Err(Error::InvalidDims("pseudo_ghz supports at most 10 qubits"));
    }
    pseudo_pure(&ghz_vector(n), p, &vec![2; n])
}

/// `sum_j c_j |e_j><e_j|` where `|e_j>` runs over the product basis
/// `basis` in big-endian order. Such a state has a product eigenbasis by
/// construction.
pub fn classical_state(coeffs: &[f64], basis: &LocalBasis) -> Result<DensityMatrix> {
    let dims = basis.dims();
    let d: usize = dims.iter().product();
    if coeffs.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            actual: coeffs.len(),
        });
    }
    let c = ProbabilityVector::new(coeffs.to_vec())?;
    let w = basis.full_unitary();
    let m = ComplexMatrix::from_diagonal(c.as_slice()).conjugate_by(&w)?;
    DensityMatrix::new(m, dims)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::vn_entropy;

    fn assert_close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= tol, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn pseudo_pure_limits() {
        let rho = pseudo_pure(&bell_phi_plus(), 0.0, &[2, 2]).unwrap();
        assert!(rho.matrix().max_abs_diff(&ComplexMatrix::from_diagonal(&[0.25; 4])) < 1e-15);
        let rho = pseudo_pure(&bell_phi_plus(), 1.0, &[2, 2]).unwrap();
        assert!(vn_entropy(&rho).unwrap().abs() < 1e-12);
    }

    #[test]
    fn pseudo_pure_errors() {
        let bad = vec![real(1.0), real(1.0)];
        assert!(matches!(pseudo_pure(&bad, 0.5, &[2]), Err(Error::Unnormalized { .. })));
        assert!(matches!(
            pseudo_pure(&bell_phi_plus(), 1.2, &[2, 2]),
            Err(Error::ParameterOutOfRange { .. })
        ));
    }

    #[test]
    fn pseudo_pure_bell_spectrum() {
        for i in 0..=10 {
            let p = i as f64 / 10.0;
            let s = pseudo_pure(&bell_phi_plus(), p, &[2, 2]).unwrap().spectrum().unwrap();
            let q = (1.0 - p) / 4.0;
            assert_close(s.values(), &[(1.0 + 3.0 * p) / 4.0, q, q, q], 1e-12);
        }
    }

    #[test]
    fn bell_mixture_spectrum_and_endpoints() {
        let s = bell_mixture(0.3).unwrap().spectrum().unwrap();
        assert_close(s.values(), &[0.7, 0.3, 0.0, 0.0], 1e-12);
        let pure = ComplexMatrix::outer(&bell_phi_plus());
        assert!(bell_mixture(1.0).unwrap().matrix().max_abs_diff(&pure) < 1e-15);
        assert!(bell_mixture(-0.01).is_err());
    }

    #[test]
    fn sigma_p_spectrum() {
        for i in 0..=20 {
            let p = i as f64 / 40.0;
            let s = sigma_p(p).unwrap().spectrum().unwrap();
            let mut expected = [2.0 * p, 0.5 - p, 0.5 - p, 0.0];
            expected.sort_by(|a, b| b.total_cmp(a));
            assert_close(s.values(), &expected, 1e-12);
        }
        let zero = sigma_p(0.0).unwrap();
        assert!(
            zero.matrix()
                .max_abs_diff(&ComplexMatrix::from_diagonal(&[0.5, 0.0, 0.0, 0.5]))
                == 0.0
        );
        assert!(sigma_p(0.6).is_err());
    }

    #[test]
    fn horodecki_at_zero_is_rank_two() {
        // b = 0: only the (1+b)/2 and sqrt(1-b^2)/2 entries survive
        let rho = horodecki_2x4(0.0, &[2, 4]).unwrap();
        let m = rho.matrix();
        assert_eq!(m[(4, 4)], real(0.5));
        assert_eq!(m[(7, 7)], real(0.5));
        assert_eq!(m[(4, 7)], real(0.5));
        let nonzero = m.as_slice().iter().filter(|z| z.norm() > 0.0).count();
        assert_eq!(nonzero, 4);
        let s = rho.spectrum().unwrap();
        assert_eq!(s.values().iter().filter(|&&v| v > 1e-12).count(), 1);
    }

    #[test]
    fn horodecki_trace_and_kernel() {
        for i in 0..=20 {
            let b = i as f64 / 20.0;
            let rho = horodecki_2x4(b, &[2, 2, 2]).unwrap();
            assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
            let zeros = rho
                .spectrum()
                .unwrap()
                .values()
                .iter()
                .filter(|v| v.abs() < 1e-12)
                .count();
            assert!(zeros >= 3, "b = {b}: {zeros} zero eigenvalues");
        }
        assert!(horodecki_2x4(0.5, &[4, 2]).is_err());
        assert!(horodecki_2x4(1.5, &[2, 4]).is_err());
    }

    #[test]
    fn pseudo_ghz_spectrum_and_reductions() {
        let p = 0.4;
        let rho = pseudo_ghz(p, 3).unwrap();
        let q = (1.0 - p) / 8.0;
        assert_close(
            rho.spectrum().unwrap().values(),
            &[(1.0 + 7.0 * p) / 8.0, q, q, q, q, q, q, q],
            1e-12,
        );
        for k in 0..3 {
            let r = rho.partial_trace(&[k]).unwrap().spectrum().unwrap();
            assert_close(r.values(), &[0.5, 0.5], 1e-12);
        }
        let mixed = pseudo_ghz(0.0, 3).unwrap();
        assert!(mixed.matrix().max_abs_diff(&ComplexMatrix::from_diagonal(&[0.125; 8])) < 1e-15);
        assert!(pseudo_ghz(0.5, 2).is_err());
    }

    #[test]
    fn classical_state_forms() {
        let h = FRAC_1_SQRT_2;
        let hadamard = ComplexMatrix::from_vec(2, 2, vec![real(h), real(h), real(h), real(-h)]).unwrap();
        let basis = LocalBasis::new(vec![hadamard.clone(), hadamard]).unwrap();
        let rho = classical_state(&[0.5, 0.0, 0.0, 0.5], &basis).unwrap();
        assert!(rho.matrix().max_abs_diff(bell_mixture(0.5).unwrap().matrix()) <= 1e-12);

        let uniform = classical_state(&[0.25; 4], &basis).unwrap();
        assert!(uniform.matrix().max_abs_diff(&ComplexMatrix::from_diagonal(&[0.25; 4])) < 1e-15);

        let id = LocalBasis::identity(&[2, 2]);
        let c = [0.1, 0.2, 0.3, 0.4];
        assert_eq!(
            classical_state(&c, &id).unwrap().matrix(),
            &ComplexMatrix::from_diagonal(&c)
        );
        assert!(classical_state(&[0.5, 0.6, 0.0, 0.0], &id).is_err());
        assert!(classical_state(&[1.0], &id).is_err());
    }
}
