#![allow(dead_code)]

use qcorr_core::basis::{random_local_basis, random_unitary, trial_rng};
use qcorr_core::{ComplexMatrix, DensityMatrix, LocalBasis, C64};

/// Random full-rank-ish state `U diag(w) U^dagger` with `w` from `weights`.
pub fn random_state(dims: &[usize], weights: &[f64], seed: u64) -> DensityMatrix {
    let d: usize = dims.iter().product();
    let mut w: Vec<f64> = (0..d).map(|i| weights[i % weights.len()].abs() + 1e-3).collect();
    let s: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= s);
    let u = random_unitary(d, &mut trial_rng(seed, 0));
    let m = ComplexMatrix::from_diagonal(&w).conjugate_by(&u).unwrap();
    DensityMatrix::new(m, dims.to_vec()).unwrap()
}

pub fn random_local(dims: &[usize], seed: u64) -> LocalBasis {
    random_local_basis(dims, &mut trial_rng(seed, 1))
}

pub fn hermitian_from(entries: &[(f64, f64)], n: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    let mut it = entries.iter().cycle();
    for i in 0..n {
        for j in i..n {
            let &(re, im) = it.next().unwrap();
            if i == j {
                m[(i, i)] = C64::new(re, 0.0);
            } else {
                m[(i, j)] = C64::new(re, im);
                m[(j, i)] = C64::new(re, -im);
            }
        }
    }
    m
}

/// Classical state in a random product basis with distinct random weights.
pub fn random_classical(dims: &[usize], seed: u64) -> DensityMatrix {
    let d: usize = dims.iter().product();
    let mut rng = trial_rng(seed, 2);
    // distinct weights: a shuffled arithmetic-ish progression with a random offset
    let u = random_unitary(d, &mut rng);
    let mut w: Vec<f64> = (0..d).map(|i| (i + 1) as f64 + 0.5 * u[(i, 0)].norm()).collect();
    let s: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= s);
    qcorr_core::states::classical_state(&w, &random_local(dims, seed)).unwrap()
}

pub fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

pub fn assert_all_close(a: &[f64], b: &[f64], tol: f64) {
    assert_eq!(a.len(), b.len(), "{a:?} vs {b:?}");
    for (x, y) in a.iter().zip(b) {
        assert!((x - y).abs() <= tol, "{a:?} vs {b:?} (tol {tol:e})");
    }
}
