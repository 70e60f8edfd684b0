mod common;

use common::*;
use proptest::prelude::*;
use qcorr_core::entropy::{binary_entropy, shannon, shannon_bits, vn_entropy, ProbabilityVector};
use qcorr_core::measure_d::{estimate_d, projected_distribution, DSearch};
use qcorr_core::measure_g::{compute_g, compute_g_with, min_entropy_gap, GOptions};
use qcorr_core::negativity::{negativity, negativity_extremes, negativity_transposing, Bipartition};
use qcorr_core::{states, DensityMatrix};

fn local_conjugate(rho: &DensityMatrix, seed: u64) -> DensityMatrix {
    rho.conjugate_by(&random_local(rho.dims(), seed).full_unitary())
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shannon_is_permutation_invariant(w in prop::collection::vec(0.0f64..1.0, 2..10), rot in 0usize..10) {
        let s: f64 = w.iter().sum::<f64>() + 1e-9;
        let p: Vec<f64> = w.iter().map(|x| (x + 1e-9 / w.len() as f64) / s).collect();
        let mut q = p.clone();
        q.rotate_left(rot % p.len());
        q.reverse();
        let a = shannon(&ProbabilityVector::new(p).unwrap());
        let b = shannon(&ProbabilityVector::new(q).unwrap());
        prop_assert!((a - b).abs() < 1e-12);
        prop_assert!(a >= 0.0 && a <= (w.len() as f64).log2() + 1e-12);
    }

    #[test]
    fn shannon_is_concave(a in prop::collection::vec(0.01f64..1.0, 5), b in prop::collection::vec(0.01f64..1.0, 5)) {
        let norm = |v: &[f64]| { let s: f64 = v.iter().sum(); v.iter().map(|x| x / s).collect::<Vec<_>>() };
        let (p, q) = (norm(&a), norm(&b));
        let mid: Vec<f64> = p.iter().zip(&q).map(|(x, y)| 0.5 * (x + y)).collect();
        prop_assert!(shannon_bits(&mid) + 1e-12 >= 0.5 * (shannon_bits(&p) + shannon_bits(&q)));
    }

    #[test]
    fn von_neumann_entropy_is_unitarily_invariant(seed in 0u64..5000, w in prop::collection::vec(0.0f64..1.0, 1..8)) {
        let rho = random_state(&[2, 3], &w, seed);
        let u = qcorr_core::basis::random_unitary(6, &mut qcorr_core::basis::trial_rng(seed, 9));
        let rotated = rho.conjugate_by(&u).unwrap();
        prop_assert!((vn_entropy(&rho).unwrap() - vn_entropy(&rotated).unwrap()).abs() <= 1e-9);
    }

    #[test]
    fn dephasing_never_lowers_entropy(seed in 0u64..5000, w in prop::collection::vec(0.0f64..1.0, 1..8)) {
        let rho = random_state(&[2, 2, 2], &w, seed);
        let basis = random_local(&[2, 2, 2], seed + 1);
        let diag = shannon(&projected_distribution(&rho, &basis).unwrap());
        prop_assert!(diag >= vn_entropy(&rho).unwrap() - 1e-9);
    }

    #[test]
    fn g_is_local_unitary_invariant(seed in 0u64..5000, w in prop::collection::vec(0.0f64..1.0, 1..8)) {
        let rho = random_state(&[2, 2, 2], &w, seed);
        let a = compute_g(&rho).unwrap().value;
        let b = compute_g(&local_conjugate(&rho, seed + 7)).unwrap().value;
        prop_assert!((a - b).abs() <= 1e-9, "{} vs {}", a, b);
    }

    #[test]
    fn negativity_is_local_unitary_invariant(seed in 0u64..5000, w in prop::collection::vec(0.0f64..1.0, 1..8)) {
        let rho = random_state(&[2, 2, 2], &w, seed);
        let a = negativity_extremes(&rho).unwrap();
        let b = negativity_extremes(&local_conjugate(&rho, seed + 3)).unwrap();
        prop_assert!((a.min - b.min).abs() <= 1e-9 && (a.max - b.max).abs() <= 1e-9);
    }

    #[test]
    fn negativity_same_from_either_side(seed in 0u64..5000, w in prop::collection::vec(0.0f64..1.0, 1..8)) {
        let rho = random_state(&[2, 3], &w, seed);
        let a = negativity_transposing(&rho, &[0]).unwrap();
        let b = negativity_transposing(&rho, &[1]).unwrap();
        prop_assert!((a - b).abs() <= 1e-12);
    }

    #[test]
    fn pruned_and_exhaustive_g_agree(raw in prop::collection::vec(0.0f64..1.0, 8), target in 0.0f64..2.0, blocks in prop::sample::select(vec![2usize, 4])) {
        let s: f64 = raw.iter().sum::<f64>() + 1e-12;
        let mut v: Vec<f64> = raw.iter().map(|x| x / s).collect();
        v.sort_by(|a, b| b.total_cmp(a));
        prop_assert_eq!(min_entropy_gap(&v, blocks, target, true).unwrap(), min_entropy_gap(&v, blocks, target, false).unwrap());
        // coarse-grained copy with many repeated values
        let mut q: Vec<f64> = v.iter().map(|x| (x * 4.0).round() / 4.0).collect();
        let qs: f64 = q.iter().sum::<f64>();
        if qs > 0.0 {
            q.iter_mut().for_each(|x| *x /= qs);
            q.sort_by(|a, b| b.total_cmp(a));
            prop_assert_eq!(min_entropy_gap(&q, blocks, target, true).unwrap(), min_entropy_gap(&q, blocks, target, false).unwrap());
        }
    }
}

#[test]
fn classical_states_dephase_in_their_basis() {
    for seed in 0..10 {
        let basis = random_local(&[2, 3], seed);
        let c = [0.3, 0.05, 0.15, 0.2, 0.1, 0.2];
        let rho = states::classical_state(&c, &basis).unwrap();
        let back = rho.matrix().conjugate_by(&basis.full_unitary().adjoint()).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                if i != j {
                    assert!(back[(i, j)].norm() <= 1e-12);
                }
            }
        }
    }
}

#[test]
fn g_vanishes_on_classical_states() {
    for seed in 0..20 {
        for dims in [&[2usize, 2][..], &[2, 2, 2], &[2, 3]] {
            let g = compute_g(&random_classical(dims, seed)).unwrap();
            assert!(g.value <= 1e-9, "seed {seed} dims {dims:?}: {}", g.value);
        }
    }
}

fn check_submaximizable(sigma: &DensityMatrix, tau: &DensityMatrix) {
    let gs = compute_g(sigma).unwrap().value;
    let gt = compute_g(tau).unwrap().value;
    let joint = sigma.tensor(tau);
    let gj = compute_g(&joint).unwrap().value;
    assert!(gj <= gs.max(gt) + 1e-12, "G(s x t) = {gj} > max({gs}, {gt})");
    assert!(gj <= gs + gt + 1e-12);
    // the same product read as two 4-level parties: 16 values into 4 blocks of 4
    let coarse = joint.with_dims(vec![4, 4]).unwrap();
    let opts = GOptions {
        prune: false,
        ..GOptions::default()
    };
    let gc = compute_g_with(&coarse, &opts).unwrap().value;
    assert!(gc <= 1e-12, "each factor is its own party: G = {gc}");
}

#[test]
fn g_is_submaximizable_on_bell_mixtures() {
    check_submaximizable(&states::bell_mixture(0.3).unwrap(), &states::bell_mixture(0.7).unwrap());
}

#[test]
fn g_is_submaximizable_on_classical_times_bell_mixture() {
    for seed in [3, 17] {
        let c = random_classical(&[2, 2], seed);
        check_submaximizable(&c, &states::bell_mixture(0.2 + 0.1 * seed as f64 / 17.0).unwrap());
        check_submaximizable(&states::bell_mixture(0.9).unwrap(), &c);
    }
}

#[test]
fn negativity_zero_on_products() {
    let rho = random_state(&[2], &[0.2, 0.9], 4).tensor(&random_state(&[3], &[0.5, 0.1, 0.4], 5));
    assert!(negativity(&rho, &Bipartition::new(&[0], 2).unwrap()).unwrap() <= 1e-12);
}

#[test]
fn d_is_monotone_in_trials() {
    let rho = states::sigma_p(0.3).unwrap();
    let mut last = f64::INFINITY;
    for trials in [0, 1, 10, 100, 1000, 5000] {
        let v = estimate_d(&rho, trials, 42).unwrap().value;
        assert!(v <= last, "{trials} trials: {v} > {last}");
        last = v;
    }
}

#[test]
fn d_estimate_is_never_negative() {
    for seed in 0..5 {
        let rho = random_state(&[2, 2], &[0.1, 0.6, 0.2, 0.1], seed);
        assert!(estimate_d(&rho, 200, seed).unwrap().value >= -1e-9);
    }
}

#[test]
fn d_additive_on_classical_products() {
    for seed in 0..5 {
        let joint = random_classical(&[2, 2], seed).tensor(&random_classical(&[2], seed + 100));
        assert!(estimate_d(&joint, 0, 0).unwrap().value <= 1e-9);
    }
}

#[test]
fn d_additive_with_bell_mixture_factor() {
    let p = 0.2;
    let c = random_classical(&[2], 8);
    let joint = states::bell_mixture(p).unwrap().tensor(&c);
    let expected = 1.0 - binary_entropy(p).unwrap();
    let est = estimate_d(&joint, 40_000, 0).unwrap();
    assert!(
        est.value >= expected - 1e-9 && est.value <= expected + 5e-3,
        "{} vs {expected}",
        est.value
    );
    let search = DSearch::new(&joint, 0).unwrap();
    assert!(search.vn() > 0.0);
}
