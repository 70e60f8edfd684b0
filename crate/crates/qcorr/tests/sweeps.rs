use qcorr::qcorr_core::entropy::vn_entropy;
use qcorr::qcorr_core::measure_d::estimate_d;
use qcorr::qcorr_core::states::{bell_mixture, horodecki_2x4, pseudo_ghz};
use qcorr::search::estimate_d_parallel;
use qcorr::state::{StateFamily, StateSpec};
use qcorr::sweep::{run_sweep, sweep_d, write_csv, Measure, SweepSpec};

fn h2(x: f64) -> f64 {
    let term = |y: f64| if y > 0.0 { -y * y.log2() } else { 0.0 };
    term(x) + term(1.0 - x)
}

fn spec(family: StateFamily, step: f64, measures: Vec<Measure>, trials: Option<u64>) -> SweepSpec {
    SweepSpec {
        state: StateSpec::new(family),
        param_start: 0.0,
        param_end: 1.0,
        param_step: step,
        measures,
        trials,
        seed: 0,
        partition_budget: 1_000_000,
        output_path: None,
    }
}

#[test]
fn parallel_matches_sequential_bitwise() {
    let states = [
        bell_mixture(0.3).unwrap(),
        horodecki_2x4(0.4, &[2, 2, 2]).unwrap(),
        pseudo_ghz(0.6, 3).unwrap(),
    ];
    for rho in &states {
        for seed in [0, 17] {
            let seq = estimate_d(rho, 1_234, seed).unwrap();
            for workers in [1, 2, 3, 8] {
                let par = estimate_d_parallel(rho, 1_234, seed, workers).unwrap();
                assert_eq!(par.value.to_bits(), seq.value.to_bits(), "{workers} workers");
                assert_eq!(par.best_source, seq.best_source);
                assert_eq!(par.best_basis, seq.best_basis);
            }
        }
    }
}

#[test]
fn bell_mixture_d_and_g_track_one_minus_h() {
    let rows = run_sweep(
        &spec(StateFamily::BellMixture, 0.05, vec![Measure::G, Measure::D], None),
        2,
    )
    .unwrap();
    assert_eq!(rows.len(), 21);
    for row in &rows {
        let want = 1.0 - h2(row.param);
        let g = row.get(Measure::G).unwrap();
        let d = row.get(Measure::D).unwrap();
        assert!((g - want).abs() <= 1e-9, "p={} G={g} want {want}", row.param);
        assert!(
            d >= want - 1e-9 && d <= want + 5e-3,
            "p={} D={d} want {want}",
            row.param
        );
        assert_eq!(row.trials_used, 40_000);
    }
}

#[test]
fn pseudo_pure_d_is_monotone_and_matches_oracle() {
    let rows = sweep_d(&spec(StateFamily::PseudoPure, 0.1, vec![], Some(40_000)), 1).unwrap();
    for pair in rows.windows(2) {
        let (a, b) = (pair[0].get(Measure::D).unwrap(), pair[1].get(Measure::D).unwrap());
        assert!(b >= a - 1e-2, "D fell from {a} to {b} at p={}", pair[1].param);
    }
    // the computational basis aligns with the Schmidt basis of |Phi+>, whose
    // outcome distribution majorizes every other product basis
    for p in [0.2, 0.5, 0.9] {
        let row = rows.iter().find(|r| (r.param - p).abs() < 1e-12).unwrap();
        let rho = StateSpec::new(StateFamily::PseudoPure)
            .with_parameter(p)
            .build()
            .unwrap();
        let want = 1.0 + h2((1.0 + p) / 2.0) - vn_entropy(&rho).unwrap();
        let d = row.get(Measure::D).unwrap();
        assert!(d >= want - 1e-9 && d <= want + 5e-3, "p={p}: D={d} want {want}");
    }
}

#[test]
fn horodecki_d_stays_clear_of_zero() {
    let mut s = spec(StateFamily::Horodecki2x4, 0.2, vec![Measure::D], Some(400_000));
    s.param_start = 0.2;
    let rows = run_sweep(&s, 1).unwrap();
    assert_eq!(rows.len(), 5);
    for row in rows {
        let d = row.get(Measure::D).unwrap();
        assert!(d > 0.05, "b={}: D={d}", row.param);
    }
}

#[test]
fn horodecki_negativity_vanishes() {
    let rows = run_sweep(
        &spec(
            StateFamily::Horodecki2x4,
            0.05,
            vec![Measure::NegativityMin, Measure::NegativityMax],
            None,
        ),
        1,
    )
    .unwrap();
    assert_eq!(rows.len(), 21);
    let mut csv = Vec::new();
    write_csv(&mut csv, "b", &[Measure::NegativityMin, Measure::NegativityMax], &rows).unwrap();
    let text = String::from_utf8(csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("b,negativity_min,negativity_max,trials,seed"));
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(&cols[1..3], &["0", "0"], "{line}");
    }
}

#[test]
fn pseudo_ghz_negativity_ordering() {
    for n in [3, 4] {
        let mut s = spec(
            StateFamily::PseudoGhz,
            0.1,
            vec![Measure::NegativityMin, Measure::NegativityMax],
            None,
        );
        s.state.dims = vec![2; n];
        for row in run_sweep(&s, 1).unwrap() {
            let (lo, hi) = (
                row.get(Measure::NegativityMin).unwrap(),
                row.get(Measure::NegativityMax).unwrap(),
            );
            assert!(lo <= hi, "n={n} p={}: {lo} > {hi}", row.param);
            assert!(lo >= 0.0);
        }
    }
}

#[test]
fn sweeps_reject_unparameterized_families() {
    let s = spec(StateFamily::Classical, 0.1, vec![Measure::G], None);
    assert!(run_sweep(&s, 1).is_err());
}
