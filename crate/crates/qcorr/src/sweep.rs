//! Parameter sweeps and their CSV output.
//!
//! CSV contract: the header is `<param>` followed by the requested measure
//! columns in the fixed order `D,G,negativity_min,negativity_max`, then
//! `trials,seed`. `<param>` is `b` for `horodecki_2x4` and `p` otherwise.
//! Real numbers carry 9 significant digits in `%g` style; `trials` is the
//! number of random D trials (0 when D is not requested).

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use qcorr_core::measure_d::default_trials;
use qcorr_core::measure_g::{compute_g_with, GOptions};
use qcorr_core::negativity::negativity_extremes;
use qcorr_core::DensityMatrix;

use crate::search::estimate_d_parallel;
use crate::state::StateSpec;
use crate::{Error, Result};

pub const MAX_STEPS: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Measure {
    D,
    G,
    NegativityMin,
    NegativityMax,
}

impl Measure {
    pub const ALL: [Measure; 4] = [Measure::D, Measure::G, Measure::NegativityMin, Measure::NegativityMax];

    pub fn name(self) -> &'static str {
        match self {
            Measure::D => "D",
            Measure::G => "G",
            Measure::NegativityMin => "negativity_min",
            Measure::NegativityMax => "negativity_max",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Measure {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let t = s.trim();
        Measure::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(t))
            .ok_or_else(|| format!("unknown measure `{t}` (expected D, G, negativity_min or negativity_max)"))
    }
}

/// Sorts and deduplicates a measure list into column order.
pub fn canonical_measures(measures: &[Measure]) -> Vec<Measure> {
    let mut m = measures.to_vec();
    m.sort();
    m.dedup();
    m
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    /// Family and fixed settings; the parameter is overwritten per row.
    pub state: StateSpec,
    pub param_start: f64,
    pub param_end: f64,
    pub param_step: f64,
    pub measures: Vec<Measure>,
    /// Random D trials per point; `None` uses [`default_trials`].
    pub trials: Option<u64>,
    pub seed: u64,
    pub partition_budget: u128,
    pub output_path: Option<PathBuf>,
}

impl SweepSpec {
    /// Parameter values of the sweep: `start + i * step` for every `i` that
    /// stays within `end` (up to rounding, which snaps to `end`).
    pub fn grid(&self) -> Result<Vec<f64>> {
        let (start, end, step) = (self.param_start, self.param_end, self.param_step);
        if !(start.is_finite() && end.is_finite() && step.is_finite()) {
            return Err(Error::Invalid("sweep bounds and step must be finite".into()));
        }
        if step <= 0.0 {
            return Err(Error::Invalid(format!("sweep step must be positive, got {step}")));
        }
        if start > end {
            return Err(Error::Invalid(format!("sweep start {start} exceeds end {end}")));
        }
        let span = ((end - start) / step + 1e-9).floor();
        if span > MAX_STEPS as f64 {
            return Err(Error::Invalid(format!("sweep has more than {MAX_STEPS} steps")));
        }
        let n = span as u64;
        Ok((0..=n).map(|i| (start + i as f64 * step).min(end)).collect())
    }

    pub fn validate(&self) -> Result<()> {
        if !self.state.family.has_parameter() {
            return Err(Error::Invalid(format!(
                "family {} has no parameter to sweep",
                self.state.family
            )));
        }
        if self.measures.is_empty() {
            return Err(Error::Invalid("no measures requested".into()));
        }
        self.grid().map(|_| ())
    }
}

/// One sweep point. Values are clamped at 0.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub param: f64,
    /// `(measure, value)` in column order.
    pub values: Vec<(Measure, f64)>,
    pub trials_used: u64,
    pub seed: u64,
}

impl SweepRow {
    pub fn get(&self, m: Measure) -> Option<f64> {
        self.values.iter().find(|(k, _)| *k == m).map(|&(_, v)| v)
    }
}

/// Computes the requested measures on one state.
pub fn measure_row(
    rho: &DensityMatrix,
    param: f64,
    measures: &[Measure],
    trials: Option<u64>,
    seed: u64,
    partition_budget: u128,
    workers: usize,
) -> Result<SweepRow> {
    let measures = canonical_measures(measures);
    let mut values = Vec::with_capacity(measures.len());
    let mut trials_used = 0;
    let negativity = if measures.contains(&Measure::NegativityMin) || measures.contains(&Measure::NegativityMax) {
        Some(negativity_extremes(rho)?)
    } else {
        None
    };
    for &m in &measures {
        let v = match m {
            Measure::D => {
                let t = trials.unwrap_or_else(|| default_trials(rho.dim()));
                let est = estimate_d_parallel(rho, t, seed, workers)?;
                trials_used = est.trials_used;
                est.clamped()
            }
            Measure::G => {
                let opts = GOptions {
                    partition_budget,
                    ..GOptions::default()
                };
                compute_g_with(rho, &opts)?.value
            }
            Measure::NegativityMin => negativity.as_ref().map_or(0.0, |n| n.min),
            Measure::NegativityMax => negativity.as_ref().map_or(0.0, |n| n.max),
        };
        values.push((m, v.max(0.0)));
    }
    Ok(SweepRow {
        param,
        values,
        trials_used,
        seed,
    })
}

pub fn run_sweep(spec: &SweepSpec, workers: usize) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    spec.grid()?
        .into_iter()
        .map(|p| {
            let rho = spec.state.with_parameter(p).build()?;
            measure_row(
                &rho,
                p,
                &spec.measures,
                spec.trials,
                spec.seed,
                spec.partition_budget,
                workers,
            )
        })
        .collect()
}

/// Sweep of D alone.
pub fn sweep_d(spec: &SweepSpec, workers: usize) -> Result<Vec<SweepRow>> {
    run_sweep(
        &SweepSpec {
            measures: vec![Measure::D],
            ..spec.clone()
        },
        workers,
    )
}

/// `%.9g`: 9 significant digits, fixed notation for exponents in
/// `[-4, 9)`, scientific otherwise, trailing zeros removed.
pub fn format_sig9(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..9).contains(&exp) {
        let decimals = (8 - exp) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    } else {
        format!(
            "{}e{}{:02}",
            trim_fraction(mantissa),
            if exp < 0 { '-' } else { '+' },
            exp.abs()
        )
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn csv_header(param_name: &str, measures: &[Measure]) -> String {
    let mut cols = vec![param_name.to_string()];
    cols.extend(canonical_measures(measures).iter().map(|m| m.name().to_string()));
    cols.push("trials".into());
    cols.push("seed".into());
    cols.join(",")
}

pub fn write_csv<W: Write>(
    mut out: W,
    param_name: &str,
    measures: &[Measure],
    rows: &[SweepRow],
) -> std::io::Result<()> {
    writeln!(out, "{}", csv_header(param_name, measures))?;
    for row in rows {
        let mut fields = vec![format_sig9(row.param)];
        fields.extend(row.values.iter().map(|&(_, v)| format_sig9(v)));
        fields.push(row.trials_used.to_string());
        fields.push(row.seed.to_string());
        writeln!(out, "{}", fields.join(","))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::StateFamily;

    fn spec(start: f64, end: f64, step: f64) -> SweepSpec {
        SweepSpec {
            state: StateSpec::new(StateFamily::BellMixture),
            param_start: start,
            param_end: end,
            param_step: step,
            measures: vec![Measure::G],
            trials: Some(0),
            seed: 0,
            partition_budget: 1000,
            output_path: None,
        }
    }

    #[test]
    fn grid_includes_both_ends() {
        let g = spec(0.0, 1.0, 0.05).grid().unwrap();
        assert_eq!(g.len(), 21);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[20], 1.0);
        assert_eq!(spec(0.0, 1.0, 0.1).grid().unwrap().len(), 11);
        assert_eq!(spec(0.2, 0.2, 0.1).grid().unwrap(), vec![0.2]);
        assert_eq!(spec(0.0, 0.5, 0.3).grid().unwrap().len(), 2);
    }

    #[test]
    fn grid_rejects_bad_specs() {
        assert!(spec(0.0, 1.0, 0.0).grid().is_err());
        assert!(spec(0.0, 1.0, -0.1).grid().is_err());
        assert!(spec(1.0, 0.0, 0.1).grid().is_err());
        assert!(spec(0.0, 1.0, 1e-7).grid().is_err());
        assert!(spec(0.0, 1.0, 1e-6).grid().is_ok());
        assert!(spec(0.0, f64::NAN, 0.1).grid().is_err());
    }

    #[test]
    fn sig9_formatting() {
        let cases = [
            (0.0, "0"),
            (1.0, "1"),
            (0.3, "0.3"),
            (0.1 + 0.2, "0.3"),
            (1.0 / 3.0, "0.333333333"),
            (2.0 / 3.0, "0.666666667"),
            (123456789.0, "123456789"),
            (1234567890.0, "1.23456789e+09"),
            (1.5e-5, "1.5e-05"),
            (0.000123456789123, "0.000123456789"),
            (-0.25, "-0.25"),
            (9.999999999e-1, "1"),
        ];
        for (x, s) in cases {
            assert_eq!(format_sig9(x), s, "{x:e}");
        }
    }

    #[test]
    fn header_is_canonical() {
        assert_eq!(
            csv_header("p", &[Measure::NegativityMax, Measure::D, Measure::D]),
            "p,D,negativity_max,trials,seed"
        );
    }

    #[test]
    fn measure_names_parse() {
        assert_eq!("d".parse::<Measure>().unwrap(), Measure::D);
        assert_eq!("negativity_min".parse::<Measure>().unwrap(), Measure::NegativityMin);
        assert!("N".parse::<Measure>().is_err());
    }
}
