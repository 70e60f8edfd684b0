//! Full measurement report for a single state.

use std::fmt;

use qcorr_core::entropy::vn_entropy;
use qcorr_core::measure_d::{default_trials, CandidateSource};
use qcorr_core::measure_g::{compute_g_with, GOptions};
use qcorr_core::negativity::negativity_extremes;
use qcorr_core::DensityMatrix;
use serde::Serialize;

use crate::search::estimate_d_parallel;
use crate::sweep::{canonical_measures, Measure};
use crate::Result;

#[derive(Debug, Clone, Serialize)]
pub struct DReport {
    /// Estimate clamped at 0.
    pub value: f64,
    /// Unclamped `min diagonal entropy - S_vN`.
    pub raw_value: f64,
    pub min_diagonal_entropy: f64,
    pub best_candidate: String,
    pub trials: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SubsystemReport {
    pub subsystem: usize,
    pub f_k: f64,
    pub reduced_entropy: f64,
    pub mimic_entropy: f64,
    pub best_partition: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GReport {
    pub value: f64,
    pub argmax_subsystem: usize,
    pub per_subsystem: Vec<SubsystemReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NegativityReport {
    pub min: f64,
    pub max: f64,
    /// Subsystems on the untransposed side of the minimizing split.
    pub argmin_side_a: Vec<usize>,
    pub argmax_side_a: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MeasureReport {
    pub dims: Vec<usize>,
    pub von_neumann_entropy: f64,
    pub spectrum: Vec<f64>,
    /// Spectrum of each single-subsystem reduced state.
    pub reduced_spectra: Vec<Vec<f64>>,
    #[serde(rename = "D", skip_serializing_if = "Option::is_none")]
    pub d: Option<DReport>,
    #[serde(rename = "G", skip_serializing_if = "Option::is_none")]
    pub g: Option<GReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub negativity: Option<NegativityReport>,
}

#[derive(Debug, Clone)]
pub struct ReportOptions {
    pub measures: Vec<Measure>,
    pub trials: Option<u64>,
    pub seed: u64,
    pub partition_budget: u128,
    pub workers: usize,
}

fn source_name(s: CandidateSource) -> String {
    match s {
        CandidateSource::Identity => "identity basis".into(),
        CandidateSource::ReducedEigenbasis => "reduced-state eigenbases".into(),
        CandidateSource::Random(i) => format!("random trial {i}"),
    }
}

pub fn measure_report(rho: &DensityMatrix, opts: &ReportOptions) -> Result<MeasureReport> {
    let measures = canonical_measures(&opts.measures);
    let reduced_spectra = (0..rho.num_subsystems())
        .map(|k| Ok(rho.partial_trace(&[k])?.spectrum()?.into_vec()))
        .collect::<Result<Vec<_>>>()?;

    let d = if measures.contains(&Measure::D) {
        let trials = opts.trials.unwrap_or_else(|| default_trials(rho.dim()));
        let est = estimate_d_parallel(rho, trials, opts.seed, opts.workers)?;
        Some(DReport {
            value: est.clamped(),
            raw_value: est.value,
            min_diagonal_entropy: est.min_diag_entropy,
            best_candidate: source_name(est.best_source),
            trials: est.trials_used,
            seed: est.seed,
        })
    } else {
        None
    };

    let g = if measures.contains(&Measure::G) {
        let g = compute_g_with(
            rho,
            &GOptions {
                partition_budget: opts.partition_budget,
                ..GOptions::default()
            },
        )?;
        Some(GReport {
            value: g.value,
            argmax_subsystem: g.argmax_subsystem,
            per_subsystem: g
                .per_subsystem
                .iter()
                .enumerate()
                .map(|(k, s)| SubsystemReport {
                    subsystem: k,
                    f_k: s.value,
                    reduced_entropy: s.reduced_entropy,
                    mimic_entropy: s.mimic_entropy,
                    best_partition: s.best_partition.blocks().to_vec(),
                })
                .collect(),
        })
    } else {
        None
    };

    let negativity = if measures.contains(&Measure::NegativityMin) || measures.contains(&Measure::NegativityMax) {
        let n = negativity_extremes(rho)?;
        Some(NegativityReport {
            min: n.min,
            max: n.max,
            argmin_side_a: n.argmin.side_a().to_vec(),
            argmax_side_a: n.argmax.side_a().to_vec(),
        })
    } else {
        None
    };

    Ok(MeasureReport {
        dims: rho.dims().to_vec(),
        von_neumann_entropy: vn_entropy(rho)?,
        spectrum: rho.spectrum()?.into_vec(),
        reduced_spectra,
        d,
        g,
        negativity,
    })
}

struct List<'a>(&'a [f64]);

impl fmt::Display for List<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x:.10}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Display for MeasureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        writeln!(f, "dims            {}", dims.join(" x "))?;
        writeln!(f, "S_vN            {:.12}", self.von_neumann_entropy)?;
        writeln!(f, "spectrum        {}", List(&self.spectrum))?;
        for (k, s) in self.reduced_spectra.iter().enumerate() {
            writeln!(f, "reduced[{k}]      {}", List(s))?;
        }
        if let Some(d) = &self.d {
            writeln!(
                f,
                "D               {:.12}  (upper bound; trials {}, seed {}, best: {})",
                d.value, d.trials, d.seed, d.best_candidate
            )?;
        }
        if let Some(g) = &self.g {
            writeln!(
                f,
                "G               {:.12}  (argmax subsystem {})",
                g.value, g.argmax_subsystem
            )?;
            for s in &g.per_subsystem {
                writeln!(
                    f,
                    "  F_{}           {:.12}  (reduced entropy {:.10}, mimic entropy {:.10})",
                    s.subsystem, s.f_k, s.reduced_entropy, s.mimic_entropy
                )?;
            }
        }
        if let Some(n) = &self.negativity {
            writeln!(f, "negativity min  {:.12}  (side A {:?})", n.min, n.argmin_side_a)?;
            writeln!(f, "negativity max  {:.12}  (side A {:?})", n.max, n.argmax_side_a)?;
        }
        Ok(())
    }
}
