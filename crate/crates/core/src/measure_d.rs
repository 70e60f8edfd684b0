//! Measure D: the smallest Shannon entropy of the outcome distribution of a
//! local projective measurement in a product basis, minus the von Neumann
//! entropy of the state.
//!
//! The minimum over product bases is estimated by evaluating two
//! deterministic warm starts (the computational basis and the eigenbases of
//! the single-subsystem reduced states) followed by `trials` random product
//! bases. Every candidate can only overestimate the minimum, so the returned
//! value is an upper bound on D.
//!
//! Random trials are grouped into stages of [`STAGE_TRIALS`]. Even-numbered
//! trials, and every trial of the first stage, draw an independent Haar
//! random unitary per subsystem. The remaining trials perturb the best basis
//! known at the start of their stage by a random amount, log-uniform in
//! `[1e-5, 1]`, which lets the search resolve narrow minima that uniform
//! sampling only approaches slowly.
//!
//! Trial `i` draws its randomness from [`trial_rng`]`(seed, i)` alone and
//! stage boundaries do not depend on the trial budget, so:
//! * the first `n` trials are the same for any budget `>= n`, hence the
//!   estimate never increases with more trials;
//! * [`Candidate::better`] breaks exact ties by the lower
//!   [`CandidateSource`], so splitting a stage between workers gives
//!   bit-identical results.

use core::ops::Range;

use alloc::vec::Vec;

use crate::basis::perturb_unitary;
pub use crate::basis::{random_local_basis, trial_rng, LocalBasis};
use crate::entropy::{shannon_bits, vn_entropy, ProbabilityVector};
use crate::linalg::{DensityMatrix, C64};
use crate::{Error, Result};
use rand_core::RngCore;

/// Trials per search stage.
pub const STAGE_TRIALS: u64 = 100;
/// Perturbation scales are `10^(-u * SCALE_DECADES)` with `u` uniform.
const SCALE_DECADES: f64 = 5.0;

/// Where a candidate product basis came from. Ordered by evaluation
/// priority, which is also the tie-break order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CandidateSource {
    Identity,
    ReducedEigenbasis,
    /// Random trial with this index.
    Random(u64),
}

/// A basis choice and the entropy of the distribution it produces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate {
    pub entropy: f64,
    pub source: CandidateSource,
}

impl Candidate {
    /// Lower entropy wins; exact ties go to the earlier source.
    pub fn better(self, other: Self) -> Self {
        match self.entropy.total_cmp(&other.entropy) {
            core::cmp::Ordering::Less => self,
            core::cmp::Ordering::Greater => other,
            core::cmp::Ordering::Equal => {
                if self.source <= other.source {
                    self
                } else {
                    other
                }
            }
        }
    }
}

/// Best candidate so far together with its basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Incumbent {
    pub candidate: Candidate,
    pub basis: LocalBasis,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DEstimate {
    /// `min_diag_entropy - vn`, unclamped.
    pub value: f64,
    pub min_diag_entropy: f64,
    pub vn: f64,
    pub best_basis: LocalBasis,
    pub best_source: CandidateSource,
    pub trials_used: u64,
    pub seed: u64,
}

impl DEstimate {
    /// The value with round-off below zero removed.
    pub fn clamped(&self) -> f64 {
        self.value.max(0.0)
    }
}

/// Outcome distribution of measuring `rho` in the product basis `basis`:
/// the diagonal of `W^dagger rho W` with `W` the tensor product of the
/// local unitaries.
pub fn projected_distribution(rho: &DensityMatrix, basis: &LocalBasis) -> Result<ProbabilityVector> {
    if basis.dims() != rho.dims() {
        return Err(Error::InvalidDims("local basis dims do not match the state"));
    }
    ProbabilityVector::new(diagonal_in_basis(rho, basis))
}

fn diagonal_in_basis(rho: &DensityMatrix, basis: &LocalBasis) -> Vec<f64> {
    let w = basis.full_unitary();
    let m = rho.matrix();
    let d = rho.dim();
    let mut col = alloc::vec![C64::new(0.0, 0.0); d];
    let mut out = Vec::with_capacity(d);
    for i in 0..d {
        for (a, c) in col.iter_mut().enumerate() {
            *c = w[(a, i)];
        }
        let mut p = 0.0;
        for a in 0..d {
            let mut row = C64::new(0.0, 0.0);
            for (b, c) in col.iter().enumerate() {
                row += m[(a, b)] * c;
            }
            p += (col[a].conj() * row).re;
        }
        out.push(p);
    }
    out
}

/// Trial index ranges of the stages covering `trials` random trials.
pub fn stages(trials: u64) -> impl Iterator<Item = Range<u64>> {
    (0..trials.div_ceil(STAGE_TRIALS)).map(move |s| s * STAGE_TRIALS..((s + 1) * STAGE_TRIALS).min(trials))
}

/// Shared, read-only state of one D search.
#[derive(Debug, Clone)]
pub struct DSearch<'a> {
    rho: &'a DensityMatrix,
    seed: u64,
    vn: f64,
    reduced_eigenbasis: LocalBasis,
}

impl<'a> DSearch<'a> {
    pub fn new(rho: &'a DensityMatrix, seed: u64) -> Result<Self> {
        let vn = vn_entropy(rho)?;
        let unitaries = (0..rho.num_subsystems())
            .map(|k| Ok(rho.partial_trace(&[k])?.eigen()?.vectors))
            .collect::<Result<Vec<_>>>()?;
        let reduced_eigenbasis = LocalBasis::new(unitaries)?;
        Ok(Self {
            rho,
            seed,
            vn,
            reduced_eigenbasis,
        })
    }

    pub fn vn(&self) -> f64 {
        self.vn
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    fn entropy_of(&self, basis: &LocalBasis) -> f64 {
        shannon_bits(&diagonal_in_basis(self.rho, basis))
    }

    /// Best of the two deterministic warm starts.
    pub fn warm_start(&self) -> Incumbent {
        let identity = LocalBasis::identity(self.rho.dims());
        let a = Candidate {
            entropy: self.entropy_of(&identity),
            source: CandidateSource::Identity,
        };
        let b = Candidate {
            entropy: self.entropy_of(&self.reduced_eigenbasis),
            source: CandidateSource::ReducedEigenbasis,
        };
        let best = a.better(b);
        Incumbent {
            candidate: best,
            basis: if best == a {
                identity
            } else {
                self.reduced_eigenbasis.clone()
            },
        }
    }

    /// Basis of random trial `i`; `center` is the incumbent basis at the
    /// start of the trial's stage.
    pub fn trial_basis(&self, i: u64, center: &LocalBasis) -> LocalBasis {
        let mut rng = trial_rng(self.seed, i);
        if i < STAGE_TRIALS || i % 2 == 0 {
            return random_local_basis(self.rho.dims(), &mut rng);
        }
        let u = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        let scale = libm::pow(10.0, -SCALE_DECADES * u);
        LocalBasis::from_trusted(
            center
                .unitaries()
                .iter()
                .map(|c| perturb_unitary(c, scale, &mut rng))
                .collect(),
        )
    }

    pub fn evaluate_trial(&self, i: u64, center: &LocalBasis) -> Candidate {
        Candidate {
            entropy: self.entropy_of(&self.trial_basis(i, center)),
            source: CandidateSource::Random(i),
        }
    }

    /// Best trial in `trials`, all of which must lie in one stage.
    pub fn best_in(&self, trials: Range<u64>, center: &LocalBasis) -> Option<Candidate> {
        trials.map(|i| self.evaluate_trial(i, center)).reduce(Candidate::better)
    }

    /// Runs the warm starts and `trials` random trials. `stage_best`
    /// evaluates one stage (a range of trial indices around a fixed center)
    /// and returns its best candidate; it may split the work however it
    /// likes as long as it reduces with [`Candidate::better`].
    pub fn run_with<F>(&self, trials: u64, mut stage_best: F) -> DEstimate
    where
        F: FnMut(Range<u64>, &LocalBasis) -> Option<Candidate>,
    {
        let mut incumbent = self.warm_start();
        for stage in stages(trials) {
            if let Some(c) = stage_best(stage, &incumbent.basis) {
                if c.better(incumbent.candidate) == c {
                    let i = match c.source {
                        CandidateSource::Random(i) => i,
                        _ => unreachable!("stages only produce random trials"),
                    };
                    incumbent = Incumbent {
                        candidate: c,
                        basis: self.trial_basis(i, &incumbent.basis),
                    };
                }
            }
        }
        DEstimate {
            value: incumbent.candidate.entropy - self.vn,
            min_diag_entropy: incumbent.candidate.entropy,
            vn: self.vn,
            best_basis: incumbent.basis,
            best_source: incumbent.candidate.source,
            trials_used: trials,
            seed: self.seed,
        }
    }
}

/// Sequential D estimate from the warm starts plus `trials` random trials.
pub fn estimate_d(rho: &DensityMatrix, trials: u64, seed: u64) -> Result<DEstimate> {
    let search = DSearch::new(rho, seed)?;
    Ok(search.run_with(trials, |range, center| search.best_in(range, center)))
}

/// Default number of random trials for a total dimension `d_tot`: 4e4 up to
/// two qubits, 4e5 for three, and ten times more per extra qubit.
pub fn default_trials(d_tot: usize) -> u64 {
    let mut trials = 40_000u64;
    let mut d = 4usize;
    while d < d_tot {
        d = d.saturating_mul(2);
        trials = trials.saturating_mul(10);
    }
    trials
}
