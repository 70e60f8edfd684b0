//! Named state families and how to build them from command-line style
//! parameters.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use qcorr_core::basis::{random_local_basis, random_unitary, trial_rng};
use qcorr_core::{states, DensityMatrix};

use crate::format::{load_density, load_vector};
use crate::{Error, Result};

/// Trial index reserved for drawing the random classical state, far away
/// from any index the D search will use.
const CLASSICAL_STREAM: u64 = u64::MAX - 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StateFamily {
    PseudoPure,
    BellMixture,
    SigmaP,
    Horodecki2x4,
    PseudoGhz,
    Classical,
    File,
}

impl StateFamily {
    pub const ALL: [StateFamily; 7] = [
        StateFamily::PseudoPure,
        StateFamily::BellMixture,
        StateFamily::SigmaP,
        StateFamily::Horodecki2x4,
        StateFamily::PseudoGhz,
        StateFamily::Classical,
        StateFamily::File,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StateFamily::PseudoPure => "pseudo_pure",
            StateFamily::BellMixture => "bell_mixture",
            StateFamily::SigmaP => "sigma_p",
            StateFamily::Horodecki2x4 => "horodecki_2x4",
            StateFamily::PseudoGhz => "pseudo_ghz",
            StateFamily::Classical => "classical",
            StateFamily::File => "file",
        }
    }

    /// Whether the family is parameterized by `p` (or `b`).
    pub fn has_parameter(self) -> bool {
        !matches!(self, StateFamily::Classical | StateFamily::File)
    }

    /// Name of the parameter as printed in reports and CSV headers.
    pub fn parameter_name(self) -> &'static str {
        match self {
            StateFamily::Horodecki2x4 => "b",
            _ => "p",
        }
    }
}

impl fmt::Display for StateFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StateFamily {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase().replace('-', "_");
        let alias = match s.as_str() {
            "horodecki" => Some(StateFamily::Horodecki2x4),
            "ghz" => Some(StateFamily::PseudoGhz),
            _ => None,
        };
        alias
            .or_else(|| StateFamily::ALL.into_iter().find(|f| f.name() == s))
            .ok_or_else(|| {
                let names: Vec<_> = StateFamily::ALL.iter().map(|f| f.name()).collect();
                format!("unknown family `{s}` (expected one of {})", names.join(", "))
            })
    }
}

/// Everything needed to build one state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateSpec {
    pub family: StateFamily,
    /// `p` or `b`; required by parameterized families.
    pub parameter: Option<f64>,
    /// Subsystem dimensions for families that accept them: `[2,4]` or
    /// `[2,2,2]` for `horodecki_2x4`, all-qubit lists for `pseudo_ghz` and
    /// `classical`. Empty means the family default.
    pub dims: Vec<usize>,
    /// Matrix file for `file`; optional `vec` file holding `|psi>` for
    /// `pseudo_pure` (two-qubit `|Phi+>` otherwise).
    pub source_path: Option<PathBuf>,
    /// Seed for the random `classical` family.
    pub seed: u64,
}

impl StateSpec {
    pub fn new(family: StateFamily) -> Self {
        Self {
            family,
            parameter: None,
            dims: Vec::new(),
            source_path: None,
            seed: 0,
        }
    }

    pub fn with_parameter(&self, p: f64) -> Self {
        Self {
            parameter: Some(p),
            ..self.clone()
        }
    }

    fn param(&self) -> Result<f64> {
        self.parameter.ok_or_else(|| {
            Error::Invalid(format!(
                "family {} needs a parameter (--{})",
                self.family,
                self.family.parameter_name()
            ))
        })
    }

    fn dims_or(&self, default: &[usize]) -> Vec<usize> {
        if self.dims.is_empty() {
            default.to_vec()
        } else {
            self.dims.clone()
        }
    }

    fn qubits(&self, default: usize) -> Result<usize> {
        let dims = self.dims_or(&vec![2; default]);
        if dims.iter().any(|&d| d != 2) {
            return Err(Error::Invalid(format!(
                "family {} is defined on qubits only",
                self.family
            )));
        }
        Ok(dims.len())
    }

    fn path(&self) -> Result<&PathBuf> {
        self.source_path
            .as_ref()
            .ok_or_else(|| Error::Invalid(format!("family {} needs a file (--file)", self.family)))
    }

    pub fn build(&self) -> Result<DensityMatrix> {
        let rho = match self.family {
            StateFamily::PseudoPure => {
                let p = self.param()?;
                match &self.source_path {
                    Some(path) => {
                        let (dims, psi) = load_vector(path)?;
                        states::pseudo_pure(&psi, p, &dims)?
                    }
                    None => states::pseudo_pure(&states::bell_phi_plus(), p, &[2, 2])?,
                }
            }
            StateFamily::BellMixture => states::bell_mixture(self.param()?)?,
            StateFamily::SigmaP => states::sigma_p(self.param()?)?,
            StateFamily::Horodecki2x4 => states::horodecki_2x4(self.param()?, &self.dims_or(&[2, 4]))?,
            StateFamily::PseudoGhz => states::pseudo_ghz(self.param()?, self.qubits(3)?)?,
            StateFamily::Classical => random_classical(&vec![2; self.qubits(2)?], self.seed)?,
            StateFamily::File => load_density(self.path()?)?,
        };
        Ok(rho)
    }
}

/// Classical state in a random product basis with distinct weights, fully
/// determined by `seed`.
pub fn random_classical(dims: &[usize], seed: u64) -> Result<DensityMatrix> {
    if dims.is_empty() || dims.len() > 10 {
        return Err(Error::Invalid("classical states need 1 to 10 subsystems".into()));
    }
    let d: usize = dims.iter().product();
    let mut rng = trial_rng(seed, CLASSICAL_STREAM);
    let basis = random_local_basis(dims, &mut rng);
    // jitter in [0, 1/2] on top of 1, 2, ..., d keeps the weights distinct
    let u = random_unitary(d, &mut rng);
    let mut w: Vec<f64> = (0..d).map(|i| (i + 1) as f64 + 0.5 * u[(i, 0)].norm()).collect();
    let total: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= total);
    Ok(states::classical_state(&w, &basis)?)
}
