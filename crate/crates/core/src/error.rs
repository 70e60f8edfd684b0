use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
#[non_exhaustive]
pub enum Error {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("invalid subsystem dimensions: {0}")]
    InvalidDims(&'static str),

    #[error("matrix is not Hermitian: max |M - M^dagger| = {residual:e}")]
    NotHermitian { residual: f64 },

    #[error("trace is not 1: |Tr - 1| = {residual:e}")]
    TraceNotUnit { residual: f64 },

    #[error("matrix is not positive semidefinite: smallest eigenvalue {min_eigenvalue:e}")]
    NotPositive { min_eigenvalue: f64 },

    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("{name} = {value} is outside [{min}, {max}]")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("state vector is not normalized: norm = {norm}")]
    Unnormalized { norm: f64 },

    #[error("invalid probability vector: {0}")]
    InvalidProbabilities(&'static str),

    #[error("the set of kept subsystems is empty")]
    EmptySubsystemSet,

    #[error("subsystem index {index} out of range for {count} subsystems")]
    SubsystemOutOfRange { index: usize, count: usize },

    #[error("operation needs at least {required} subsystems, state has {actual}")]
    TooFewSubsystems { required: usize, actual: usize },

    #[error("{blocks} blocks do not evenly divide {items} items")]
    IndivisibleBlocks { items: usize, blocks: usize },

    #[error("partition count {count} exceeds budget {budget}")]
    PartitionBudgetExceeded { count: u128, budget: u128 },

    #[error("invalid bipartition: {0}")]
    InvalidBipartition(&'static str),
}
