use thiserror::Error;

/// Errors raised by the simulation and bound routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state is not normalized (norm = {norm})")]
    NotNormalized { norm: f64 },

    #[error("amplitude vector has length {len}, which is not a power of two")]
    NotPowerOfTwo { len: usize },

    #[error("matrix is not a valid density matrix: {0}")]
    InvalidDensity(String),

    #[error("dimension {dim} does not factor as {dim_a} x {dim_b}")]
    NotFactorable {
        dim: usize,
        dim_a: usize,
        dim_b: usize,
    },

    #[error("antipodal inputs: psi + phi vanishes")]
    Antipodal,

    #[error("ensemble is empty")]
    EmptyEnsemble,

    #[error("ensemble probabilities sum to {sum}, not 1")]
    BadProbabilities { sum: f64 },

    #[error("marked index {tau} out of range for {n} qubits")]
    MarkedOutOfRange { tau: usize, n: usize },

    #[error("operation requires a marked item but the oracle is null")]
    NullOracle,

    #[error("copy budget exhausted: requested {requested}, remaining {remaining}")]
    BudgetExhausted { requested: u64, remaining: u64 },

    #[error("parameter count mismatch: layout expects {expected}, got {found}")]
    ParamCount { expected: usize, found: usize },

    #[error("invalid qubit placement: {0}")]
    InvalidLayout(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("too large to simulate: {0}")]
    TooLarge(String),

    #[error("magic reflection needs an explicit ensemble on Alice's side; {0}")]
    EnsembleRequired(String),
}

pub type Result<T> = std::result::Result<T, Error>;
