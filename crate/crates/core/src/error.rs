use thiserror::Error;

/// Errors raised by simulation, spectral and statistical routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit index {qubit} out of range for {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },

    #[error("gate acts twice on qubit {0}")]
    DuplicateQubit(usize),

    #[error("gate matrix is not unitary (deviation {deviation:.3e})")]
    NonUnitary { deviation: f64 },

    #[error("qubit count {n} exceeds the supported maximum of {max}")]
    TooManyQubits { n: usize, max: usize },

    #[error("qubit count mismatch: expected {expected}, got {actual}")]
    QubitCountMismatch { expected: usize, actual: usize },

    #[error("rate {name} = {value} outside [0, 1]")]
    RateOutOfRange { name: &'static str, value: f64 },

    #[error("sample count must be at least 1")]
    ZeroSamples,

    #[error("sample {index} has zero ideal probability")]
    ZeroProbabilitySample { index: u64 },

    #[error("reconstruction weight {l} exceeds qubit count {n}")]
    WeightTooLarge { l: usize, n: usize },

    #[error("{count} components requested, limit is {limit}")]
    TooManyComponents { count: u128, limit: u128 },

    #[error("no components in weight range {lo}..={hi}")]
    EmptyWeightRange { lo: usize, hi: usize },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed gate description: {0}")]
    MalformedGate(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
