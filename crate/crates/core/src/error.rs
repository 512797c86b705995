use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("register size mismatch: {left} vs {right} qubits")]
    SizeMismatch { left: usize, right: usize },

    #[error("cannot parse Pauli word {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("operator is not Hermitian with a real sign")]
    NotHermitian,

    #[error("generators {0} and {1} anticommute")]
    Anticommuting(usize, usize),

    #[error("inconsistent stabilizer group: -I is generated")]
    Inconsistent,

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("lattice kind mismatch: expected {expected}, got {got}")]
    KindMismatch {
        expected: &'static str,
        got: &'static str,
    },

    #[error("loop error: {0}")]
    Loop(String),

    #[error("tableau failed validation: {0}")]
    InvalidTableau(String),

    #[error("not a stabilizer state: rank {rank} on {n} qubits")]
    NotAState { rank: usize, n: usize },

    #[error("ground-state completion failed: {0}")]
    Completion(String),

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by a bad request rather than a failed self-check.
    pub fn is_config_error(&self) -> bool {
        !matches!(
            self,
            Error::InvalidTableau(_)
                | Error::Internal(_)
                | Error::Completion(_)
                | Error::Inconsistent
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
