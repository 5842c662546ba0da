use thiserror::Error;

/// Errors raised by the mapping toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} qubits, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("qubit index {index} out of range for {n} qubits")]
    QubitOutOfRange { index: usize, n: usize },

    #[error("mode index {index} out of range for {n} modes")]
    ModeOutOfRange { index: usize, n: usize },

    #[error("repeated mode index {0}")]
    RepeatedMode(usize),

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("leg ({owner}, {label}) does not belong to the tree")]
    ForeignLeg { owner: usize, label: char },

    #[error("mode assignment is not a bijection: {0}")]
    NotABijection(String),

    #[error("mapping has no source tree")]
    NoSourceTree,

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("empty support")]
    EmptySupport,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("size {n} exceeds the dense oracle limit of {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("cannot parse Pauli string {text:?}: {reason}")]
    PauliParse { text: String, reason: String },

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
