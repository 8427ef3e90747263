use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed FCIDUMP header: {0}")]
    MalformedHeader(String),
    #[error("malformed FCIDUMP line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("orbital index {index} out of range (NORB = {norb}) on line {line}")]
    IndexOutOfRange { index: usize, norb: usize, line: usize },
    #[error("missing metadata sidecar {0}")]
    MissingSidecar(PathBuf),
    #[error("invalid metadata: {0}")]
    InvalidMetadata(String),
    #[error("non-hermitian input: {0}")]
    NonHermitian(String),
    #[error("energy cutoff must be non-negative, got {0}")]
    NegativeCutoff(f64),
    #[error("Pauli coefficient for {word} has imaginary part {imag:e}")]
    ImaginaryCoefficient { word: String, imag: f64 },
    #[error("cannot build a circuit for the all-identity word")]
    IdentityWord,
    #[error("qubit index {index} out of range for a {qubits}-qubit register")]
    QubitOutOfRange { index: usize, qubits: usize },
    #[error("register size mismatch: expected {expected} qubits, got {found}")]
    QubitMismatch { expected: usize, found: usize },
    #[error("sector dimension {dim} exceeds the limit {limit}")]
    SectorTooLarge { dim: usize, limit: usize },
    #[error("shot count must be at least 1")]
    ZeroShots,
    #[error("sample set is empty")]
    EmptySampleSet,
    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),
    #[error("matrix has dimension 0")]
    EmptyMatrix,
    #[error("state vector has zero norm")]
    ZeroVector,
    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
