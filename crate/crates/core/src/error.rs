use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit {qubit} out of range for a {num_qubits}-qubit register (indices start at 1)")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },

    #[error("gate is not unitary (max deviation of U†U from I is {deviation:e})")]
    NonUnitaryGate { deviation: f64 },

    #[error("control and target must differ (both are qubit {0})")]
    SameQubit(usize),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("qubit {qubit} is entangled with the rest of the register (reduced purity {purity})")]
    EntangledQubit { qubit: usize, purity: f64 },

    #[error("dimension mismatch: expected {expected} qubits, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("probability {0} is outside [0, 1]")]
    InvalidProbability(f64),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("protocol input: {0}")]
    ProtocolInput(String),

    #[error("configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
