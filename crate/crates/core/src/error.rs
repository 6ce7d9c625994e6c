use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("vertex {vertex} out of range (graph has {count} vertices)")]
    VertexOutOfRange { vertex: usize, count: usize },

    #[error("invalid penalties p1={p1}, p2={p2}: need p1 > 0 and 0 < p2 <= p1")]
    InvalidPenalty { p1: f64, p2: f64 },

    #[error("slack range must be at least 1, got {0}")]
    InvalidSlackRange(u64),

    #[error("assignment has length {got}, model has {expected} variables")]
    AssignmentLength { expected: usize, got: usize },

    #[error("assignment entry {index} is {value}, expected 0 or 1")]
    NonBinary { index: usize, value: u8 },

    #[error("{n} qubits requested, supported range is 1..={max}")]
    QubitCount { n: usize, max: usize },

    #[error("size mismatch: state has {state} qubits, table has {table}")]
    SizeMismatch { state: usize, table: usize },

    #[error("invalid angles: {0}")]
    InvalidAngles(String),

    #[error("invalid optimizer config: {0}")]
    InvalidConfig(String),

    #[error("objective returned non-finite value {value} at evaluation {eval}")]
    NonFiniteObjective { eval: usize, value: f64 },

    #[error("decision width {n_decision} exceeds {n_qubits} qubits")]
    DecisionWidth { n_decision: usize, n_qubits: usize },

    #[error("graph with {0} vertices is too large for exhaustive enumeration (max 24)")]
    GraphTooLarge(usize),

    #[error("approximation ratio undefined: no sample is a perfect dominating set")]
    UndefinedRatio,

    #[error("no records to analyse")]
    EmptyRecords,

    #[error("fraction must lie in (0, 1], got {0}")]
    InvalidFraction(f64),

    #[error("bitstring {0:?} is not a valid decision string for this graph")]
    BadBitstring(String),

    #[error("{stage} failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn at(stage: &'static str) -> impl FnOnce(Error) -> Error {
        move |source| Error::Stage {
            stage,
            source: Box::new(source),
        }
    }
}
