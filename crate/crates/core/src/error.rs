use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input {0} has no outputs")]
    InputWithoutOutputs(usize),

    #[error("product too large: {size} vertices exceeds the budget of {budget}")]
    ProductTooLarge { size: usize, budget: usize },

    #[error("cannot renormalize: kept probability mass is zero")]
    ZeroMass,

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("unknown catalog graph `{0}`")]
    UnknownCatalog(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("undecided ({0} budget exhausted)")]
    Undecided(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("matrix does not fit the graph at ({row}, {col}): {reason}")]
    MatrixMismatch {
        row: usize,
        col: usize,
        reason: String,
    },

    #[error("empty typical set (n = {n}, eps = {eps})")]
    EmptyTypicalSet { n: usize, eps: f64 },

    #[error("decoding failed: {0}")]
    Decode(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
