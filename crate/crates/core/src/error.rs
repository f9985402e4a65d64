use thiserror::Error;

/// Crate-wide error type. Every fallible operation returns [`Result`].
#[derive(Debug, Error)]
pub enum Error {
    /// A player count or block size outside the range an operation supports.
    #[error("invalid player count {n}: {reason}")]
    PlayerCount { n: usize, reason: String },

    /// A parameter value that violates a documented precondition.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// Malformed textual input (tournament text, manifests, CSV, rankings).
    #[error("parse error: {0}")]
    Parse(String),

    /// Two datasets, matrices, or embeddings that should align do not.
    #[error("alignment error: {0}")]
    Alignment(String),

    /// A pair of players with no head-to-head data during ingestion.
    #[error("no head-to-head data for pair `{0}` vs `{1}`")]
    MissingPair(String, String),

    /// Equal victory-point totals where the source data promises none.
    #[error("victory-point tie between `{0}` and `{1}`")]
    VictoryPointTie(String, String),

    /// A linear system with no unique solution.
    #[error("singular linear system: {0}")]
    Singular(String),

    /// An iterative method that cannot produce a meaningful value.
    #[error("degenerate instance: {0}")]
    Degenerate(String),

    /// A statistic that is undefined because its input has zero variance.
    #[error("zero variance: {0}")]
    ZeroVariance(String),

    /// Exact search exceeded its configured node budget.
    #[error("node budget exceeded after {explored} search nodes")]
    BudgetExceeded { explored: u64 },

    #[error("unknown centrality measure `{0}`")]
    UnknownMeasure(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
