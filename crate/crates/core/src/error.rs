use thiserror::Error;

use crate::expansion::PaperTowerReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex label `{0}`")]
    UnknownVertex(String),

    #[error("duplicate vertex label `{0}`")]
    DuplicateVertex(String),

    #[error("self-loop at vertex `{0}`")]
    SelfLoop(String),

    #[error("duplicate edge `{0}`-`{1}`")]
    DuplicateEdge(String, String),

    #[error("graphs must have at least one vertex")]
    EmptyGraph,

    #[error("vertex set is not a clique: `{0}` and `{1}` are non-adjacent")]
    NotAClique(String, String),

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("divisibility violated: {0}")]
    Divisibility(String),

    #[error("coloring does not cover vertex `{0}`")]
    PartialColoring(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("paper-scale tower is infeasible:\n{0}")]
    InfeasibleTower(Box<PaperTowerReport>),

    #[error("malformed json")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by limits rather than by malformed input.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded(_) | Error::InfeasibleTower(_))
    }
}
