use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph has {n} vertices; this operation supports at most {limit}")]
    Capacity { n: usize, limit: usize },

    #[error("state budget of {limit} expansions exceeded")]
    BudgetExceeded { limit: u64 },

    #[error("time limit exceeded after {expanded} expansions")]
    Deadline { expanded: u64 },

    #[error("{0}")]
    Domain(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("turn {turn}: {player} returned illegal move {mv}")]
    IllegalMove { turn: usize, player: String, mv: String },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }

    /// True for the resource-limit errors (state budget and deadline).
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. } | Error::Deadline { .. })
    }
}
