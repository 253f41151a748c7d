use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("operator is not unitary (max |U^dagger U - I| = {deviation:e})")]
    NonUnitary { deviation: f64 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("player index {index} out of range for a {players}-player game")]
    BadPlayer { index: usize, players: usize },

    #[error("unknown strategy name `{0}`")]
    UnknownStrategy(String),

    #[error("invalid game definition: {0}")]
    Config(String),

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("predicate switches {} times over the scanned range: {}", brackets.len(), format_brackets(brackets))]
    AmbiguousThreshold { brackets: Vec<(f64, f64)> },

    #[error("{0}")]
    Io(#[from] std::io::Error),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures of the numerical machinery rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NoConvergence { .. })
    }
}

fn format_brackets(brackets: &[(f64, f64)]) -> String {
    brackets
        .iter()
        .map(|(lo, hi)| format!("[{lo:.6}, {hi:.6}]"))
        .collect::<Vec<_>>()
        .join(", ")
}

pub type Result<T> = std::result::Result<T, Error>;
