use thiserror::Error;

/// Errors surfaced by the numerical kernels and the experiment harness.
#[derive(Debug, Error)]
pub enum FraflowError {
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("trajectory diverged at node {last_valid_node} (t = {t}): {detail}")]
    Divergence {
        last_valid_node: usize,
        t: f64,
        detail: String,
    },

    #[error("Mittag-Leffler evaluation failed: {detail} (partial sum {partial}, error bound {bound})")]
    MlEvaluation {
        partial: f64,
        bound: f64,
        detail: String,
    },

    #[error("Picard iteration is not contracting: difference grew for 3 consecutive iterations (last {last_diff})")]
    ContractionFailure { last_diff: f64 },

    #[error("Picard iteration exhausted {iters} iterations without reaching tol {tol} (last difference {last_diff})")]
    ToleranceNotMet {
        iters: usize,
        tol: f64,
        last_diff: f64,
    },

    #[error("config error at line {line}: {msg}")]
    Config { line: usize, msg: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, FraflowError>;

impl FraflowError {
    pub fn precondition(msg: impl Into<String>) -> Self {
        FraflowError::Precondition(msg.into())
    }
}
