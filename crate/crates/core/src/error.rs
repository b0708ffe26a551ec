use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: residual {residual:e} exceeds tolerance {tol:e}")]
    NotHermitian { residual: f64, tol: f64 },

    #[error(
        "Jacobi iteration did not converge within {sweeps} sweeps (off-diagonal norm {residual:e})"
    )]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("{name} = {value} is outside [{min}, {max}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("invalid noise scenario: {0}")]
    InvalidScenario(String),

    #[error("Kraus set violates completeness: residual {residual:e}")]
    Incomplete { residual: f64 },

    #[error("channel output is not a valid density matrix: {0}")]
    Consistency(String),

    #[error("negative radicand {radicand:e} in closed-form eigenvalues of {family}")]
    FormulaDomain { family: String, radicand: f64 },
}
