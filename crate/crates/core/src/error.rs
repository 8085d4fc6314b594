use std::fmt;

/// One reason a matrix fails to be a physical density matrix.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    NotHermitian { residual: f64 },
    TraceNotOne { trace: f64 },
    NotPsd { min_eigenvalue: f64 },
}

impl Violation {
    pub fn name(&self) -> &'static str {
        match self {
            Violation::NotHermitian { .. } => "NotHermitian",
            Violation::TraceNotOne { .. } => "TraceNotOne",
            Violation::NotPsd { .. } => "NotPSD",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotHermitian { residual } => {
                write!(f, "NotHermitian (max |m_ij - conj(m_ji)| = {residual:e})")
            }
            Violation::TraceNotOne { trace } => write!(f, "TraceNotOne (trace = {trace})"),
            Violation::NotPsd { min_eigenvalue } => {
                write!(f, "NotPSD (min eigenvalue = {min_eigenvalue:e})")
            }
        }
    }
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix shape invalid: expected {expected} entries, got {got}")]
    Shape { expected: usize, got: usize },

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian (residual {0:e})")]
    NotHermitian(f64),

    #[error("Jacobi sweeps did not converge (off-diagonal norm {0:e})")]
    NoConvergence(f64),

    #[error("matrix is not positive semidefinite (eigenvalue {0:e})")]
    NotPsd(f64),

    #[error("logarithm of a singular matrix (eigenvalue {0:e})")]
    SingularLog(f64),

    #[error("not a density matrix: {}", join_violations(.0))]
    InvalidDensity(Vec<Violation>),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid X-state parameters: {0}")]
    InvalidXParams(String),

    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),

    #[error("deformation parameter must be a finite q > 0, got {0}")]
    InvalidQ(f64),

    #[error("invalid probability vector: {0}")]
    InvalidProbabilities(String),

    #[error("entropy kind mismatch: expected {expected}, got {got}")]
    KindMismatch {
        expected: &'static str,
        got: &'static str,
    },

    #[error("conversion outside its domain: {0}")]
    DomainError(String),
}

pub type Result<T> = std::result::Result<T, Error>;
