use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature did not converge: last estimate {last:e}, previous {previous:e}")]
    QuadratureFailure { last: f64, previous: f64 },

    #[error("precision exhausted at degree {degree}: squared norm {squared_norm:e} is not positive")]
    PrecisionExhausted { degree: usize, squared_norm: f64 },

    #[error("evaluation at a pole x = {x}")]
    Pole { x: f64 },

    #[error("overflow evaluating degree {degree} at x = {x}; rescale the argument")]
    ScaledEvaluation { degree: usize, x: f64 },

    #[error("tridiagonal eigensolver did not converge for eigenvalue {index}")]
    EigenNonConvergence { index: usize },

    #[error("table inconsistency: {0}")]
    TableInconsistency(String),

    #[error("infeasible endpoint case: {0}")]
    Infeasible(String),

    #[error("external field is singular at x = {x} (log argument {argument:e})")]
    FieldSingularity { x: f64, argument: f64 },

    #[error("coincident points {i} and {j} in configuration")]
    SingularConfiguration { i: usize, j: usize },

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
