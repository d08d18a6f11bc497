use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BlochError {
    /// A point or parameter outside the admissible domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A `ReciprocalShift` denominator vanished.
    #[error("pole: inner value {value} is within {tol:e} of lambda {lambda}")]
    Pole {
        value: Complex64,
        lambda: Complex64,
        tol: f64,
    },

    #[error("numerical overflow: {0}")]
    NumericalOverflow(String),

    #[error("singular matrix: |mu^n - 1| = {gap:e} for n = {n}")]
    SingularMatrix { n: usize, gap: f64 },

    /// Malformed construction input (e.g. |eta| != 1).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An operation was called on inputs that violate its stated precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl BlochError {
    /// Short machine-readable tag, used by the CLI on stderr.
    pub fn tag(&self) -> &'static str {
        match self {
            BlochError::Domain(_) => "domain",
            BlochError::Pole { .. } => "pole",
            BlochError::NumericalOverflow(_) => "numerical_overflow",
            BlochError::SingularMatrix { .. } => "singular_matrix",
            BlochError::InvalidInput(_) => "invalid_input",
            BlochError::Precondition(_) => "precondition",
        }
    }

    /// True for failures that come from the numerics rather than from the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            BlochError::Pole { .. } | BlochError::NumericalOverflow(_) | BlochError::SingularMatrix { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, BlochError>;
