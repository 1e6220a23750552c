use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("pole: {0}")]
    Pole(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("quadrature did not reach tolerance {tol:e} (estimate {estimate:e}) within {panels} panels")]
    Quadrature { tol: f64, estimate: f64, panels: usize },
    #[error("moment functional is not positive definite at step {step}: 1-|a|^2 = {margin:e}")]
    NotPositiveDefinite { step: usize, margin: f64 },
    #[error("singular Gram determinant D_{index} = {value:e}")]
    SingularGram { index: usize, value: f64 },
    #[error("degree {degree} exceeds declared degree {declared}")]
    Degree { degree: usize, declared: usize },
    #[error("unsupported family for this operation: {0}")]
    UnsupportedFamily(String),
    #[error("parameter b is not unimodular: |b| = {0}")]
    NotUnimodular(f64),
    #[error("degenerate evaluation: {0}")]
    DegenerateEvaluation(String),
    #[error("Verblunsky coefficient {index} outside the open unit disk: |a| = {modulus}")]
    DiskViolation { index: usize, modulus: f64 },
    #[error("root finder did not converge: max residual {residual:e} after {iterations} iterations")]
    Convergence { residual: f64, iterations: usize },
    #[error("zero {index} lies off the unit circle: ||z|-1| = {deviation:e}")]
    OffCircle { index: usize, deviation: f64 },
    #[error("zeros collide: argument gap {gap:e} below separation tolerance")]
    Collision { gap: f64 },
    #[error("point is not a zero of the polynomial: |P(z)| = {0:e}")]
    NotAZero(f64),
    #[error("eigenpair refinement failed: residual {0:e}")]
    Eigenpair(f64),
    #[error("trajectory matching failed at t = {t}: {reason}")]
    Matching { t: f64, reason: String },
    #[error("index mismatch: {0}")]
    IndexMismatch(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// True for errors caused by invalid inputs rather than numerical failure.
    pub fn is_config_error(&self) -> bool {
        matches!(
            self,
            Error::Domain(_) | Error::UnsupportedFamily(_) | Error::NotUnimodular(_) | Error::Degree { .. }
        )
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::Pole(_) => "PoleError",
            Error::Domain(_) => "DomainError",
            Error::Quadrature { .. } => "QuadratureError",
            Error::NotPositiveDefinite { .. } => "NotPositiveDefinite",
            Error::SingularGram { .. } => "SingularGram",
            Error::Degree { .. } => "DegreeError",
            Error::UnsupportedFamily(_) => "UnsupportedFamily",
            Error::NotUnimodular(_) => "NotUnimodular",
            Error::DegenerateEvaluation(_) => "DegenerateEvaluation",
            Error::DiskViolation { .. } => "DiskViolation",
            Error::Convergence { .. } => "ConvergenceError",
            Error::OffCircle { .. } => "OffCircle",
            Error::Collision { .. } => "CollisionError",
            Error::NotAZero(_) => "NotAZero",
            Error::Eigenpair(_) => "EigenpairError",
            Error::Matching { .. } => "MatchingError",
            Error::IndexMismatch(_) => "IndexMismatch",
        }
    }
}
