use thiserror::Error;

/// Errors produced by validation and evaluation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Su3Error {
    #[error("matrix contains a non-finite entry")]
    NonFinite,
    #[error("matrix is not hermitian: residual {residual:e} exceeds {bound:e}")]
    NotHermitian { residual: f64, bound: f64 },
    #[error("matrix is not traceless: |tr| = {residual:e} exceeds {bound:e}")]
    NotTraceless { residual: f64, bound: f64 },
    #[error("generator is zero (tr(H^2) = {norm_sq:e}); the exponential is the identity")]
    ZeroGenerator { norm_sq: f64 },
    #[error("determinant invariant {value} lies outside [-1, 1]")]
    InvariantOutOfRange { value: f64 },
    #[error("projector denominator {denominator:e} for branch {branch} is below {bound:e}")]
    DegenerateDenominator {
        branch: usize,
        denominator: f64,
        bound: f64,
    },
    #[error("determinant {det:e} exceeds the Rodrigues tolerance {bound:e}")]
    NotRodriguesCase { det: f64, bound: f64 },
    #[error("evaluation path requires a {expected} spectrum")]
    SpectrumMismatch { expected: &'static str },
    #[error("quadrature with {nodes} nodes did not converge (level difference {difference:e})")]
    QuadratureNotConverged { nodes: usize, difference: f64 },
    #[error("matrix is singular (|det| = {det:e})")]
    SingularMatrix { det: f64 },
    #[error("Gell-Mann index {0} outside 1..=8")]
    IndexOutOfRange(usize),
    #[error("matrix is not in su(3): reconstruction residual {residual:e}")]
    NotInAlgebra { residual: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Su3Error {
    /// Stable machine-readable name of the error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Su3Error::NonFinite => "NonFinite",
            Su3Error::NotHermitian { .. } => "NotHermitian",
            Su3Error::NotTraceless { .. } => "NotTraceless",
            Su3Error::ZeroGenerator { .. } => "ZeroGenerator",
            Su3Error::InvariantOutOfRange { .. } => "InvariantOutOfRange",
            Su3Error::DegenerateDenominator { .. } => "DegenerateDenominator",
            Su3Error::NotRodriguesCase { .. } => "NotRodriguesCase",
            Su3Error::SpectrumMismatch { .. } => "SpectrumMismatch",
            Su3Error::QuadratureNotConverged { .. } => "QuadratureNotConverged",
            Su3Error::SingularMatrix { .. } => "SingularMatrix",
            Su3Error::IndexOutOfRange(_) => "IndexOutOfRange",
            Su3Error::NotInAlgebra { .. } => "NotInAlgebra",
            Su3Error::InvalidParameter(_) => "InvalidParameter",
        }
    }
}

pub type Result<T> = std::result::Result<T, Su3Error>;
