//! Shared error type for the numeric and symbolic layers.
//!
//! Every fallible operation in this crate returns [`Result`]. Variants carry
//! enough context to be printed directly by a front end; none of them borrow.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Interval endpoints out of order (or not finite).
    #[error("invalid interval: lower bound {a} is not strictly below upper bound {b}")]
    InvalidInterval { a: f64, b: f64 },

    /// The adaptive engine ran out of its evaluation budget before the
    /// error estimate dropped under the tolerance.
    #[error("quadrature did not converge ({context}): error estimate {estimate:.3e} > tol {tol:.3e} after {evals} evaluations")]
    NonConvergence {
        context: String,
        evals: usize,
        estimate: f64,
        tol: f64,
    },

    /// Whole-line integration was requested without a decay certificate and
    /// without an explicit truncation radius.
    #[error("integrand carries no decay certificate and no explicit truncation radius was supplied")]
    MissingCertificate,

    /// The two one-sided limits required by the requested mode do not exist
    /// independently.
    #[error("requested mode is undefined for this integrand: {detail}")]
    ModeMismatch { detail: String },

    /// Derivative order beyond the configured cap.
    #[error("derivative order {requested} exceeds the cap {cap}")]
    OrderCap { requested: usize, cap: usize },

    /// A mollifier failed the evenness or unit-mass check.
    #[error("mollifier rejected: {reason}")]
    MollifierInvalid { reason: String },

    /// A certified pairing bound was exceeded.
    #[error("pairing bound violated at {step}: |pairing| = {lhs:.6e} > certified bound {bound:.6e}")]
    BoundViolated { step: String, lhs: f64, bound: f64 },

    /// Growth certificate failed numeric validation at a ladder radius.
    #[error("growth certificate violated at R = {radius}: integral {integral:.6e} > C(1+R)^N = {bound:.6e}")]
    CertificateViolated {
        radius: f64,
        integral: f64,
        bound: f64,
    },

    /// The probe family cannot be applied to the given operands.
    #[error("probe family unsupported for these operands: {reason}")]
    ProbeFamilyUnsupported { reason: String },

    /// The transform would nest wrapped atoms beyond depth two.
    #[error("fourier nesting depth exceeded: operand already contains a double-wrapped atom")]
    FourierDepth,

    /// Operation outside the supported surface (precondition failure).
    #[error("unsupported operation: {reason}")]
    Unsupported { reason: String },
}

impl Error {
    /// Stable machine-readable variant name, used as the `kind` field of
    /// structured error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInterval { .. } => "InvalidInterval",
            Error::NonConvergence { .. } => "NonConvergence",
            Error::MissingCertificate => "MissingCertificate",
            Error::ModeMismatch { .. } => "ModeMismatch",
            Error::OrderCap { .. } => "OrderCap",
            Error::MollifierInvalid { .. } => "MollifierInvalid",
            Error::BoundViolated { .. } => "BoundViolated",
            Error::CertificateViolated { .. } => "CertificateViolated",
            Error::ProbeFamilyUnsupported { .. } => "ProbeFamilyUnsupported",
            Error::FourierDepth => "FourierDepth",
            Error::Unsupported { .. } => "Unsupported",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
