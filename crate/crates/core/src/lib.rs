//! Symbolic–numeric calculus for tempered distributions on the real line.
//!
//! The crate represents distributions as canonical sums of point atoms
//! c·Dⁿδ_a and regular atoms c·Dᵐ L_f over a catalog of slow-growth
//! functions, pairs them with an exact test-function algebra, and implements
//! derivative, Fourier transform, translation, probing, and mollifier point
//! recovery so that every symbolic rewrite can be cross-checked against the
//! defining numeric pairing.
//!
//! Module map:
//! - [`integrate`]: breakpoint-aware adaptive quadrature, bounded and
//!   whole-line (generalized / absolute / principal-value), plus an
//!   iterated-integral swap check.
//! - [`schwartz`]: exact rapidly-decreasing test functions (poly-Gaussian
//!   and compact bump families), seminorms, Fourier transforms.
//! - [`catalog`]: slow-growth functions with balanced-jump evaluation,
//!   growth certificates, and closed-form transforms where known.
//! - [`distribution`]: the distribution algebra itself.

// Interval guards are written !(a < b) so that NaN endpoints fail them;
// frozen numeric constants keep the full decimal expansions they were
// generated with.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod catalog;
pub mod distribution;
mod error;
pub mod integrate;
pub mod report;
pub mod schwartz;

pub use error::{Error, Result};

pub use catalog::CatalogFunction;
pub use distribution::{Atom, Distribution};
pub use report::{ErrorRecord, Report, Value};
pub use schwartz::TestFunction;

/// √π to full double precision.
pub const SQRT_PI: f64 = 1.772_453_850_905_516_027_3;

/// 2π, the normalization of the forward Fourier transform used throughout:
/// f̂(ω) = (1/2π) ∫ e^{−iωx} f(x) dx.
pub const TWO_PI: f64 = 2.0 * std::f64::consts::PI;
