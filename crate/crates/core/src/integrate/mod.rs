//! Breakpoint-aware adaptive quadrature for complex-valued integrands on
//! bounded and unbounded intervals.
//!
//! Unbounded integrals come in three modes. `Generalized` takes the two
//! one-sided limits independently, `Absolute` integrates |f|, and
//! `PrincipalValue` takes one symmetric limit. A decay certificate
//! |f(x)| <= C/|x|^p (p > 1) lets the tail be truncated analytically;
//! without one, a doubling radius ladder tests convergence empirically and
//! distinguishes "diverges" from "ran out of budget".

mod adaptive;
mod gk;
mod line;
mod swap;

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use swap::{iterated_swap_check, iterated_swap_check_with, SwapReport};

pub(crate) use adaptive::adapt_bounded;

/// Analytic tail bound: |f(x)| <= coeff / |x|^power for |x| >= valid_from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayCertificate {
    pub coeff: f64,
    pub power: f64,
    pub valid_from: f64,
}

impl DecayCertificate {
    /// `power` must exceed 1 or the tail integral does not converge.
    pub fn new(coeff: f64, power: f64) -> Self {
        assert!(coeff > 0.0, "decay coefficient must be positive");
        assert!(power > 1.0, "decay power must exceed 1");
        DecayCertificate {
            coeff,
            power,
            valid_from: 1.0,
        }
    }

    pub fn valid_from(mut self, r: f64) -> Self {
        assert!(r >= 1.0, "certificate validity must start at |x| >= 1");
        self.valid_from = r;
        self
    }

    /// One-sided tail mass bound: integral of coeff/x^power over [r, inf).
    pub fn tail_bound(&self, r: f64) -> f64 {
        self.coeff * r.powf(1.0 - self.power) / (self.power - 1.0)
    }

    /// Smallest radius at which the one-sided tail bound drops to `tail_tol`.
    pub fn radius_for(&self, tail_tol: f64) -> f64 {
        let r = (self.coeff / (tail_tol * (self.power - 1.0))).powf(1.0 / (self.power - 1.0));
        r.max(self.valid_from)
    }
}

/// A complex-valued function of one real variable, with the discontinuity
/// locations and tail-decay knowledge the quadrature needs.
#[derive(Clone)]
pub struct Integrand {
    eval: Arc<dyn Fn(f64) -> Complex64 + Send + Sync>,
    breakpoints: Vec<f64>,
    decay: Option<DecayCertificate>,
}

impl Integrand {
    pub fn new(f: impl Fn(f64) -> Complex64 + Send + Sync + 'static) -> Self {
        Integrand {
            eval: Arc::new(f),
            breakpoints: Vec::new(),
            decay: None,
        }
    }

    pub fn real(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Integrand::new(move |x| Complex64::new(f(x), 0.0))
    }

    /// Points where the integrand may jump; panels never straddle them.
    pub fn with_breakpoints(mut self, mut breakpoints: Vec<f64>) -> Self {
        breakpoints.sort_by(f64::total_cmp);
        breakpoints.dedup();
        assert!(
            breakpoints.iter().all(|b| b.is_finite()),
            "breakpoints must be finite"
        );
        self.breakpoints = breakpoints;
        self
    }

    pub fn with_decay(mut self, cert: DecayCertificate) -> Self {
        self.decay = Some(cert);
        self
    }

    /// |f|, inheriting breakpoints and decay (|.| preserves both).
    pub fn abs(&self) -> Integrand {
        let inner = Arc::clone(&self.eval);
        Integrand {
            eval: Arc::new(move |x| Complex64::new(inner(x).norm(), 0.0)),
            breakpoints: self.breakpoints.clone(),
            decay: self.decay,
        }
    }

    #[inline]
    pub fn eval(&self, x: f64) -> Complex64 {
        (self.eval)(x)
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn decay(&self) -> Option<DecayCertificate> {
        self.decay
    }
}

impl std::fmt::Debug for Integrand {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Integrand")
            .field("breakpoints", &self.breakpoints)
            .field("decay", &self.decay)
            .finish_non_exhaustive()
    }
}

/// How an integral was interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Bounded,
    Generalized,
    Absolute,
    PrincipalValue,
}

/// Caller-selectable interpretation for whole-line integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineMode {
    Generalized,
    Absolute,
    PrincipalValue,
}

impl From<LineMode> for Mode {
    fn from(m: LineMode) -> Mode {
        match m {
            LineMode::Generalized => Mode::Generalized,
            LineMode::Absolute => Mode::Absolute,
            LineMode::PrincipalValue => Mode::PrincipalValue,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    /// Integrand evaluations allowed per top-level call.
    pub eval_budget: usize,
    /// Explicit truncation radius: with a certificate it overrides the
    /// analytic radius; without one it seeds the doubling ladder.
    pub truncation_radius: Option<f64>,
    /// Doublings the radius ladder may attempt before giving up.
    pub max_rungs: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            eval_budget: 1_000_000,
            truncation_radius: None,
            max_rungs: 24,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct IntegralResult {
    pub value: Complex64,
    pub abs_error_estimate: f64,
    pub mode: Mode,
    /// Where the line was truncated (unbounded modes only).
    pub truncation_radius: Option<f64>,
    pub panels: usize,
}

pub fn integrate_bounded(f: &Integrand, a: f64, b: f64, tol: f64) -> Result<IntegralResult> {
    integrate_bounded_with(f, a, b, tol, &QuadOptions::default())
}

pub fn integrate_bounded_with(
    f: &Integrand,
    a: f64,
    b: f64,
    tol: f64,
    opts: &QuadOptions,
) -> Result<IntegralResult> {
    assert!(tol > 0.0, "tolerance must be positive");
    if !(a < b) {
        return Err(Error::InvalidInterval { a, b });
    }
    let mut budget = opts.eval_budget;
    let out = adapt_bounded(&|x| f.eval(x), a, b, f.breakpoints(), tol, &mut budget)?;
    Ok(IntegralResult {
        value: out.value,
        abs_error_estimate: out.abs_error,
        mode: Mode::Bounded,
        truncation_radius: None,
        panels: out.panels,
    })
}

pub fn integrate_line(f: &Integrand, mode: LineMode, tol: f64) -> Result<IntegralResult> {
    integrate_line_with(f, mode, tol, &QuadOptions::default())
}

pub fn integrate_line_with(
    f: &Integrand,
    mode: LineMode,
    tol: f64,
    opts: &QuadOptions,
) -> Result<IntegralResult> {
    assert!(tol > 0.0, "tolerance must be positive");
    line::integrate_line_impl(f, mode, tol, opts)
}
