//! Exact rapidly-decreasing test functions.
//!
//! A `TestFunction` is a finite sum of poly-Gaussian terms and compact bump
//! terms. Both families are closed under the operations the calculus needs —
//! differentiation, the affine rescaling kφ(k(x−c)), and (for poly-Gaussians)
//! the Fourier transform — with coefficient-level arithmetic, so "the nth
//! derivative" is an object, not a numerical approximation.

mod bump;
mod fourier;
mod polygauss;
mod seminorm;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::integrate::{integrate_bounded, Integrand};

pub use bump::{cutoff_profile_deriv, BumpTerm, DERIVATIVE_CAP};
pub use fourier::{fourier_testfn, FourierImage, SampledFunction};
pub use polygauss::PolyGaussian;
pub use seminorm::{seminorm, SeminormValue};

#[derive(Debug, Clone)]
pub(crate) enum Term {
    Gauss(PolyGaussian),
    Bump(BumpTerm),
}

/// A finite formal sum of exact test-function terms.
#[derive(Debug, Clone, Default)]
pub struct TestFunction {
    terms: Vec<Term>,
}

impl TestFunction {
    pub fn zero() -> Self {
        TestFunction { terms: Vec::new() }
    }

    /// e^{−iωx}·e^{−x²}.
    pub fn gauss(omega: f64) -> Self {
        TestFunction::poly_gauss(vec![Complex64::new(1.0, 0.0)], omega, 1.0, 0.0)
    }

    /// p(x)·e^{−iωx}·e^{−α(x−center)²}.
    pub fn poly_gauss(poly: Vec<Complex64>, omega: f64, alpha: f64, center: f64) -> Self {
        let g = PolyGaussian::new(poly, omega, alpha, center);
        if g.is_zero() {
            return TestFunction::zero();
        }
        TestFunction {
            terms: vec![Term::Gauss(g)],
        }
    }

    pub(crate) fn from_polygauss(g: PolyGaussian) -> Self {
        if g.is_zero() {
            return TestFunction::zero();
        }
        TestFunction {
            terms: vec![Term::Gauss(g)],
        }
    }

    /// v(x−a)·v(b−x): smooth, positive on (a,b), identically 0 outside.
    pub fn bump(a: f64, b: f64) -> Self {
        TestFunction {
            terms: vec![Term::Bump(BumpTerm::new(a, b))],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn add(&self, other: &TestFunction) -> TestFunction {
        let mut out = self.clone();
        for t in &other.terms {
            out.push_coalescing(t.clone());
        }
        out
    }

    pub fn scale(&self, z: Complex64) -> TestFunction {
        if z.re == 0.0 && z.im == 0.0 {
            return TestFunction::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|t| match t {
                Term::Gauss(g) => Term::Gauss(PolyGaussian::new(
                    g.poly.iter().map(|c| c * z).collect(),
                    g.omega,
                    g.alpha,
                    g.center,
                )),
                Term::Bump(b) => Term::Bump(BumpTerm {
                    coeff: b.coeff * z,
                    ..b.clone()
                }),
            })
            .collect();
        TestFunction { terms }
    }

    /// Like-term merge: poly-Gaussians with identical (ω, α, center) add
    /// their polynomials; bumps merge only when the whole exact structure
    /// matches. Anything that cancels to exactly zero is dropped.
    fn push_coalescing(&mut self, t: Term) {
        match t {
            Term::Gauss(g) => {
                if g.is_zero() {
                    return;
                }
                for (i, existing) in self.terms.iter_mut().enumerate() {
                    if let Term::Gauss(e) = existing {
                        if e.omega.to_bits() == g.omega.to_bits()
                            && e.alpha.to_bits() == g.alpha.to_bits()
                            && e.center.to_bits() == g.center.to_bits()
                        {
                            let mut poly = e.poly.clone();
                            if poly.len() < g.poly.len() {
                                poly.resize(g.poly.len(), Complex64::new(0.0, 0.0));
                            }
                            for (k, c) in g.poly.iter().enumerate() {
                                poly[k] += c;
                            }
                            let merged = PolyGaussian::new(poly, g.omega, g.alpha, g.center);
                            if merged.is_zero() {
                                self.terms.remove(i);
                            } else {
                                *existing = Term::Gauss(merged);
                            }
                            return;
                        }
                    }
                }
                self.terms.push(Term::Gauss(g));
            }
            Term::Bump(b) => {
                if b.is_zero() {
                    return;
                }
                for (i, existing) in self.terms.iter_mut().enumerate() {
                    if let Term::Bump(e) = existing {
                        if e.a.to_bits() == b.a.to_bits()
                            && e.b.to_bits() == b.b.to_bits()
                            && e.sa.to_bits() == b.sa.to_bits()
                            && e.sb.to_bits() == b.sb.to_bits()
                            && e.terms == b.terms
                        {
                            let coeff = e.coeff + b.coeff;
                            if coeff.re == 0.0 && coeff.im == 0.0 {
                                self.terms.remove(i);
                            } else {
                                e.coeff = coeff;
                            }
                            return;
                        }
                    }
                }
                self.terms.push(Term::Bump(b));
            }
        }
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        let mut v = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            v += match t {
                Term::Gauss(g) => g.eval(x),
                Term::Bump(b) => b.eval(x),
            };
        }
        v
    }

    /// One exact derivative. Term count is invariant: each term's derivative
    /// stays a single term of the same family.
    pub fn derivative(&self) -> Result<TestFunction> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            match t {
                Term::Gauss(g) => {
                    let d = g.derivative();
                    if !d.is_zero() {
                        terms.push(Term::Gauss(d));
                    }
                }
                Term::Bump(b) => {
                    let d = b.derivative()?;
                    if !d.is_zero() {
                        terms.push(Term::Bump(d));
                    }
                }
            }
        }
        Ok(TestFunction { terms })
    }

    /// n successive single derivatives — deliberately iterated, so that
    /// derivative-then-seminorm equals seminorm-at-higher-order bit for bit.
    pub fn derivative_n(&self, n: usize) -> Result<TestFunction> {
        if n > DERIVATIVE_CAP {
            return Err(Error::OrderCap {
                requested: n,
                cap: DERIVATIVE_CAP,
            });
        }
        let mut out = self.clone();
        for _ in 0..n {
            out = out.derivative()?;
        }
        Ok(out)
    }

    /// φ⁽ⁿ⁾(x). Convenience form; hold `derivative_n` yourself in hot loops.
    pub fn eval_deriv(&self, n: usize, x: f64) -> Result<Complex64> {
        Ok(self.derivative_n(n)?.eval(x))
    }

    /// kφ(k(x−c)), exactly, in the same families. Preserves ∫φ for every k, c.
    pub fn scale_translate(&self, k: f64, c: f64) -> TestFunction {
        assert!(k > 0.0 && k.is_finite(), "scaling factor must be positive");
        assert!(c.is_finite(), "translation must be finite");
        let terms = self
            .terms
            .iter()
            .map(|t| match t {
                Term::Gauss(g) => Term::Gauss(g.scale_translate(k, c)),
                Term::Bump(b) => Term::Bump(b.scale_translate(k, c)),
            })
            .collect();
        TestFunction { terms }
    }

    /// ∫φ over the line: closed form for poly-Gaussian terms, quadrature
    /// over the (bounded) support for bump terms.
    pub fn integral(&self, tol: f64) -> Result<Complex64> {
        let mut total = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            match t {
                Term::Gauss(g) => total += g.integral(),
                Term::Bump(b) => {
                    let (a, bb) = b.support();
                    let term = b.clone();
                    let f = Integrand::new(move |x| term.eval(x));
                    total += integrate_bounded(&f, a, bb, tol)?.value;
                }
            }
        }
        Ok(total)
    }

    pub(crate) fn has_bump(&self) -> bool {
        self.terms.iter().any(|t| matches!(t, Term::Bump(_)))
    }

    /// Bounding interval of the support when it is compact (no Gaussian
    /// terms); None means the function lives on the whole line.
    pub(crate) fn support_hull(&self) -> Option<(f64, f64)> {
        if self.is_zero() || self.terms.iter().any(|t| matches!(t, Term::Gauss(_))) {
            return None;
        }
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for t in &self.terms {
            if let Term::Bump(b) = t {
                let (a, bb) = b.support();
                lo = lo.min(a);
                hi = hi.max(bb);
            }
        }
        Some((lo, hi))
    }

    /// Localization landmarks for quadrature: support edges, term centers,
    /// and a few multiples of each Gaussian width. Splitting panels here
    /// guarantees no single wide panel straddles (and so overlooks) a term
    /// concentrated on a much smaller scale.
    pub(crate) fn quad_hints(&self) -> Vec<f64> {
        let mut pts = Vec::new();
        for t in &self.terms {
            match t {
                Term::Gauss(g) => {
                    let sigma = (1.0 / g.alpha).sqrt();
                    for s in [-8.0, -3.0, -1.0, 0.0, 1.0, 3.0, 8.0] {
                        pts.push(g.center + s * sigma);
                    }
                }
                Term::Bump(b) => {
                    let (a, bb) = b.support();
                    pts.extend([a, 0.5 * (a + bb), bb]);
                }
            }
        }
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }

    /// Certified bound on sup over the line of |x|^r·|φ(x)|.
    pub(crate) fn power_sup_bound(&self, r: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| match t {
                Term::Gauss(g) => g.power_sup_bound(r),
                Term::Bump(b) => {
                    let (a, bb) = b.support();
                    b.sup_bound() * a.abs().max(bb.abs()).powf(r)
                }
            })
            .sum()
    }

    /// Certified bound on sup over |x| ≥ w of |x|^r·|φ(x)|.
    pub(crate) fn power_tail_sup(&self, r: f64, w: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| match t {
                Term::Gauss(g) => g.power_tail_sup(r, w),
                Term::Bump(b) => {
                    let (a, bb) = b.support();
                    if w >= a.abs().max(bb.abs()) {
                        0.0
                    } else {
                        b.sup_bound() * a.abs().max(bb.abs()).powf(r)
                    }
                }
            })
            .sum()
    }

    /// Radius beyond which every term's |x|^r envelope is decreasing.
    pub(crate) fn peak_radius(&self, r: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| match t {
                Term::Gauss(g) => g.peak_radius(r),
                Term::Bump(b) => {
                    let (a, bb) = b.support();
                    a.abs().max(bb.abs())
                }
            })
            .fold(1.0f64, f64::max)
    }
}
