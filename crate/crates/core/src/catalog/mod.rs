//! A closed library of slow-growth functions with balanced-jump evaluators.
//!
//! Every entry carries a growth certificate (C, N) asserting
//! ∫_{−R}^{R}|f| ≤ C(1+R)^N for all R > 0, plus optional structure the rest
//! of the calculus exploits: a pointwise bound C′(1+|x|)^{N′}, a decay
//! certificate for |x| ≥ 1, a compact support, a classical derivative, and
//! a closed-form Fourier transform. Certificates are stored, not inferred;
//! `verify_growth` spot-checks them on a fixed radius ladder.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::integrate::{
    integrate_bounded, integrate_line_with, DecayCertificate, Integrand, LineMode, QuadOptions,
};
use crate::schwartz::PolyGaussian;
use crate::TWO_PI;

/// Radii at which stored growth certificates are numerically validated.
pub const GROWTH_LADDER: [f64; 9] = [1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0, 256.0];

/// Largest monomial exponent constructible through `mono`.
pub const MONO_CAP: usize = 8;

/// A slow-growth function: immutable, cheap to clone, compared structurally.
#[derive(Clone)]
pub struct CatalogFunction(Arc<Kind>);

enum Kind {
    Heaviside,
    SignFn,
    AbsFn,
    Chi {
        a: f64,
        b: f64,
    },
    /// p(x)·e^{−i·freq·x}; freq = 0 covers constants, monomials, polynomials.
    ModulatedPoly {
        poly: Vec<Complex64>,
        freq: f64,
    },
    /// A poly-Gaussian profile (e^{−x²} and everything its closure reaches).
    PolyGaussFn(PolyGaussian),
    ExpAbs,
    Lorentz,
    SinFn,
    CosFn,
    /// Triangular spikes of height 2ⁿ and half-width 2⁻ⁿ/n² centred at
    /// n = 2, 3, …; continuous, absolutely integrable, but admits no
    /// polynomial pointwise bound.
    Spiky {
        n_max: usize,
        /// Spikes narrower than a few float spacings at their centre are
        /// numerically degenerate and omitted; kept ≤ this index.
        n_eff: usize,
    },
    /// (1/2π)∫_a^b e^{−iωx}dx — the transform of an indicator.
    ChiHat {
        a: f64,
        b: f64,
    },
    /// x ↦ inner(x − s).
    Shifted {
        inner: CatalogFunction,
        s: f64,
    },
    /// x ↦ inner(−x), for the kinds with no structural mirror image.
    Reflected {
        inner: CatalogFunction,
    },
    /// z · inner(x).
    Scaled {
        inner: CatalogFunction,
        z: Complex64,
    },
    /// Test-only escape hatch: arbitrary evaluator with caller-asserted
    /// metadata, for exercising certificate failures.
    #[allow(dead_code)]
    Custom {
        label: String,
        eval: Arc<dyn Fn(f64) -> Complex64 + Send + Sync>,
        growth: (f64, u32),
        in_g: bool,
    },
}

fn fmt_real(x: f64) -> String {
    format!("{x}")
}

fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        fmt_real(z.re)
    } else if z.re == 0.0 {
        format!("{}i", fmt_real(z.im))
    } else if z.im < 0.0 {
        format!("{}{}i", fmt_real(z.re), fmt_real(z.im))
    } else {
        format!("{}+{}i", fmt_real(z.re), fmt_real(z.im))
    }
}

fn spike_half_width(n: usize) -> f64 {
    2f64.powi(-(n as i32)) / (n as f64 * n as f64)
}

/// Spikes must be wide enough that their three abscissae are distinct
/// f64 values with room to spare; beyond this the triangle degenerates.
fn spike_representable(n: usize) -> bool {
    spike_half_width(n) >= 8.0 * ulp(n as f64)
}

fn ulp(x: f64) -> f64 {
    let y = f64::from_bits(x.to_bits() + 1);
    y - x
}

/// Map −0.0 to +0.0 so mirrored parameters keep one canonical spelling.
fn unsign_zero(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

impl CatalogFunction {
    // ---- constructors ----------------------------------------------------

    pub fn heaviside() -> Self {
        CatalogFunction(Arc::new(Kind::Heaviside))
    }

    pub fn sign() -> Self {
        CatalogFunction(Arc::new(Kind::SignFn))
    }

    pub fn abs() -> Self {
        CatalogFunction(Arc::new(Kind::AbsFn))
    }

    pub fn chi(a: f64, b: f64) -> Result<Self> {
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidInterval { a, b });
        }
        Ok(CatalogFunction(Arc::new(Kind::Chi {
            a: unsign_zero(a),
            b: unsign_zero(b),
        })))
    }

    pub fn mono(n: usize) -> Result<Self> {
        if n > MONO_CAP {
            return Err(Error::Unsupported {
                reason: format!("monomial exponent {n} exceeds the catalog cap {MONO_CAP}"),
            });
        }
        let mut poly = vec![Complex64::new(0.0, 0.0); n + 1];
        poly[n] = Complex64::new(1.0, 0.0);
        Ok(Self::modulated_poly(poly, 0.0))
    }

    pub fn poly(coeffs: Vec<Complex64>) -> Self {
        Self::modulated_poly(coeffs, 0.0)
    }

    pub fn modulated_poly(mut poly: Vec<Complex64>, freq: f64) -> Self {
        while poly.last().is_some_and(|c| c.re == 0.0 && c.im == 0.0) {
            poly.pop();
        }
        if poly.is_empty() {
            poly.push(Complex64::new(0.0, 0.0));
        }
        for c in &mut poly {
            *c = Complex64::new(unsign_zero(c.re), unsign_zero(c.im));
        }
        CatalogFunction(Arc::new(Kind::ModulatedPoly {
            poly,
            freq: unsign_zero(freq),
        }))
    }

    pub fn gaussfn() -> Self {
        Self::poly_gauss_fn(PolyGaussian::new(
            vec![Complex64::new(1.0, 0.0)],
            0.0,
            1.0,
            0.0,
        ))
    }

    /// p(x)·e^{−iωx}·e^{−α(x−center)²} with the coefficients of p given
    /// lowest degree first.
    pub fn gausspoly(
        poly: Vec<Complex64>,
        omega: f64,
        alpha: f64,
        center: f64,
    ) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() || !omega.is_finite() || !center.is_finite() {
            return Err(Error::Unsupported {
                reason: format!(
                    "gausspoly needs finite parameters and positive width, got \
                     omega={omega}, alpha={alpha}, center={center}"
                ),
            });
        }
        Ok(Self::poly_gauss_fn(PolyGaussian::new(
            poly, omega, alpha, center,
        )))
    }

    pub(crate) fn poly_gauss_fn(g: PolyGaussian) -> Self {
        CatalogFunction(Arc::new(Kind::PolyGaussFn(g)))
    }

    pub fn expabs() -> Self {
        CatalogFunction(Arc::new(Kind::ExpAbs))
    }

    pub fn lorentz() -> Self {
        CatalogFunction(Arc::new(Kind::Lorentz))
    }

    pub fn sinfn() -> Self {
        CatalogFunction(Arc::new(Kind::SinFn))
    }

    pub fn cosfn() -> Self {
        CatalogFunction(Arc::new(Kind::CosFn))
    }

    pub fn chi_hat(a: f64, b: f64) -> Result<Self> {
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidInterval { a, b });
        }
        Ok(CatalogFunction(Arc::new(Kind::ChiHat {
            a: unsign_zero(a),
            b: unsign_zero(b),
        })))
    }

    /// x ↦ f(x − s).
    pub fn shifted(&self, s: f64) -> Self {
        assert!(s.is_finite(), "shift must be finite");
        if s == 0.0 {
            return self.clone();
        }
        // Flatten nested shifts so structural names stay canonical.
        if let Kind::Shifted { inner, s: s0 } = &*self.0 {
            return inner.shifted(s0 + s);
        }
        CatalogFunction(Arc::new(Kind::Shifted {
            inner: self.clone(),
            s,
        }))
    }

    pub fn scaled(&self, z: Complex64) -> Self {
        if z == Complex64::new(1.0, 0.0) {
            return self.clone();
        }
        if let Kind::Scaled { inner, z: z0 } = &*self.0 {
            return inner.scaled(z0 * z);
        }
        CatalogFunction(Arc::new(Kind::Scaled {
            inner: self.clone(),
            z: Complex64::new(unsign_zero(z.re), unsign_zero(z.im)),
        }))
    }

    /// x ↦ f(−x). Kinds with a structural mirror image map onto it exactly;
    /// the rest (the one-sided step, the spiky fixture) get a wrapper.
    pub fn reflect(&self) -> CatalogFunction {
        match &*self.0 {
            Kind::AbsFn | Kind::ExpAbs | Kind::Lorentz | Kind::CosFn => self.clone(),
            Kind::SignFn => Self::sign().scaled(Complex64::new(-1.0, 0.0)),
            Kind::SinFn => Self::sinfn().scaled(Complex64::new(-1.0, 0.0)),
            Kind::Chi { a, b } => Self::chi(-b, -a).expect("mirrored interval stays valid"),
            Kind::ChiHat { a, b } => {
                Self::chi_hat(-b, -a).expect("mirrored interval stays valid")
            }
            Kind::ModulatedPoly { poly, freq } => {
                let p = poly
                    .iter()
                    .enumerate()
                    .map(|(k, &c)| if k % 2 == 1 { -c } else { c })
                    .collect();
                Self::modulated_poly(p, -freq)
            }
            Kind::PolyGaussFn(g) => Self::poly_gauss_fn(g.reflect()),
            Kind::Shifted { inner, s } => inner.reflect().shifted(-s),
            Kind::Scaled { inner, z } => inner.reflect().scaled(*z),
            Kind::Reflected { inner } => inner.clone(),
            Kind::Heaviside | Kind::Spiky { .. } | Kind::Custom { .. } => {
                CatalogFunction(Arc::new(Kind::Reflected {
                    inner: self.clone(),
                }))
            }
        }
    }

    #[cfg(test)]
    pub(crate) fn custom(
        label: &str,
        eval: impl Fn(f64) -> Complex64 + Send + Sync + 'static,
        growth: (f64, u32),
        in_g: bool,
    ) -> Self {
        CatalogFunction(Arc::new(Kind::Custom {
            label: label.to_string(),
            eval: Arc::new(eval),
            growth,
            in_g,
        }))
    }

    pub(crate) fn as_modulated_poly(&self) -> Option<(&[Complex64], f64)> {
        match &*self.0 {
            Kind::ModulatedPoly { poly, freq } => Some((poly, *freq)),
            _ => None,
        }
    }

    /// sin and cos split into two complex exponentials a·e^{−iνx}; the pairs
    /// (a, ν) returned here satisfy f(x) = Σ a·e^{−iνx} exactly.
    pub(crate) fn as_trig_exponentials(&self) -> Option<[(Complex64, f64); 2]> {
        match &*self.0 {
            Kind::CosFn => Some([
                (Complex64::new(0.5, 0.0), 1.0),
                (Complex64::new(0.5, 0.0), -1.0),
            ]),
            Kind::SinFn => Some([
                (Complex64::new(0.0, -0.5), -1.0),
                (Complex64::new(0.0, 0.5), 1.0),
            ]),
            _ => None,
        }
    }

    /// Peel one scalar prefactor off a `scalef` wrapper, if present.
    pub(crate) fn split_scale(&self) -> (Complex64, CatalogFunction) {
        match &*self.0 {
            Kind::Scaled { inner, z } => (*z, inner.clone()),
            _ => (Complex64::new(1.0, 0.0), self.clone()),
        }
    }

    pub(crate) fn is_zero_fn(&self) -> bool {
        matches!(&*self.0, Kind::ModulatedPoly { poly, .. }
            if poly.len() == 1 && poly[0].re == 0.0 && poly[0].im == 0.0)
    }

    // ---- evaluation -------------------------------------------------------

    /// Value off breakpoints; the balanced average (f(x+)+f(x−))/2 at them.
    pub fn eval_balanced(&self, x: f64) -> Complex64 {
        match &*self.0 {
            Kind::Heaviside => Complex64::new(
                if x > 0.0 {
                    1.0
                } else if x < 0.0 {
                    0.0
                } else {
                    0.5
                },
                0.0,
            ),
            Kind::SignFn => Complex64::new(
                if x > 0.0 {
                    1.0
                } else if x < 0.0 {
                    -1.0
                } else {
                    0.0
                },
                0.0,
            ),
            Kind::AbsFn => Complex64::new(x.abs(), 0.0),
            Kind::Chi { a, b } => Complex64::new(
                if x == *a || x == *b {
                    0.5
                } else if *a < x && x < *b {
                    1.0
                } else {
                    0.0
                },
                0.0,
            ),
            Kind::ModulatedPoly { poly, freq } => {
                let mut p = Complex64::new(0.0, 0.0);
                for c in poly.iter().rev() {
                    p = p * x + c;
                }
                let (s, c) = (freq * x).sin_cos();
                p * Complex64::new(c, -s)
            }
            Kind::PolyGaussFn(g) => g.eval(x),
            Kind::ExpAbs => Complex64::new((-x.abs()).exp(), 0.0),
            Kind::Lorentz => Complex64::new(1.0 / (std::f64::consts::PI * (1.0 + x * x)), 0.0),
            Kind::SinFn => Complex64::new(x.sin(), 0.0),
            Kind::CosFn => Complex64::new(x.cos(), 0.0),
            Kind::Spiky { n_eff, .. } => {
                let n = x.round();
                if n < 2.0 || n > *n_eff as f64 {
                    return Complex64::new(0.0, 0.0);
                }
                let h = spike_half_width(n as usize);
                let d = (x - n).abs();
                if d >= h {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new(2f64.powi(n as i32) * (1.0 - d / h), 0.0)
                }
            }
            Kind::ChiHat { a, b } => chi_hat_eval(*a, *b, x),
            Kind::Shifted { inner, s } => inner.eval_balanced(x - s),
            Kind::Reflected { inner } => inner.eval_balanced(-x),
            Kind::Scaled { inner, z } => inner.eval_balanced(x) * z,
            Kind::Custom { eval, .. } => eval(x),
        }
    }

    // ---- metadata ---------------------------------------------------------

    /// Structural name; doubles as the identity for canonical ordering and
    /// equality. Parameterized entries embed their parameters in shortest
    /// round-trip decimal form, so distinct functions get distinct names.
    pub fn name(&self) -> String {
        match &*self.0 {
            Kind::Heaviside => "H".into(),
            Kind::SignFn => "sign".into(),
            Kind::AbsFn => "abs".into(),
            Kind::Chi { a, b } => format!("chi({},{})", fmt_real(*a), fmt_real(*b)),
            Kind::ModulatedPoly { poly, freq } => {
                let coeffs: Vec<String> = poly.iter().map(|c| fmt_complex(*c)).collect();
                if *freq == 0.0 {
                    format!("poly({})", coeffs.join(","))
                } else {
                    format!("modpoly({};{})", coeffs.join(","), fmt_real(*freq))
                }
            }
            Kind::PolyGaussFn(g) => {
                if g.poly.len() == 1
                    && g.poly[0] == Complex64::new(1.0, 0.0)
                    && g.omega == 0.0
                    && g.alpha == 1.0
                    && g.center == 0.0
                {
                    "gaussfn".into()
                } else {
                    let coeffs: Vec<String> = g.poly.iter().map(|c| fmt_complex(*c)).collect();
                    format!(
                        "gausspoly({};{};{};{})",
                        coeffs.join(","),
                        fmt_real(g.omega),
                        fmt_real(g.alpha),
                        fmt_real(g.center)
                    )
                }
            }
            Kind::ExpAbs => "expabs".into(),
            Kind::Lorentz => "lorentz".into(),
            Kind::SinFn => "sinfn".into(),
            Kind::CosFn => "cosfn".into(),
            Kind::Spiky { n_max, .. } => format!("spiky({n_max})"),
            Kind::ChiHat { a, b } => format!("chihat({},{})", fmt_real(*a), fmt_real(*b)),
            Kind::Shifted { inner, s } => format!("shiftf({},{})", inner.name(), fmt_real(*s)),
            Kind::Reflected { inner } => format!("reflectf({})", inner.name()),
            Kind::Scaled { inner, z } => format!("scalef({},{})", inner.name(), fmt_complex(*z)),
            Kind::Custom { label, .. } => format!("custom:{label}"),
        }
    }

    /// Points where the function jumps or has a kink; quadrature panels
    /// never straddle these.
    pub fn breakpoints(&self) -> Vec<f64> {
        match &*self.0 {
            Kind::Heaviside | Kind::SignFn | Kind::AbsFn | Kind::ExpAbs => vec![0.0],
            Kind::Chi { a, b } => vec![*a, *b],
            Kind::ModulatedPoly { .. }
            | Kind::PolyGaussFn(_)
            | Kind::Lorentz
            | Kind::SinFn
            | Kind::CosFn
            | Kind::ChiHat { .. }
            | Kind::Custom { .. } => Vec::new(),
            Kind::Spiky { n_eff, .. } => {
                let mut pts = Vec::new();
                for n in 2..=*n_eff {
                    let h = spike_half_width(n);
                    let c = n as f64;
                    pts.extend([c - h, c, c + h]);
                }
                pts
            }
            Kind::Shifted { inner, s } => {
                inner.breakpoints().into_iter().map(|x| x + s).collect()
            }
            Kind::Reflected { inner } => {
                let mut pts: Vec<f64> = inner.breakpoints().into_iter().map(|x| -x).collect();
                pts.reverse();
                pts
            }
            Kind::Scaled { inner, .. } => inner.breakpoints(),
        }
    }

    /// Stored certificate (C, N): ∫_{−R}^{R}|f| ≤ C(1+R)^N for all R > 0.
    pub fn growth_certificate(&self) -> (f64, u32) {
        match &*self.0 {
            Kind::Heaviside => (1.0, 1),
            Kind::SignFn => (2.0, 1),
            Kind::AbsFn => (1.0, 2),
            Kind::Chi { a, b } => (b - a, 0),
            // ∫|p| ≤ Σ|p_k|·2R^{k+1}/(k+1) ≤ 2Σ|p_k|·(1+R)^{deg+1}
            Kind::ModulatedPoly { poly, .. } => {
                let c: f64 = poly.iter().map(|c| c.norm()).sum();
                (2.0 * c.max(f64::MIN_POSITIVE), poly.len() as u32)
            }
            // ∫|f| ≤ 2·sup|f| + 2·sup|x²f| (split at |x| = 1)
            Kind::PolyGaussFn(g) => {
                (2.0 * (g.power_sup_bound(0.0) + g.power_sup_bound(2.0)), 0)
            }
            Kind::ExpAbs => (2.0, 0),
            Kind::Lorentz => (1.0, 0),
            Kind::SinFn | Kind::CosFn => (2.0, 1),
            // total spike area Σ_{n≥2} 1/n² = π²/6 − 1 ≈ 0.645
            Kind::Spiky { .. } => (0.65, 0),
            // |f̂| ≤ (b−a)/2π pointwise, so ∫_{−R}^{R} ≤ (b−a)R/π
            Kind::ChiHat { a, b } => ((b - a) / std::f64::consts::PI, 1),
            // 1+R+|s| ≤ (1+|s|)(1+R)
            Kind::Shifted { inner, s } => {
                let (c, n) = inner.growth_certificate();
                (c * (1.0 + s.abs()).powi(n as i32), n)
            }
            // ∫_{−R}^{R}|f(−x)| = ∫_{−R}^{R}|f|
            Kind::Reflected { inner } => inner.growth_certificate(),
            Kind::Scaled { inner, z } => {
                let (c, n) = inner.growth_certificate();
                ((c * z.norm()).max(f64::MIN_POSITIVE), n)
            }
            Kind::Custom { growth, .. } => *growth,
        }
    }

    /// Optional (C′, N′) with |f(x)| ≤ C′(1+|x|)^{N′} everywhere. The spiky
    /// fixture deliberately has none: its peak heights outgrow every
    /// polynomial even though its total mass is finite.
    pub fn pointwise_bound(&self) -> Option<(f64, u32)> {
        match &*self.0 {
            Kind::Heaviside | Kind::SignFn | Kind::Chi { .. } | Kind::SinFn | Kind::CosFn => {
                Some((1.0, 0))
            }
            Kind::AbsFn => Some((1.0, 1)),
            Kind::ModulatedPoly { poly, .. } => {
                let c: f64 = poly.iter().map(|c| c.norm()).sum();
                Some((c.max(f64::MIN_POSITIVE), (poly.len() - 1) as u32))
            }
            Kind::PolyGaussFn(g) => Some((g.power_sup_bound(0.0), 0)),
            Kind::ExpAbs => Some((1.0, 0)),
            Kind::Lorentz => Some((1.0 / std::f64::consts::PI, 0)),
            Kind::Spiky { .. } => None,
            Kind::ChiHat { a, b } => Some(((b - a) / TWO_PI, 0)),
            Kind::Shifted { inner, s } => inner
                .pointwise_bound()
                .map(|(c, n)| (c * (1.0 + s.abs()).powi(n as i32), n)),
            Kind::Reflected { inner } => inner.pointwise_bound(),
            Kind::Scaled { inner, z } => {
                inner.pointwise_bound().map(|(c, n)| (c * z.norm(), n))
            }
            Kind::Custom { .. } => None,
        }
    }

    /// Optional certificate |f(x)| ≤ C/|x|^p (p > 1) for |x| ≥ valid_from.
    pub fn decay_certificate(&self) -> Option<DecayCertificate> {
        match &*self.0 {
            // |x|⁶e^{−|x|} peaks at x = 6: 6⁶e^{−6}
            Kind::ExpAbs => Some(DecayCertificate::new(115.66, 6.0)),
            Kind::PolyGaussFn(g) => Some(DecayCertificate::new(
                g.power_sup_bound(8.0).max(f64::MIN_POSITIVE),
                8.0,
            )),
            Kind::Lorentz => Some(DecayCertificate::new(1.0 / std::f64::consts::PI, 2.0)),
            Kind::Shifted { inner, s } => inner.decay_certificate().map(|c| {
                // |x − s| ≥ |x|/2 once |x| ≥ 2|s|, costing a factor 2^p.
                DecayCertificate::new(c.coeff * 2f64.powf(c.power), c.power)
                    .valid_from((2.0 * (s.abs() + c.valid_from)).max(1.0))
            }),
            Kind::Reflected { inner } => inner.decay_certificate(),
            Kind::Scaled { inner, z } => inner.decay_certificate().map(|c| {
                DecayCertificate::new((c.coeff * z.norm()).max(f64::MIN_POSITIVE), c.power)
                    .valid_from(c.valid_from)
            }),
            _ => None,
        }
    }

    /// Compact support hull, when the function vanishes outside it.
    pub fn support(&self) -> Option<(f64, f64)> {
        match &*self.0 {
            Kind::Chi { a, b } => Some((*a, *b)),
            Kind::Spiky { n_eff, .. } => {
                let lo = 2.0 - spike_half_width(2);
                let hi = *n_eff as f64 + spike_half_width(*n_eff);
                Some((lo, hi))
            }
            Kind::Shifted { inner, s } => inner.support().map(|(a, b)| (a + s, b + s)),
            Kind::Reflected { inner } => inner.support().map(|(a, b)| (-b, -a)),
            Kind::Scaled { inner, .. } => inner.support(),
            _ => None,
        }
    }

    /// Whether |f| is integrable over the whole line.
    pub fn in_g(&self) -> bool {
        match &*self.0 {
            Kind::Chi { .. }
            | Kind::PolyGaussFn(_)
            | Kind::ExpAbs
            | Kind::Lorentz
            | Kind::Spiky { .. } => true,
            Kind::Shifted { inner, .. }
            | Kind::Reflected { inner }
            | Kind::Scaled { inner, .. } => inner.in_g(),
            Kind::Custom { in_g, .. } => *in_g,
            _ => false,
        }
    }

    /// The classical derivative, where it exists within the catalog.
    pub fn classical_derivative(&self) -> Option<CatalogFunction> {
        match &*self.0 {
            Kind::AbsFn => Some(Self::sign()),
            Kind::ModulatedPoly { poly, freq } => {
                // (p·e^{−iax})′ = (p′ − ia·p)·e^{−iax}
                let mut d: Vec<Complex64> = poly
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(k, c)| c * k as f64)
                    .collect();
                if d.is_empty() {
                    d.push(Complex64::new(0.0, 0.0));
                }
                if *freq != 0.0 {
                    let rot = Complex64::new(0.0, -*freq);
                    if d.len() < poly.len() {
                        d.resize(poly.len(), Complex64::new(0.0, 0.0));
                    }
                    for (k, c) in poly.iter().enumerate() {
                        d[k] += rot * c;
                    }
                }
                Some(Self::modulated_poly(d, *freq))
            }
            Kind::PolyGaussFn(g) => Some(Self::poly_gauss_fn(g.derivative())),
            Kind::SinFn => Some(Self::cosfn()),
            Kind::CosFn => Some(Self::sinfn().scaled(Complex64::new(-1.0, 0.0))),
            Kind::Shifted { inner, s } => inner.classical_derivative().map(|d| d.shifted(*s)),
            // (f(−x))′ = −f′(−x)
            Kind::Reflected { inner } => inner
                .classical_derivative()
                .map(|d| d.reflect().scaled(Complex64::new(-1.0, 0.0))),
            Kind::Scaled { inner, z } => inner.classical_derivative().map(|d| d.scaled(*z)),
            _ => None,
        }
    }

    /// Closed-form Fourier transform (1/2π)∫e^{−iωx}f(x)dx, where known.
    pub fn closed_form_ft(&self) -> Option<CatalogFunction> {
        match &*self.0 {
            Kind::Chi { a, b } => Self::chi_hat(*a, *b).ok(),
            Kind::ExpAbs => Some(Self::lorentz()),
            Kind::Lorentz => {
                Some(Self::expabs().scaled(Complex64::new(1.0 / TWO_PI, 0.0)))
            }
            Kind::PolyGaussFn(g) => Some(Self::poly_gauss_fn(g.fourier())),
            // FT(f∘neg)(ω) = f̂(−ω)
            Kind::Reflected { inner } => inner.closed_form_ft().map(|ft| ft.reflect()),
            Kind::Scaled { inner, z } => inner.closed_form_ft().map(|ft| ft.scaled(*z)),
            _ => None,
        }
    }
}

fn chi_hat_eval(a: f64, b: f64, w: f64) -> Complex64 {
    let scale = w.abs() * a.abs().max(b.abs());
    if scale < 1e-4 {
        // Series around ω = 0 avoids the 0/0 cancellation:
        // (1/2π)[(b−a) − iω(b²−a²)/2 − ω²(b³−a³)/6 + iω³(b⁴−a⁴)/24]
        let m1 = b - a;
        let m2 = (b * b - a * a) / 2.0;
        let m3 = (b * b * b - a * a * a) / 6.0;
        let m4 = (b * b * b * b - a * a * a * a) / 24.0;
        let w2 = w * w;
        return Complex64::new(m1 - w2 * m3, -w * m2 + w * w2 * m4) / TWO_PI;
    }
    let (sa, ca) = (w * a).sin_cos();
    let (sb, cb) = (w * b).sin_cos();
    // (e^{−iωa} − e^{−iωb}) / (2πiω)
    let num = Complex64::new(ca - cb, sb - sa);
    num / (Complex64::new(0.0, TWO_PI * w))
}

impl fmt::Debug for CatalogFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CatalogFunction({})", self.name())
    }
}

impl PartialEq for CatalogFunction {
    fn eq(&self, other: &Self) -> bool {
        self.name() == other.name()
    }
}

impl Eq for CatalogFunction {}

/// The footnote fixture: triangular spikes at n = 2..=n_max of height 2ⁿ
/// and area 1/n². Absolutely integrable yet pointwise-unbounded by any
/// polynomial. Spikes too narrow for f64 near their centres are omitted.
pub fn spiky_fixture(n_max: usize) -> Result<CatalogFunction> {
    if !(2..=40).contains(&n_max) {
        return Err(Error::Unsupported {
            reason: format!("spiky truncation index {n_max} outside 2..=40"),
        });
    }
    let mut n_eff = 2;
    for n in 2..=n_max {
        if spike_representable(n) {
            n_eff = n;
        } else {
            break;
        }
    }
    Ok(CatalogFunction(Arc::new(Kind::Spiky { n_max, n_eff })))
}

/// Per-radius margins of the growth-certificate check.
#[derive(Debug, Clone, Serialize)]
pub struct GrowthReport {
    pub r_values: Vec<f64>,
    pub lhs: Vec<f64>,
    pub rhs: Vec<f64>,
    pub pass: bool,
}

/// Validate the stored certificate on the fixed radius ladder.
pub fn verify_growth(f: &CatalogFunction) -> Result<GrowthReport> {
    let (c, n) = f.growth_certificate();
    verify_growth_with(f, c, n)
}

/// Validate an explicit (C, N) claim for f on the fixed radius ladder.
pub fn verify_growth_with(f: &CatalogFunction, c: f64, n: u32) -> Result<GrowthReport> {
    assert!(c > 0.0, "growth constant must be positive");
    let g = f.clone();
    let integrand = Integrand::new(move |x| Complex64::new(g.eval_balanced(x).norm(), 0.0))
        .with_breakpoints(f.breakpoints());
    let mut report = GrowthReport {
        r_values: GROWTH_LADDER.to_vec(),
        lhs: Vec::new(),
        rhs: Vec::new(),
        pass: true,
    };
    for &r in &GROWTH_LADDER {
        let bound = c * (1.0 + r).powi(n as i32);
        let tol = 1e-9 * bound.max(1.0);
        let quad = integrate_bounded(&integrand, -r, r, tol)?;
        let lhs = quad.value.re;
        report.lhs.push(lhs);
        report.rhs.push(bound);
        if lhs > bound + tol + quad.abs_error_estimate {
            report.pass = false;
            return Err(Error::CertificateViolated {
                radius: r,
                integral: lhs,
                bound,
            });
        }
    }
    Ok(report)
}

/// Numeric transform f̂(ω) = (1/2π)∫e^{−iωx}f(x)dx for in_G functions.
///
/// Compact supports integrate directly; a strong decay certificate takes
/// the analytic truncation; everything else (e.g. the Lorentzian, whose
/// certified radius at FT tolerances is ~10⁶) runs the empirical radius
/// ladder, which exploits oscillatory cancellation the certificate cannot.
pub fn numeric_ft(f: &CatalogFunction, omega: f64, tol: f64) -> Result<Complex64> {
    assert!(tol > 0.0, "tolerance must be positive");
    if !f.in_g() {
        return Err(Error::Unsupported {
            reason: format!(
                "numeric transform needs absolute integrability; {} is not in G",
                f.name()
            ),
        });
    }
    let g = f.clone();
    let eval = move |x: f64| {
        let (s, c) = (omega * x).sin_cos();
        g.eval_balanced(x) * Complex64::new(c, -s)
    };
    let value = match f.support() {
        Some((a, b)) => {
            let integrand = Integrand::new(eval).with_breakpoints(f.breakpoints());
            integrate_bounded(&integrand, a, b, tol)?.value
        }
        None => {
            let cert = f.decay_certificate();
            // The analytic truncation is worthwhile only when the window it
            // dictates is small AND cheap to resolve: the panel count scales
            // with the number of oscillation periods radius·|ω|/2π inside it.
            let strong = cert.as_ref().is_some_and(|c| {
                let radius = c.radius_for(tol / 4.0);
                radius <= 2e4 && radius * (1.0 + omega.abs()) / TWO_PI <= 1e4
            });
            let integrand = if strong {
                Integrand::new(eval)
                    .with_breakpoints(f.breakpoints())
                    .with_decay(cert.unwrap())
            } else {
                Integrand::new(eval).with_breakpoints(f.breakpoints())
            };
            let opts = if strong {
                QuadOptions::default()
            } else {
                // The empirical ladder must resolve every oscillation period
                // in each annulus before the increments can settle; at high
                // frequency that is millions of honest evaluations.
                QuadOptions {
                    truncation_radius: Some(64.0),
                    eval_budget: 8_000_000,
                    ..QuadOptions::default()
                }
            };
            integrate_line_with(&integrand, LineMode::Generalized, tol, &opts)?.value
        }
    };
    Ok(value / TWO_PI)
}
