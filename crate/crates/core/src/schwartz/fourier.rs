//! Fourier transforms of test functions, convention
//! φ̂(ω) = (1/2π) ∫ e^{−iωx} φ(x) dx.
//!
//! Pure poly-Gaussian sums transform in closed form and stay in the family.
//! Sums containing bump terms fall back to direct quadrature per frequency,
//! packaged with certified decay metadata (via repeated integration by
//! parts) so downstream quadratures over the transform can truncate tails
//! analytically.

use num_complex::Complex64;

use crate::error::Result;
use crate::integrate::{
    integrate_bounded, integrate_line, DecayCertificate, Integrand, LineMode,
};
use crate::schwartz::{Term, TestFunction};
use crate::TWO_PI;

/// How a transform is represented: exactly, or as certified quadrature.
#[derive(Debug, Clone)]
pub enum FourierImage {
    Closed(TestFunction),
    Sampled(SampledFunction),
}

/// Transform of a test function. Closed when every term is poly-Gaussian;
/// otherwise a quadrature-backed representation at the given tolerance.
pub fn fourier_testfn(phi: &TestFunction, tol: f64) -> Result<FourierImage> {
    assert!(tol > 0.0, "tolerance must be positive");
    if !phi.has_bump() {
        let mut out = TestFunction::zero();
        for t in phi.terms() {
            if let Term::Gauss(g) = t {
                out = out.add(&TestFunction::from_polygauss(g.fourier()));
            }
        }
        return Ok(FourierImage::Closed(out));
    }
    Ok(FourierImage::Sampled(SampledFunction::new(
        phi.clone(),
        tol,
    )?))
}

impl FourierImage {
    pub fn eval(&self, omega: f64) -> Result<Complex64> {
        match self {
            FourierImage::Closed(tf) => Ok(tf.eval(omega)),
            FourierImage::Sampled(sf) => sf.eval(omega),
        }
    }

    pub fn eval_deriv(&self, n: usize, omega: f64) -> Result<Complex64> {
        match self {
            FourierImage::Closed(tf) => tf.eval_deriv(n, omega),
            FourierImage::Sampled(sf) => sf.eval_deriv(n, omega),
        }
    }

    pub fn as_closed(&self) -> Option<&TestFunction> {
        match self {
            FourierImage::Closed(tf) => Some(tf),
            FourierImage::Sampled(_) => None,
        }
    }

    pub fn as_sampled(&self) -> Option<&SampledFunction> {
        match self {
            FourierImage::Sampled(sf) => Some(sf),
            FourierImage::Closed(_) => None,
        }
    }
}

/// A transform known only through quadrature of its defining integral,
/// carrying enough certified decay structure to be integrated against.
#[derive(Debug, Clone)]
pub struct SampledFunction {
    source: TestFunction,
    tol: f64,
    /// Time-domain support hull when the source is compactly supported.
    support: Option<(f64, f64)>,
    hints: Vec<f64>,
    /// |self(ω)| ≤ c6 / |ω|⁶ for |ω| ≥ 1 (six integrations by parts).
    c6: f64,
}

impl SampledFunction {
    pub(crate) fn new(source: TestFunction, tol: f64) -> Result<Self> {
        // ∫|φ⁽⁶⁾| certifies |φ̂(ω)|·|ω|⁶ ≤ (1/2π)∫|φ⁽⁶⁾|; the quadrature's
        // own error is added so the certificate stays a true bound.
        let d6 = source.derivative_n(6)?;
        let (mass, err) = abs_mass(&d6, 0.0)?;
        let c6 = (mass + err) / TWO_PI;
        Ok(SampledFunction {
            support: source.support_hull(),
            hints: source.quad_hints(),
            source,
            tol,
            c6,
        })
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn eval(&self, omega: f64) -> Result<Complex64> {
        self.eval_deriv(0, omega)
    }

    /// nth ω-derivative: (1/2π) ∫ (−ix)ⁿ e^{−iωx} φ(x) dx, by quadrature.
    pub fn eval_deriv(&self, n: usize, omega: f64) -> Result<Complex64> {
        let phi = self.source.clone();
        // (−i)^n cycles with period 4.
        let rot = match n % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, -1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, 1.0),
        };
        let ni = n as i32;
        let eval = move |x: f64| {
            let (s, c) = (omega * x).sin_cos();
            phi.eval(x) * rot * x.powi(ni) * Complex64::new(c, -s)
        };
        let value = match self.support {
            Some((a, b)) => {
                let f = Integrand::new(eval).with_breakpoints(self.hints.clone());
                integrate_bounded(&f, a, b, self.tol)?.value
            }
            None => {
                let cert = DecayCertificate::new(
                    self.source.power_sup_bound(n as f64 + 8.0).max(f64::MIN_POSITIVE),
                    8.0,
                );
                let f = Integrand::new(eval)
                    .with_breakpoints(self.hints.clone())
                    .with_decay(cert);
                integrate_line(&f, LineMode::Generalized, self.tol)?.value
            }
        };
        Ok(value / TWO_PI)
    }

    /// Certified tail bound for the nth ω-derivative: six integrations by
    /// parts against d⁶/dx⁶ [xⁿφ(x)] give
    ///   |self⁽ⁿ⁾(ω)| ≤ (1/2π)|ω|⁻⁶ Σₖ C(6,k)·n!/(n−k)!·∫|x^{n−k} φ^{(6−k)}|.
    pub fn decay_for_deriv(&self, n: usize) -> Result<DecayCertificate> {
        if n == 0 {
            return Ok(DecayCertificate::new(self.c6.max(f64::MIN_POSITIVE), 6.0));
        }
        const BINOM6: [f64; 7] = [1.0, 6.0, 15.0, 20.0, 15.0, 6.0, 1.0];
        let mut total = 0.0;
        for (k, binom) in BINOM6.iter().enumerate().take(6usize.min(n) + 1) {
            let mut falling = 1.0;
            for j in 0..k {
                falling *= (n - j) as f64;
            }
            let d = self.source.derivative_n(6 - k)?;
            let (mass, err) = abs_mass(&d, (n - k) as f64)?;
            total += binom * falling * (mass + err);
        }
        Ok(DecayCertificate::new(
            (total / TWO_PI).max(f64::MIN_POSITIVE),
            6.0,
        ))
    }

    /// Grid estimate of sup|self| with the c6 envelope certifying the tail.
    pub fn sup_abs(&self) -> Result<f64> {
        let mut w = 4.0f64;
        let mut best = self.scan(w, 257)?;
        for _ in 0..40 {
            let env = self.c6 / w.powi(6);
            if env <= best.0 * 1e-6 {
                break;
            }
            w *= 1.5;
            let candidate = self.scan(w, 257)?;
            if candidate.0 > best.0 {
                best = candidate;
            }
        }
        // Local golden refinement around the best grid point.
        let h = 2.0 * w / 256.0;
        let (mut lo, mut hi) = (best.1 - h, best.1 + h);
        const INV_PHI: f64 = 0.618_033_988_749_894_8;
        let mut x1 = hi - INV_PHI * (hi - lo);
        let mut x2 = lo + INV_PHI * (hi - lo);
        let mut f1 = self.eval(x1)?.norm();
        let mut f2 = self.eval(x2)?.norm();
        let mut top = best.0;
        for _ in 0..40 {
            top = top.max(f1).max(f2);
            if f1 < f2 {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + INV_PHI * (hi - lo);
                f2 = self.eval(x2)?.norm();
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - INV_PHI * (hi - lo);
                f1 = self.eval(x1)?.norm();
            }
        }
        Ok(top)
    }

    fn scan(&self, w: f64, points: usize) -> Result<(f64, f64)> {
        let mut best = (f64::NEG_INFINITY, 0.0);
        for i in 0..=points {
            let x = w * (2.0 * i as f64 / points as f64 - 1.0);
            let v = self.eval(x)?.norm();
            if v > best.0 {
                best = (v, x);
            }
        }
        Ok(best)
    }
}

/// (∫|x|^j·|φ|, certified quadrature error) to about four significant
/// digits. |φ⁽ᵈ⁾| has kinks at sign changes, so a tight absolute tolerance
/// is unreachable; a coarse pass fixes the scale and a second pass refines
/// relative to it. Callers *add* the error to the mass, keeping bounds true.
fn abs_mass(phi: &TestFunction, j: f64) -> Result<(f64, f64)> {
    let coarse = weighted_abs_integral(phi, j, 1.0)?;
    let tol = (1e-4 * (coarse.0 + 1.0)).max(1e-9);
    weighted_abs_integral(phi, j, tol)
}

/// (∫|x|^j·|φ(x)| dx, quadrature error).
fn weighted_abs_integral(phi: &TestFunction, j: f64, tol: f64) -> Result<(f64, f64)> {
    let owned = phi.clone();
    let eval = move |x: f64| Complex64::new(x.abs().powf(j) * owned.eval(x).norm(), 0.0);
    let out = match phi.support_hull() {
        Some((a, b)) => {
            let f = Integrand::new(eval).with_breakpoints(phi.quad_hints());
            integrate_bounded(&f, a, b, tol)?
        }
        None => {
            let cert =
                DecayCertificate::new(phi.power_sup_bound(j + 8.0).max(f64::MIN_POSITIVE), 8.0);
            let f = Integrand::new(eval)
                .with_breakpoints(phi.quad_hints())
                .with_decay(cert);
            integrate_line(&f, LineMode::Absolute, tol)?
        }
    };
    Ok((out.value.re, out.abs_error_estimate))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::SQRT_PI;

    #[test]
    fn closed_transform_of_gaussian_matches_formula() {
        let img = fourier_testfn(&TestFunction::gauss(0.0), 1e-10).unwrap();
        let tf = img.as_closed().expect("gaussian transform is closed");
        for &w in &[-3.0f64, -1.0, 0.0, 1.0, 2.5] {
            let expect = (-(w * w) / 4.0).exp() / (2.0 * SQRT_PI);
            assert!((tf.eval(w).re - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn sampled_transform_of_bump_is_even_real_at_zero_mass() {
        // bump(−1,1) is even and real, so its transform is real and even,
        // and 2π·φ̂(0) is its mass.
        let phi = TestFunction::bump(-1.0, 1.0);
        let img = fourier_testfn(&phi, 1e-10).unwrap();
        let sf = img.as_sampled().expect("bump transform is sampled");
        let mass = phi.integral(1e-12).unwrap();
        let at0 = sf.eval(0.0).unwrap();
        assert!((at0.re * TWO_PI - mass.re).abs() < 1e-9);
        for &w in &[0.5, 2.0, 7.0] {
            let plus = sf.eval(w).unwrap();
            let minus = sf.eval(-w).unwrap();
            assert!((plus - minus).norm() < 1e-9, "evenness broken at {w}");
            assert!(plus.im.abs() < 1e-10);
        }
    }

    #[test]
    fn sampled_decay_certificate_dominates_samples() {
        let phi = TestFunction::bump(-1.0, 1.0);
        let sf = SampledFunction::new(phi, 1e-9).unwrap();
        let cert = sf.decay_for_deriv(0).unwrap();
        for &w in &[2.0, 5.0, 11.0, 23.0] {
            let v = sf.eval(w).unwrap().norm();
            let bound = cert.coeff / w.powf(cert.power);
            assert!(v <= bound, "decay certificate violated at {w}: {v} > {bound}");
        }
    }

    #[test]
    fn closed_and_sampled_paths_agree_on_a_gaussian_core() {
        // Force the sampled path by adding a negligible-mass far-away bump,
        // then compare against the closed transform of the Gaussian alone.
        let g = TestFunction::gauss(0.0);
        let with_speck = g.add(&TestFunction::bump(40.0, 41.0));
        let closed = fourier_testfn(&g, 1e-10).unwrap();
        let sampled = fourier_testfn(&with_speck, 1e-10).unwrap();
        assert!(sampled.as_sampled().is_some());
        for &w in &[-2.0, 0.0, 1.0, 3.0] {
            let a = closed.eval(w).unwrap();
            let b = sampled.eval(w).unwrap();
            // The speck contributes ≲ e^{−4}·width ≈ 2e−3 mass only at the
            // level of its own transform magnitude ~1e−3·e^{−…}; compare
            // loosely but meaningfully.
            assert!((a - b).norm() < 2e-3, "paths diverge at {w}");
        }
    }

    #[test]
    fn transform_derivative_matches_finite_difference() {
        let phi = TestFunction::bump(-1.0, 1.0);
        let sf = SampledFunction::new(phi, 1e-11).unwrap();
        let w = 1.3;
        let h = 1e-4;
        let fd = (sf.eval(w + h).unwrap() - sf.eval(w - h).unwrap()) / (2.0 * h);
        let d1 = sf.eval_deriv(1, w).unwrap();
        assert!((fd - d1).norm() < 1e-6, "fd {fd} vs {d1}");
    }
}
