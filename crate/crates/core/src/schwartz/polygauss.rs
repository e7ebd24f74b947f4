//! The poly-Gaussian test-function family p(x)·e^{−iωx}·e^{−α(x−c)²}.
//!
//! The family is closed under differentiation, affine reparametrization
//! kφ(k(x−c₀)), and the Fourier transform, all with exact coefficient
//! arithmetic — only the final evaluation at a point rounds.

use num_complex::Complex64;

/// p(x)·e^{−iωx}·e^{−α(x−center)²} with p in absolute coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyGaussian {
    /// Coefficients of p, index = degree. Trailing zeros are trimmed; an
    /// empty list is the zero term and is pruned by the owner.
    pub(crate) poly: Vec<Complex64>,
    pub(crate) omega: f64,
    pub(crate) alpha: f64,
    pub(crate) center: f64,
}

/// Coefficients of x ↦ p(x + d), by synthetic-division Taylor shift.
pub(crate) fn poly_shift(p: &[Complex64], d: f64) -> Vec<Complex64> {
    let mut a = p.to_vec();
    let n = a.len();
    if n < 2 || d == 0.0 {
        return a;
    }
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let hi = a[j + 1];
            a[j] += d * hi;
        }
    }
    a
}

pub(crate) fn trim_poly(mut p: Vec<Complex64>) -> Vec<Complex64> {
    while p.last().is_some_and(|c| c.re == 0.0 && c.im == 0.0) {
        p.pop();
    }
    p
}

/// Global maximum over the line of |x|^r · e^{−α(x−c)²}.
///
/// Off the origin the objective is log-concave per side; the critical points
/// solve 2αx(x−c) = r, giving (c ± √(c²+2r/α))/2.
pub(crate) fn mono_gauss_max(r: f64, alpha: f64, c: f64) -> f64 {
    let h = |x: f64| x.abs().powf(r) * (-alpha * (x - c) * (x - c)).exp();
    if r == 0.0 {
        return 1.0;
    }
    let root = (c * c + 2.0 * r / alpha).sqrt();
    let u_pos = 0.5 * (c + root);
    let u_neg = 0.5 * (c - root);
    h(u_pos).max(h(u_neg))
}

/// sup over |x| ≥ w of |x|^r · e^{−α(x−c)²}, for w > 0.
pub(crate) fn mono_gauss_tail_sup(r: f64, alpha: f64, c: f64, w: f64) -> f64 {
    let h = |x: f64| x.abs().powf(r) * (-alpha * (x - c) * (x - c)).exp();
    let (u_pos, u_neg) = if r == 0.0 {
        (c.max(0.0), c.min(0.0))
    } else {
        let root = (c * c + 2.0 * r / alpha).sqrt();
        (0.5 * (c + root), 0.5 * (c - root))
    };
    let pos = if w >= u_pos { h(w) } else { h(u_pos) };
    let neg = if -w <= u_neg { h(-w) } else { h(u_neg) };
    pos.max(neg)
}

impl PolyGaussian {
    pub(crate) fn new(poly: Vec<Complex64>, omega: f64, alpha: f64, center: f64) -> Self {
        assert!(alpha > 0.0, "Gaussian width parameter must be positive");
        assert!(
            omega.is_finite() && center.is_finite(),
            "modulation and center must be finite"
        );
        let unsign = |x: f64| if x == 0.0 { 0.0 } else { x };
        PolyGaussian {
            poly: trim_poly(poly)
                .into_iter()
                .map(|c| Complex64::new(unsign(c.re), unsign(c.im)))
                .collect(),
            omega: unsign(omega),
            alpha,
            center: unsign(center),
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.poly.is_empty()
    }

    pub(crate) fn eval(&self, x: f64) -> Complex64 {
        if self.poly.is_empty() {
            return Complex64::new(0.0, 0.0);
        }
        let mut p = Complex64::new(0.0, 0.0);
        for &c in self.poly.iter().rev() {
            p = p * x + c;
        }
        let d = x - self.center;
        let g = (-self.alpha * d * d).exp();
        let (s, co) = (self.omega * x).sin_cos();
        p * Complex64::new(co, -s) * g
    }

    /// Exact derivative: q = p′ + (2αc − iω)p − 2αx·p, same (ω, α, c).
    pub(crate) fn derivative(&self) -> PolyGaussian {
        let lin = Complex64::new(2.0 * self.alpha * self.center, -self.omega);
        let mut q = vec![Complex64::new(0.0, 0.0); self.poly.len() + 1];
        for (j, &pj) in self.poly.iter().enumerate() {
            if j >= 1 {
                q[j - 1] += pj * j as f64;
            }
            q[j] += pj * lin;
            q[j + 1] -= pj * 2.0 * self.alpha;
        }
        PolyGaussian::new(q, self.omega, self.alpha, self.center)
    }

    /// Exact mirror image x ↦ self(−x): odd coefficients and the modulation
    /// and center flip sign.
    pub(crate) fn reflect(&self) -> PolyGaussian {
        let poly = self
            .poly
            .iter()
            .enumerate()
            .map(|(j, &c)| if j % 2 == 1 { -c } else { c })
            .collect();
        PolyGaussian::new(poly, -self.omega, self.alpha, -self.center)
    }

    /// Exact kφ(k(x−c₀)): α ↦ k²α, ω ↦ kω, center ↦ c₀ + c/k, and the
    /// polynomial is rescaled, shifted, and picks up the modulation phase.
    pub(crate) fn scale_translate(&self, k: f64, c0: f64) -> PolyGaussian {
        assert!(k > 0.0 && k.is_finite(), "scaling factor must be positive");
        let scaled: Vec<Complex64> = self
            .poly
            .iter()
            .enumerate()
            .map(|(j, &pj)| pj * k.powi(j as i32))
            .collect();
        let shifted = poly_shift(&scaled, -c0);
        let phase = Complex64::from_polar(k, self.omega * k * c0);
        let poly = shifted.into_iter().map(|c| c * phase).collect();
        PolyGaussian::new(
            poly,
            k * self.omega,
            k * k * self.alpha,
            c0 + self.center / k,
        )
    }

    /// Closed-form transform (1/2π)∫e^{−iωx}·self(x) dx, again in the family.
    ///
    /// With s = ω + ω₀ and q(u) = p(c+u):
    ///   result(ω) = e^{−iω₀c} · e^{−icω} · r(ω+ω₀) · e^{−β(ω+ω₀)²},  β = 1/(4α),
    /// where r(s) = (1/(2√(πα))) Σₙ qₙ iⁿ hₙ(s) and hₙ tracks the nth
    /// s-derivative of e^{−βs²}: h₀ = 1, hₙ₊₁ = hₙ′ − 2βs·hₙ.
    pub(crate) fn fourier(&self) -> PolyGaussian {
        let beta = 1.0 / (4.0 * self.alpha);
        let norm = 1.0 / (2.0 * (std::f64::consts::PI * self.alpha).sqrt());
        let q = poly_shift(&self.poly, self.center);

        let mut r = vec![Complex64::new(0.0, 0.0); q.len()];
        let mut h: Vec<f64> = vec![1.0];
        let mut i_pow = Complex64::new(1.0, 0.0);
        for &qn in &q {
            for (k, &hk) in h.iter().enumerate() {
                r[k] += qn * i_pow * hk;
            }
            // advance h and i^n
            let mut nh = vec![0.0; h.len() + 1];
            for (k, &hk) in h.iter().enumerate() {
                if k >= 1 {
                    nh[k - 1] += k as f64 * hk;
                }
                nh[k + 1] -= 2.0 * beta * hk;
            }
            h = nh;
            i_pow *= Complex64::new(0.0, 1.0);
        }

        let phase = Complex64::from_polar(norm, -self.omega * self.center);
        let poly = poly_shift(&r, self.omega)
            .into_iter()
            .map(|c| c * phase)
            .collect();
        PolyGaussian::new(poly, self.center, beta, -self.omega)
    }

    /// ∫ self over the line: 2π × (transform at 0), exactly in closed form.
    pub(crate) fn integral(&self) -> Complex64 {
        self.fourier().eval(0.0) * crate::TWO_PI
    }

    /// Certified bound on sup over the line of |x|^r · |self(x)|.
    pub(crate) fn power_sup_bound(&self, r: f64) -> f64 {
        self.poly
            .iter()
            .enumerate()
            .map(|(j, c)| c.norm() * mono_gauss_max(r + j as f64, self.alpha, self.center))
            .sum()
    }

    /// Certified bound on sup over |x| ≥ w of |x|^r · |self(x)|.
    pub(crate) fn power_tail_sup(&self, r: f64, w: f64) -> f64 {
        self.poly
            .iter()
            .enumerate()
            .map(|(j, c)| c.norm() * mono_gauss_tail_sup(r + j as f64, self.alpha, self.center, w))
            .sum()
    }

    /// Right edge of the window that surely contains every peak of
    /// |x|^r·|self|: beyond it the per-monomial envelopes all decrease.
    pub(crate) fn peak_radius(&self, r: f64) -> f64 {
        let top = r + (self.poly.len().saturating_sub(1)) as f64;
        let root = (self.center * self.center + 2.0 * top / self.alpha).sqrt();
        0.5 * (self.center.abs() + root) + 1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gauss() -> PolyGaussian {
        PolyGaussian::new(vec![Complex64::new(1.0, 0.0)], 0.0, 1.0, 0.0)
    }

    #[test]
    fn taylor_shift_matches_direct_expansion() {
        // (x+2)^2 + 3(x+2) = x^2 + 7x + 10
        let p = vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(3.0, 0.0),
            Complex64::new(1.0, 0.0),
        ];
        let s = poly_shift(&p, 2.0);
        assert_eq!(s[0], Complex64::new(10.0, 0.0));
        assert_eq!(s[1], Complex64::new(7.0, 0.0));
        assert_eq!(s[2], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn gaussian_derivative_at_one_is_minus_two_over_e() {
        let d = gauss().derivative();
        let v = d.eval(1.0);
        assert!((v.re - (-2.0 * (-1.0f64).exp())).abs() < 1e-15);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn derivative_matches_central_difference() {
        let pg = PolyGaussian::new(
            vec![Complex64::new(0.5, -1.0), Complex64::new(0.0, 2.0)],
            1.5,
            0.7,
            -0.3,
        );
        let d = pg.derivative();
        for &x in &[-1.0, 0.2, 2.4] {
            let h = 1e-6;
            let fd = (pg.eval(x + h) - pg.eval(x - h)) / (2.0 * h);
            assert!((fd - d.eval(x)).norm() < 1e-7, "mismatch at {x}");
        }
    }

    #[test]
    fn fourier_of_plain_gaussian_is_quarter_width_gaussian() {
        let ft = gauss().fourier();
        let expect = |w: f64| (-(w * w) / 4.0).exp() / (2.0 * crate::SQRT_PI);
        for &w in &[-3.0, -1.0, 0.0, 0.5, 2.0] {
            let v = ft.eval(w);
            assert!((v.re - expect(w)).abs() < 1e-15, "at {w}: {v}");
            assert!(v.im.abs() < 1e-16);
        }
    }

    #[test]
    fn fourier_shifts_modulation_into_translation() {
        // e^{−icx}e^{−x²} transforms to (1/(2√π))e^{−(ω+c)²/4} at c = 1.
        let pg = PolyGaussian::new(vec![Complex64::new(1.0, 0.0)], 1.0, 1.0, 0.0);
        let ft = pg.fourier();
        for &w in &[-2.0f64, 0.0, 2.0] {
            let expect = (-(w + 1.0) * (w + 1.0) / 4.0).exp() / (2.0 * crate::SQRT_PI);
            let v = ft.eval(w);
            assert!((v.re - expect).abs() < 1e-15);
            assert!(v.im.abs() < 1e-16);
        }
    }

    #[test]
    fn fourier_of_x_gaussian_is_odd_imaginary() {
        // x·e^{−x²} ↦ −(iω/(4√π))e^{−ω²/4}
        let pg = PolyGaussian::new(
            vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            0.0,
            1.0,
            0.0,
        );
        let ft = pg.fourier();
        let w = 1.3;
        let expect = -(w / (4.0 * crate::SQRT_PI)) * (-(w * w) / 4.0).exp();
        let v = ft.eval(w);
        assert!(v.re.abs() < 1e-17);
        assert!((v.im - expect).abs() < 1e-16, "im {} vs {}", v.im, expect);
    }

    #[test]
    fn double_fourier_reflects_and_divides_by_two_pi() {
        let pg = PolyGaussian::new(
            vec![Complex64::new(1.0, 0.0), Complex64::new(-2.0, 0.5)],
            0.8,
            1.3,
            0.4,
        );
        let ft2 = pg.fourier().fourier();
        for &x in &[-1.7, 0.0, 0.9] {
            let expect = pg.eval(-x) / crate::TWO_PI;
            assert!((ft2.eval(x) - expect).norm() < 1e-14);
        }
    }

    #[test]
    fn scale_translate_preserves_integral_exactly_in_closed_form() {
        let pg = PolyGaussian::new(
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)],
            0.5,
            2.0,
            -1.0,
        );
        let moved = pg.scale_translate(3.0, 0.7);
        assert!((pg.integral() - moved.integral()).norm() < 1e-14);
    }

    #[test]
    fn scale_translate_pointwise_identity() {
        let pg = PolyGaussian::new(
            vec![Complex64::new(0.3, 0.0), Complex64::new(1.0, -0.2)],
            1.1,
            0.9,
            0.2,
        );
        let k = 2.5;
        let c0 = -0.8;
        let moved = pg.scale_translate(k, c0);
        for &x in &[-2.0, -0.8, 0.1, 1.9] {
            let expect = pg.eval(k * (x - c0)) * k;
            assert!((moved.eval(x) - expect).norm() < 1e-13, "at {x}");
        }
    }

    #[test]
    fn monomial_gaussian_envelope_dominates_samples() {
        for &(r, alpha, c) in &[(2.0, 1.0, 0.0), (5.0, 0.5, 1.5), (0.0, 2.0, -3.0)] {
            let m = mono_gauss_max(r, alpha, c);
            for i in 0..200 {
                let x = -10.0 + 0.1 * i as f64;
                let h = x.abs().powf(r) * (-alpha * (x - c) * (x - c)).exp();
                assert!(h <= m * (1.0 + 1e-12), "envelope breached at {x}");
            }
        }
    }

    #[test]
    fn tail_sup_decreases_and_bounds_tail_samples() {
        let (r, alpha, c) = (3.0, 0.8, 0.4);
        let t4 = mono_gauss_tail_sup(r, alpha, c, 4.0);
        let t6 = mono_gauss_tail_sup(r, alpha, c, 6.0);
        assert!(t6 < t4);
        for i in 0..100 {
            let x = 4.0 + 0.2 * i as f64;
            for sign in [-1.0, 1.0] {
                let y = sign * x;
                let h = y.abs().powf(r) * (-alpha * (y - c) * (y - c)).exp();
                assert!(h <= t4 * (1.0 + 1e-12));
            }
        }
    }
}
