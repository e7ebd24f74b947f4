//! The compactly supported bump family built from the one-sided cutoff
//! v(t) = e^{−1/t²} (t > 0), 0 otherwise.
//!
//! A bump on (a, b) is v(x−a)·v(b−x). Every derivative is a finite sum of
//! terms sᴶ·(x−a)^{−m}(b−x)^{−q} times the two exponentials, and those sums
//! are stored as integer-coefficient maps so the combinatorics stay exact;
//! floating point enters only at final evaluation, in log space so the
//! rational prefactor can never overflow before the exponential kills it.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hard ceiling on derivative orders applied to bump structures; the term
/// maps grow combinatorially with order.
pub const DERIVATIVE_CAP: usize = 12;

/// Powers in one prefactor monomial: sa^ja · sb^jb / ((x−a)^m (b−x)^q).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct BumpKey {
    pub m: u16,
    pub q: u16,
    pub ja: u16,
    pub jb: u16,
}

impl BumpKey {
    /// m + q − 2ja − 2jb. Differentiation raises it by exactly 1 on every
    /// offspring, so all keys of one term share it — that uniformity is what
    /// makes rescaling exact (see `scale_translate`).
    fn degree(self) -> i32 {
        self.m as i32 + self.q as i32 - 2 * (self.ja as i32 + self.jb as i32)
    }
}

/// coeff × Σ I·sa^ja·sb^jb·(x−a)^{−m}(b−x)^{−q} × e^{−sa/(x−a)² − sb/(b−x)²}
/// on (a, b); exactly 0 elsewhere.
#[derive(Debug, Clone, PartialEq)]
pub struct BumpTerm {
    pub(crate) coeff: Complex64,
    pub(crate) a: f64,
    pub(crate) b: f64,
    pub(crate) sa: f64,
    pub(crate) sb: f64,
    pub(crate) terms: BTreeMap<BumpKey, i128>,
}

impl BumpTerm {
    pub(crate) fn new(a: f64, b: f64) -> Self {
        assert!(a < b, "bump support must be a nonempty open interval");
        assert!(a.is_finite() && b.is_finite(), "bump support must be bounded");
        let mut terms = BTreeMap::new();
        terms.insert(
            BumpKey {
                m: 0,
                q: 0,
                ja: 0,
                jb: 0,
            },
            1i128,
        );
        BumpTerm {
            coeff: Complex64::new(1.0, 0.0),
            a,
            b,
            sa: 1.0,
            sb: 1.0,
            terms,
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty() || (self.coeff.re == 0.0 && self.coeff.im == 0.0)
    }

    /// Shared degree of the prefactor map = how many derivatives built it.
    pub(crate) fn order(&self) -> i32 {
        let deg = self.terms.keys().next().map_or(0, |k| k.degree());
        debug_assert!(
            self.terms.keys().all(|k| k.degree() == deg),
            "bump term lost degree homogeneity"
        );
        deg
    }

    pub(crate) fn eval(&self, x: f64) -> Complex64 {
        if self.is_zero() || x <= self.a || x >= self.b {
            return Complex64::new(0.0, 0.0);
        }
        let ya = x - self.a;
        let yb = self.b - x;
        let (ln_ya, ln_yb) = (ya.ln(), yb.ln());
        let (ln_sa, ln_sb) = (self.sa.ln(), self.sb.ln());
        let ex = -self.sa / (ya * ya) - self.sb / (yb * yb);
        let mut sum = 0.0f64;
        for (k, &i) in &self.terms {
            let magnitude = (i.unsigned_abs() as f64).ln()
                + k.ja as f64 * ln_sa
                + k.jb as f64 * ln_sb
                - k.m as f64 * ln_ya
                - k.q as f64 * ln_yb
                + ex;
            sum += (i.signum() as f64) * magnitude.exp();
        }
        self.coeff * sum
    }

    /// Product-rule step over both cutoff factors:
    ///   d/dx (x−a)^{−m} e^{−sa/(x−a)²} = (−m(x−a)^{−m−1} + 2sa(x−a)^{−m−3}) e^{…}
    ///   d/dx (b−x)^{−q} e^{−sb/(b−x)²} = (+q(b−x)^{−q−1} − 2sb(b−x)^{−q−3}) e^{…}
    pub(crate) fn derivative(&self) -> Result<BumpTerm> {
        if self.order() as usize >= DERIVATIVE_CAP {
            return Err(Error::OrderCap {
                requested: self.order() as usize + 1,
                cap: DERIVATIVE_CAP,
            });
        }
        let mut next: BTreeMap<BumpKey, i128> = BTreeMap::new();
        let mut put = |key: BumpKey, add: i128| -> Result<()> {
            let slot = next.entry(key).or_insert(0);
            *slot = slot.checked_add(add).ok_or(Error::OrderCap {
                requested: self.order() as usize + 1,
                cap: DERIVATIVE_CAP,
            })?;
            Ok(())
        };
        for (k, &i) in &self.terms {
            if k.m > 0 {
                put(BumpKey { m: k.m + 1, ..*k }, -(k.m as i128) * i)?;
            }
            put(
                BumpKey {
                    m: k.m + 3,
                    ja: k.ja + 1,
                    ..*k
                },
                2 * i,
            )?;
            if k.q > 0 {
                put(BumpKey { q: k.q + 1, ..*k }, (k.q as i128) * i)?;
            }
            put(
                BumpKey {
                    q: k.q + 3,
                    jb: k.jb + 1,
                    ..*k
                },
                -2 * i,
            )?;
        }
        next.retain(|_, v| *v != 0);
        Ok(BumpTerm {
            terms: next,
            ..*self
        })
    }

    /// Exact kφ(k(x−c₀)). Support maps to (c₀+a/k, c₀+b/k) and the exponent
    /// scales map to sa/k², sb/k². Because every key shares degree n, the
    /// whole prefactor rescales by the single factor k^{−n}, which together
    /// with the leading k gives coeff·k^{1−n} — the integer map is untouched.
    pub(crate) fn scale_translate(&self, k: f64, c0: f64) -> BumpTerm {
        assert!(k > 0.0 && k.is_finite(), "scaling factor must be positive");
        let n = self.order();
        BumpTerm {
            coeff: self.coeff * k.powi(1 - n),
            a: c0 + self.a / k,
            b: c0 + self.b / k,
            sa: self.sa / (k * k),
            sb: self.sb / (k * k),
            terms: self.terms.clone(),
        }
    }

    /// Crude certified bound on sup|self|: each key's factor is maximized
    /// independently (max of y^{−m}e^{−s/y²} over y > 0 is (m/(2se))^{m/2}).
    pub(crate) fn sup_bound(&self) -> f64 {
        let single = |m: u16, s: f64| -> f64 {
            if m == 0 {
                1.0
            } else {
                (m as f64 / (2.0 * s * std::f64::consts::E)).powf(m as f64 / 2.0)
            }
        };
        let sum: f64 = self
            .terms
            .iter()
            .map(|(k, &i)| {
                i.unsigned_abs() as f64
                    * self.sa.powi(k.ja as i32)
                    * self.sb.powi(k.jb as i32)
                    * single(k.m, self.sa)
                    * single(k.q, self.sb)
            })
            .sum();
        self.coeff.norm() * sum
    }

    pub(crate) fn support(&self) -> (f64, f64) {
        (self.a, self.b)
    }
}

/// nth derivative of the one-sided cutoff v(t) = e^{−1/t²}·[t > 0], exact in
/// structure, evaluated in log space. All one-sided limits at 0 vanish.
pub fn cutoff_profile_deriv(n: usize, x: f64) -> f64 {
    assert!(n <= 3 * DERIVATIVE_CAP, "cutoff derivative order too large");
    if x <= 0.0 {
        return 0.0;
    }
    // Keys are plain powers m with integer coefficients: v' brings
    // −m·t^{−m−1} + 2·t^{−m−3} per term (s = 1).
    let mut terms: BTreeMap<u16, i128> = BTreeMap::new();
    terms.insert(0, 1);
    for _ in 0..n {
        let mut next: BTreeMap<u16, i128> = BTreeMap::new();
        for (&m, &i) in &terms {
            if m > 0 {
                *next.entry(m + 1).or_insert(0) -= m as i128 * i;
            }
            *next.entry(m + 3).or_insert(0) += 2 * i;
        }
        next.retain(|_, v| *v != 0);
        terms = next;
    }
    let ln_x = x.ln();
    let ex = -1.0 / (x * x);
    terms
        .iter()
        .map(|(&m, &i)| (i.signum() as f64) * ((i.unsigned_abs() as f64).ln() - m as f64 * ln_x + ex).exp())
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_bump_peaks_at_midpoint_with_e_minus_two() {
        let b = BumpTerm::new(-1.0, 1.0);
        let v = b.eval(0.0);
        assert!((v.re - (-2.0f64).exp()).abs() < 1e-17);
        assert_eq!(v.im, 0.0);
        assert_eq!(b.eval(-1.0), Complex64::new(0.0, 0.0));
        assert_eq!(b.eval(1.5), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn derivative_keys_stay_degree_homogeneous() {
        let mut b = BumpTerm::new(-1.0, 1.0);
        for n in 1..=8 {
            b = b.derivative().unwrap();
            assert_eq!(b.order(), n);
            let degs: Vec<i32> = b
                .terms
                .keys()
                .map(|k| k.m as i32 + k.q as i32 - 2 * (k.ja as i32 + k.jb as i32))
                .collect();
            assert!(degs.iter().all(|&d| d == n));
        }
    }

    #[test]
    fn derivative_matches_central_difference_inside_support() {
        let b = BumpTerm::new(-1.0, 1.0);
        let d = b.derivative().unwrap();
        for &x in &[-0.6, -0.2, 0.3, 0.7] {
            let h = 1e-6;
            let fd = (b.eval(x + h) - b.eval(x - h)) / (2.0 * h);
            assert!((fd - d.eval(x)).norm() < 1e-8, "mismatch at {x}");
        }
    }

    #[test]
    fn derivatives_vanish_identically_at_support_edges() {
        let mut b = BumpTerm::new(-1.0, 1.0);
        for _ in 0..6 {
            b = b.derivative().unwrap();
            assert_eq!(b.eval(-1.0), Complex64::new(0.0, 0.0));
            assert_eq!(b.eval(1.0), Complex64::new(0.0, 0.0));
            // And approaching the edge the values collapse smoothly.
            assert!(b.eval(-1.0 + 1e-3).norm() < 1e-300);
        }
    }

    #[test]
    fn order_cap_is_enforced() {
        let mut b = BumpTerm::new(0.0, 1.0);
        for _ in 0..DERIVATIVE_CAP {
            b = b.derivative().unwrap();
        }
        assert!(matches!(b.derivative(), Err(Error::OrderCap { .. })));
    }

    #[test]
    fn scale_translate_is_pointwise_exact() {
        let b = BumpTerm::new(-1.0, 1.0).derivative().unwrap();
        let k = 2.0;
        let c0 = 0.5;
        let moved = b.scale_translate(k, c0);
        assert_eq!(moved.support(), (0.0, 1.0));
        for &x in &[0.1, 0.25, 0.5, 0.9] {
            let expect = b.eval(k * (x - c0)) * k;
            let got = moved.eval(x);
            // Parameters rescale exactly (k is a power of two); the residual
            // comes only from the log-space exponent arithmetic in eval.
            assert!((got - expect).norm() <= 1e-12 * expect.norm().max(1e-300), "at {x}");
        }
    }

    #[test]
    fn sup_bound_dominates_dense_samples() {
        let mut b = BumpTerm::new(-1.0, 1.0);
        for _ in 0..4 {
            b = b.derivative().unwrap();
        }
        let bound = b.sup_bound();
        for i in 1..400 {
            let x = -1.0 + i as f64 / 200.0;
            assert!(b.eval(x).norm() <= bound * (1.0 + 1e-9), "bound breached at {x}");
        }
    }

    #[test]
    fn cutoff_profile_one_sided_limits_vanish() {
        for n in 0..=6 {
            assert_eq!(cutoff_profile_deriv(n, 0.0), 0.0);
            assert_eq!(cutoff_profile_deriv(n, -0.5), 0.0);
            assert!(cutoff_profile_deriv(n, 0.01).abs() < 1e-300);
            assert!(cutoff_profile_deriv(n, 0.1).abs() < 1e-12);
        }
    }

    #[test]
    fn cutoff_profile_first_derivatives_match_closed_forms() {
        // v'(x) = 2x^{−3}e^{−1/x²}; v''(x) = (−6x^{−4} + 4x^{−6})e^{−1/x²}
        for &x in &[0.5f64, 1.0, 2.0] {
            let e = (-1.0 / (x * x)).exp();
            let v1 = 2.0 / (x * x * x) * e;
            let v2 = (-6.0 / x.powi(4) + 4.0 / x.powi(6)) * e;
            assert!((cutoff_profile_deriv(1, x) - v1).abs() < 1e-15 * v1.abs().max(1.0));
            assert!((cutoff_profile_deriv(2, x) - v2).abs() < 1e-14 * v2.abs().max(1.0));
        }
    }
}
