//! Canonical atom sums acting on test functions.
//!
//! A [`Distribution`] is a finite sum of three atom shapes: derivatives of
//! point masses, derivatives of densities drawn from the slow-growth
//! catalog, and transform wrappers `Dⁿ T_s W(M)` where `W(M)(φ) = M(φ̂)`.
//! Every constructor and operation returns the canonical form — atoms
//! sorted by a total key order, duplicate keys merged, zero coefficients
//! pruned — so structural equality (`==`) is a decision procedure.
//!
//! The transform rewrite keeps wrapper nesting at depth ≤ 2. The key
//! identity making that possible: transforming an undecorated wrapper
//! reflects its payload, `F(W(M)) = (1/2π)·reflect(M)`, so repeated
//! transforms never pile wrappers up.

pub mod analysis;
pub mod checks;

use std::cmp::Ordering;
use std::fmt::{self, Write as _};
use std::sync::Arc;

use num_complex::Complex64;

use crate::catalog::CatalogFunction;
use crate::integrate::{
    integrate_bounded, integrate_line, DecayCertificate, Integrand, LineMode,
};
use crate::schwartz::{fourier_testfn, SampledFunction, TestFunction, DERIVATIVE_CAP};
use crate::{Error, Result, TWO_PI};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// One summand of a distribution. Coefficients are complex; `order` counts
/// distributional derivatives applied on top of the base object.
#[derive(Debug, Clone, PartialEq)]
pub enum Atom {
    /// coeff·Dⁿδ_location; pairs to coeff·(−1)ⁿ·φ⁽ⁿ⁾(location).
    Point {
        coeff: Complex64,
        order: usize,
        location: f64,
    },
    /// coeff·Dᵐ L_f; pairs to coeff·(−1)ᵐ·∫ f·φ⁽ᵐ⁾.
    Regular {
        coeff: Complex64,
        order: usize,
        f: CatalogFunction,
    },
    /// coeff·Dⁿ T_shift W(inner); pairs to
    /// coeff·(−1)ⁿ·inner(F[x ↦ φ⁽ⁿ⁾(x − shift)]).
    Wrapped {
        coeff: Complex64,
        order: usize,
        shift: f64,
        inner: Arc<Distribution>,
    },
}

impl Atom {
    pub fn coeff(&self) -> Complex64 {
        match self {
            Atom::Point { coeff, .. } | Atom::Regular { coeff, .. } | Atom::Wrapped { coeff, .. } => {
                *coeff
            }
        }
    }

    pub fn order(&self) -> usize {
        match self {
            Atom::Point { order, .. } | Atom::Regular { order, .. } | Atom::Wrapped { order, .. } => {
                *order
            }
        }
    }

    fn coeff_mut(&mut self) -> &mut Complex64 {
        match self {
            Atom::Point { coeff, .. } | Atom::Regular { coeff, .. } | Atom::Wrapped { coeff, .. } => {
                coeff
            }
        }
    }

    fn order_mut(&mut self) -> &mut usize {
        match self {
            Atom::Point { order, .. } | Atom::Regular { order, .. } | Atom::Wrapped { order, .. } => {
                order
            }
        }
    }

    fn depth(&self) -> usize {
        match self {
            Atom::Wrapped { inner, .. } => 1 + inner.wrap_depth(),
            _ => 0,
        }
    }
}

/// A tempered object represented as a canonical finite atom sum.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Distribution {
    atoms: Vec<Atom>,
}

impl Distribution {
    pub fn zero() -> Self {
        Distribution { atoms: Vec::new() }
    }

    /// The unit point mass δ_location.
    pub fn delta(location: f64) -> Self {
        Self::point(ONE, 0, location).expect("order zero never exceeds the cap")
    }

    /// coeff·Dⁿδ_location.
    pub fn point(coeff: Complex64, order: usize, location: f64) -> Result<Self> {
        if !location.is_finite() {
            return Err(Error::Unsupported {
                reason: format!("point mass location must be finite, got {location}"),
            });
        }
        check_order(order)?;
        Ok(Distribution {
            atoms: canonical(vec![Atom::Point {
                coeff,
                order,
                location,
            }]),
        })
    }

    /// The density functional L_f : φ ↦ ∫ f·φ.
    pub fn regular(f: &CatalogFunction) -> Self {
        Distribution {
            atoms: canonical(vec![Atom::Regular {
                coeff: ONE,
                order: 0,
                f: f.clone(),
            }]),
        }
    }

    /// coeff·Dᵐ L_f.
    pub fn regular_deriv(coeff: Complex64, order: usize, f: &CatalogFunction) -> Result<Self> {
        check_order(order)?;
        Ok(Distribution {
            atoms: canonical(vec![Atom::Regular {
                coeff,
                order,
                f: f.clone(),
            }]),
        })
    }

    /// W(inner) : φ ↦ inner(φ̂).
    pub fn wrap(inner: Distribution) -> Result<Self> {
        if inner.wrap_depth() >= 2 {
            return Err(Error::FourierDepth);
        }
        Ok(Distribution {
            atoms: canonical(vec![Atom::Wrapped {
                coeff: ONE,
                order: 0,
                shift: 0.0,
                inner: Arc::new(inner),
            }]),
        })
    }

    /// Canonicalize an arbitrary atom list. Rejects derivative orders past
    /// the cap, non-finite parameters, and wrapper nesting deeper than two.
    pub fn from_atoms(atoms: Vec<Atom>) -> Result<Self> {
        for a in &atoms {
            validate_atom(a)?;
        }
        Ok(Distribution {
            atoms: canonical(atoms),
        })
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Deepest wrapper nesting anywhere in the sum (0 for wrapper-free).
    pub fn wrap_depth(&self) -> usize {
        self.atoms.iter().map(Atom::depth).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Distribution) -> Distribution {
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        Distribution {
            atoms: canonical(atoms),
        }
    }

    pub fn scale(&self, z: Complex64) -> Distribution {
        let atoms = self
            .atoms
            .iter()
            .cloned()
            .map(|mut a| {
                *a.coeff_mut() *= z;
                a
            })
            .collect();
        Distribution {
            atoms: canonical(atoms),
        }
    }

    /// Canonical text form; total over atoms, so it doubles as a sort key
    /// for wrapper payload comparison.
    pub(crate) fn fingerprint(&self) -> String {
        let mut s = String::new();
        for a in &self.atoms {
            match a {
                Atom::Point {
                    coeff,
                    order,
                    location,
                } => {
                    let _ = write!(s, "P({},{},{order},{location});", coeff.re, coeff.im);
                }
                Atom::Regular { coeff, order, f } => {
                    let _ = write!(s, "R({},{},{order},{});", coeff.re, coeff.im, f.name());
                }
                Atom::Wrapped {
                    coeff,
                    order,
                    shift,
                    inner,
                } => {
                    let _ = write!(
                        s,
                        "W({},{},{order},{shift},[{}]);",
                        coeff.re,
                        coeff.im,
                        inner.fingerprint()
                    );
                }
            }
        }
        s
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn coeff_prefix(out: &mut fmt::Formatter<'_>, c: Complex64) -> fmt::Result {
            if c == ONE {
                return Ok(());
            }
            if c.im == 0.0 {
                write!(out, "{}·", c.re)
            } else if c.re == 0.0 {
                write!(out, "{}i·", c.im)
            } else if c.im < 0.0 {
                write!(out, "({}{}i)·", c.re, c.im)
            } else {
                write!(out, "({}+{}i)·", c.re, c.im)
            }
        }
        match self {
            Atom::Point {
                coeff,
                order,
                location,
            } => {
                coeff_prefix(out, *coeff)?;
                if *order > 0 {
                    write!(out, "D^{order} ")?;
                }
                write!(out, "delta({location})")
            }
            Atom::Regular { coeff, order, f } => {
                coeff_prefix(out, *coeff)?;
                if *order > 0 {
                    write!(out, "D^{order} ")?;
                }
                write!(out, "L[{}]", f.name())
            }
            Atom::Wrapped {
                coeff,
                order,
                shift,
                inner,
            } => {
                coeff_prefix(out, *coeff)?;
                if *order > 0 {
                    write!(out, "D^{order} ")?;
                }
                if *shift != 0.0 {
                    write!(out, "T({shift}) ")?;
                }
                write!(out, "FT{{{inner}}}")
            }
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(out, "0");
        }
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                write!(out, " + ")?;
            }
            write!(out, "{a}")?;
        }
        Ok(())
    }
}

fn check_order(order: usize) -> Result<()> {
    if order > DERIVATIVE_CAP {
        return Err(Error::OrderCap {
            requested: order,
            cap: DERIVATIVE_CAP,
        });
    }
    Ok(())
}

fn validate_atom(a: &Atom) -> Result<()> {
    check_order(a.order())?;
    match a {
        Atom::Point { location, .. } => {
            if !location.is_finite() {
                return Err(Error::Unsupported {
                    reason: format!("point mass location must be finite, got {location}"),
                });
            }
        }
        Atom::Regular { .. } => {}
        Atom::Wrapped { shift, .. } => {
            if !shift.is_finite() {
                return Err(Error::Unsupported {
                    reason: format!("wrapper shift must be finite, got {shift}"),
                });
            }
            if a.depth() > 2 {
                return Err(Error::FourierDepth);
            }
        }
    }
    Ok(())
}

// ---- canonical form --------------------------------------------------------

fn unsign_zero(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

fn norm_coeff(c: Complex64) -> Complex64 {
    Complex64::new(unsign_zero(c.re), unsign_zero(c.im))
}

fn coeff_is_zero(c: Complex64) -> bool {
    c.re == 0.0 && c.im == 0.0
}

fn kind_rank(a: &Atom) -> u8 {
    match a {
        Atom::Point { .. } => 0,
        Atom::Regular { .. } => 1,
        Atom::Wrapped { .. } => 2,
    }
}

/// Total order on atom *keys* (coefficients excluded): two atoms compare
/// equal exactly when canonicalization must merge them.
fn atom_cmp(a: &Atom, b: &Atom) -> Ordering {
    match kind_rank(a).cmp(&kind_rank(b)) {
        Ordering::Equal => {}
        ord => return ord,
    }
    match (a, b) {
        (
            Atom::Point {
                order: o1,
                location: l1,
                ..
            },
            Atom::Point {
                order: o2,
                location: l2,
                ..
            },
        ) => l1.total_cmp(l2).then(o1.cmp(o2)),
        (
            Atom::Regular {
                order: o1, f: f1, ..
            },
            Atom::Regular {
                order: o2, f: f2, ..
            },
        ) => f1.name().cmp(&f2.name()).then(o1.cmp(o2)),
        (
            Atom::Wrapped {
                order: o1,
                shift: s1,
                inner: i1,
                ..
            },
            Atom::Wrapped {
                order: o2,
                shift: s2,
                inner: i2,
                ..
            },
        ) => i1
            .fingerprint()
            .cmp(&i2.fingerprint())
            .then(s1.total_cmp(s2))
            .then(o1.cmp(o2)),
        _ => unreachable!("ranks already compared equal"),
    }
}

fn canonical(atoms: Vec<Atom>) -> Vec<Atom> {
    let mut flat: Vec<Atom> = Vec::with_capacity(atoms.len());
    for a in atoms {
        match a {
            Atom::Point {
                coeff,
                order,
                location,
            } => {
                let coeff = norm_coeff(coeff);
                if coeff_is_zero(coeff) {
                    continue;
                }
                flat.push(Atom::Point {
                    coeff,
                    order,
                    location: unsign_zero(location),
                });
            }
            Atom::Regular { coeff, order, f } => {
                // Scalar prefactors on the density fold into the coefficient.
                let (z, f) = f.split_scale();
                let coeff = norm_coeff(coeff * z);
                if coeff_is_zero(coeff) || f.is_zero_fn() {
                    continue;
                }
                flat.push(Atom::Regular { coeff, order, f });
            }
            Atom::Wrapped {
                coeff,
                order,
                shift,
                inner,
            } => {
                let coeff = norm_coeff(coeff);
                if coeff_is_zero(coeff) || inner.is_zero() {
                    continue;
                }
                flat.push(Atom::Wrapped {
                    coeff,
                    order,
                    shift: unsign_zero(shift),
                    inner,
                });
            }
        }
    }
    flat.sort_by(atom_cmp);
    let mut merged: Vec<Atom> = Vec::with_capacity(flat.len());
    for a in flat {
        if let Some(last) = merged.last_mut() {
            if atom_cmp(last, &a) == Ordering::Equal {
                *last.coeff_mut() = norm_coeff(last.coeff() + a.coeff());
                continue;
            }
        }
        merged.push(a);
    }
    merged.retain(|a| !coeff_is_zero(a.coeff()));
    merged
}

// ---- pairing ---------------------------------------------------------------

/// What an atom gets applied to: an exact test function, or a
/// quadrature-backed transform image of one.
pub(crate) enum Probe<'a> {
    Test(&'a TestFunction),
    Sampled(&'a SampledFunction),
}

impl Probe<'_> {
    fn eval_deriv(&self, n: usize, x: f64) -> Result<Complex64> {
        match self {
            Probe::Test(tf) => tf.eval_deriv(n, x),
            Probe::Sampled(sp) => sp.eval_deriv(n, x),
        }
    }

    /// Per-evaluation error the probe itself contributes.
    fn point_tol(&self) -> f64 {
        match self {
            Probe::Test(_) => 0.0,
            Probe::Sampled(sp) => sp.tol(),
        }
    }
}

/// ⟨L, φ⟩ to within `tol` (absolute, summed over atoms).
pub fn pair(l: &Distribution, phi: &TestFunction, tol: f64) -> Result<Complex64> {
    pair_with_error(l, phi, tol).map(|(v, _)| v)
}

/// ⟨L, φ⟩ together with a certified absolute error bookkeeping total.
pub fn pair_with_error(l: &Distribution, phi: &TestFunction, tol: f64) -> Result<(Complex64, f64)> {
    pair_probe(l, &Probe::Test(phi), tol)
}

pub(crate) fn pair_probe(l: &Distribution, probe: &Probe<'_>, tol: f64) -> Result<(Complex64, f64)> {
    assert!(
        tol > 0.0 && tol.is_finite(),
        "pairing tolerance must be positive and finite"
    );
    if l.atoms.is_empty() {
        return Ok((ZERO, 0.0));
    }
    let tol_atom = tol / l.atoms.len() as f64;
    let mut acc = ZERO;
    let mut err = 0.0;
    for a in &l.atoms {
        let (v, e) = pair_atom(a, probe, tol_atom)?;
        acc += v;
        err += e;
    }
    Ok((acc, err))
}

fn neg_one_pow(n: usize) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn pair_atom(a: &Atom, probe: &Probe<'_>, tol: f64) -> Result<(Complex64, f64)> {
    match a {
        Atom::Point {
            coeff,
            order,
            location,
        } => {
            let v = probe.eval_deriv(*order, *location)?;
            Ok((
                *coeff * neg_one_pow(*order) * v,
                coeff.norm() * probe.point_tol(),
            ))
        }
        Atom::Regular { coeff, order, f } => {
            let scaled_tol = tol / coeff.norm().max(1.0);
            let (v, e) = pair_regular(f, *order, probe, scaled_tol)?;
            Ok((*coeff * neg_one_pow(*order) * v, coeff.norm() * e))
        }
        Atom::Wrapped {
            coeff,
            order,
            shift,
            inner,
        } => {
            let tf = match probe {
                Probe::Test(tf) => *tf,
                Probe::Sampled(_) => {
                    return Err(Error::Unsupported {
                        reason: "pairing a transform wrapper against an already-sampled \
                                 transform image would need a second numeric transform; \
                                 use a probe with more structure"
                            .into(),
                    })
                }
            };
            let dn = tf.derivative_n(*order)?;
            let arg = if *shift == 0.0 {
                dn
            } else {
                dn.scale_translate(1.0, *shift)
            };
            let scaled_tol = tol / coeff.norm().max(1.0);
            let image = fourier_testfn(&arg, scaled_tol / 8.0)?;
            let (v, e) = if let Some(closed) = image.as_closed() {
                pair_probe(inner, &Probe::Test(closed), scaled_tol / 2.0)?
            } else if let Some(sampled) = image.as_sampled() {
                pair_probe(inner, &Probe::Sampled(sampled), scaled_tol / 2.0)?
            } else {
                unreachable!("a transform image is either closed or sampled")
            };
            Ok((
                *coeff * neg_one_pow(*order) * v,
                coeff.norm() * (e + scaled_tol / 4.0),
            ))
        }
    }
}

/// ∫ f·ψ where ψ is the probe's m-th derivative; returns (value, error).
fn pair_regular(
    f: &CatalogFunction,
    m: usize,
    probe: &Probe<'_>,
    tol: f64,
) -> Result<(Complex64, f64)> {
    match probe {
        Probe::Test(tf) => {
            let phi_m = tf.derivative_n(m)?;
            let fe = f.clone();
            let pm = phi_m.clone();
            let mut bps = f.breakpoints();
            bps.extend(phi_m.quad_hints());
            let integrand = Integrand::new(move |x| fe.eval_balanced(x) * pm.eval(x))
                .with_breakpoints(bps);
            if let Some((a, b)) = f.support() {
                let r = integrate_bounded(&integrand, a, b, tol)?;
                return Ok((r.value, r.abs_error_estimate));
            }
            if let Some((a, b)) = phi_m.support_hull() {
                let r = integrate_bounded(&integrand, a, b, tol)?;
                return Ok((r.value, r.abs_error_estimate));
            }
            let (cf, nf) = f.pointwise_bound().ok_or(Error::MissingCertificate)?;
            let cert = best_product_cert(cf, nf, &phi_m, tol);
            let r = integrate_line(&integrand.with_decay(cert), LineMode::Generalized, tol)?;
            Ok((r.value, r.abs_error_estimate))
        }
        Probe::Sampled(sp) => {
            let fe = f.clone();
            let spc = (**sp).clone();
            let integrand = Integrand::new(move |x| match spc.eval_deriv(m, x) {
                Ok(v) => fe.eval_balanced(x) * v,
                Err(_) => Complex64::new(f64::NAN, f64::NAN),
            })
            .with_breakpoints(f.breakpoints());
            if let Some((a, b)) = f.support() {
                let r = integrate_bounded(&integrand, a, b, tol)?;
                return Ok((r.value, r.abs_error_estimate + sp.tol() * (b - a)));
            }
            let (cf, nf) = f.pointwise_bound().ok_or(Error::MissingCertificate)?;
            let img_cert = sp.decay_for_deriv(m)?;
            let power = img_cert.power - nf as f64;
            if power <= 1.0 {
                return Err(Error::Unsupported {
                    reason: format!(
                        "density growth degree {nf} leaves no integrable tail \
                         against a sampled transform image"
                    ),
                });
            }
            // |f(x)| ≤ C(1+|x|)^N ≤ C·2^N·|x|^N for |x| ≥ 1 multiplies the
            // image decay into coeff/|x|^(power).
            let coeff = cf * 2f64.powi(nf as i32) * img_cert.coeff;
            let cert = DecayCertificate::new(coeff.max(f64::MIN_POSITIVE), power)
                .valid_from(img_cert.valid_from.max(1.0));
            let r = integrate_line(&integrand.with_decay(cert), LineMode::Generalized, tol)?;
            let radius = r.truncation_radius.unwrap_or(1.0);
            Ok((
                r.value,
                r.abs_error_estimate + sp.tol() * (1.0 + 2.0 * radius),
            ))
        }
    }
}

/// Pick the tail power whose certified truncation radius is smallest for
/// the product |f·ψ| ≤ C·2^N·sup(|x|^(N+p)·|ψ|) / |x|^p.
fn best_product_cert(cf: f64, nf: u32, phi_m: &TestFunction, tol: f64) -> DecayCertificate {
    let mut best: Option<(f64, DecayCertificate)> = None;
    for p in [2.0f64, 4.0, 6.0, 8.0, 12.0] {
        let coeff = cf * 2f64.powi(nf as i32) * phi_m.power_sup_bound(nf as f64 + p);
        let cert = DecayCertificate::new(coeff.max(f64::MIN_POSITIVE), p);
        let radius = cert.radius_for(tol / 4.0);
        if best.as_ref().is_none_or(|(r0, _)| radius < *r0) {
            best = Some((radius, cert));
        }
    }
    best.expect("candidate list is nonempty").1
}

// ---- calculus operations ----------------------------------------------------

/// n-th distributional derivative: raises every atom's order.
pub fn derivative(l: &Distribution, n: usize) -> Result<Distribution> {
    if n == 0 {
        return Ok(l.clone());
    }
    let mut atoms = Vec::with_capacity(l.atoms.len());
    for a in &l.atoms {
        let new_order = a.order() + n;
        check_order(new_order)?;
        let mut b = a.clone();
        *b.order_mut() = new_order;
        atoms.push(b);
    }
    Ok(Distribution {
        atoms: canonical(atoms),
    })
}

/// Translation by c: the result applied to φ equals L applied to φ(·−c),
/// so a point mass at a moves to a−c.
pub fn translate(l: &Distribution, c: f64) -> Distribution {
    assert!(c.is_finite(), "translation offset must be finite");
    let atoms = l
        .atoms
        .iter()
        .map(|a| match a {
            Atom::Point {
                coeff,
                order,
                location,
            } => Atom::Point {
                coeff: *coeff,
                order: *order,
                location: location - c,
            },
            Atom::Regular { coeff, order, f } => Atom::Regular {
                coeff: *coeff,
                order: *order,
                f: f.shifted(-c),
            },
            Atom::Wrapped {
                coeff,
                order,
                shift,
                inner,
            } => Atom::Wrapped {
                coeff: *coeff,
                order: *order,
                shift: shift + c,
                inner: inner.clone(),
            },
        })
        .collect();
    Distribution {
        atoms: canonical(atoms),
    }
}

/// Reflection: the result applied to φ equals L applied to φ(−·).
pub fn reflect(l: &Distribution) -> Distribution {
    let atoms = l
        .atoms
        .iter()
        .map(|a| match a {
            Atom::Point {
                coeff,
                order,
                location,
            } => Atom::Point {
                coeff: *coeff * neg_one_pow(*order),
                order: *order,
                location: -location,
            },
            Atom::Regular { coeff, order, f } => Atom::Regular {
                coeff: *coeff * neg_one_pow(*order),
                order: *order,
                f: f.reflect(),
            },
            Atom::Wrapped {
                coeff,
                order,
                shift,
                inner,
            } => Atom::Wrapped {
                coeff: *coeff * neg_one_pow(*order),
                order: *order,
                shift: -shift,
                inner: Arc::new(reflect(inner)),
            },
        })
        .collect();
    Distribution {
        atoms: canonical(atoms),
    }
}

fn i_pow(k: usize) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// The transform rewrite. Point masses become modulated-polynomial
/// densities; modulated polynomials become point masses; densities with a
/// cataloged closed transform are swapped for it; everything else is
/// wrapped. Undecorated wrappers unwrap by reflection, which is what keeps
/// pure transform chains at nesting depth ≤ 1.
pub fn fourier(l: &Distribution) -> Result<Distribution> {
    let mut out: Vec<Atom> = Vec::new();
    for a in &l.atoms {
        fourier_atom(a, &mut out)?;
    }
    Ok(Distribution {
        atoms: canonical(out),
    })
}

fn fourier_atom(a: &Atom, out: &mut Vec<Atom>) -> Result<()> {
    match a {
        // F(Dⁿδ_a)(φ) = (−1)ⁿ(φ̂)⁽ⁿ⁾(a) = ∫ (iⁿ/2π)·xⁿe^{−iax}·φ(x) dx.
        Atom::Point {
            coeff,
            order,
            location,
        } => {
            let mut poly = vec![ZERO; order + 1];
            poly[*order] = i_pow(*order) / TWO_PI;
            out.push(Atom::Regular {
                coeff: *coeff,
                order: 0,
                f: CatalogFunction::modulated_poly(poly, *location),
            });
        }
        Atom::Regular { coeff, order, f } => {
            // Derivatives of continuously differentiable densities lower
            // onto the density itself before transforming.
            let mut m = *order;
            let mut g = f.clone();
            while m > 0 {
                match g.classical_derivative() {
                    Some(d) => {
                        g = d;
                        m -= 1;
                    }
                    None => break,
                }
            }
            let (z, g) = g.split_scale();
            let coeff = *coeff * z;
            if m == 0 {
                if let Some((poly, freq)) = g.as_modulated_poly() {
                    // F(Σ p_k xᵏ e^{−iνx}) = Σ p_k iᵏ Dᵏ δ_{−ν}.
                    for (k, &p) in poly.iter().enumerate() {
                        out.push(Atom::Point {
                            coeff: coeff * p * i_pow(k),
                            order: k,
                            location: -freq,
                        });
                    }
                    return Ok(());
                }
                if let Some(terms) = g.as_trig_exponentials() {
                    for (amp, freq) in terms {
                        out.push(Atom::Point {
                            coeff: coeff * amp,
                            order: 0,
                            location: -freq,
                        });
                    }
                    return Ok(());
                }
                if let Some(ft) = g.closed_form_ft() {
                    out.push(Atom::Regular {
                        coeff,
                        order: 0,
                        f: ft,
                    });
                    return Ok(());
                }
            }
            out.push(Atom::Wrapped {
                coeff,
                order: 0,
                shift: 0.0,
                inner: Arc::new(Distribution {
                    atoms: canonical(vec![Atom::Regular {
                        coeff: ONE,
                        order: m,
                        f: g,
                    }]),
                }),
            });
        }
        Atom::Wrapped {
            coeff,
            order,
            shift,
            inner,
        } => {
            if *order == 0 && *shift == 0.0 {
                // F(W(M)) = (1/2π)·reflect(M), whatever M holds.
                let unwrapped = reflect(inner).scale(*coeff / TWO_PI);
                out.extend(unwrapped.atoms);
            } else {
                if inner.wrap_depth() >= 1 {
                    return Err(Error::FourierDepth);
                }
                out.push(Atom::Wrapped {
                    coeff: *coeff,
                    order: 0,
                    shift: 0.0,
                    inner: Arc::new(Distribution {
                        atoms: canonical(vec![Atom::Wrapped {
                            coeff: ONE,
                            order: *order,
                            shift: *shift,
                            inner: inner.clone(),
                        }]),
                    }),
                });
            }
        }
    }
    Ok(())
}
