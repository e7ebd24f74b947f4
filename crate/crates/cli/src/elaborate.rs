//! From syntax to semantics: interpret an [`Expr`] as a scalar, a catalog
//! function, a test function, or a distribution, and format a canonical
//! distribution back into parseable text.
//!
//! The same node can be meaningful in several contexts (`poly(1,2)` is a
//! catalog function and also names the density distribution it induces),
//! so each `as_*` function owns its namespace and cross-context mistakes
//! get a pointed message instead of a bare unknown-name error.

use distcalc_core::distribution::{derivative, fourier, translate};
use distcalc_core::{Atom, CatalogFunction, Distribution, TestFunction};
use num_complex::Complex64;

use crate::error::{unsupported, CliError, Result};
use crate::expr::Expr;

const TESTFN_NAMES: [&str; 3] = ["gauss", "bump", "polygauss"];
const SCALAR_NAMES: [&str; 1] = ["sqrt"];
const DIST_NAMES: [&str; 6] = ["delta", "regular", "D", "FT", "translate", "mono"];
const CATALOG_NAMES: [&str; 17] = [
    "H", "sign", "abs", "expabs", "lorentz", "sinfn", "cosfn", "gaussfn", "chi",
    "chihat", "poly", "modpoly", "gausspoly", "spiky", "shiftf", "reflectf", "scalef",
];

// ---- scalars ---------------------------------------------------------------

pub fn as_scalar(e: &Expr) -> Result<Complex64> {
    match e {
        Expr::Num(x) => Ok(Complex64::new(*x, 0.0)),
        Expr::Imag(b) => Ok(Complex64::new(0.0, *b)),
        Expr::Pi => Ok(Complex64::new(std::f64::consts::PI, 0.0)),
        Expr::Neg(inner) => Ok(-as_scalar(inner)?),
        Expr::Add(a, b) => Ok(as_scalar(a)? + as_scalar(b)?),
        Expr::Sub(a, b) => Ok(as_scalar(a)? - as_scalar(b)?),
        Expr::Mul(a, b) => Ok(as_scalar(a)? * as_scalar(b)?),
        Expr::Div(a, b) => {
            let d = as_scalar(b)?;
            if d.norm() == 0.0 {
                return Err(unsupported("division by zero"));
            }
            Ok(as_scalar(a)? / d)
        }
        Expr::Call {
            name,
            power,
            groups,
            ..
        } => {
            if name == "sqrt" && power.is_none() {
                let arg = as_scalar(single_arg(groups, "sqrt")?)?;
                return Ok(arg.sqrt());
            }
            Err(name_error(name, &SCALAR_NAMES, "a scalar"))
        }
    }
}

pub fn as_real(e: &Expr, what: &str) -> Result<f64> {
    let z = as_scalar(e)?;
    if z.im != 0.0 {
        return Err(unsupported(format!("{what} must be real, got {z}")));
    }
    if !z.re.is_finite() {
        return Err(unsupported(format!("{what} must be finite, got {}", z.re)));
    }
    Ok(z.re)
}

pub fn as_count(e: &Expr, what: &str) -> Result<usize> {
    let x = as_real(e, what)?;
    if x < 0.0 || x.fract() != 0.0 || x > 1e9 {
        return Err(unsupported(format!(
            "{what} must be a nonnegative integer, got {x}"
        )));
    }
    Ok(x as usize)
}

// ---- catalog functions ----------------------------------------------------

pub fn as_catalog(e: &Expr) -> Result<CatalogFunction> {
    let Expr::Call {
        name,
        power,
        groups,
        ..
    } = e
    else {
        return Err(unsupported(
            "expected a catalog function name like H, expabs, or chi(-1,1)",
        ));
    };
    if power.is_some() {
        return Err(unsupported("exponents are only supported on D"));
    }
    match name.as_str() {
        "H" => nullary(groups, name, CatalogFunction::heaviside),
        "sign" => nullary(groups, name, CatalogFunction::sign),
        "abs" => nullary(groups, name, CatalogFunction::abs),
        "expabs" => nullary(groups, name, CatalogFunction::expabs),
        "lorentz" => nullary(groups, name, CatalogFunction::lorentz),
        "sinfn" => nullary(groups, name, CatalogFunction::sinfn),
        "cosfn" => nullary(groups, name, CatalogFunction::cosfn),
        "gaussfn" => nullary(groups, name, CatalogFunction::gaussfn),
        "chi" => {
            let (a, b) = two_reals(groups, "chi")?;
            Ok(CatalogFunction::chi(a, b)?)
        }
        "chihat" => {
            let (a, b) = two_reals(groups, "chihat")?;
            Ok(CatalogFunction::chi_hat(a, b)?)
        }
        "mono" => {
            let n = as_count(single_arg(groups, "mono")?, "mono's exponent")?;
            Ok(CatalogFunction::mono(n)?)
        }
        "poly" => {
            let coeffs = scalar_group(single_group(groups, "poly")?)?;
            Ok(CatalogFunction::poly(coeffs))
        }
        "modpoly" => {
            let [cg, fg] = group_array(groups, "modpoly", "modpoly(c0,...;freq)")?;
            let coeffs = scalar_group(cg)?;
            let freq = as_real(one_of(fg, "modpoly's frequency")?, "modpoly's frequency")?;
            Ok(CatalogFunction::modulated_poly(coeffs, freq))
        }
        "gausspoly" => {
            let (coeffs, omega, alpha, center) =
                poly_gauss_args(groups, "gausspoly(c0,...;omega;alpha;center)")?;
            Ok(CatalogFunction::gausspoly(coeffs, omega, alpha, center)?)
        }
        "spiky" => {
            let n = as_count(single_arg(groups, "spiky")?, "spiky's top index")?;
            Ok(distcalc_core::catalog::spiky_fixture(n)?)
        }
        "shiftf" => {
            let args = single_group(groups, "shiftf")?;
            if args.len() != 2 {
                return Err(unsupported("shiftf takes (function, offset)"));
            }
            let inner = as_catalog(&args[0])?;
            let s = as_real(&args[1], "shiftf's offset")?;
            Ok(inner.shifted(s))
        }
        "reflectf" => {
            let inner = as_catalog(single_arg(groups, "reflectf")?)?;
            Ok(inner.reflect())
        }
        "scalef" => {
            let args = single_group(groups, "scalef")?;
            if args.len() != 2 {
                return Err(unsupported("scalef takes (function, scalar)"));
            }
            let inner = as_catalog(&args[0])?;
            let z = as_scalar(&args[1])?;
            Ok(inner.scaled(z))
        }
        _ => Err(name_error(name, &[], "a catalog function")),
    }
}

// ---- test functions ---------------------------------------------------------

pub fn as_testfn(e: &Expr) -> Result<TestFunction> {
    match e {
        Expr::Num(x) if *x == 0.0 => Ok(TestFunction::zero()),
        Expr::Neg(inner) => Ok(as_testfn(inner)?.scale(Complex64::new(-1.0, 0.0))),
        Expr::Add(a, b) => Ok(as_testfn(a)?.add(&as_testfn(b)?)),
        Expr::Sub(a, b) => {
            Ok(as_testfn(a)?.add(&as_testfn(b)?.scale(Complex64::new(-1.0, 0.0))))
        }
        Expr::Mul(a, b) => match as_scalar(a) {
            Ok(z) => Ok(as_testfn(b)?.scale(z)),
            Err(_) => Ok(as_testfn(a)?.scale(as_scalar(b)?)),
        },
        Expr::Div(a, b) => {
            let d = as_scalar(b)?;
            if d.norm() == 0.0 {
                return Err(unsupported("division by zero"));
            }
            Ok(as_testfn(a)?.scale(Complex64::new(1.0, 0.0) / d))
        }
        Expr::Call {
            name,
            power,
            groups,
            ..
        } => match name.as_str() {
            "D" => {
                let n = power.unwrap_or(1);
                let inner = as_testfn(single_arg(groups, "D")?)?;
                Ok(inner.derivative_n(n)?)
            }
            "gauss" if power.is_none() => {
                let omega = as_real(single_arg(groups, "gauss")?, "gauss's modulation")?;
                Ok(TestFunction::gauss(omega))
            }
            "bump" if power.is_none() => {
                let (a, b) = two_reals(groups, "bump")?;
                if !(a < b) {
                    return Err(CliError::Module(
                        distcalc_core::Error::InvalidInterval { a, b },
                    ));
                }
                Ok(TestFunction::bump(a, b))
            }
            "polygauss" if power.is_none() => {
                let (coeffs, omega, alpha, center) =
                    poly_gauss_args(groups, "polygauss(c0,...;omega;alpha;center)")?;
                if !(alpha > 0.0) || !alpha.is_finite() {
                    return Err(unsupported(format!(
                        "polygauss needs a positive finite width, got {alpha}"
                    )));
                }
                Ok(TestFunction::poly_gauss(coeffs, omega, alpha, center))
            }
            _ => Err(name_error(name, &TESTFN_NAMES, "a test function")),
        },
        _ => Err(unsupported(
            "expected a test function like gauss(0) or bump(-1,1)",
        )),
    }
}

// ---- distributions -----------------------------------------------------------

pub fn as_distribution(e: &Expr) -> Result<Distribution> {
    match e {
        Expr::Num(x) if *x == 0.0 => Ok(Distribution::zero()),
        Expr::Imag(b) if *b == 0.0 => Ok(Distribution::zero()),
        Expr::Num(_) | Expr::Imag(_) | Expr::Pi => Err(unsupported(
            "a bare scalar is not a distribution (only 0 denotes the zero distribution)",
        )),
        Expr::Neg(inner) => Ok(as_distribution(inner)?.scale(Complex64::new(-1.0, 0.0))),
        Expr::Add(a, b) => Ok(as_distribution(a)?.add(&as_distribution(b)?)),
        Expr::Sub(a, b) => {
            Ok(as_distribution(a)?
                .add(&as_distribution(b)?.scale(Complex64::new(-1.0, 0.0))))
        }
        Expr::Mul(a, b) => match as_scalar(a) {
            Ok(z) => Ok(as_distribution(b)?.scale(z)),
            Err(_) => match as_scalar(b) {
                Ok(z) => Ok(as_distribution(a)?.scale(z)),
                Err(_) => Err(unsupported(
                    "the product of two distributions is undefined; \
                     one factor must be a scalar",
                )),
            },
        },
        Expr::Div(a, b) => {
            let d = as_scalar(b)?;
            if d.norm() == 0.0 {
                return Err(unsupported("division by zero"));
            }
            Ok(as_distribution(a)?.scale(Complex64::new(1.0, 0.0) / d))
        }
        Expr::Call {
            name,
            power,
            groups,
            ..
        } => match name.as_str() {
            "delta" if power.is_none() => {
                let a = as_real(single_arg(groups, "delta")?, "delta's location")?;
                Ok(Distribution::delta(a))
            }
            "regular" if power.is_none() => {
                let f = as_catalog(single_arg(groups, "regular")?)?;
                Ok(Distribution::regular(&f))
            }
            "D" => {
                let n = power.unwrap_or(1);
                let inner = as_distribution(single_arg(groups, "D")?)?;
                Ok(derivative(&inner, n)?)
            }
            "FT" if power.is_none() => {
                let inner = as_distribution(single_arg(groups, "FT")?)?;
                Ok(fourier(&inner)?)
            }
            "translate" if power.is_none() => {
                let args = single_group(groups, "translate")?;
                if args.len() != 2 {
                    return Err(unsupported("translate takes (distribution, offset)"));
                }
                let inner = as_distribution(&args[0])?;
                let c = as_real(&args[1], "translate's offset")?;
                Ok(translate(&inner, c))
            }
            _ => {
                if power.is_some() {
                    return Err(unsupported("exponents are only supported on D"));
                }
                // any catalog function doubles as the density it induces
                match as_catalog(e) {
                    Ok(f) => Ok(Distribution::regular(&f)),
                    Err(CliError::UnknownName { .. }) => {
                        Err(name_error(name, &DIST_NAMES, "a distribution"))
                    }
                    Err(other) => Err(other),
                }
            }
        },
    }
}

// ---- canonical text ----------------------------------------------------------

pub fn fmt_f64(x: f64) -> String {
    // Display of f64 is the shortest decimal that parses back bit-exactly
    format!("{x}")
}

fn fmt_coeff(z: Complex64) -> String {
    if z.im == 0.0 {
        fmt_f64(z.re)
    } else if z.re == 0.0 {
        format!("{}i", fmt_f64(z.im))
    } else if z.im < 0.0 {
        format!("({}{}i)", fmt_f64(z.re), fmt_f64(z.im))
    } else {
        format!("({}+{}i)", fmt_f64(z.re), fmt_f64(z.im))
    }
}

fn wrap_d(order: usize, inner: String) -> String {
    match order {
        0 => inner,
        1 => format!("D({inner})"),
        n => format!("D^{n}({inner})"),
    }
}

/// Canonical parseable text of a distribution: atoms in canonical order
/// joined by ` + `, so `as_distribution(parse(format_dist(l))) == l`.
pub fn format_dist(d: &Distribution) -> String {
    if d.is_zero() {
        return "0".into();
    }
    let terms: Vec<String> = d.atoms().iter().map(atom_text).collect();
    terms.join(" + ")
}

fn atom_text(atom: &Atom) -> String {
    let (coeff, body) = match atom {
        Atom::Point {
            coeff,
            order,
            location,
        } => (
            *coeff,
            wrap_d(*order, format!("delta({})", fmt_f64(*location))),
        ),
        Atom::Regular { coeff, order, f } => {
            (*coeff, wrap_d(*order, format!("regular({})", f.name())))
        }
        Atom::Wrapped {
            coeff,
            order,
            shift,
            inner,
        } => {
            let mut s = format!("FT({})", format_dist(inner));
            if *shift != 0.0 {
                s = format!("translate({s},{})", fmt_f64(*shift));
            }
            (*coeff, wrap_d(*order, s))
        }
    };
    if coeff == Complex64::new(1.0, 0.0) {
        body
    } else {
        format!("{}*{}", fmt_coeff(coeff), body)
    }
}

// ---- argument plumbing ---------------------------------------------------------

fn name_error(name: &str, here: &[&str], context: &str) -> CliError {
    let everywhere: Vec<&str> = TESTFN_NAMES
        .iter()
        .chain(&SCALAR_NAMES)
        .chain(&DIST_NAMES)
        .chain(&CATALOG_NAMES)
        .copied()
        .collect();
    if !here.contains(&name) && everywhere.contains(&name) {
        return unsupported(format!("`{name}` does not name {context} in this position"));
    }
    CliError::UnknownName {
        identifier: name.to_string(),
    }
}

fn nullary(
    groups: &[Vec<Expr>],
    name: &str,
    build: fn() -> CatalogFunction,
) -> Result<CatalogFunction> {
    if groups.is_empty() {
        Ok(build())
    } else {
        Err(unsupported(format!("{name} takes no arguments")))
    }
}

fn single_group<'a>(groups: &'a [Vec<Expr>], name: &str) -> Result<&'a [Expr]> {
    match groups {
        [g] => Ok(g),
        _ => Err(unsupported(format!(
            "{name} takes one parenthesized argument list"
        ))),
    }
}

fn single_arg<'a>(groups: &'a [Vec<Expr>], name: &str) -> Result<&'a Expr> {
    match single_group(groups, name)? {
        [e] => Ok(e),
        _ => Err(unsupported(format!("{name} takes exactly one argument"))),
    }
}

fn one_of<'a>(group: &'a [Expr], what: &str) -> Result<&'a Expr> {
    match group {
        [e] => Ok(e),
        _ => Err(unsupported(format!("{what} takes exactly one value"))),
    }
}

fn two_reals(groups: &[Vec<Expr>], name: &str) -> Result<(f64, f64)> {
    match single_group(groups, name)? {
        [a, b] => Ok((
            as_real(a, &format!("{name}'s first argument"))?,
            as_real(b, &format!("{name}'s second argument"))?,
        )),
        _ => Err(unsupported(format!("{name} takes exactly two arguments"))),
    }
}

fn scalar_group(group: &[Expr]) -> Result<Vec<Complex64>> {
    if group.is_empty() {
        return Err(unsupported("coefficient list must not be empty"));
    }
    group.iter().map(as_scalar).collect()
}

fn group_array<'a, const N: usize>(
    groups: &'a [Vec<Expr>],
    name: &str,
    usage: &str,
) -> Result<[&'a [Expr]; N]> {
    if groups.len() != N {
        return Err(unsupported(format!("{name} is written {usage}")));
    }
    Ok(std::array::from_fn(|k| groups[k].as_slice()))
}

fn poly_gauss_args(
    groups: &[Vec<Expr>],
    usage: &str,
) -> Result<(Vec<Complex64>, f64, f64, f64)> {
    let [cg, og, ag, zg] = group_array(groups, "this constructor", usage)?;
    let coeffs = scalar_group(cg)?;
    let omega = as_real(one_of(og, "the modulation group")?, "the modulation")?;
    let alpha = as_real(one_of(ag, "the width group")?, "the width")?;
    let center = as_real(one_of(zg, "the center group")?, "the center")?;
    Ok((coeffs, omega, alpha, center))
}
