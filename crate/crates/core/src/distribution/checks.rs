//! Identity checks evaluated against two independently computed sides:
//! integration by parts for cataloged densities, and the transform-pairing
//! identity ∫f̂·φ = ∫f·φ̂.

use num_complex::Complex64;
use serde::Serialize;

use crate::catalog::{numeric_ft, CatalogFunction};
use crate::integrate::{
    integrate_bounded, integrate_line, DecayCertificate, Integrand, LineMode,
};
use crate::schwartz::{fourier_testfn, TestFunction};
use crate::{Error, Result, TWO_PI};

use super::{pair_regular, Probe};

#[derive(Debug, Clone, Serialize)]
pub struct IbpReport {
    /// ∫ f′·φ
    pub lhs: Complex64,
    /// ∫ f·φ′
    pub rhs: Complex64,
    /// |lhs + rhs|; zero for exact integration by parts.
    pub residual: f64,
    pub tol: f64,
}

/// Check ∫f′φ = −∫fφ′ with both sides quadratured independently: the
/// left side pairs the cataloged derivative f′ with φ, the right side
/// pairs f with φ′ through the derivative-order channel. Needs f to have
/// a cataloged classical derivative.
pub fn ibp_check(f: &CatalogFunction, phi: &TestFunction, tol: f64) -> Result<IbpReport> {
    let df = f.classical_derivative().ok_or_else(|| Error::Unsupported {
        reason: format!("{} has no cataloged classical derivative", f.name()),
    })?;
    let (lhs, _) = pair_regular(&df, 0, &Probe::Test(phi), tol)?;
    let (rhs, _) = pair_regular(f, 1, &Probe::Test(phi), tol)?;
    Ok(IbpReport {
        lhs,
        rhs,
        residual: (lhs + rhs).norm(),
        tol,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct GpfReport {
    /// ∫ f̂(ω)·φ(ω) dω with f̂ evaluated pointwise by quadrature.
    pub lhs: Complex64,
    /// ∫ f(x)·φ̂(x) dx through the exact transform image of φ.
    pub rhs: Complex64,
    pub residual: f64,
    pub tol: f64,
}

/// Check the pairing identity ∫f̂φ = ∫fφ̂ for an absolutely integrable f.
/// The two sides share no quadrature: the left one integrates the numeric
/// pointwise transform of f, the right one integrates f against the exact
/// transform image of φ.
pub fn gpf_check(f: &CatalogFunction, phi: &TestFunction, tol: f64) -> Result<GpfReport> {
    if !f.in_g() {
        return Err(Error::Unsupported {
            reason: format!(
                "{} is not absolutely integrable; the pairing identity needs a \
                 pointwise transform",
                f.name()
            ),
        });
    }

    let image = fourier_testfn(phi, tol / 4.0)?;
    let rhs = match (image.as_closed(), image.as_sampled()) {
        (Some(tf), _) => pair_regular(f, 0, &Probe::Test(tf), tol)?.0,
        (None, Some(sp)) => pair_regular(f, 0, &Probe::Sampled(sp), tol)?.0,
        _ => unreachable!("a transform image is closed or sampled"),
    };

    // sup|f̂| ≤ (∫|f|)/2π certifies the decay of f̂·φ through φ's own bound
    let fe = f.clone();
    let absf = Integrand::new(move |x| Complex64::new(fe.eval_balanced(x).norm(), 0.0))
        .with_breakpoints(f.breakpoints());
    let mass = if let Some((a, b)) = f.support() {
        integrate_bounded(&absf, a, b, tol)?
    } else {
        let cert = f.decay_certificate().ok_or(Error::MissingCertificate)?;
        integrate_line(&absf.with_decay(cert), LineMode::Absolute, tol)?
    };
    let sup_ft = (mass.value.re + mass.abs_error_estimate) / TWO_PI;

    let inner_tol = tol / 40.0;
    let fe = f.clone();
    let ph = phi.clone();
    let lhs_integrand = Integrand::new(move |w| match numeric_ft(&fe, w, inner_tol) {
        Ok(v) => v * ph.eval(w),
        Err(_) => Complex64::new(f64::NAN, f64::NAN),
    });
    let cert = DecayCertificate::new(
        (sup_ft * phi.power_sup_bound(8.0)).max(f64::MIN_POSITIVE),
        8.0,
    );
    let lhs = integrate_line(&lhs_integrand.with_decay(cert), LineMode::Generalized, tol)?;

    Ok(GpfReport {
        lhs: lhs.value,
        rhs,
        residual: (lhs.value - rhs).norm(),
        tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parts_identity_holds_for_smooth_and_kinked_densities() {
        let phi = TestFunction::gauss(0.0);
        for f in [
            CatalogFunction::gaussfn(),
            CatalogFunction::mono(2).unwrap(),
            CatalogFunction::sinfn(),
            CatalogFunction::abs(),
        ] {
            let report = ibp_check(&f, &phi, 1e-8).unwrap();
            assert!(
                report.residual <= 2e-8,
                "{}: residual {}",
                f.name(),
                report.residual
            );
        }

        let bump = TestFunction::bump(-1.0, 1.0);
        let report = ibp_check(&CatalogFunction::mono(2).unwrap(), &bump, 1e-8).unwrap();
        assert!(report.residual <= 2e-8, "residual {}", report.residual);
    }

    #[test]
    fn parts_identity_needs_a_cataloged_derivative() {
        let phi = TestFunction::gauss(0.0);
        match ibp_check(&CatalogFunction::heaviside(), &phi, 1e-8) {
            Err(Error::Unsupported { reason }) => {
                assert!(reason.contains("derivative"), "reason: {reason}")
            }
            other => panic!("expected Unsupported, got {other:?}"),
        }
    }

    #[test]
    fn transform_pairing_identity_closes_for_integrable_densities() {
        let tol = 1e-7;
        let probes = [
            TestFunction::gauss(0.0),
            TestFunction::poly_gauss(
                vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)],
                0.0,
                1.0,
                0.0,
            ),
        ];
        for f in [
            CatalogFunction::expabs(),
            CatalogFunction::chi(-1.0, 1.0).unwrap(),
            CatalogFunction::gaussfn(),
        ] {
            for phi in &probes {
                let report = gpf_check(&f, phi, tol).unwrap();
                assert!(
                    report.residual <= 2.0 * tol,
                    "{}: residual {}",
                    f.name(),
                    report.residual
                );
            }
        }
    }

    #[test]
    fn transform_pairing_identity_needs_integrability() {
        match gpf_check(&CatalogFunction::heaviside(), &TestFunction::gauss(0.0), 1e-7) {
            Err(Error::Unsupported { reason }) => {
                assert!(reason.contains("integrable"), "reason: {reason}")
            }
            other => panic!("expected Unsupported, got {other:?}"),
        }
    }
}
