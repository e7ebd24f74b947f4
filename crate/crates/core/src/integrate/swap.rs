//! Iterated-integral order-swap check on a square box.
//!
//! Both orders integrate the same box [-N, N]^2, so the two results are
//! mathematically equal whenever either exists; the reported discrepancy
//! measures quadrature consistency, not truncation. The caller asserts
//! integrability of |G| on the box (mirroring the hypothesis under which
//! exchanging the order is legitimate); this harness verifies at desk scale,
//! it proves nothing.

use num_complex::Complex64;

use super::adaptive::adapt_bounded;
use super::QuadOptions;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct SwapReport {
    /// Integral with x inner, y outer.
    pub lhs: Complex64,
    /// Integral with y inner, x outer.
    pub rhs: Complex64,
    pub discrepancy: f64,
    pub abs_error_estimate: f64,
}

pub fn iterated_swap_check(
    g: &(dyn Fn(f64, f64) -> Complex64 + Sync),
    breakpoints_x: &[f64],
    breakpoints_y: &[f64],
    n_max: f64,
    tol: f64,
) -> Result<SwapReport> {
    iterated_swap_check_with(g, breakpoints_x, breakpoints_y, n_max, tol, &QuadOptions::default())
}

pub fn iterated_swap_check_with(
    g: &(dyn Fn(f64, f64) -> Complex64 + Sync),
    breakpoints_x: &[f64],
    breakpoints_y: &[f64],
    n_max: f64,
    tol: f64,
    opts: &QuadOptions,
) -> Result<SwapReport> {
    assert!(n_max > 0.0 && n_max.is_finite(), "box half-width must be positive");
    assert!(tol > 0.0, "tolerance must be positive");

    // Outer quadrature tolerance tol/4; inner integrals are evaluated at
    // outer nodes, so their pointwise error tol/(16 N) integrates over a
    // width-2N outer interval to at most tol/8. Each iterated integral is
    // then within 3 tol/8, and the difference within (3/4) tol < tol.
    let outer_tol = tol / 4.0;
    let inner_tol = tol / (16.0 * n_max);

    let mut budget = opts.eval_budget;
    let lhs = iterated(
        &|x, y| g(x, y),
        breakpoints_x,
        breakpoints_y,
        n_max,
        outer_tol,
        inner_tol,
        &mut budget,
    )?;
    let rhs = iterated(
        &|y, x| g(x, y),
        breakpoints_y,
        breakpoints_x,
        n_max,
        outer_tol,
        inner_tol,
        &mut budget,
    )?;

    Ok(SwapReport {
        lhs: lhs.0,
        rhs: rhs.0,
        discrepancy: (lhs.0 - rhs.0).norm(),
        abs_error_estimate: lhs.1 + rhs.1,
    })
}

/// Integrates inner variable first: outer over v, inner over u of h(u, v).
fn iterated(
    h: &dyn Fn(f64, f64) -> Complex64,
    breakpoints_inner: &[f64],
    breakpoints_outer: &[f64],
    n: f64,
    outer_tol: f64,
    inner_tol: f64,
    budget: &mut usize,
) -> Result<(Complex64, f64)> {
    // The outer integrand needs interior mutability for the shared budget;
    // a poisoned flag converts inner failures into a recognizable NaN that
    // the outer driver reports as non-convergence.
    use std::cell::Cell;
    let spent = Cell::new(0usize);
    let failed = Cell::new(false);
    let initial = *budget;

    let outer_f = |v: f64| -> Complex64 {
        let mut local = initial.saturating_sub(spent.get());
        let before = local;
        let out = adapt_bounded(&|u| h(u, v), -n, n, breakpoints_inner, inner_tol, &mut local);
        spent.set(spent.get() + (before - local));
        match out {
            Ok(o) => o.value,
            Err(_) => {
                failed.set(true);
                Complex64::new(f64::NAN, f64::NAN)
            }
        }
    };

    let mut outer_budget = usize::MAX / 2; // outer evals are inner integrals, charged via `spent`
    let result = adapt_bounded(&outer_f, -n, n, breakpoints_outer, outer_tol, &mut outer_budget);
    *budget = initial.saturating_sub(spent.get());

    match result {
        Ok(o) if !failed.get() => Ok((o.value, o.abs_error + 2.0 * n * inner_tol)),
        Ok(_) | Err(Error::NonConvergence { .. }) if failed.get() => Err(Error::NonConvergence {
            context: "inner integral of the iterated pair failed to converge".into(),
            evals: initial - *budget,
            estimate: f64::NAN,
            tol: inner_tol,
        }),
        Ok(o) => Ok((o.value, o.abs_error + 2.0 * n * inner_tol)),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn separable_gaussian_product_orders_agree() {
        let tol = 1e-9;
        let report = iterated_swap_check(
            &|x, y| Complex64::new((-x * x - y * y).exp(), 0.0),
            &[],
            &[],
            6.0,
            tol,
        )
        .unwrap();
        assert!(report.discrepancy <= 2.0 * tol, "discrepancy {}", report.discrepancy);
        // Box practically exhausts the plane integral pi.
        assert!((report.lhs.re - std::f64::consts::PI).abs() < 1e-8);
    }

    #[test]
    fn oscillatory_kernel_with_step_orders_agree() {
        let tol = 1e-7;
        let report = iterated_swap_check(
            &|x, y| {
                let h = if x > 0.0 { 1.0 } else if x == 0.0 { 0.5 } else { 0.0 };
                let amp = h * (-x).exp() * (-y * y).exp();
                Complex64::new(amp * (x * y).cos(), -amp * (x * y).sin())
            },
            &[0.0],
            &[],
            7.0,
            tol,
        )
        .unwrap();
        assert!(report.discrepancy <= 2.0 * tol, "discrepancy {}", report.discrepancy);
    }
}
