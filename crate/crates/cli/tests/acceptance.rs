//! Acceptance gate: one test per shipped criterion, each printing a single
//! PASS/FAIL line (visible under `-- --nocapture`) and asserting both the
//! numeric claim and its wall-clock budget. Tolerances are pinned here, not
//! taken from flags or the environment.

use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use distcalc_cli::elaborate::{as_distribution, format_dist};
use distcalc_cli::expr::parse;
use distcalc_core::catalog::numeric_ft;
use distcalc_core::distribution::analysis::{
    ft_seminorm_check, probe_separation, recover_point, regularity_witness, ProbeFamily,
    SeparationVerdict,
};
use distcalc_core::distribution::checks::{gpf_check, ibp_check};
use distcalc_core::distribution::{derivative, fourier, pair};
use distcalc_core::integrate::{
    integrate_line, integrate_line_with, Integrand, LineMode, QuadOptions,
};
use distcalc_core::schwartz::{fourier_testfn, FourierImage};
use distcalc_core::{CatalogFunction, Distribution, Error, TestFunction, SQRT_PI, TWO_PI};

/// Internal quadrature tolerance for pairings driven by criteria 1-3, 6-7, 9.
const QUAD_TOL: f64 = 1e-8;

fn finish(n: u32, pass: bool, detail: &str, t0: Instant, budget_s: f64) {
    let dt = t0.elapsed().as_secs_f64();
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("ACCEPTANCE criterion {n}: {verdict} — {detail} ({dt:.2} s)");
    assert!(pass, "criterion {n}: {detail}");
    assert!(
        dt < budget_s,
        "criterion {n} exceeded its {budget_s} s budget: {dt:.2} s"
    );
}

fn unit_gauss_mollifier() -> TestFunction {
    TestFunction::gauss(0.0).scale(Complex64::new(1.0 / SQRT_PI, 0.0))
}

#[test]
fn criterion_01_transform_of_delta_pairs_as_constant_density() {
    // |pair(fourier(δ₀), φ_ω) − (1/2π)∫φ_ω| ≤ 1e-8 for 5 modulated Gaussians.
    const DEV_CAP: f64 = 1e-8;
    let t0 = Instant::now();
    let ft = fourier(&Distribution::delta(0.0)).unwrap();
    let mut worst = 0.0f64;
    for omega in [-2.0, -1.0, 0.0, 1.0, 2.0] {
        let phi = TestFunction::gauss(omega);
        let lhs = pair(&ft, &phi, QUAD_TOL).unwrap();
        let rhs = phi.integral(QUAD_TOL).unwrap() / TWO_PI;
        worst = worst.max((lhs - rhs).norm());
    }
    finish(
        1,
        worst <= DEV_CAP,
        &format!("max |pair − ∫φ/2π| = {worst:.3e} over 5 probes (cap {DEV_CAP:.0e})"),
        t0,
        1.0,
    );
}

#[test]
fn criterion_02_step_derivative_pairs_as_point_evaluation() {
    // |pair(D L_H, φ) − φ(0)| ≤ 1e-8 for 5 probes including one bump.
    const DEV_CAP: f64 = 1e-8;
    let t0 = Instant::now();
    let dh = derivative(&Distribution::regular(&CatalogFunction::heaviside()), 1).unwrap();
    let probes = [
        TestFunction::gauss(0.0),
        TestFunction::gauss(1.0),
        TestFunction::gauss(-2.0),
        TestFunction::poly_gauss(
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)],
            0.5,
            1.2,
            -0.3,
        ),
        TestFunction::bump(-1.0, 1.0),
    ];
    let mut worst = 0.0f64;
    for phi in &probes {
        let lhs = pair(&dh, phi, QUAD_TOL).unwrap();
        worst = worst.max((lhs - phi.eval(0.0)).norm());
    }
    finish(
        2,
        worst <= DEV_CAP,
        &format!("max |pair − φ(0)| = {worst:.3e} over 5 probes (cap {DEV_CAP:.0e})"),
        t0,
        1.0,
    );
}

#[test]
fn criterion_03_monomial_transforms_are_derivative_point_atoms() {
    // fourier(L_{xⁿ}) = iⁿDⁿδ₀ structurally for n ≤ 4, and the pairing
    // agrees with the defining fallback pair(L, φ̂) within 1e-6.
    const DEV_CAP: f64 = 1e-6;
    let t0 = Instant::now();
    let phi = TestFunction::gauss(1.0);
    let phi_hat = match fourier_testfn(&phi, QUAD_TOL).unwrap() {
        FourierImage::Closed(psi) => psi,
        _ => panic!("a pure Gaussian transforms in closed form"),
    };
    let mut worst = 0.0f64;
    for n in 0..=4usize {
        let l = Distribution::regular(&CatalogFunction::mono(n).unwrap());
        let ft = fourier(&l).unwrap();
        let expected =
            Distribution::point(Complex64::new(0.0, 1.0).powu(n as u32), n, 0.0).unwrap();
        assert_eq!(ft, expected, "structural mismatch at n = {n}");
        let direct = pair(&ft, &phi, QUAD_TOL).unwrap();
        let defining = pair(&l, &phi_hat, QUAD_TOL).unwrap();
        worst = worst.max((direct - defining).norm());
    }
    finish(
        3,
        worst <= DEV_CAP,
        &format!("structural equality for n ≤ 4; max pairing gap {worst:.3e} (cap {DEV_CAP:.0e})"),
        t0,
        5.0,
    );
}

#[test]
fn criterion_04_transform_pairing_identity_closes_for_three_densities() {
    // |∫f̂φ − ∫fφ̂| ≤ 1e-7 for three integrable densities × 5 poly-Gaussians.
    const RESIDUAL_CAP: f64 = 1e-7;
    let t0 = Instant::now();
    let densities = [
        CatalogFunction::expabs(),
        CatalogFunction::chi(-1.0, 1.0).unwrap(),
        CatalogFunction::gaussfn(),
    ];
    let c = Complex64::new;
    let probes = [
        TestFunction::poly_gauss(vec![c(1.0, 0.0)], 0.0, 1.0, 0.0),
        TestFunction::poly_gauss(vec![c(0.0, 0.0), c(1.0, 0.0)], 1.0, 0.5, 0.0),
        TestFunction::poly_gauss(vec![c(1.0, 0.0), c(0.0, 1.0)], -2.0, 2.0, 0.5),
        TestFunction::poly_gauss(vec![c(2.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)], 0.7, 1.3, -0.4),
        TestFunction::poly_gauss(vec![c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.5)], 0.0, 0.9, 1.0),
    ];
    let mut worst = 0.0f64;
    for f in &densities {
        for phi in &probes {
            let report = gpf_check(f, phi, 1e-7).unwrap();
            worst = worst.max(report.residual);
        }
    }
    finish(
        4,
        worst <= RESIDUAL_CAP,
        &format!("max residual {worst:.3e} over 15 (f, φ) pairs (cap {RESIDUAL_CAP:.0e})"),
        t0,
        10.0,
    );
}

#[test]
fn criterion_05_two_sided_exponential_transform_matches_closed_form() {
    // numeric f̂(ω) for e^{−|x|} matches 1/(π(ω²+1)) within 1e-6.
    const DEV_CAP: f64 = 1e-6;
    let t0 = Instant::now();
    let f = CatalogFunction::expabs();
    let mut worst = 0.0f64;
    for omega in [-4.0, -1.0, 0.0, 1.0, 4.0] {
        let v = numeric_ft(&f, omega, 1e-8).unwrap();
        let exact = 1.0 / (std::f64::consts::PI * (omega * omega + 1.0));
        worst = worst.max((v - Complex64::new(exact, 0.0)).norm());
    }
    finish(
        5,
        worst <= DEV_CAP,
        &format!("max |f̂(ω) − 1/(π(ω²+1))| = {worst:.3e} at 5 frequencies (cap {DEV_CAP:.0e})"),
        t0,
        2.0,
    );
}

#[test]
fn criterion_06_step_recovery_converges_to_the_balanced_value() {
    // L_H at c = 0: |estimate(k=256) − 0.5| ≤ 5e-3 with non-increasing error
    // along k = 4, 16, 64, 256. The estimates are analytically exactly 1/2
    // at every scale, so the observed "errors" sit at the quadrature noise
    // floor (~1e-16..1e-9); the monotonicity check therefore carries a
    // 10·tol slack so that noise-floor jitter cannot fail an identity that
    // holds exactly.
    const FINAL_CAP: f64 = 5e-3;
    const NOISE_SLACK: f64 = 10.0 * QUAD_TOL;
    let t0 = Instant::now();
    let l = Distribution::regular(&CatalogFunction::heaviside());
    let report = recover_point(
        &l,
        0.0,
        &unit_gauss_mollifier(),
        &[4.0, 16.0, 64.0, 256.0],
        QUAD_TOL,
    )
    .unwrap();
    let errs: Vec<f64> = report
        .steps
        .iter()
        .map(|s| (s.estimate - Complex64::new(0.5, 0.0)).norm())
        .collect();
    let final_ok = *errs.last().unwrap() <= FINAL_CAP;
    let monotone = errs.windows(2).all(|w| w[1] <= w[0] + NOISE_SLACK);
    let err_text: Vec<String> = errs.iter().map(|e| format!("{e:.3e}")).collect();
    finish(
        6,
        final_ok && monotone,
        &format!(
            "errors along k = 4,16,64,256: [{}]; final ≤ {FINAL_CAP:.0e}: {final_ok}, \
             non-increasing (slack {NOISE_SLACK:.0e}): {monotone}",
            err_text.join(", ")
        ),
        t0,
        5.0,
    );
}

#[test]
fn criterion_07_point_mass_witnessed_by_linear_growth() {
    // δ₀ at c = 0: fitted exponent in [0.95, 1.05]; at c = 1 every value
    // from k = 16 on stays below 1e-3.
    const AWAY_CAP: f64 = 1e-3;
    let t0 = Instant::now();
    let l = Distribution::delta(0.0);
    let moll = unit_gauss_mollifier();
    let ks = [4.0, 16.0, 64.0, 256.0];
    let at_mass = regularity_witness(&l, 0.0, &moll, &ks, QUAD_TOL).unwrap();
    let exponent = at_mass.growth_exponent.unwrap_or(f64::NAN);
    let exponent_ok = (0.95..=1.05).contains(&exponent);
    let away = regularity_witness(&l, 1.0, &moll, &ks, QUAD_TOL).unwrap();
    let away_ok = away
        .steps
        .iter()
        .filter(|s| s.k >= 16.0)
        .all(|s| s.magnitude < AWAY_CAP);
    finish(
        7,
        exponent_ok && away_ok,
        &format!(
            "growth exponent at the mass: {exponent:.4} (need [0.95, 1.05]); \
             values at c = 1 below {AWAY_CAP:.0e} from k = 16: {away_ok}"
        ),
        t0,
        5.0,
    );
}

#[test]
fn criterion_08_transform_seminorms_shrink_and_obey_the_stated_bound() {
    // For φ_k = gauss(1)/k: every C_{m,n}(φ̂_k), m,n ≤ 2, decreases along
    // the schedule, and C_{0,0}(φ̂) ≤ (1/2π²)(C_{0,0}(φ) + C_{2,0}(φ))
    // within 1% grid slack.
    //
    // The decrease holds. The stated bound does not: its constant 1/2π²
    // understates the sharp one. |φ̂(ω)| ≤ (1/2π)∫|φ| ≤
    // (1/2π)·sup((1+x²)|φ|)·∫dx/(1+x²) = (1/2)(C_{0,0} + C_{2,0}), so the
    // sharp constant is 1/2 = (1/2π²)·π². The cross-check below shows the
    // measured ratio sits under the π²-corrected bound, i.e. the
    // measurement is sound and the stated constant itself is short. This
    // test is expected to fail until the stated constant is revised.
    let t0 = Instant::now();
    let report = ft_seminorm_check(&TestFunction::gauss(1.0), &[1.0, 2.0, 4.0, 8.0], 2, 1e-6)
        .unwrap();
    let s0 = &report.steps[0];
    let sharp_rhs = s0.stated_rhs * std::f64::consts::PI * std::f64::consts::PI;
    let sharp_holds = s0.stated_lhs <= sharp_rhs * 1.01;
    let pass = report.monotone && report.stated_bound_holds_everywhere;
    finish(
        8,
        pass,
        &format!(
            "seminorm decrease: {}; stated bound C00(φ̂) ≤ (1/2π²)(C00+C20): {} \
             [measured lhs {:.6e} vs stated rhs {:.6e}; π²-corrected rhs {:.6e} holds: {}]",
            report.monotone,
            report.stated_bound_holds_everywhere,
            s0.stated_lhs,
            s0.stated_rhs,
            sharp_rhs,
            sharp_holds,
        ),
        t0,
        10.0,
    );
}

#[test]
fn criterion_09_parts_identity_residuals_stay_small() {
    // |∫f′φ + ∫fφ′| ≤ 1e-7 for 3 pairs including a compactly supported φ.
    const RESIDUAL_CAP: f64 = 1e-7;
    let t0 = Instant::now();
    let pairs = [
        (CatalogFunction::gaussfn(), TestFunction::gauss(0.0)),
        (CatalogFunction::abs(), TestFunction::gauss(1.0)),
        (CatalogFunction::sinfn(), TestFunction::bump(-2.0, 2.0)),
    ];
    let mut worst = 0.0f64;
    for (f, phi) in &pairs {
        let report = ibp_check(f, phi, QUAD_TOL).unwrap();
        worst = worst.max(report.residual);
    }
    finish(
        9,
        worst <= RESIDUAL_CAP,
        &format!("max residual {worst:.3e} over 3 pairs (cap {RESIDUAL_CAP:.0e})"),
        t0,
        5.0,
    );
}

#[test]
fn criterion_10_bump_edges_are_flat_and_derivatives_check_out() {
    // Every derivative of the bump vanishes at the support edge: sampling
    // ψ⁽ⁿ⁾ on a log grid from x = 0.1 down to 0.01 must show decay toward
    // the edge, with the final (extrapolated) value ≤ 1e-12 for n ≤ 6.
    // Separately, symbolic derivatives must match central differences with
    // observed order ≥ 1.8.
    const EDGE_CAP: f64 = 1e-12;
    const ORDER_FLOOR: f64 = 1.8;
    let t0 = Instant::now();
    let psi = TestFunction::bump(0.0, 1.0);
    let ratio = (0.01f64 / 0.1).powf(1.0 / 6.0);
    let mut edges_ok = true;
    let mut worst_edge = 0.0f64;
    for n in 0..=6usize {
        let d = psi.derivative_n(n).unwrap();
        let values: Vec<f64> = (0..=6).map(|j| d.eval(0.1 * ratio.powi(j)).norm()).collect();
        let limit = *values.last().unwrap();
        worst_edge = worst_edge.max(limit);
        edges_ok &= limit <= EDGE_CAP && limit <= values[0].max(EDGE_CAP);
    }

    let phi = TestFunction::bump(-1.0, 1.0);
    let dphi = phi.derivative_n(1).unwrap();
    let x0 = 0.3;
    let exact = dphi.eval(x0);
    let errs: Vec<f64> = [0.04, 0.02, 0.01, 0.005]
        .iter()
        .map(|&h| (((phi.eval(x0 + h) - phi.eval(x0 - h)) / (2.0 * h)) - exact).norm())
        .collect();
    let orders: Vec<f64> = errs.windows(2).map(|w| (w[0] / w[1]).log2()).collect();
    let observed = orders.iter().sum::<f64>() / orders.len() as f64;
    let order_ok = observed >= ORDER_FLOOR;
    finish(
        10,
        edges_ok && order_ok,
        &format!(
            "edge limits ≤ {EDGE_CAP:.0e} for n ≤ 6 (worst {worst_edge:.3e}); \
             finite-difference order {observed:.2} (floor {ORDER_FLOOR})"
        ),
        t0,
        5.0,
    );
}

#[test]
fn criterion_11_probe_family_separates_ten_catalog_pairs() {
    // Ten distinct catalog densities, probed with ≤ 32 modulated Gaussians
    // each, must every one come back separated.
    const SCHEDULE: [f64; 7] = [0.0, 1.0, -1.0, 2.0, -2.0, 3.0, -3.0];
    let t0 = Instant::now();
    let pairs = [
        (CatalogFunction::heaviside(), CatalogFunction::sign()),
        (CatalogFunction::heaviside(), CatalogFunction::abs()),
        (CatalogFunction::sign(), CatalogFunction::abs()),
        (CatalogFunction::expabs(), CatalogFunction::lorentz()),
        (CatalogFunction::expabs(), CatalogFunction::gaussfn()),
        (CatalogFunction::sinfn(), CatalogFunction::cosfn()),
        (CatalogFunction::chi(-1.0, 1.0).unwrap(), CatalogFunction::heaviside()),
        (
            CatalogFunction::poly(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]),
            CatalogFunction::sinfn(),
        ),
        (CatalogFunction::cosfn(), CatalogFunction::gaussfn()),
        (CatalogFunction::abs(), CatalogFunction::expabs()),
    ];
    let mut separated = 0usize;
    let mut max_probes = 0usize;
    for (f, g) in &pairs {
        let report = probe_separation(
            &Distribution::regular(f),
            &Distribution::regular(g),
            ProbeFamily::GaussModulated,
            &SCHEDULE,
            1e-6,
        )
        .unwrap();
        if let SeparationVerdict::Separated { param, .. } = &report.verdict {
            separated += 1;
            let used = SCHEDULE.iter().position(|&w| w == param[0]).unwrap() + 1;
            max_probes = max_probes.max(used);
        }
    }
    finish(
        11,
        separated == pairs.len() && max_probes <= 32,
        &format!(
            "{separated}/10 pairs separated; deepest verdict at probe {max_probes} of ≤ 32"
        ),
        t0,
        30.0,
    );
}

#[test]
fn criterion_12_principal_value_of_the_identity_map_is_zero() {
    // PV ∫x dx = 0 within 1e-9, while the generalized mode refuses.
    const PV_CAP: f64 = 1e-9;
    let t0 = Instant::now();
    let f = Integrand::real(|x| x);
    let pv = integrate_line(&f, LineMode::PrincipalValue, 1e-9).unwrap();
    let opts = QuadOptions {
        truncation_radius: Some(1.0),
        ..QuadOptions::default()
    };
    let gen = integrate_line_with(&f, LineMode::Generalized, 1e-9, &opts);
    let mismatch = matches!(gen, Err(Error::ModeMismatch { .. }));
    finish(
        12,
        pv.value.norm() <= PV_CAP && mismatch,
        &format!(
            "PV value {:.3e} (cap {PV_CAP:.0e}); generalized mode rejected: {mismatch}",
            pv.value.norm()
        ),
        t0,
        1.0,
    );
}

#[test]
fn criterion_13_inversion_integral_lands_on_the_jump_average() {
    // PV ∫ f̂(ω) e^{iω} dω for f = χ_{[−1,1]} must return 1/2 within 1e-3:
    // the inversion of a jump lands on the balanced midpoint value.
    const DEV_CAP: f64 = 1e-3;
    let t0 = Instant::now();
    let fhat = CatalogFunction::chi_hat(-1.0, 1.0).unwrap();
    let g = Integrand::new(move |w| fhat.eval_balanced(w) * Complex64::new(0.0, w).exp());
    let result = integrate_line(&g, LineMode::PrincipalValue, 1e-3).unwrap();
    let dev = (result.value - Complex64::new(0.5, 0.0)).norm();
    finish(
        13,
        dev <= DEV_CAP,
        &format!(
            "PV inversion at x = 1 gives {:.10} (expected 0.5, deviation {dev:.3e}, cap {DEV_CAP:.0e})",
            result.value.re
        ),
        t0,
        10.0,
    );
}

// ---- criterion 14: parser round trip ------------------------------------

const GEN_LOCATIONS: [&str; 6] = ["-2", "-0.5", "0", "0.5", "1", "2"];
const GEN_DENSITIES: [&str; 8] =
    ["H", "sign", "abs", "expabs", "lorentz", "sinfn", "cosfn", "gaussfn"];
const GEN_SCALARS: [&str; 5] = ["2", "0.5", "2i", "(1+2i)", "-1"];

/// Random well-formed distribution expression of depth ≤ `depth`.
/// `ft_left` caps the total transform nodes (the wrapper nesting invariant
/// allows two) and `d_left` caps the cumulative derivative order.
fn gen_expr(rng: &mut ChaCha8Rng, depth: usize, ft_left: &mut i32, d_left: &mut i32) -> String {
    let leaf = depth == 0 || rng.gen_range(0..10) < 3;
    if leaf {
        return match rng.gen_range(0..4) {
            0 => format!("delta({})", GEN_LOCATIONS[rng.gen_range(0..GEN_LOCATIONS.len())]),
            1 => format!("regular({})", GEN_DENSITIES[rng.gen_range(0..GEN_DENSITIES.len())]),
            2 => format!("mono({})", rng.gen_range(0..4)),
            _ => "poly(1,-0.5,2i)".to_string(),
        };
    }
    match rng.gen_range(0..6) {
        0 if *d_left >= 1 => {
            *d_left -= 1;
            format!("D({})", gen_expr(rng, depth - 1, ft_left, d_left))
        }
        1 if *d_left >= 2 => {
            *d_left -= 2;
            format!("D^2({})", gen_expr(rng, depth - 1, ft_left, d_left))
        }
        2 if *ft_left >= 1 => {
            *ft_left -= 1;
            format!("FT({})", gen_expr(rng, depth - 1, ft_left, d_left))
        }
        3 => format!(
            "translate({}, {})",
            gen_expr(rng, depth - 1, ft_left, d_left),
            GEN_LOCATIONS[rng.gen_range(0..GEN_LOCATIONS.len())]
        ),
        4 => format!(
            "{} + {}",
            gen_expr(rng, depth - 1, ft_left, d_left),
            gen_expr(rng, depth - 1, ft_left, d_left)
        ),
        _ => format!(
            "{}*({})",
            GEN_SCALARS[rng.gen_range(0..GEN_SCALARS.len())],
            gen_expr(rng, depth - 1, ft_left, d_left)
        ),
    }
}

#[test]
fn criterion_14_hundred_random_expressions_round_trip() {
    // format → parse → elaborate is the identity on canonical forms.
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xD157CA1C);
    let mut failures = 0usize;
    for i in 0..100 {
        let (mut ft_left, mut d_left) = (2i32, 12i32);
        let text = gen_expr(&mut rng, 5, &mut ft_left, &mut d_left);
        let once = as_distribution(&parse(&text).unwrap())
            .unwrap_or_else(|e| panic!("expression {i} `{text}` failed to elaborate: {e}"));
        let printed = format_dist(&once);
        let again = as_distribution(&parse(&printed).unwrap())
            .unwrap_or_else(|e| panic!("printed form {i} `{printed}` failed to reparse: {e}"));
        if once != again {
            failures += 1;
            eprintln!("round-trip mismatch for `{text}` → `{printed}`");
        }
    }
    finish(
        14,
        failures == 0,
        &format!("100 random expressions, {failures} round-trip failures"),
        t0,
        1.0,
    );
}
