//! Properties of the canonical sum representation: rebuilding from emitted
//! atoms changes nothing, exact negatives cancel to zero, and pairing is
//! additive across sums within certified error bounds.

use num_complex::Complex64;
use proptest::prelude::*;
use proptest::sample::select;

use distcalc_core::distribution::pair_with_error;
use distcalc_core::{Atom, CatalogFunction, Distribution, TestFunction};

fn coeff_strategy() -> impl Strategy<Value = Complex64> {
    // Dyadic parts keep scaling and merging float-exact.
    (
        select(&[-2.0, -1.0, -0.5, 0.5, 1.0, 2.0][..]),
        select(&[0.0, -0.5, 1.0][..]),
    )
        .prop_map(|(re, im)| Complex64::new(re, im))
}

fn density(i: usize) -> CatalogFunction {
    match i {
        0 => CatalogFunction::heaviside(),
        1 => CatalogFunction::sign(),
        2 => CatalogFunction::gaussfn(),
        _ => CatalogFunction::expabs(),
    }
}

fn atom_strategy() -> impl Strategy<Value = Atom> {
    prop_oneof![
        (coeff_strategy(), 0..3usize, select(&[-1.0, -0.5, 0.0, 0.5, 1.0][..])).prop_map(
            |(coeff, order, location)| Atom::Point {
                coeff,
                order,
                location,
            }
        ),
        (coeff_strategy(), 0..3usize, 0..4usize).prop_map(|(coeff, order, i)| Atom::Regular {
            coeff,
            order,
            f: density(i),
        }),
    ]
}

fn soup_strategy() -> impl Strategy<Value = Vec<Atom>> {
    prop::collection::vec(atom_strategy(), 0..5)
}

proptest! {
    #[test]
    fn canonicalization_is_idempotent(atoms in soup_strategy()) {
        let d = Distribution::from_atoms(atoms).unwrap();
        let again = Distribution::from_atoms(d.atoms().to_vec()).unwrap();
        prop_assert_eq!(&d, &again);
    }

    #[test]
    fn exact_negatives_cancel_to_zero(atoms in soup_strategy()) {
        let d = Distribution::from_atoms(atoms).unwrap();
        let cancelled = d.add(&d.scale(Complex64::new(-1.0, 0.0)));
        prop_assert!(cancelled.is_zero(), "left over: {:?}", cancelled.atoms());
    }
}

proptest! {
    // Each case runs up to three certified quadratures; keep the count low.
    #![proptest_config(ProptestConfig { cases: 32, ..ProptestConfig::default() })]
    #[test]
    fn pairing_is_additive_across_sums(
        a in soup_strategy(),
        b in soup_strategy(),
    ) {
        let tol = 1e-8;
        let phi = TestFunction::gauss(0.3);
        let d1 = Distribution::from_atoms(a).unwrap();
        let d2 = Distribution::from_atoms(b).unwrap();
        let (v1, e1) = pair_with_error(&d1, &phi, tol).unwrap();
        let (v2, e2) = pair_with_error(&d2, &phi, tol).unwrap();
        let (vs, es) = pair_with_error(&d1.add(&d2), &phi, tol).unwrap();
        let gap = (vs - (v1 + v2)).norm();
        prop_assert!(
            gap <= e1 + e2 + es + 1e-10,
            "gap {} exceeds certified {} + {} + {}",
            gap, e1, e2, es
        );
    }
}
