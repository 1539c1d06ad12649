//! Property tests: ring axioms and canonical-form invariants of the exact
//! field ring, plus a randomized quadrature-oracle battery for the closed
//! form of the 3D integral.

use ncqm::exact::{CRat, Rat};
use ncqm::quad::quad_r3;
use ncqm::symfield::{ScalarField, TermKey};
use num::Zero;
use proptest::prelude::*;

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

// small random field c * x^a * r^rad * exp(-beta r^2); degrees and
// coefficients stay tiny so exact arithmetic dominates nothing
fn field() -> impl Strategy<Value = ScalarField> {
    prop::collection::vec(
        (
            prop::collection::vec(0u32..=2, 3),
            -1i64..=2,
            -4i64..=4,
            1i64..=3,
            0i64..=2,
        ),
        1..=4,
    )
    .prop_map(|terms| {
        ScalarField::from_terms(
            3,
            terms.into_iter().map(|(mono, rad, num, den, beta)| {
                (
                    TermKey { mono, rad, gauss: rat(beta, 1), expo: Rat::zero() },
                    CRat::from_ratio(num, den),
                )
            }),
        )
    })
}

// integrable variant: strictly positive Gaussian rate and no radial
// singularity worse than 1/r^2 at the origin
fn integrable_field() -> impl Strategy<Value = ScalarField> {
    prop::collection::vec(
        (
            prop::collection::vec(0u32..=2, 3),
            0i64..=2,
            -4i64..=4,
            1i64..=3,
            1i64..=3,
        ),
        1..=4,
    )
    .prop_map(|terms| {
        ScalarField::from_terms(
            3,
            terms.into_iter().map(|(mono, rad, num, den, beta)| {
                (
                    TermKey { mono, rad, gauss: rat(beta, 2), expo: Rat::zero() },
                    CRat::from_ratio(num, den),
                )
            }),
        )
    })
}

fn point() -> impl Strategy<Value = [f64; 3]> {
    [0.3f64..1.4, 0.3f64..1.4, 0.3f64..1.4]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn mul_commutes(f in field(), g in field()) {
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
    }

    #[test]
    fn mul_associates(f in field(), g in field(), h in field()) {
        let lhs = f.mul(&g).unwrap().mul(&h).unwrap();
        let rhs = f.mul(&g.mul(&h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mul_distributes(f in field(), g in field(), h in field()) {
        let lhs = f.mul(&g.add(&h).unwrap()).unwrap();
        let rhs = f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn canonical_form_cancels(f in field(), g in field()) {
        prop_assert!(f.sub(&f).unwrap().is_zero());
        prop_assert_eq!(f.add(&g).unwrap().sub(&g).unwrap(), f);
    }

    #[test]
    fn mixed_partials_commute(f in field(), i in 0usize..3, j in 0usize..3) {
        prop_assert_eq!(f.partial(i).partial(j), f.partial(j).partial(i));
    }

    #[test]
    fn leibniz_rule(f in field(), g in field(), i in 0usize..3) {
        let lhs = f.mul(&g).unwrap().partial(i);
        let rhs = f.partial(i).mul(&g).unwrap().add(&f.mul(&g.partial(i)).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluate_is_multiplicative(f in field(), g in field(), p in point()) {
        let vf = f.evaluate(&p).unwrap();
        let vg = g.evaluate(&p).unwrap();
        let vfg = f.mul(&g).unwrap().evaluate(&p).unwrap();
        let scale = 1.0 + vf.norm() * vg.norm();
        prop_assert!((vfg - vf * vg).norm() <= 1e-9 * scale);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_form_integral_matches_quadrature(f in integrable_field()) {
        // random coefficients may cancel to the zero field, which has no
        // envelope for the numeric oracle to scale by
        prop_assume!(!f.is_zero());
        let exact = f.integrate_r3().unwrap().to_c64();
        // the ring is closed under conj, so the real part battery suffices
        let numeric = quad_r3(&f).unwrap();
        let scale = 1.0 + exact.re.abs();
        prop_assert!(
            (numeric - exact.re).abs() <= 1e-8 * scale,
            "exact {} vs quadrature {}", exact.re, numeric
        );
    }
}
