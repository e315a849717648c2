//! Series arithmetic and Künneth against independent oracles.

mod common;

use num_bigint::BigInt;
use proptest::prelude::*;

use spherepair::graded::{CoefficientRing, Field, PowerSeries};
use spherepair::space::{homology, poincare_series, SpaceExpr};

use common::{homology_text, CellComplex};

fn series(n: usize) -> impl Strategy<Value = PowerSeries> {
    prop::collection::vec(-20i64..20, n + 1).prop_map(move |c| PowerSeries::from_coeffs(c, n))
}

fn unit_series(n: usize) -> impl Strategy<Value = PowerSeries> {
    (prop::sample::select(vec![1i64, -1]), prop::collection::vec(-5i64..5, n)).prop_map(move |(c0, rest)| {
        PowerSeries::from_coeffs(std::iter::once(c0).chain(rest), n)
    })
}

/// A space with an explicit cell structure, and its expression.
fn cellular() -> impl Strategy<Value = (SpaceExpr, CellComplex)> {
    prop_oneof![
        (2usize..5).prop_map(|n| (SpaceExpr::Sphere(n as u32), CellComplex::sphere(n))),
        (3usize..5, 0i64..7).prop_map(|(n, k)| (SpaceExpr::Moore(n as u32, k), CellComplex::moore(n, k))),
    ]
}

proptest! {
    #[test]
    fn multiplication_is_commutative_and_associative(a in series(8), b in series(8), c in series(8)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn reciprocal_inverts_units(a in unit_series(10)) {
        let r = a.reciprocal().unwrap();
        prop_assert_eq!(&a * &r, PowerSeries::one(10));
    }

    #[test]
    fn shifts_cancel(a in series(8), k in 0usize..4) {
        let up = a.shift_up(k);
        prop_assert_eq!(up.shift_down(k).unwrap().truncate(8 - k), a.truncate(8 - k));
    }

    #[test]
    fn kunneth_matches_cellular_chains(x in cellular(), y in cellular()) {
        let e = SpaceExpr::product(x.0.clone(), y.0.clone());
        let h = homology(&e, &CoefficientRing::Integers, 10).unwrap();
        let oracle = homology_text(&x.1.product(&y.1).homology());
        prop_assert_eq!(h.to_string(), oracle, "{}", e);
    }

    #[test]
    fn universal_coefficients(x in cellular(), y in cellular(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let e = SpaceExpr::product(x.0, y.0);
        let integral = homology(&e, &CoefficientRing::Integers, 10).unwrap();
        let via_uct = integral.poincare_series(&CoefficientRing::PrimeField(p), 10).unwrap();
        prop_assert_eq!(via_uct, poincare_series(&e, Field::Prime(p), 10).unwrap());
    }
}

#[test]
fn geometric_series_coefficients() {
    let g = PowerSeries::geometric(3, 12);
    for d in 0..=12 {
        let want = if d % 3 == 0 { 1 } else { 0 };
        assert_eq!(g.coeff(d), &BigInt::from(want));
    }
}
