//! Degreewise ranks of tensor-algebra quotients against counting oracles.

mod common;

use proptest::prelude::*;

use spherepair::graded::Field;
use spherepair::tensor::{free_algebra_dims, graded_commutator, quotient_dims, AlgebraElement, Generator, Presentation};

use common::{polynomial_ring_dims, word_counts};

fn field() -> impl Strategy<Value = Field> {
    prop::sample::select(vec![Field::Rationals, Field::Prime(2), Field::Prime(3), Field::Prime(5)])
}

fn as_u64(s: &spherepair::graded::PowerSeries) -> Vec<u64> {
    s.to_i64_vec().unwrap().into_iter().map(|c| c as u64).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn free_algebra_counts_words(degrees in prop::collection::vec(1usize..5, 1..4)) {
        prop_assert_eq!(as_u64(&free_algebra_dims(&degrees, 14).unwrap()), word_counts(&degrees, 14));
    }

    #[test]
    fn no_relations_is_free(degrees in prop::collection::vec(1usize..4, 1..3), f in field()) {
        let gens: Vec<Generator> = degrees.iter().enumerate().map(|(i, d)| Generator::new(format!("x{i}"), *d)).collect();
        let p = Presentation::new(gens, vec![], f).unwrap();
        prop_assert_eq!(as_u64(&quotient_dims(&p, 12, None).unwrap()), word_counts(&degrees, 12));
    }

    /// `T(u, v)/([u, v])` has the PBW basis `u^i v^j` in every degree and
    /// characteristic, including odd generators.
    #[test]
    fn commutator_quotient_is_polynomial_sized(a in 1usize..5, b in 1usize..5, f in field()) {
        let u = Generator::new("u", a);
        let v = Generator::new("v", b);
        let r = graded_commutator(&u, &v);
        let p = Presentation::new(vec![u, v], vec![r], f).unwrap();
        prop_assert_eq!(as_u64(&quotient_dims(&p, 18, None).unwrap()), polynomial_ring_dims(&[a, b], 18));
    }

    #[test]
    fn relations_only_shrink(a in 1usize..4, b in 1usize..4, f in field()) {
        let u = Generator::new("u", a);
        let v = Generator::new("v", b);
        let gens = vec![u.clone(), v.clone()];
        let free = quotient_dims(&Presentation::new(gens.clone(), vec![], f).unwrap(), 12, None).unwrap();
        let one = Presentation::new(gens.clone(), vec![graded_commutator(&u, &v)], f).unwrap();
        let two = one.with_relation(AlgebraElement::parse("u*u", &gens).unwrap()).unwrap();
        let d1 = quotient_dims(&one, 12, None).unwrap();
        let d2 = quotient_dims(&two, 12, None).unwrap();
        for d in 0..=12 {
            prop_assert!(d2.coeff(d) <= d1.coeff(d) && d1.coeff(d) <= free.coeff(d));
        }
    }
}

#[test]
fn cap_is_a_resource_error() {
    let gens = vec![Generator::new("a", 1), Generator::new("b", 1), Generator::new("c", 1)];
    let p = Presentation::new(gens, vec![], Field::Rationals).unwrap();
    let err = quotient_dims(&p, 30, None).unwrap_err();
    assert_eq!(err.exit_code(), 4);
    assert!(quotient_dims(&p, 10, Some(10)).is_ok());
}

#[test]
fn characteristic_matters_for_integer_relations() {
    // u^2 = 2v makes v redundant over Q; over F_2 it becomes u^2 = 0 and
    // leaves uv, vu in degree 3.
    let gens = vec![Generator::new("u", 1), Generator::new("v", 2)];
    let rel = ["u*u - 2*v"];
    let q = quotient_dims(&Presentation::parse(gens.clone(), &rel, Field::Rationals).unwrap(), 6, None).unwrap();
    let f2 = quotient_dims(&Presentation::parse(gens, &rel, Field::Prime(2)).unwrap(), 6, None).unwrap();
    assert_eq!(q.coeff(3), &1.into());
    assert_eq!(f2.coeff(3), &2.into());
}
