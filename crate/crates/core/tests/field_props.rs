use std::cmp::Ordering;

use euclid_kernel::field::{
    FieldError, FieldValue, InfinitesimalValue, Model, OrderedField, Poly, Rational, TowerValue,
};
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..12).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn q() -> impl Strategy<Value = Rational> {
    rat()
}

/// `a + b*sqrt(r) + c*sqrt(s)` with small square-free radicands.
fn tower() -> impl Strategy<Value = TowerValue> {
    let radicand = prop::sample::select(vec![2i64, 3, 5, 6, 7]);
    (rat(), rat(), radicand.clone(), rat(), radicand).prop_map(|(a, b, r, c, s)| {
        let t = |q: Rational| TowerValue::from_rational(q);
        let sr = TowerValue::from_i64(r).sqrt().unwrap();
        let ss = TowerValue::from_i64(s).sqrt().unwrap();
        t(a) + t(b) * sr + t(c) * ss
    })
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(rat(), 0..4).prop_map(Poly::from_coeffs)
}

fn infinitesimal() -> impl Strategy<Value = InfinitesimalValue> {
    (poly(), poly()).prop_map(|(n, d)| {
        let d = if d.is_zero() { Poly::constant(Rational::from_integer(1.into())) } else { d };
        InfinitesimalValue::new(n, d)
    })
}

fn axioms<F: OrderedField>(a: F, b: F, c: F) {
    assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
    assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
    assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
    assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
    assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
    assert_eq!(a.clone() + F::zero(), a);
    assert_eq!(a.clone() * F::one(), a);
    assert!((a.clone() + -a.clone()).is_zero());
    if !a.is_zero() {
        assert_eq!(a.clone() * (F::one() / a.clone()), F::one());
    }
    // Order: totality, translation and product compatibility.
    let lt = a < b;
    assert_eq!(lt, a.clone() + c.clone() < b.clone() + c.clone());
    if a.is_positive() && b.is_positive() {
        assert!((a.clone() * b.clone()).is_positive());
    }
    assert_eq!(a.cmp(&b), (a.clone() - b.clone()).sign());
    if !a.is_zero() {
        assert!(a.square().is_positive());
    }
}

proptest! {
    #[test]
    fn rational_field_axioms(a in q(), b in q(), c in q()) {
        axioms(a, b, c);
    }

    #[test]
    fn infinitesimal_field_axioms(a in infinitesimal(), b in infinitesimal(), c in infinitesimal()) {
        axioms(a, b, c);
    }

    #[test]
    fn rational_roots_are_exact_or_absent(a in q()) {
        let sq = a.clone() * a.clone();
        prop_assert_eq!(sq.try_sqrt().unwrap(), Some(a.abs()));
        if let Some(r) = a.abs().try_sqrt().unwrap() {
            prop_assert_eq!(r.clone() * r, a.abs());
        }
    }

    #[test]
    fn infinitesimal_values_order_by_lowest_term(c in rat(), k in 1usize..4) {
        // c*eps^k lies below every positive rational, however small.
        let e = InfinitesimalValue::from_poly(Poly::monomial(c.clone(), k));
        let tiny = InfinitesimalValue::from_rational(Rational::new(1.into(), 1_000_000.into()));
        prop_assert!(e.abs() < tiny);
        prop_assert_eq!(e.valuation(), if c == Rational::from_integer(0.into()) { None } else { Some(k as i64) });
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tower_field_axioms(a in tower(), b in tower(), c in tower()) {
        axioms(a, b, c);
    }

    #[test]
    fn tower_square_roots(a in tower()) {
        let x = a.abs();
        let r = x.try_sqrt().unwrap().expect("tower is closed under roots");
        prop_assert!(!r.is_negative());
        prop_assert_eq!(r.clone() * r, x);
    }
}

#[test]
fn archimedean_contrast() {
    // Every positive rational is exceeded by some multiple of any other.
    let x = Rational::new(1.into(), 1000.into());
    let n = (1..=1000).find(|&n| Rational::from_integer(n.into()) * x.clone() >= Rational::from_integer(1.into()));
    assert_eq!(n, Some(1000));
    // No multiple of eps ever reaches 1.
    let eps = InfinitesimalValue::epsilon();
    for n in [1i64, 10, 1 << 20, 1 << 40, i64::MAX] {
        assert!(InfinitesimalValue::from_i64(n) * eps.clone() < InfinitesimalValue::one());
    }
    assert!(eps.is_negligible());
    assert!(eps.try_sqrt().unwrap().is_none());
}

#[test]
fn dynamic_values_refuse_to_mix() {
    let a = FieldValue::from_rational(Model::Rational, Rational::from_integer(1.into()));
    let b = FieldValue::from_rational(Model::Tower, Rational::from_integer(1.into()));
    assert_eq!(
        a.add(&b).unwrap_err(),
        FieldError::ModelMismatch { left: Model::Rational, right: Model::Tower }
    );
    assert_eq!(a.compare(&a).unwrap(), Ordering::Equal);
}
