mod common;

use bmnet::scalar::{parse_expr, Assignment, PolyScalar, Rational, Value};
use common::poly;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=7).prop_map(|(n, d)| Rational::ratio(n, d))
}

fn assignment() -> impl Strategy<Value = Assignment> {
    prop::collection::vec(rational(), 4).prop_map(|vals| {
        ["a", "b", "c", "d"].iter().zip(vals).fold(Assignment::new(), |acc, (n, v)| acc.with(*n, v))
    })
}

fn exact(p: &PolyScalar, a: &Assignment) -> Rational {
    match p.eval(a).unwrap() {
        Value::Exact(r) => r,
        Value::Float(x) => panic!("float result {x}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(x in poly(), y in poly(), z in poly()) {
        let zero = PolyScalar::zero();
        let one = PolyScalar::one();
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &zero, x.clone());
        prop_assert_eq!(&x * &one, x.clone());
        prop_assert!((&x * &zero).is_zero());
        prop_assert!((&x - &x).is_zero());
        prop_assert_eq!(&x + &(-&x), zero);
    }

    #[test]
    fn evaluation_is_a_homomorphism(x in poly(), y in poly(), z in poly(), a in assignment()) {
        let lhs = exact(&(&(&x * &y) + &z), &a);
        let rhs = &(&exact(&x, &a) * &exact(&y, &a)) + &exact(&z, &a);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn serialization_round_trip(x in poly()) {
        let text = x.to_string();
        let back = parse_expr(&text).unwrap();
        prop_assert_eq!(&back, &x, "text {}", text);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn powers_agree_with_repeated_products(x in poly(), e in 0u32..4) {
        let repeated = (0..e).fold(PolyScalar::one(), |acc, _| &acc * &x);
        prop_assert_eq!(x.pow(e), repeated);
    }
}
