use hecke_core::hecke::{group_algebra_mul, specialize_q1};
use hecke_core::io::{export_element, import_element, BasisTag, Format};
use hecke_core::named::{elem_sym, murphy};
use hecke_core::{parse_element, AlgebraContext, Exec, HeckeElement, LaurentPoly, Permutation};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i32..=6, -5i64..=5), 0..4)
        .prop_map(|t| LaurentPoly::from_terms(t.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

fn element(n: usize, max_terms: usize) -> impl Strategy<Value = HeckeElement> {
    let perms = Permutation::all(n);
    let m = perms.len();
    prop::collection::vec((0..m, laurent()), 0..=max_terms)
        .prop_map(move |t| HeckeElement::from_terms(n, t.into_iter().map(|(i, c)| (perms[i].clone(), c))).unwrap())
}

fn eval_point() -> impl Strategy<Value = BigRational> {
    (1i64..=7, 1i64..=5, any::<bool>())
        .prop_map(|(a, b, neg)| BigRational::new(BigInt::from(if neg { -a } else { a }), BigInt::from(b)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, LaurentPoly::zero());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in laurent(), b in laurent(), v in eval_point()) {
        let ea = a.eval(&v).unwrap();
        let eb = b.eval(&v).unwrap();
        prop_assert_eq!((&a + &b).eval(&v).unwrap(), &ea + &eb);
        prop_assert_eq!((&a * &b).eval(&v).unwrap(), ea * eb);
    }

    #[test]
    fn exact_division_inverts_multiplication(a in laurent(), b in laurent()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn product_is_associative_n4(a in element(4, 4), b in element(4, 4), c in element(4, 4)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn product_distributes_n3(a in element(3, 4), b in element(3, 4), c in element(3, 4)) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn rho_is_multiplicative(a in element(4, 4), b in element(4, 4)) {
        prop_assert_eq!((&a * &b).apply_rho(), &a.apply_rho() * &b.apply_rho());
        prop_assert_eq!(a.apply_rho().apply_rho(), a);
    }

    #[test]
    fn q1_specialization_is_a_homomorphism(a in element(4, 4), b in element(4, 4)) {
        let lhs = specialize_q1(&(&a * &b));
        let rhs = group_algebra_mul(&specialize_q1(&a), &specialize_q1(&b)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn sequential_and_parallel_agree(a in element(5, 6), b in element(5, 6)) {
        prop_assert_eq!(a.mul_with(&b, Exec::Sequential).unwrap(), a.mul_with(&b, Exec::Parallel).unwrap());
    }

    #[test]
    fn normalized_basis_round_trip(a in element(4, 5)) {
        prop_assert_eq!(HeckeElement::from_normalized(&a.to_normalized()), a);
    }

    #[test]
    fn json_round_trip(a in element(4, 5), tilde in any::<bool>()) {
        let tag = if tilde { BasisTag::Ttilde } else { BasisTag::T };
        let bytes = export_element(&a, Format::Json(tag));
        prop_assert_eq!(import_element(&bytes).unwrap(), a);
    }

    #[test]
    fn central_elements_commute_with_random_elements(h in element(4, 4), i in 0usize..4) {
        let ctx = AlgebraContext::new(4).unwrap();
        let e = elem_sym(&ctx, i).unwrap();
        prop_assert_eq!(&e * &h, &h * &e);
        let l = murphy(&ctx, 3).unwrap();
        let l4 = murphy(&ctx, 4).unwrap();
        prop_assert_eq!(&(&l * &l4) * &h, &(&l4 * &l) * &h);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn text_round_trip(a in (1usize..=5).prop_flat_map(|n| element(n, 5))) {
        prop_assert_eq!(parse_element(&a.to_text(), a.degree()).unwrap(), a.clone());
        let bytes = export_element(&a, Format::Text);
        prop_assert_eq!(import_element(&bytes).unwrap(), a);
    }
}
