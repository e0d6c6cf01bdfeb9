mod common;

use std::cmp::Ordering;

use common::{component, state};
use num_bigint::BigInt;
use proptest::prelude::*;
use qreal::arith::operators::{add_via_operators, build_from_vacuum, mul_via_operators, sub_via_operators};
use qreal::arith::{
    abs_a, add_a, cmp_real, div_a, ell_inverse, ell_inverse_state, eq_a, leq_a_complex, leq_a_real, mul_a, negate,
    pred, shift, sub_a, succ, Accuracy, Part,
};
use qreal::oracle::brute_ell_inverse;
use qreal::state::is_canonical;
use qreal::{
    canonicalize, eigenvalue, format_compact, parse_compact, translate, DyadicComplex, LatticeSite, RealComponent,
    Sign, StringState,
};

fn positive_component(max_width: usize) -> impl Strategy<Value = RealComponent> {
    component(max_width).prop_filter("nonzero", |c| !c.is_zero()).prop_map(|c| RealComponent::new(Sign::Plus, c.digits))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn canonicalize_is_idempotent(s in state(20)) {
        let c = canonicalize(&s);
        prop_assert!(is_canonical(&c));
        prop_assert_eq!(canonicalize(&c), c.clone());
        prop_assert_eq!(eigenvalue(&c), eigenvalue(&s));
    }

    #[test]
    fn compact_text_round_trips(s in state(20)) {
        let text = format_compact(&s);
        let back = parse_compact(&text).unwrap();
        prop_assert_eq!(&back, &canonicalize(&s));
        prop_assert_eq!(format_compact(&back), text);
    }

    #[test]
    fn translation_keeps_value(s in state(12), m in -5i64..5, h in -5i64..5) {
        let t = translate(&s, LatticeSite::new(m, h));
        prop_assert!(eq_a(&t, &s));
        prop_assert_eq!(t.site, LatticeSite::new(m, h));
    }

    #[test]
    fn arithmetic_matches_the_oracle(a in state(24), b in state(24)) {
        let (va, vb) = (eigenvalue(&a), eigenvalue(&b));
        prop_assert_eq!(eigenvalue(&add_a(&a, &b)), &va + &vb);
        prop_assert_eq!(eigenvalue(&sub_a(&a, &b)), &va - &vb);
        prop_assert_eq!(eigenvalue(&mul_a(&a, &b)), &va * &vb);
    }

    #[test]
    fn results_are_canonical(a in state(16), b in state(16)) {
        prop_assert!(is_canonical(&add_a(&a, &b)));
        prop_assert!(is_canonical(&sub_a(&a, &b)));
        prop_assert!(is_canonical(&mul_a(&a, &b)));
    }

    #[test]
    fn succ_and_pred_are_inverse(c in component(16), e in -20i64..8) {
        let up = succ(&c, e);
        let (mag, scale) = c.digits.magnitude();
        let (up_mag, up_scale) = up.digits.magnitude();
        let two_e = DyadicComplex::pow2(e);
        prop_assert_eq!(
            DyadicComplex::real(up_mag, up_scale),
            &DyadicComplex::real(mag, scale) + &two_e
        );
        let down = pred(&up, e).unwrap();
        prop_assert_eq!(down.digits, c.canonical().digits);
    }

    #[test]
    fn shift_is_multiplication_by_a_power_of_two(s in state(16), k in -12i64..12) {
        prop_assert_eq!(eigenvalue(&shift(&s, k)), &eigenvalue(&s) * &DyadicComplex::pow2(k));
    }

    #[test]
    fn negation_and_absolute_value(s in state(16)) {
        let v = eigenvalue(&s);
        prop_assert_eq!(eigenvalue(&negate(&s, Part::Both)), -&v);
        prop_assert_eq!(eigenvalue(&negate(&s, Part::Real)), &(-&v.re()) + &(&v.im() * &DyadicComplex::i()));
        prop_assert_eq!(
            eigenvalue(&StringState::new(abs_a(&s.re), abs_a(&s.im), s.site)),
            v.abs_parts()
        );
    }

    #[test]
    fn order_is_coherent_with_values(a in component(12), b in component(12)) {
        let (va, vb) = (a.value(), b.value());
        prop_assert_eq!(cmp_real(&a, &b), va.cmp_re(&vb));
        prop_assert_eq!(leq_a_real(&a, &b), va.cmp_re(&vb) != Ordering::Greater);
        let (x, y) = (StringState::real(a.clone()), StringState::real(b.clone()));
        prop_assert_eq!(eq_a(&x, &y), va == vb);
    }

    #[test]
    fn complex_order_needs_agreement(a in state(10), b in state(10)) {
        let (va, vb) = (eigenvalue(&a), eigenvalue(&b));
        let (r, i) = (va.cmp_re(&vb), va.cmp_im(&vb));
        let expected = if r != Ordering::Greater && i != Ordering::Greater {
            Some(true)
        } else if r != Ordering::Less && i != Ordering::Less {
            Some(false)
        } else {
            None
        };
        prop_assert_eq!(leq_a_complex(&a, &b), expected);
    }

    #[test]
    fn inverse_contract_and_exhaustive_search(c in positive_component(10), ell in 1u32..14) {
        let acc = Accuracy::new(ell).unwrap();
        let inv = ell_inverse(&c, acc).unwrap();
        let product = &inv.value() * &c.value();
        let low = &DyadicComplex::one() - &DyadicComplex::pow2(-(ell as i64));
        prop_assert!(product.cmp_re(&low) != Ordering::Less);
        prop_assert!(product.cmp_re(&DyadicComplex::one()) != Ordering::Greater);
        prop_assert_eq!(brute_ell_inverse(&c.value(), ell, 14).unwrap(), inv.digits.canonical());
    }

    #[test]
    fn negative_divisors_keep_their_sign(c in positive_component(10), ell in 1u32..12) {
        let acc = Accuracy::new(ell).unwrap();
        let neg = StringState::real(RealComponent::new(Sign::Minus, c.digits.clone()));
        prop_assert!(ell_inverse(&neg.re, acc).is_err());
        let p = ell_inverse(&c, acc).unwrap();
        let n = ell_inverse_state(&neg, acc).unwrap();
        prop_assert_eq!(eigenvalue(&n), -&p.value());
    }

    #[test]
    fn complex_division_is_close(a in state(8), b in state(8), ell in 4u32..12) {
        prop_assume!(!b.is_zero());
        let acc = Accuracy::new(ell).unwrap();
        let q = div_a(&a, &b, acc).unwrap();
        let inv = ell_inverse_state(&b, acc).unwrap();
        prop_assert_eq!(eigenvalue(&q), &eigenvalue(&inv) * &eigenvalue(&a));
        // b * inv(b) = 1 - e with 0 <= e <= 2^-ell, real
        let r = &eigenvalue(&b) * &eigenvalue(&inv);
        prop_assert_eq!(r.im(), DyadicComplex::zero());
        let low = &DyadicComplex::one() - &DyadicComplex::pow2(-(ell as i64));
        prop_assert!(r.cmp_re(&low) != Ordering::Less && r.cmp_re(&DyadicComplex::one()) != Ordering::Greater);
    }

    #[test]
    fn operator_interpreter_agrees(a in positive_component(10), b in positive_component(10)) {
        let (x, y) = (&a.digits, &b.digits);
        prop_assert_eq!(build_from_vacuum(x), x.canonical());
        let sum = add_via_operators(x, y);
        prop_assert_eq!(&sum, &add_a(&StringState::real(a.clone()), &StringState::real(b.clone())).re.digits);
        let prod = mul_via_operators(x, y);
        prop_assert_eq!(&prod, &mul_a(&StringState::real(a.clone()), &StringState::real(b.clone())).re.digits);
        let diff = sub_via_operators(x, y);
        let exact = &a.value() - &b.value();
        match diff {
            Some(d) => prop_assert_eq!(RealComponent::new(Sign::Plus, d).value(), exact),
            None => prop_assert!(exact.cmp_re(&DyadicComplex::zero()) == Ordering::Less),
        }
    }

    #[test]
    fn oracle_is_a_commutative_ring(
        a in (-1000i64..1000, -1000i64..1000, 0u64..12),
        b in (-1000i64..1000, -1000i64..1000, 0u64..12),
        c in (-1000i64..1000, -1000i64..1000, 0u64..12),
    ) {
        let mk = |(r, i, s): (i64, i64, u64)| DyadicComplex::new(BigInt::from(r), BigInt::from(i), s);
        let (a, b, c) = (mk(a), mk(b), mk(c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a - &a, DyadicComplex::zero());
    }
}

#[test]
fn worked_products() {
    let x = parse_compact("110+1").unwrap();
    let y = parse_compact("10+1").unwrap();
    let p = mul_a(&x, &y);
    assert_eq!(format_compact(&p), "10000+01");
    assert_eq!(eigenvalue(&p).to_string(), "16.25");
    let i = parse_compact("0+;1+").unwrap();
    assert_eq!(format_compact(&mul_a(&i, &i)), "1-");
    let z = sub_a(&parse_compact("1+").unwrap(), &parse_compact("1+").unwrap());
    assert_eq!(format_compact(&z), "0+");
}

#[test]
fn small_inverses() {
    let one = parse_compact("1+").unwrap().re;
    let two = parse_compact("10+").unwrap().re;
    for ell in 1..12 {
        let acc = Accuracy::new(ell).unwrap();
        assert_eq!(format_compact(&StringState::real(ell_inverse(&one, acc).unwrap())), "1+");
        assert_eq!(format_compact(&StringState::real(ell_inverse(&two, acc).unwrap())), "0+1");
    }
    let i = parse_compact("0+;1+").unwrap();
    let inv = ell_inverse_state(&i, Accuracy::new(6).unwrap()).unwrap();
    assert_eq!(format_compact(&inv), "0+;1-");
}
