use num_bigint::BigInt;
use proptest::prelude::*;
use qtopo::cyclotomic::{cyclo_reduce, cyclotomic_polynomial, CyclotomicInteger};
use qtopo::habiro::{q_pochhammer, HabiroElement};
use qtopo::poly::IntPoly;

fn poly(c: &[i64]) -> IntPoly {
    IntPoly::from_i64(c)
}

#[test]
fn small_cyclotomic_polynomials() {
    assert_eq!(cyclotomic_polynomial(1).unwrap().poly(), &poly(&[-1, 1]));
    assert_eq!(cyclotomic_polynomial(2).unwrap().poly(), &poly(&[1, 1]));
    // q^4 - 1 divided by (q - 1)(q + 1).
    let oracle = poly(&[-1, 0, 0, 0, 1]).exact_div(&poly(&[-1, 0, 1])).unwrap();
    assert_eq!(cyclotomic_polynomial(4).unwrap().poly(), &oracle);
}

#[test]
fn reductions_at_roots() {
    assert_eq!(cyclo_reduce(&poly(&[0, 0, 1]), 4).unwrap().to_string(), "-1");
    assert_eq!(cyclo_reduce(&poly(&[0, 1]), 1).unwrap().to_string(), "1");
    assert!(cyclo_reduce(&poly(&[0, 1, 0, 1]), 4).unwrap().is_zero());
    assert_eq!(cyclo_reduce(&poly(&[0, 1]), 4).unwrap(), CyclotomicInteger::xi(4).unwrap());
}

#[test]
fn factorial_series_representatives() {
    let one = HabiroElement::from_factorial_series(&[poly(&[1])], 5).unwrap();
    assert_eq!(one, HabiroElement::one(5));
    let h = HabiroElement::from_factorial_series(&[poly(&[0]), poly(&[1])], 5).unwrap();
    assert_eq!(h.representative(), &poly(&[1, -1]));
    // 1 + q(1-q) + q^2(1-q)(1-q^2), expanded by hand.
    let x = HabiroElement::from_factorial_series(&[poly(&[1]), poly(&[0, 1]), poly(&[0, 0, 1])], 5).unwrap();
    let expected = &poly(&[1, 1, -1]) + &poly(&[0, 0, 1, -1, -1, 1]);
    assert_eq!(x, HabiroElement::from_poly(&expected, 5));
}

#[test]
fn modulus_reduces_to_zero() {
    assert!(HabiroElement::from_poly(&q_pochhammer(6), 5).is_zero());
    let h = HabiroElement::from_poly(&poly(&[1, -1]), 5);
    assert_eq!(h.mul(&h).unwrap().representative(), &poly(&[1, -2, 1]));
}

#[test]
fn taylor_examples() {
    let series = |p: &[i64]| HabiroElement::from_poly(&poly(p), 5).taylor_at_one().to_string();
    assert_eq!(series(&[1]), "1,0,0,0,0,0");
    assert_eq!(series(&[0, 1]), "1,-1,0,0,0,0");
    // (1-q)(1-q^2)
    assert_eq!(series(&[1, -1, -1, 1]), "0,0,2,-1,0,0");
}

#[test]
fn unit_at_high_order() {
    let one = HabiroElement::one(6);
    assert_eq!(one.evaluate_at_root(7).unwrap().to_string(), "1");
    assert!(HabiroElement::one(5).evaluate_at_root(7).is_err());
}

fn small_poly() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-5i64..=5, 0..8).prop_map(|c| IntPoly::from_i64(&c))
}

proptest! {
    #[test]
    fn evaluation_is_a_ring_map(a in small_poly(), b in small_poly(), n in 1usize..=6) {
        let (x, y) = (HabiroElement::from_poly(&a, 5), HabiroElement::from_poly(&b, 5));
        let ev = |z: &HabiroElement| z.evaluate_at_root(n).unwrap();
        prop_assert_eq!(ev(&x.add(&y).unwrap()), ev(&x).try_add(&ev(&y)).unwrap());
        prop_assert_eq!(ev(&x.mul(&y).unwrap()), ev(&x).try_mul(&ev(&y)).unwrap());
    }

    #[test]
    fn pochhammer_vanishes_below_its_length(k in 1usize..=5, n in 1usize..=5) {
        prop_assume!(n <= k);
        let p = HabiroElement::from_poly(&q_pochhammer(k), 5);
        prop_assert!(p.evaluate_at_root(n).unwrap().is_zero());
        let t = p.taylor_at_one();
        prop_assert!(t.coefficients()[..k].iter().all(|c| *c == BigInt::from(0)));
    }
}
