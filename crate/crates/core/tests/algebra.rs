use lucid_core::algebra::{poly_gcd, rat, ratio, AlgebraError, LaurentPoly, Rational, RationalFunction, VarSet};
use proptest::prelude::*;

fn vars() -> VarSet {
    VarSet::new(["P", "Q"])
}

fn poly(terms: &[(i32, i32, i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(vars(), terms.iter().map(|&(a, b, c)| (vec![a, b], rat(c))))
}

fn p() -> LaurentPoly {
    LaurentPoly::var("P")
}

fn q() -> LaurentPoly {
    LaurentPoly::var("Q")
}

fn rf(n: LaurentPoly, d: LaurentPoly) -> RationalFunction {
    RationalFunction::new(n, d).unwrap()
}

fn at(pv: Rational, qv: Rational) -> impl Fn(&str) -> Option<Rational> {
    move |v| match v {
        "P" => Some(pv.clone()),
        "Q" => Some(qv.clone()),
        _ => None,
    }
}

// Fibonacci numbers by the plain recurrence.
fn fib(k: usize) -> i64 {
    let (mut a, mut b) = (0i64, 1i64);
    for _ in 0..k {
        let c = a + b;
        a = b;
        b = c;
    }
    a
}

#[test]
fn polynomial_examples() {
    assert_eq!(&(&p() + &q()) * &(&p() - &q()), poly(&[(2, 0, 1), (0, 2, -1)]));
    let base = poly(&[(2, 0, 1), (0, 1, -1)]);
    assert!(base.pow(0).unwrap().is_one());
    let u6 = &p() * &poly(&[(4, 0, 1), (2, 1, -4), (0, 2, 3)]);
    assert_eq!(u6, poly(&[(5, 0, 1), (3, 1, -4), (1, 2, 3)]));
    assert!(matches!(base.pow(-1), Err(AlgebraError::UnsupportedOperation(_))));
}

#[test]
fn gcd_examples() {
    // Oracle: P^2 Q - Q^2 = Q (P^2 - Q) and P Q share exactly the factor Q.
    let a = poly(&[(2, 1, 1), (0, 2, -1)]);
    let b = poly(&[(1, 1, 1)]);
    let by_hand = &q() * &poly(&[(2, 0, 1), (0, 1, -1)]);
    assert_eq!(a, by_hand);
    assert_eq!(poly_gcd(&a, &b), q());
    assert!(poly_gcd(&poly(&[(2, 0, 1), (0, 1, -1)]), &LaurentPoly::int(1)).is_one());
    assert!(poly_gcd(&LaurentPoly::zero(), &LaurentPoly::zero()).is_zero());
}

#[test]
fn rational_function_examples() {
    let p2 = &RationalFunction::from_poly(&p() * &p());
    let qq = RationalFunction::var("Q");
    let c1 = (&(&qq * &qq)).div(p2).unwrap();
    let d = RationalFunction::from_poly(poly(&[(2, 0, 1), (0, 1, -1)]));
    let c2 = (&(&d * &d)).div(p2).unwrap();
    assert_eq!(&c1 + &(&c2 - &c2), c1);
    assert_eq!(c1.to_string(), "Q^2/P^2");

    let x = rf(poly(&[(2, 0, 1), (0, 1, -1)]), poly(&[(0, 3, 1)]));
    assert!((&x * &x.inv().unwrap()).is_one());

    // Oracle: divide numerator and denominator by the gcd Q by hand.
    let num = poly(&[(2, 1, 1), (0, 2, -1)]);
    let den = poly(&[(1, 1, 1)]);
    let g = poly_gcd(&num, &den);
    let expect = rf(num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap());
    let got = rf(num, den);
    assert_eq!(got, expect);
    assert_eq!(got.to_string(), "(P^2 - Q)/P");

    assert_eq!(c1.div(&RationalFunction::zero()), Err(AlgebraError::DivideByZero));
}

#[test]
fn evaluation_examples() {
    let u3 = RationalFunction::from_poly(poly(&[(2, 0, 1), (0, 1, -1)]));
    assert_eq!(u3.evaluate(&at(rat(1), rat(-1))).unwrap(), rat(fib(3)));
    let det = rf(poly(&[(2, 0, 2)]), poly(&[(0, 4, 1)]));
    // 2 * 2^2 / 1^4
    assert_eq!(det.evaluate(&at(rat(2), rat(1))).unwrap(), rat(2 * 2 * 2));
    let e = u3.inv().unwrap().evaluate(&at(rat(1), rat(1)));
    assert_eq!(e, Err(AlgebraError::Singularity { factor: "P^2 - Q".into() }));
}

fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((0..=2i32, 0..=2i32, -4..=4i64), 0..5).prop_map(|t| poly(&t))
}

fn arb_nonzero_poly() -> impl Strategy<Value = LaurentPoly> {
    arb_poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn arb_rf() -> impl Strategy<Value = RationalFunction> {
    (arb_poly(), arb_nonzero_poly()).prop_map(|(n, d)| rf(n, d))
}

fn arb_point() -> impl Strategy<Value = (Rational, Rational)> {
    ((-9..=9i64), (1..=9i64), (-9..=9i64), (1..=9i64)).prop_map(|(a, b, c, d)| (ratio(a, b), ratio(c, d)))
}

// Every polynomial c0 + c1 P + c2 Q with coefficients in {-1, 0, 1}, plus P Q.
fn small_divisors() -> Vec<LaurentPoly> {
    let mut out = vec![poly(&[(1, 1, 1)]), poly(&[(2, 0, 1), (0, 1, -1)]), poly(&[(2, 0, 1), (0, 1, 1)])];
    for c0 in -1..=1 {
        for c1 in -1..=1 {
            for c2 in -1..=1 {
                let d = poly(&[(0, 0, c0), (1, 0, c1), (0, 1, c2)]);
                if !d.is_zero() && !d.is_constant() {
                    out.push(d);
                }
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn poly_ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a + &(-&a)).is_zero());
        prop_assert_eq!(a.pow(3).unwrap(), &(&a * &a) * &a);
    }

    #[test]
    fn field_laws(a in arb_rf(), b in arb_rf(), c in arb_rf()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a + &(-&a)).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn canonical_form_is_idempotent(a in arb_rf()) {
        let again = RationalFunction::new(a.numer().clone(), a.denom().clone()).unwrap();
        prop_assert_eq!(&again, &a);
        prop_assert_eq!(again.to_string(), a.to_string());
        prop_assert!(a.denom().leading_coefficient().map_or(false, |c| *c > rat(0)));
    }

    #[test]
    fn gcd_divides_and_is_greatest(g in arb_nonzero_poly(), x in arb_nonzero_poly(), y in arb_nonzero_poly()) {
        let a = &g * &x;
        let b = &g * &y;
        let d = poly_gcd(&a, &b);
        prop_assert!(a.div_exact(&d).is_some());
        prop_assert!(b.div_exact(&d).is_some());
        prop_assert!(d.div_exact(&g).is_some(), "gcd {} misses common factor {}", d, g);
        for t in small_divisors() {
            if a.div_exact(&t).is_some() && b.div_exact(&t).is_some() {
                prop_assert!(d.div_exact(&t).is_some(), "gcd {} misses trial divisor {}", d, t);
            }
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in arb_rf(), b in arb_rf(), (pv, qv) in arb_point()) {
        let env = at(pv, qv);
        let (Ok(x), Ok(y)) = (a.evaluate(&env), b.evaluate(&env)) else { return Ok(()); };
        prop_assert_eq!((&a + &b).evaluate(&env).unwrap(), &x + &y);
        prop_assert_eq!((&a - &b).evaluate(&env).unwrap(), &x - &y);
        prop_assert_eq!((&a * &b).evaluate(&env).unwrap(), &x * &y);
        if let Ok(z) = a.div(&b).and_then(|r| r.evaluate(&env)) {
            if y != rat(0) {
                prop_assert_eq!(z, &x / &y);
            }
        }
    }
}
