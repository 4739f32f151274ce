use lucid_core::algebra::{rat, ratio, Rational, RationalFunction};
use lucid_core::lucas::*;
use num_bigint::BigInt;
use proptest::prelude::*;

fn u(k: i64) -> RationalFunction {
    lucas_symbolic(LucasKind::U, k)
}

fn v(k: i64) -> RationalFunction {
    lucas_symbolic(LucasKind::V, k)
}

fn pq() -> (RationalFunction, RationalFunction) {
    (RationalFunction::var("P"), RationalFunction::var("Q"))
}

fn q_pow(k: i64) -> RationalFunction {
    RationalFunction::var("Q").powi(k).unwrap()
}

fn params(p: Rational, q: Rational) -> SequenceParams<Rational> {
    SequenceParams::new(p, q)
}

// Plain forward/backward recurrence with arbitrary initial values.
fn recurrence(p: &Rational, q: &Rational, f0: Rational, f1: Rational, k: i64) -> Rational {
    let (mut a, mut b) = (f0, f1);
    if k >= 0 {
        for _ in 0..k {
            let c = p * &b - q * &a;
            a = b;
            b = c;
        }
    } else {
        for _ in 0..-k {
            // f_{j-1} = (P f_j - f_{j+1}) / Q
            let prev = (p * &a - &b) / q;
            b = a;
            a = prev;
        }
    }
    a
}

fn poly_text(f: &RationalFunction) -> String {
    f.to_string()
}

#[test]
fn symbolic_examples() {
    assert_eq!(poly_text(&u(3)), "P^2 - Q");
    assert_eq!(poly_text(&u(-3)), "-(P^2 - Q)/Q^3");
    assert_eq!(v(0), RationalFunction::int(2));
    assert_eq!(poly_text(&u(6)), "P^5 - 4*P^3*Q + 3*P*Q^2");
}

#[test]
fn numeric_examples() {
    let fib = SequenceParams::fibonacci();
    let want = (recurrence(&rat(1), &rat(-1), rat(0), rat(1), 10), recurrence(&rat(1), &rat(-1), rat(0), rat(1), 11));
    assert_eq!(want, (rat(55), rat(89)));
    for m in Method::ALL {
        let pair = lucas_numeric(&fib, 10, m).unwrap();
        assert_eq!((pair.u_k, pair.u_k1), want.clone());
        let pair = lucas_numeric(&params(rat(2), rat(1)), 6, m).unwrap();
        assert_eq!((pair.u_k, pair.u_k1), (rat(6), rat(7)));
        let pair = lucas_numeric(&params(ratio(3, 7), ratio(-5, 2)), 0, m).unwrap();
        assert_eq!((pair.u_k, pair.u_k1), (rat(0), rat(1)));
    }
    assert!(matches!(lucas_numeric(&params(rat(1), rat(0)), -1, Method::Doubling), Err(LucasError::SingularParameter(_))));
}

#[test]
fn v_from_u_examples() {
    let (p, q) = pq();
    let sym = SequenceParams::new(p.clone(), q.clone());
    let pair = pair_field(&p, &q, 1, Method::Doubling).unwrap();
    assert_eq!(v_from_u(&pair, &sym), p);
    let pair = pair_field(&p, &q, 0, Method::Doubling).unwrap();
    assert_eq!(v_from_u(&pair, &sym), RationalFunction::int(2));
    let fib = SequenceParams::fibonacci();
    let l4 = recurrence(&rat(1), &rat(-1), rat(2), rat(1), 4);
    assert_eq!(l4, rat(7));
    assert_eq!(v_from_u(&lucas_numeric(&fib, 4, Method::Iterative).unwrap(), &fib), l4);
    for k in -8..=8 {
        let pair = pair_field(&p, &q, k, Method::Doubling).unwrap();
        assert_eq!(v_from_u(&pair, &sym), v(k), "k = {k}");
    }
}

#[test]
fn matrix_examples() {
    let (p, q) = pq();
    let one = RationalFunction::one();
    let zero = RationalFunction::zero();
    assert_eq!(matrix_power(Companion::M, 1), Mat2::new(p.clone(), -&q, one.clone(), zero.clone()));
    assert_eq!(matrix_power(Companion::M, 0), Mat2::identity());
    // A = [[0, -Q], [1, -P]]; A·A multiplied out entry by entry.
    let a = Mat2::symbolic(Companion::A);
    let e = |i: usize, j: usize| {
        &(a.entry(i, 0) * a.entry(0, j)) + &(a.entry(i, 1) * a.entry(1, j))
    };
    let by_hand = Mat2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1));
    let expect = Mat2::new(-&q, &p * &q, -&p, &(&p * &p) - &q);
    assert_eq!(by_hand, expect);
    assert_eq!(matrix_power(Companion::A, 2), expect);
}

#[test]
fn matrix_closed_forms() {
    let q = RationalFunction::var("Q");
    let a = Mat2::symbolic(Companion::A);
    for k in -6..=6i64 {
        let m = matrix_power(Companion::M, k);
        let expect = Mat2::new(u(k + 1), -&(&q * &u(k)), u(k), -&(&q * &u(k - 1)));
        assert_eq!(m, expect, "M^{k}");
        // M^k = U_{k+1} I + U_k A
        let e = |i: usize, j: usize| {
            let id = if i == j { u(k + 1) } else { RationalFunction::zero() };
            &id + &(&u(k) * a.entry(i, j))
        };
        assert_eq!(m, Mat2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1)), "M^{k} via A");
    }
    for m in 1..=6i64 {
        // A^m has U_m(-P, Q) entries: lower-left (-1)^{m+1} U_m
        let sign = if m % 2 == 1 { RationalFunction::one() } else { -&RationalFunction::one() };
        assert_eq!(*matrix_power(Companion::A, m).entry(1, 0), &sign * &u(m), "A^{m}");
    }
}

#[test]
fn horadam_examples() {
    let fib_like = HoradamParams { a0: rat(0), a1: rat(1), p0: rat(1), p1: rat(1) };
    let oracle = recurrence(&rat(1), &rat(-1), rat(0), rat(1), 10);
    assert_eq!(horadam(&fib_like, 10).unwrap(), oracle);
    let h = HoradamParams { a0: ratio(3, 2), a1: rat(-4), p0: ratio(1, 3), p1: rat(5) };
    assert_eq!(horadam(&h, 0).unwrap(), ratio(3, 2));
    for k in -10..=10 {
        assert_eq!(horadam(&h, k).unwrap(), horadam_recurrence(&h, k).unwrap(), "k = {k}");
    }
    let (p, q) = pq();
    let sym = HoradamParams { a0: RationalFunction::one(), a1: RationalFunction::zero(), p0: p, p1: -&q };
    let w4 = horadam(&sym, 4).unwrap();
    assert_eq!(w4, -&(&q * &u(3)));
    assert_eq!(w4, horadam_recurrence(&sym, 4).unwrap());
}

#[test]
fn addition_formula() {
    let q = RationalFunction::var("Q");
    for n in -8..=8 {
        for m in -8..=8 {
            let rhs = &(&u(n) * &u(m + 1)) - &(&(&q * &u(m)) * &u(n - 1));
            assert_eq!(u(n + m), rhs, "n = {n}, m = {m}");
        }
    }
}

#[test]
fn negative_index_law() {
    for k in 0..=25 {
        assert_eq!(u(-k), -&(&u(k) * &q_pow(-k)), "U at -{k}");
        assert_eq!(v(-k), &v(k) * &q_pow(-k), "V at -{k}");
    }
}

#[test]
fn trace_of_powers() {
    for m in 1..=4 {
        for k in -4..=4 {
            assert_eq!(matrix_power(Companion::M, m * k).trace(), v(m * k), "m = {m}, k = {k}");
        }
    }
}

#[test]
fn sign_rule() {
    let neg_p = |name: &str| (name == "P").then(|| -&RationalFunction::var("P"));
    for k in -12..=12i64 {
        let flipped = u(k).compose(&neg_p).unwrap();
        let sign = if (k + 1).rem_euclid(2) == 0 { RationalFunction::one() } else { -&RationalFunction::one() };
        assert_eq!(flipped, &sign * &u(k), "k = {k}");
        // R^m carries U_m(-P, Q) in the same position as M^m carries U_m.
        let r = matrix_power(Companion::R, k);
        let a = matrix_power(Companion::A, k);
        assert_eq!(a.entry(1, 0), &flipped, "A^{k}");
        assert_eq!(r.entry(1, 0).compose(&neg_p).unwrap(), *a.entry(1, 0));
    }
}

#[test]
fn determinant_of_powers() {
    for k in -8..=8 {
        assert_eq!(matrix_power(Companion::M, k).det(), q_pow(k), "k = {k}");
    }
}

#[test]
fn recurrence_consistency_of_pairs() {
    let pr = params(ratio(5, 3), ratio(-2, 7));
    for k in -20..=20 {
        let prev = lucas_numeric(&pr, k - 1, Method::Doubling).unwrap().u_k;
        assert!(lucas_numeric(&pr, k, Method::Doubling).unwrap().is_consistent_with(&prev, &pr));
    }
}

#[test]
fn big_fibonacci_matches_iteration() {
    let fib = SequenceParams::fibonacci();
    let d = lucas_numeric(&fib, 5000, Method::Doubling).unwrap();
    let (mut a, mut b) = (BigInt::from(0), BigInt::from(1));
    for _ in 0..5000 {
        let c = &a + &b;
        a = b;
        b = c;
    }
    assert_eq!(d.u_k, Rational::from_integer(a));
    assert_eq!(d.u_k1, Rational::from_integer(b));
}

fn arb_rational() -> impl Strategy<Value = Rational> {
    ((-9..=9i64), (1..=9i64)).prop_map(|(n, d)| ratio(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn methods_agree_on_random_parameters(p in arb_rational(), q in arb_rational(), k in -1000..=1000i64) {
        prop_assume!(q != rat(0));
        let pr = params(p, q);
        let d = lucas_numeric(&pr, k, Method::Doubling).unwrap();
        prop_assert_eq!(&d, &lucas_numeric(&pr, k, Method::Iterative).unwrap());
        prop_assert_eq!(&d, &lucas_numeric(&pr, k, Method::Matrix).unwrap());
    }

    #[test]
    fn numeric_matches_symbolic(p in arb_rational(), q in arb_rational(), k in -30..=30i64) {
        prop_assume!(q != rat(0));
        let env = |name: &str| match name { "P" => Some(p.clone()), "Q" => Some(q.clone()), _ => None };
        let pr = params(p.clone(), q.clone());
        prop_assert_eq!(lucas_value(LucasKind::U, &pr, k).unwrap(), u(k).evaluate(&env).unwrap());
        prop_assert_eq!(lucas_value(LucasKind::V, &pr, k).unwrap(), v(k).evaluate(&env).unwrap());
        prop_assert_eq!(lucas_value(LucasKind::U, &pr, k).unwrap(), recurrence(&p, &q, rat(0), rat(1), k));
    }
}
