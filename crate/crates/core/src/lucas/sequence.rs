use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;

use super::matrix::Mat2;
use super::LucasError;
use crate::algebra::{ring::Field, LaurentPoly, Rational, RationalFunction, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LucasKind {
    U,
    V,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Doubling,
    Iterative,
    Matrix,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Doubling, Method::Iterative, Method::Matrix];

    pub fn name(self) -> &'static str {
        match self {
            Method::Doubling => "doubling",
            Method::Iterative => "iterative",
            Method::Matrix => "matrix",
        }
    }

    pub fn parse(s: &str) -> Option<Method> {
        Method::ALL.into_iter().find(|m| m.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SequenceParams<T> {
    pub p: T,
    pub q: T,
}

impl<T: Ring> SequenceParams<T> {
    pub fn new(p: T, q: T) -> Self {
        SequenceParams { p, q }
    }

    /// Δ = P² − 4Q.
    pub fn discriminant(&self) -> T {
        self.p.square().sub(&self.q.mul(&T::from_i64(4)))
    }

    pub fn p_is_zero(&self) -> bool {
        self.p.is_zero()
    }
}

impl SequenceParams<Rational> {
    pub fn fibonacci() -> Self {
        SequenceParams::new(Rational::one(), -Rational::one())
    }
}

/// Consecutive terms `(U_k, U_{k+1})`.
#[derive(Clone, Debug, PartialEq)]
pub struct LucasPair<T> {
    pub k: i64,
    pub u_k: T,
    pub u_k1: T,
}

impl<T: Ring> LucasPair<T> {
    /// One recurrence step forward.
    pub fn advance(&self, params: &SequenceParams<T>) -> LucasPair<T> {
        let next = params.p.mul(&self.u_k1).sub(&params.q.mul(&self.u_k));
        LucasPair { k: self.k + 1, u_k: self.u_k1.clone(), u_k1: next }
    }
}

/// `(U_k, U_{k+1})` for `k >= 0` over any commutative ring.
pub fn pair_nonneg<T: Ring>(p: &T, q: &T, k: u64, method: Method) -> (T, T) {
    match method {
        Method::Iterative => {
            let (mut a, mut b) = (T::zero(), T::one());
            for _ in 0..k {
                let c = p.mul(&b).sub(&q.mul(&a));
                a = b;
                b = c;
            }
            (a, b)
        }
        Method::Doubling => {
            let (mut a, mut b) = (T::zero(), T::one());
            if k == 0 {
                return (a, b);
            }
            for bit in (0..64 - k.leading_zeros()).rev() {
                // (U_j, U_{j+1}) -> (U_{2j}, U_{2j+1})
                let two_b = b.add(&b);
                let u2 = a.mul(&two_b.sub(&p.mul(&a)));
                let u2p1 = b.square().sub(&q.mul(&a.square()));
                if (k >> bit) & 1 == 1 {
                    let u2p2 = p.mul(&u2p1).sub(&q.mul(&u2));
                    a = u2p1;
                    b = u2p2;
                } else {
                    a = u2;
                    b = u2p1;
                }
            }
            (a, b)
        }
        Method::Matrix => {
            let m = Mat2::companion(p, q).pow(k);
            // M^k = [[U_{k+1}, -Q U_k], [U_k, -Q U_{k-1}]]
            let [[uk1, _], [uk, _]] = m.0;
            (uk, uk1)
        }
    }
}

/// `(U_k, U_{k+1})` for any integer `k` over a field, reflecting negative
/// indices through `U_{-j} = -U_j / Q^j`.
pub fn pair_field<T: Field>(p: &T, q: &T, k: i64, method: Method) -> Result<LucasPair<T>, LucasError> {
    if k >= 0 {
        let (u_k, u_k1) = pair_nonneg(p, q, k as u64, method);
        return Ok(LucasPair { k, u_k, u_k1 });
    }
    if q.is_zero() {
        return Err(LucasError::SingularParameter("Q = 0 with a negative index".into()));
    }
    let m = k.unsigned_abs() - 1;
    let (um, um1) = pair_nonneg(p, q, m, method);
    let qinv = q.inv().expect("nonzero Q");
    let qm = qinv.pow_u(m);
    let u_k = um1.mul(&qm).mul(&qinv).neg();
    let u_k1 = um.mul(&qm).neg();
    Ok(LucasPair { k, u_k, u_k1 })
}

/// Exact `(U_k, U_{k+1})` at rational parameters.
///
/// The parameters are scaled to integers first: with `r` the common
/// denominator, `U_k(P, Q) = U_k(rP, r²Q) / r^(k-1)`, so the heavy lifting is
/// plain big-integer arithmetic.
pub fn lucas_numeric(params: &SequenceParams<Rational>, k: i64, method: Method) -> Result<LucasPair<Rational>, LucasError> {
    if k < 0 && params.q.is_zero() {
        return Err(LucasError::SingularParameter("Q = 0 with a negative index".into()));
    }
    let r = params.p.denom().lcm(params.q.denom());
    let p_int = params.p.numer() * (&r / params.p.denom());
    let q_int = params.q.numer() * (&r * &r / params.q.denom());
    let scale = |x: BigInt, deg: i64| -> Rational {
        let rr = Rational::from_integer(r.clone());
        Rational::from_integer(x) / crate::algebra::rational::rational_pow(&rr, deg).unwrap()
    };
    if k >= 0 {
        let (a, b) = pair_nonneg(&p_int, &q_int, k as u64, method);
        if r == BigInt::from(1) {
            return Ok(LucasPair { k, u_k: Rational::from_integer(a), u_k1: Rational::from_integer(b) });
        }
        return Ok(LucasPair { k, u_k: scale(a, k - 1), u_k1: scale(b, k) });
    }
    let m = k.unsigned_abs() - 1;
    let (a, b) = pair_nonneg(&p_int, &q_int, m, method);
    let (um, um1) = (scale(a, m as i64 - 1), scale(b, m as i64));
    let qinv = params.q.recip();
    let qm = crate::algebra::rational::rational_pow(&qinv, m as i64).unwrap();
    Ok(LucasPair { k, u_k: -(um1 * &qm * &qinv), u_k1: -(um * qm) })
}

/// `V_k = 2 U_{k+1} - P U_k`.
pub fn v_from_u<T: Ring>(pair: &LucasPair<T>, params: &SequenceParams<T>) -> T {
    pair.u_k1.add(&pair.u_k1).sub(&params.p.mul(&pair.u_k))
}

/// Single value `U_k` or `V_k` at numeric parameters.
pub fn lucas_value(kind: LucasKind, params: &SequenceParams<Rational>, k: i64) -> Result<Rational, LucasError> {
    let pair = lucas_numeric(params, k, Method::Doubling)?;
    Ok(match kind {
        LucasKind::U => pair.u_k,
        LucasKind::V => v_from_u(&pair, params),
    })
}

fn u_cache() -> &'static Mutex<Vec<LaurentPoly>> {
    static CACHE: OnceLock<Mutex<Vec<LaurentPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![LaurentPoly::zero(), LaurentPoly::int(1)]))
}

fn symbolic_cache() -> &'static Mutex<HashMap<(LucasKind, i64), RationalFunction>> {
    static CACHE: OnceLock<Mutex<HashMap<(LucasKind, i64), RationalFunction>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `U_k` in `ℤ[P, Q]` for `k >= 0`, memoized by ascending recurrence.
fn u_poly(k: usize) -> LaurentPoly {
    let mut cache = u_cache().lock().unwrap_or_else(|e| e.into_inner());
    if k >= cache.len() {
        let p = LaurentPoly::var("P");
        let q = LaurentPoly::var("Q");
        while cache.len() <= k {
            let n = cache.len();
            let next = &(&p * &cache[n - 1]) - &(&q * &cache[n - 2]);
            cache.push(next);
        }
    }
    cache[k].clone()
}

/// `U_k` or `V_k` as a Laurent polynomial in `P, Q` (negative exponents of
/// `Q` only, and only for `k < 0`).
pub fn lucas_laurent(kind: LucasKind, k: i64) -> LaurentPoly {
    let m = k.unsigned_abs() as usize;
    let base = match kind {
        LucasKind::U => u_poly(m),
        LucasKind::V => &u_poly(m + 1).scale(&Rational::from_integer(2.into())) - &(&LaurentPoly::var("P") * &u_poly(m)),
    };
    if k >= 0 {
        return base;
    }
    let q_pow = LaurentPoly::var_pow("Q", -(m as i32));
    match kind {
        LucasKind::U => -&(&base * &q_pow),
        LucasKind::V => &base * &q_pow,
    }
}

/// Exact `U_k` or `V_k` in `ℚ(P, Q)`.
pub fn lucas_symbolic(kind: LucasKind, k: i64) -> RationalFunction {
    if let Some(v) = symbolic_cache().lock().unwrap_or_else(|e| e.into_inner()).get(&(kind, k)) {
        return v.clone();
    }
    let v = RationalFunction::from_poly(lucas_laurent(kind, k));
    symbolic_cache().lock().unwrap_or_else(|e| e.into_inner()).insert((kind, k), v.clone());
    v
}

/// True when every method agrees on `(U_k, U_{k+1})`.
pub fn methods_agree(params: &SequenceParams<Rational>, k: i64) -> Result<bool, LucasError> {
    let d = lucas_numeric(params, k, Method::Doubling)?;
    for m in [Method::Iterative, Method::Matrix] {
        if lucas_numeric(params, k, m)? != d {
            return Ok(false);
        }
    }
    Ok(true)
}

impl<T: Ring> LucasPair<T> {
    pub fn is_consistent_with(&self, prev: &T, params: &SequenceParams<T>) -> bool {
        let step = params.p.mul(&self.u_k).sub(&params.q.mul(prev));
        step == self.u_k1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{rat, ratio};

    fn fib_oracle(k: usize) -> BigInt {
        let (mut a, mut b) = (BigInt::zero(), BigInt::one());
        for _ in 0..k {
            let c = &a + &b;
            a = b;
            b = c;
        }
        a
    }

    #[test]
    fn symbolic_small_indices() {
        assert_eq!(lucas_symbolic(LucasKind::U, 3).to_string(), "P^2 - Q");
        assert_eq!(lucas_symbolic(LucasKind::U, -3).to_string(), "-(P^2 - Q)/Q^3");
        assert_eq!(lucas_symbolic(LucasKind::V, 0).to_string(), "2");
        assert_eq!(lucas_symbolic(LucasKind::U, 6).to_string(), "P^5 - 4*P^3*Q + 3*P*Q^2");
        assert_eq!(lucas_symbolic(LucasKind::V, 1).to_string(), "P");
    }

    #[test]
    fn numeric_examples() {
        let fib = SequenceParams::fibonacci();
        for m in Method::ALL {
            let pair = lucas_numeric(&fib, 10, m).unwrap();
            assert_eq!((pair.u_k, pair.u_k1), (rat(55), rat(89)));
            let nat = lucas_numeric(&SequenceParams::new(rat(2), rat(1)), 6, m).unwrap();
            assert_eq!((nat.u_k, nat.u_k1), (rat(6), rat(7)));
            let zero = lucas_numeric(&SequenceParams::new(ratio(3, 7), rat(5)), 0, m).unwrap();
            assert_eq!((zero.u_k, zero.u_k1), (rat(0), rat(1)));
        }
        assert_eq!(lucas_numeric(&fib, 30, Method::Doubling).unwrap().u_k, Rational::from_integer(fib_oracle(30)));
        let l4 = v_from_u(&lucas_numeric(&fib, 4, Method::Doubling).unwrap(), &fib);
        assert_eq!(l4, rat(7));
    }

    #[test]
    fn negative_index_requires_nonzero_q() {
        let p = SequenceParams::new(rat(1), rat(0));
        assert!(lucas_numeric(&p, -1, Method::Doubling).is_err());
        assert!(lucas_numeric(&p, 5, Method::Doubling).is_ok());
    }

    #[test]
    fn rational_parameters_match_field_path() {
        let params = SequenceParams::new(ratio(-3, 4), ratio(5, 6));
        for k in -12..=12 {
            let fast = lucas_numeric(&params, k, Method::Doubling).unwrap();
            let slow = pair_field(&params.p, &params.q, k, Method::Iterative).unwrap();
            assert_eq!(fast, slow, "k = {k}");
        }
    }
}
