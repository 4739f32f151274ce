//! Horadam sequences `W_{k+2} = p0 W_{k+1} + p1 W_k`, `W_0 = a0`, `W_1 = a1`.

use super::sequence::{pair_field, Method};
use super::LucasError;
use crate::algebra::{ring::Field, LaurentPoly, RationalFunction};

#[derive(Clone, Debug, PartialEq)]
pub struct HoradamParams<T> {
    pub a0: T,
    pub a1: T,
    pub p0: T,
    pub p1: T,
}

impl HoradamParams<RationalFunction> {
    /// All four parameters left as indeterminates.
    pub fn symbolic() -> Self {
        HoradamParams {
            a0: RationalFunction::var("a0"),
            a1: RationalFunction::var("a1"),
            p0: RationalFunction::var("p0"),
            p1: RationalFunction::var("p1"),
        }
    }
}

/// `W_k = a1 U_k(p0, -p1) + a0 p1 U_{k-1}(p0, -p1)`.
pub fn horadam<T: Field>(h: &HoradamParams<T>, k: i64) -> Result<T, LucasError> {
    if k == 0 {
        return Ok(h.a0.clone());
    }
    let q = h.p1.neg();
    if k < 0 && h.p1.is_zero() {
        return Err(LucasError::SingularParameter("p1 = 0 with a negative index".into()));
    }
    let pair = pair_field(&h.p0, &q, k - 1, Method::Doubling)?;
    // pair = (U_{k-1}, U_k)
    Ok(h.a1.mul(&pair.u_k1).add(&h.a0.mul(&h.p1).mul(&pair.u_k)))
}

/// Direct bidirectional recurrence; the reference the reduction is checked
/// against.
pub fn horadam_recurrence<T: Field>(h: &HoradamParams<T>, k: i64) -> Result<T, LucasError> {
    let (mut a, mut b) = (h.a0.clone(), h.a1.clone());
    if k >= 0 {
        for _ in 0..k {
            let c = h.p0.mul(&b).add(&h.p1.mul(&a));
            a = b;
            b = c;
        }
        return Ok(a);
    }
    let inv = h
        .p1
        .inv()
        .ok_or_else(|| LucasError::SingularParameter("p1 = 0 with a negative index".into()))?;
    for _ in 0..k.unsigned_abs() {
        // W_{j-1} = (W_{j+1} - p0 W_j) / p1
        let prev = b.sub(&h.p0.mul(&a)).mul(&inv);
        b = a;
        a = prev;
    }
    Ok(a)
}

/// Symbolic `W_k` over `ℚ(a0, a1, p0, p1)`.
pub fn horadam_symbolic(k: i64) -> RationalFunction {
    horadam(&HoradamParams::symbolic(), k).expect("p1 is a nonzero indeterminate")
}

/// `W_k` with the recurrence coefficients tied to the Lucas parameters,
/// `p0 = P`, `p1 = -Q`, as a Laurent polynomial in `a0, a1, P, Q`.
pub fn horadam_over_lucas(k: i64) -> LaurentPoly {
    use super::sequence::{lucas_laurent, LucasKind};
    let a0 = LaurentPoly::var("a0");
    let a1 = LaurentPoly::var("a1");
    let q = LaurentPoly::var("Q");
    &(&a1 * &lucas_laurent(LucasKind::U, k)) - &(&(&a0 * &q) * &lucas_laurent(LucasKind::U, k - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use crate::algebra::Rational;

    fn fib_params() -> HoradamParams<Rational> {
        HoradamParams { a0: rat(0), a1: rat(1), p0: rat(1), p1: rat(1) }
    }

    #[test]
    fn fibonacci_and_initial_values() {
        assert_eq!(horadam(&fib_params(), 10).unwrap(), rat(55));
        let h = HoradamParams { a0: rat(7), a1: rat(-2), p0: rat(3), p1: rat(5) };
        assert_eq!(horadam(&h, 0).unwrap(), rat(7));
        assert_eq!(horadam(&h, 1).unwrap(), rat(-2));
        for k in -8..=8 {
            assert_eq!(horadam(&h, k).unwrap(), horadam_recurrence(&h, k).unwrap(), "k = {k}");
        }
    }

    #[test]
    fn symbolic_instance_with_a1_zero() {
        let p = RationalFunction::var("P");
        let q = RationalFunction::var("Q");
        let h = HoradamParams { a0: RationalFunction::one(), a1: RationalFunction::zero(), p0: p.clone(), p1: -&q };
        let w4 = horadam(&h, 4).unwrap();
        let expect = -&(&q * &(&(&p * &p) - &q));
        assert_eq!(w4, expect);
        assert_eq!(horadam_recurrence(&h, 4).unwrap(), expect);
        assert_eq!(RationalFunction::from_poly(horadam_over_lucas(4)).compose(&|v| match v {
            "a0" => Some(RationalFunction::one()),
            "a1" => Some(RationalFunction::zero()),
            _ => None,
        }).unwrap(), expect);
    }

    #[test]
    fn zero_p1_is_singular_backwards() {
        let h = HoradamParams { a0: rat(1), a1: rat(1), p0: rat(1), p1: rat(0) };
        assert!(horadam(&h, -1).is_err());
        assert!(horadam_recurrence(&h, -1).is_err());
        assert_eq!(horadam(&h, 3).unwrap(), horadam_recurrence(&h, 3).unwrap());
    }
}
