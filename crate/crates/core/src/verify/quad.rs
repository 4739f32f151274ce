//! Exact arithmetic in `ℚ(α)`, `α² = Pα − Q`, for numeric `P`, `Q`.
//!
//! Elements are `a + b·α`. When `Δ = P² − 4Q` is a nonzero rational square
//! the roots are rational and every element is stored with `b = 0`.

use num_traits::{One, Zero};

use crate::algebra::rational::rational_sqrt;
use crate::algebra::{LaurentPoly, Rational};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Quad<T> {
    pub a: T,
    pub b: T,
}

impl Quad<Rational> {
    pub fn rational(a: Rational) -> Self {
        Quad { a, b: Rational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl Quad<LaurentPoly> {
    pub fn zero() -> Self {
        Quad { a: LaurentPoly::zero(), b: LaurentPoly::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Quad { a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

#[derive(Clone, Debug)]
pub struct QuadField {
    pub p: Rational,
    pub q: Rational,
    roots: Option<(Rational, Rational)>,
}

impl QuadField {
    /// `None` when `Δ = 0` or `Q = 0`.
    pub fn new(p: Rational, q: Rational) -> Option<Self> {
        let delta = &p * &p - Rational::from_integer(4.into()) * &q;
        if delta.is_zero() || q.is_zero() {
            return None;
        }
        let two = Rational::from_integer(2.into());
        let roots = rational_sqrt(&delta).map(|r| ((&p + &r) / &two, (&p - &r) / &two));
        Some(QuadField { p, q, roots })
    }

    pub fn is_split(&self) -> bool {
        self.roots.is_some()
    }

    pub fn alpha(&self) -> Quad<Rational> {
        match &self.roots {
            Some((r, _)) => Quad::rational(r.clone()),
            None => Quad { a: Rational::zero(), b: Rational::one() },
        }
    }

    pub fn alphabar(&self) -> Quad<Rational> {
        match &self.roots {
            Some((_, r)) => Quad::rational(r.clone()),
            None => Quad { a: self.p.clone(), b: -Rational::one() },
        }
    }

    pub fn mul(&self, x: &Quad<Rational>, y: &Quad<Rational>) -> Quad<Rational> {
        let bd = &x.b * &y.b;
        Quad { a: &x.a * &y.a - &self.q * &bd, b: &x.a * &y.b + &x.b * &y.a + &self.p * &bd }
    }

    /// `c · x` for a numeric `c` and polynomial components `x`.
    pub fn scale(&self, c: &Quad<Rational>, x: &Quad<LaurentPoly>) -> Quad<LaurentPoly> {
        let bd = x.b.scale(&c.b);
        Quad {
            a: &x.a.scale(&c.a) - &bd.scale(&self.q),
            b: &(&x.b.scale(&c.a) + &x.a.scale(&c.b)) + &bd.scale(&self.p),
        }
    }

    pub fn inv(&self, x: &Quad<Rational>) -> Option<Quad<Rational>> {
        let norm = &x.a * &x.a + &x.a * &x.b * &self.p + &x.b * &x.b * &self.q;
        if norm.is_zero() {
            return None;
        }
        Some(Quad { a: (&x.a + &x.b * &self.p) / &norm, b: -&x.b / &norm })
    }

    pub fn pow(&self, x: &Quad<Rational>, e: i64) -> Option<Quad<Rational>> {
        let base = if e < 0 { self.inv(x)? } else { x.clone() };
        let mut acc = Quad::rational(Rational::one());
        let mut sq = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            n >>= 1;
            if n > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        Some(acc)
    }

    /// `α^x ᾱ^y`.
    pub fn character(&self, x: i64, y: i64) -> Quad<Rational> {
        let a = self.pow(&self.alpha(), x).expect("alpha is a unit");
        let b = self.pow(&self.alphabar(), y).expect("alphabar is a unit");
        self.mul(&a, &b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn golden_ratio_field() {
        let f = QuadField::new(rat(1), rat(-1)).unwrap();
        let a = f.alpha();
        let b = f.alphabar();
        assert_eq!(f.mul(&a, &b), Quad::rational(rat(-1)));
        let sum = Quad { a: &a.a + &b.a, b: &a.b + &b.b };
        assert_eq!(sum, Quad::rational(rat(1)));
        let inv = f.inv(&a).unwrap();
        assert_eq!(f.mul(&inv, &a), Quad::rational(rat(1)));
        // α·ᾱ = -1, so (αᾱ)² is the trivial character.
        assert_eq!(f.character(2, 2), Quad::rational(rat(1)));
    }

    #[test]
    fn split_case_uses_rational_roots() {
        let f = QuadField::new(rat(3), rat(2)).unwrap();
        assert!(f.is_split());
        assert_eq!(f.alpha(), Quad::rational(rat(2)));
        assert_eq!(f.alphabar(), Quad::rational(rat(1)));
        assert_eq!(f.character(0, 5), Quad::rational(rat(1)));
        assert!(QuadField::new(rat(2), rat(1)).is_none());
    }
}
