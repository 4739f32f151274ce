//! Elements of the fraction field ℚ(vars), kept in reduced canonical form.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::factor::factor_by_gcd;
use super::gcd::poly_gcd;
use super::poly::LaurentPoly;
use super::rational::{format_rational, Rational};

use super::AlgebraError;

/// `num / den` where both are polynomials (no negative exponents), coprime,
/// and `den` is integer-primitive with a positive leading coefficient.
/// Zero is `0/1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction { num: LaurentPoly::zero(), den: LaurentPoly::int(1) }
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn int(n: i64) -> Self {
        RationalFunction { num: LaurentPoly::int(n), den: LaurentPoly::int(1) }
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction { num: LaurentPoly::constant(c), den: LaurentPoly::int(1) }
    }

    pub fn var(name: &str) -> Self {
        RationalFunction { num: LaurentPoly::var(name), den: LaurentPoly::int(1) }
    }

    /// Any Laurent polynomial; negative exponents move into the denominator.
    pub fn from_poly(p: LaurentPoly) -> Self {
        if !p.has_negative_exponents() {
            return RationalFunction { num: p, den: LaurentPoly::int(1) };
        }
        Self::new(p, LaurentPoly::int(1)).expect("nonzero denominator")
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivideByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (num, den) = LaurentPoly::aligned(&num, &den);
        let (mut num, mut den) = (num.into_owned(), den.into_owned());

        // Clear negative exponents from both sides.
        let mn = num.min_exponents();
        let md = den.min_exponents();
        let lift: Vec<i32> = mn.iter().zip(&md).map(|(a, b)| -(*a.min(b)).min(0)).collect();
        if lift.iter().any(|&e| e != 0) {
            num = num.shift(&lift);
            den = den.shift(&lift);
        }

        if let Some(c) = den.constant_value() {
            return Ok(RationalFunction { num: num.scale(&c.recip()), den: LaurentPoly::int(1) });
        }
        let g = poly_gcd(&num, &den);
        if !g.is_constant() {
            num = num.div_exact(&g).expect("gcd divides numerator");
            den = den.div_exact(&g).expect("gcd divides denominator");
        }
        let c = den.content();
        let num = num.scale(&c.recip());
        let den = den.scale(&c.recip());
        if let Some(dc) = den.constant_value() {
            return Ok(RationalFunction { num: num.scale(&dc.recip()), den: LaurentPoly::int(1) });
        }
        Ok(RationalFunction { num, den })
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    pub fn used_vars(&self) -> Vec<String> {
        let mut v = self.num.used_vars();
        v.extend(self.den.used_vars());
        v.sort();
        v.dedup();
        v
    }

    /// Total degree of numerator plus denominator; the pivoting weight.
    pub fn weight(&self) -> i64 {
        self.num.total_degree() + self.den.total_degree()
    }

    /// True when the numerator's leading coefficient is negative.
    pub fn is_negative(&self) -> bool {
        self.num.leading_coefficient().map_or(false, |c| c.is_negative())
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn powi(&self, exp: i64) -> Result<Self, AlgebraError> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        Ok(RationalFunction {
            num: base.num.pow(exp.unsigned_abs() as i64)?,
            den: base.den.pow(exp.unsigned_abs() as i64)?,
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Exact value at the given assignment. A vanishing denominator is
    /// reported together with the factor responsible for it.
    pub fn evaluate(&self, value: &dyn Fn(&str) -> Option<Rational>) -> Result<Rational, AlgebraError> {
        let d = self.den.evaluate(value)?;
        if d.is_zero() {
            let factor = factor_by_gcd(&self.den, &[])
                .factors
                .into_iter()
                .map(|(f, _)| f)
                .find(|f| f.evaluate(value).map_or(false, |x| x.is_zero()))
                .map(|f| f.to_string())
                .unwrap_or_else(|| self.den.to_string());
            return Err(AlgebraError::Singularity { factor });
        }
        Ok(self.num.evaluate(value)? / d)
    }

    pub fn compose(&self, image: &dyn Fn(&str) -> Option<RationalFunction>) -> Result<Self, AlgebraError> {
        let n = compose_poly(&self.num, image)?;
        let d = compose_poly(&self.den, image)?;
        if d.is_zero() {
            let factor = factor_by_gcd(&self.den, &[])
                .factors
                .into_iter()
                .map(|(f, _)| f)
                .find(|f| compose_poly(f, image).map_or(false, |x| x.is_zero()))
                .map(|f| f.to_string())
                .unwrap_or_else(|| self.den.to_string());
            return Err(AlgebraError::Singularity { factor });
        }
        n.div(&d)
    }

    pub fn div(&self, other: &Self) -> Result<Self, AlgebraError> {
        if other.is_zero() {
            return Err(AlgebraError::DivideByZero);
        }
        Self::new(&self.num * &other.den, &self.den * &other.num)
    }

    /// Numerator and denominator rendered as a division, used by the text
    /// output of every module.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

/// Substitute rational functions for the variables of a polynomial.
pub fn compose_poly(
    p: &LaurentPoly,
    image: &dyn Fn(&str) -> Option<RationalFunction>,
) -> Result<RationalFunction, AlgebraError> {
    let mut acc = RationalFunction::zero();
    for (m, c) in p.terms() {
        let mut t = RationalFunction::constant(c.clone());
        let mut rest: Vec<(&str, i32)> = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let v = &p.vars().names()[i];
            match image(v) {
                Some(img) => t = &t * &img.powi(e as i64)?,
                None => rest.push((v.as_str(), e)),
            }
        }
        if !rest.is_empty() {
            t = &t * &RationalFunction::from_poly(LaurentPoly::monomial(Rational::one(), &rest));
        }
        acc = &acc + &t;
    }
    Ok(acc)
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &'a RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let n = &self.num + &rhs.num;
            if self.den.is_one() {
                return RationalFunction { num: n, den: self.den.clone() };
            }
            return RationalFunction::new(n, self.den.clone()).unwrap();
        }
        let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::new(n, &self.den * &rhs.den).unwrap()
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &'a RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &'a RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction { num: &self.num * &rhs.num, den: LaurentPoly::int(1) };
        }
        if let Some(c) = self.constant_value() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.constant_value() {
            return self.scale(&c);
        }
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

impl<'a> Div<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;
    /// Panics on division by zero; use [`RationalFunction::div`] for a `Result`.
    fn div(self, rhs: &'a RationalFunction) -> RationalFunction {
        RationalFunction::div(self, rhs).expect("division by the zero rational function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl super::ring::Ring for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn from_i64(n: i64) -> Self {
        RationalFunction::int(n)
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl super::ring::Field for RationalFunction {
    fn inv(&self) -> Option<Self> {
        RationalFunction::inv(self).ok()
    }
}

impl From<LaurentPoly> for RationalFunction {
    fn from(p: LaurentPoly) -> Self {
        RationalFunction::from_poly(p)
    }
}

impl From<Rational> for RationalFunction {
    fn from(c: Rational) -> Self {
        RationalFunction::constant(c)
    }
}

fn paren_if_sum(p: &LaurentPoly) -> String {
    if p.num_terms() > 1 {
        format!("({p})")
    } else {
        p.to_string()
    }
}

impl fmt::Display for RationalFunction {
    /// `Q^2/P^2`, `-(P^2 - Q)/Q^3`, `1/2*P`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let (sign, num) = if self.is_negative() { ("-", -&self.num) } else { ("", self.num.clone()) };
        let num_text = match num.constant_value() {
            Some(c) => format_rational(&c),
            None => paren_if_sum(&num),
        };
        let den_text = paren_if_sum(&self.den);
        if num.constant_value().map_or(false, |c| !c.is_integer()) {
            // `1/2/P` would read ambiguously.
            return write!(f, "{sign}({num_text})/{den_text}");
        }
        write!(f, "{sign}{num_text}/{den_text}")
    }
}
