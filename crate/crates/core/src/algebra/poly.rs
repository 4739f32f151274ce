//! Sparse multivariate Laurent polynomials over the rationals.
//!
//! Every polynomial carries the ordered set of variables it is written in.
//! Variable sets are always sorted by a fixed global order, so arithmetic on
//! operands with different variable sets simply aligns both to the union and
//! canonical forms never depend on how a value was built.

use std::borrow::Cow;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{common_denominator, format_rational, numerator_gcd, rational_pow, Rational};

use super::AlgebraError;

/// Sort key of a variable name. Parameters come first in a fixed order,
/// everything else follows alphabetically.
fn var_key(name: &str) -> (u8, &str) {
    const FIXED: [&str; 8] = ["P", "Q", "a0", "a1", "p0", "p1", "alpha", "alphabar"];
    match FIXED.iter().position(|v| *v == name) {
        Some(i) => (i as u8, ""),
        None => (FIXED.len() as u8, name),
    }
}

/// Ordered, duplicate-free set of variable names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarSet(Arc<[String]>);

impl VarSet {
    pub fn new<S: AsRef<str>>(names: impl IntoIterator<Item = S>) -> Self {
        let mut v: Vec<String> = names.into_iter().map(|s| s.as_ref().to_string()).collect();
        v.sort_by(|a, b| var_key(a).cmp(&var_key(b)));
        v.dedup();
        VarSet(v.into())
    }

    pub fn empty() -> Self {
        VarSet(Arc::from(Vec::<String>::new()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }

    fn same(&self, other: &VarSet) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }

    pub fn union(&self, other: &VarSet) -> VarSet {
        if self.same(other) {
            return self.clone();
        }
        VarSet::new(self.0.iter().chain(other.0.iter()))
    }
}

/// Exponent vector aligned with a [`VarSet`]. Ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<i32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse Laurent polynomial with rational coefficients. No zero
/// coefficient is ever stored.
#[derive(Clone, Debug)]
pub struct LaurentPoly {
    vars: VarSet,
    terms: BTreeMap<Monomial, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { vars: VarSet::empty(), terms: BTreeMap::new() }
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(0), c);
        }
        LaurentPoly { vars: VarSet::empty(), terms }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(n)))
    }

    pub fn var(name: &str) -> Self {
        Self::var_pow(name, 1)
    }

    pub fn var_pow(name: &str, exp: i32) -> Self {
        let vars = VarSet::new([name]);
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(vec![exp]), Rational::one());
        LaurentPoly { vars, terms }
    }

    /// Builds a polynomial from raw `(exponents, coefficient)` pairs.
    pub fn from_terms(vars: VarSet, raw: impl IntoIterator<Item = (Vec<i32>, Rational)>) -> Self {
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (exps, c) in raw {
            assert_eq!(exps.len(), vars.len(), "exponent vector does not match variables");
            accumulate(&mut terms, Monomial(exps), c);
        }
        LaurentPoly { vars, terms }
    }

    /// Single term `c * Π name^exp`.
    pub fn monomial(c: Rational, powers: &[(&str, i32)]) -> Self {
        let vars = VarSet::new(powers.iter().map(|(n, _)| *n));
        let mut exps = vec![0; vars.len()];
        for (n, e) in powers {
            exps[vars.index_of(n).unwrap()] += *e;
        }
        Self::from_terms(vars, [(exps, c)])
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_one() {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().map_or(false, |c| c.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Names of the variables that actually occur with a nonzero exponent.
    pub fn used_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, v) in self.vars.names().iter().enumerate() {
            if self.terms.keys().any(|m| m.0[i] != 0) {
                out.push(v.clone());
            }
        }
        out
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(|m| m.0.iter().any(|&e| e < 0))
    }

    /// Leading term under graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.leading().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> i64 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: &str) -> i32 {
        match self.vars.index_of(var) {
            Some(i) => self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Componentwise minimum exponent over all terms (the monomial content).
    pub fn min_exponents(&self) -> Vec<i32> {
        let n = self.vars.len();
        let mut it = self.terms.keys();
        let mut acc = match it.next() {
            Some(m) => m.0.clone(),
            None => return vec![0; n],
        };
        for m in it {
            for (a, &e) in acc.iter_mut().zip(&m.0) {
                *a = (*a).min(e);
            }
        }
        acc
    }

    pub fn coefficient(&self, exps: &[i32]) -> Rational {
        self.terms.get(&Monomial(exps.to_vec())).cloned().unwrap_or_else(Rational::zero)
    }

    /// Re-expresses the polynomial over a superset of its variables.
    pub fn remap(&self, target: &VarSet) -> LaurentPoly {
        if self.vars.same(target) {
            return self.clone();
        }
        let map: Vec<usize> = self
            .vars
            .names()
            .iter()
            .map(|v| target.index_of(v).expect("remap target must contain every variable"))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; target.len()];
                for (i, &x) in m.0.iter().enumerate() {
                    e[map[i]] = x;
                }
                (Monomial(e), c.clone())
            })
            .collect();
        LaurentPoly { vars: target.clone(), terms }
    }

    pub(crate) fn aligned<'a>(a: &'a LaurentPoly, b: &'a LaurentPoly) -> (Cow<'a, LaurentPoly>, Cow<'a, LaurentPoly>) {
        if a.vars.same(&b.vars) {
            return (Cow::Borrowed(a), Cow::Borrowed(b));
        }
        if b.vars.is_empty() && b.is_constant() {
            return (Cow::Borrowed(a), Cow::Owned(b.remap_constant(&a.vars)));
        }
        if a.vars.is_empty() && a.is_constant() {
            return (Cow::Owned(a.remap_constant(&b.vars)), Cow::Borrowed(b));
        }
        let u = a.vars.union(&b.vars);
        (Cow::Owned(a.remap(&u)), Cow::Owned(b.remap(&u)))
    }

    fn remap_constant(&self, target: &VarSet) -> LaurentPoly {
        let terms = self
            .terms
            .values()
            .map(|c| (Monomial::one(target.len()), c.clone()))
            .collect();
        LaurentPoly { vars: target.clone(), terms }
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        }
        let terms = self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect();
        LaurentPoly { vars: self.vars.clone(), terms }
    }

    /// Multiplies by the monomial with exponent vector `exps` (same variables).
    pub fn shift(&self, exps: &[i32]) -> LaurentPoly {
        let sh = Monomial(exps.to_vec());
        let terms = self.terms.iter().map(|(m, c)| (m.mul(&sh), c.clone())).collect();
        LaurentPoly { vars: self.vars.clone(), terms }
    }

    /// Nonnegative power; negative powers are allowed only for single terms.
    pub fn pow(&self, exp: i64) -> Result<LaurentPoly, AlgebraError> {
        if exp >= 0 {
            return Ok(super::ring::Ring::pow_u(self, exp as u64));
        }
        if !self.is_monomial() {
            return Err(AlgebraError::UnsupportedOperation(
                "negative power of a polynomial with more than one term".into(),
            ));
        }
        let (m, c) = self.terms.iter().next().unwrap();
        let c = rational_pow(c, exp).ok_or(AlgebraError::DivideByZero)?;
        let e = Monomial(m.0.iter().map(|&x| x * exp as i32).collect());
        let mut terms = BTreeMap::new();
        terms.insert(e, c);
        Ok(LaurentPoly { vars: self.vars.clone(), terms })
    }

    pub fn derivative(&self, var: &str) -> LaurentPoly {
        let Some(i) = self.vars.index_of(var) else {
            return LaurentPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        };
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e != 0 {
                let mut m2 = m.clone();
                m2.0[i] -= 1;
                accumulate(&mut terms, m2, c * Rational::from_integer(BigInt::from(e)));
            }
        }
        LaurentPoly { vars: self.vars.clone(), terms }
    }

    /// Rational content, sign chosen so that the primitive part has a
    /// positive leading coefficient. Zero for the zero polynomial.
    pub fn content(&self) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let den = common_denominator(self.terms.values());
        let num = numerator_gcd(self.terms.values().map(|c| c * Rational::from_integer(den.clone())).collect::<Vec<_>>().iter());
        let mut content = Rational::new(num, den);
        if self.leading_coefficient().unwrap().is_negative() {
            content = -content;
        }
        content
    }

    /// Integer-coprime coefficients with positive leading coefficient.
    pub fn primitive(&self) -> LaurentPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        self.scale(&c.recip())
    }

    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && self.content().is_one()
    }

    /// Exact quotient `self / d` when `d` divides `self`, `None` otherwise.
    /// Both operands must be ordinary polynomials.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (a, b) = Self::aligned(self, d);
        let (a, b) = (a.into_owned(), b.into_owned());
        let (lm, lc) = {
            let (m, c) = b.leading().unwrap();
            (m.clone(), c.clone())
        };
        let mut rem = a.terms.clone();
        let mut quot: BTreeMap<Monomial, Rational> = BTreeMap::new();
        while let Some((m, c)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm.divides(&m) {
                return None;
            }
            let qm = m.div(&lm);
            let qc = &c / &lc;
            for (bm, bc) in &b.terms {
                accumulate(&mut rem, bm.mul(&qm), -(bc * &qc));
            }
            debug_assert!(!rem.contains_key(&m));
            quot.insert(qm, qc);
        }
        Some(LaurentPoly { vars: a.vars.clone(), terms: quot })
    }

    pub fn evaluate(&self, value: &dyn Fn(&str) -> Option<Rational>) -> Result<Rational, AlgebraError> {
        let mut vals: Vec<Option<Rational>> = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.names().iter().enumerate() {
            let used = self.terms.keys().any(|m| m.0[i] != 0);
            if !used {
                vals.push(None);
                continue;
            }
            match value(v) {
                Some(x) => vals.push(Some(x)),
                None => return Err(AlgebraError::MissingVariable(v.clone())),
            }
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let x = vals[i].as_ref().unwrap();
                let p = rational_pow(x, e as i64).ok_or_else(|| AlgebraError::Singularity {
                    factor: self.vars.names()[i].clone(),
                })?;
                t *= p;
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitutes polynomials for variables. Variables mapped to `None`
    /// stay. A variable raised to a negative power may only be replaced by
    /// a single term.
    pub fn compose(&self, image: &dyn Fn(&str) -> Option<LaurentPoly>) -> Result<LaurentPoly, AlgebraError> {
        let images: Vec<Option<LaurentPoly>> = self.vars.names().iter().map(|v| image(v)).collect();
        if images.iter().all(|i| i.is_none()) {
            return Ok(self.clone());
        }
        // Untouched variables.
        let keep: Vec<&String> = self
            .vars
            .names()
            .iter()
            .zip(&images)
            .filter(|(_, i)| i.is_none())
            .map(|(v, _)| v)
            .collect();
        let keep_vars = VarSet::new(keep.iter().map(|s| s.as_str()));
        let mut out = LaurentPoly::zero();
        let mut cache: Vec<BTreeMap<i32, LaurentPoly>> = vec![BTreeMap::new(); self.vars.len()];
        for (m, c) in &self.terms {
            let mut rest = vec![0; keep_vars.len()];
            let mut t = LaurentPoly::constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match &images[i] {
                    None => {
                        let j = keep_vars.index_of(&self.vars.names()[i]).unwrap();
                        rest[j] = e;
                    }
                    Some(img) => {
                        let p = match cache[i].get(&e) {
                            Some(p) => p.clone(),
                            None => {
                                let p = img.pow(e as i64)?;
                                cache[i].insert(e, p.clone());
                                p
                            }
                        };
                        t = &t * &p;
                    }
                }
            }
            if !keep_vars.is_empty() {
                let r = LaurentPoly::from_terms(keep_vars.clone(), [(rest, Rational::one())]);
                t = &t * &r;
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// View as a univariate polynomial in `var` with coefficients free of it.
    pub(crate) fn as_univariate(&self, var: usize) -> BTreeMap<i32, LaurentPoly> {
        let mut out: BTreeMap<i32, BTreeMap<Monomial, Rational>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let d = m.0[var];
            let mut m2 = m.clone();
            m2.0[var] = 0;
            out.entry(d).or_default().insert(m2, c.clone());
        }
        out.into_iter()
            .map(|(d, terms)| (d, LaurentPoly { vars: self.vars.clone(), terms }))
            .collect()
    }

    pub(crate) fn from_univariate(vars: &VarSet, var: usize, coeffs: &BTreeMap<i32, LaurentPoly>) -> LaurentPoly {
        let mut terms = BTreeMap::new();
        for (&d, p) in coeffs {
            let p = p.remap(vars);
            for (m, c) in p.terms {
                let mut m2 = m;
                m2.0[var] += d;
                accumulate(&mut terms, m2, c);
            }
        }
        LaurentPoly { vars: vars.clone(), terms }
    }

    fn fmt_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let v = &self.vars.names()[i];
            if e == 1 {
                parts.push(v.clone());
            } else {
                parts.push(format!("{v}^{e}"));
            }
        }
        parts.join("*")
    }
}

fn accumulate(terms: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.vars.same(&other.vars) {
            return self.terms == other.terms;
        }
        let (a, b) = Self::aligned(self, other);
        a.terms == b.terms
    }
}

impl Eq for LaurentPoly {}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let (a, b) = LaurentPoly::aligned(self, rhs);
        let mut terms = a.terms.clone();
        for (m, c) in &b.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        LaurentPoly { vars: a.vars.clone(), terms }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let (a, b) = LaurentPoly::aligned(self, rhs);
        let mut terms = a.terms.clone();
        for (m, c) in &b.terms {
            accumulate(&mut terms, m.clone(), -c.clone());
        }
        LaurentPoly { vars: a.vars.clone(), terms }
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        if let Some(c) = rhs.constant_value() {
            return self.scale(&c);
        }
        if let Some(c) = self.constant_value() {
            return rhs.scale(&c);
        }
        let (a, b) = LaurentPoly::aligned(self, rhs);
        let mut terms = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                accumulate(&mut terms, ma.mul(mb), ca * cb);
            }
        }
        LaurentPoly { vars: a.vars.clone(), terms }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect();
        LaurentPoly { vars: self.vars.clone(), terms }
    }
}

impl super::ring::Ring for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::int(1)
    }
    fn from_i64(n: i64) -> Self {
        LaurentPoly::int(n)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
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

impl fmt::Display for LaurentPoly {
    /// Terms in descending graded-lex order, e.g. `P^5 - 4*P^3*Q + 3*P*Q^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            let mono = self.fmt_monomial(m);
            let body = if mono.is_empty() {
                format_rational(&a)
            } else if a.is_one() {
                mono
            } else {
                format!("{}*{}", format_rational(&a), mono)
            };
            match (i, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}
