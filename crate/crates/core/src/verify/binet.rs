//! Binet expansion of templates.
//!
//! Each index variable `k_i` gets two Laurent indeterminates `T_i = α^{k_i}`
//! and `S_i = ᾱ^{k_i}`. A factor `U_e` with `e = Σ a_i k_i + d` becomes
//! `(α^d ΠT_i^{a_i} − ᾱ^d ΠS_i^{a_i}) / (α − ᾱ)`. Coefficients live in
//! `ℚ(α, ᾱ)` for symbolic parameters and in `ℚ(α)` with `α² = Pα − Q` for
//! numeric ones.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::quad::{Quad, QuadField};
use super::VerifyError;
use crate::algebra::{poly_lcm, LaurentPoly, Rational, RationalFunction};
use crate::identity::{Coefficient, IdentityTemplate, IndexExpr, SeqFactor, SeqKind, Term};
use crate::lucas::SequenceParams;

pub(crate) type Sum = BTreeMap<Vec<i32>, LaurentPoly>;

/// Normal form of a template: monomials in the `T_i`, `S_i` with coefficients
/// in `ℚ(α, ᾱ)`. For numeric parameters monomials with the same character
/// are merged under the smallest one and coefficients are written `a + b·alpha`.
#[derive(Clone, Debug, PartialEq)]
pub struct BinetPoly {
    pub index_vars: Vec<String>,
    pub terms: BTreeMap<Vec<i32>, RationalFunction>,
}

impl BinetPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn monomial_text(&self, key: &[i32]) -> String {
        monomial_text(&self.index_vars, key)
    }

    fn realigned(&self, vars: &[String]) -> BTreeMap<Vec<i32>, RationalFunction> {
        self.terms
            .iter()
            .map(|(k, c)| {
                let mut key = vec![0; 2 * vars.len()];
                for (i, v) in self.index_vars.iter().enumerate() {
                    let j = vars.iter().position(|w| w == v).expect("union contains every variable");
                    key[2 * j] = k[2 * i];
                    key[2 * j + 1] = k[2 * i + 1];
                }
                (key, c.clone())
            })
            .collect()
    }

    pub fn add(&self, o: &BinetPoly) -> BinetPoly {
        let mut vars: Vec<String> = self.index_vars.iter().chain(&o.index_vars).cloned().collect();
        vars.sort();
        vars.dedup();
        let mut terms = self.realigned(&vars);
        for (k, c) in o.realigned(&vars) {
            let s = match terms.get(&k) {
                Some(x) => x + &c,
                None => c,
            };
            if s.is_zero() {
                terms.remove(&k);
            } else {
                terms.insert(k, s);
            }
        }
        BinetPoly { index_vars: vars, terms }
    }
}

impl fmt::Display for BinetPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{}", self.monomial_text(k))?;
        }
        Ok(())
    }
}

pub(crate) fn monomial_text(vars: &[String], key: &[i32]) -> String {
    let mut parts = Vec::new();
    for (i, v) in vars.iter().enumerate() {
        for (letter, e) in [("T", key[2 * i]), ("S", key[2 * i + 1])] {
            match e {
                0 => {}
                1 => parts.push(format!("{letter}_{v}")),
                e => parts.push(format!("{letter}_{v}^{e}")),
            }
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// `sum / (lcm · (α − ᾱ)^n)` equals the template.
pub(crate) struct Cleared {
    pub index_vars: Vec<String>,
    pub sum: Sum,
    pub lcm: LaurentPoly,
    pub n: u32,
    pub field: Option<QuadField>,
}

fn alpha_pow(name: &str, e: i64) -> LaurentPoly {
    LaurentPoly::monomial(Rational::from_integer(1.into()), &[(name, e as i32)])
}

fn key_of(vars: &[String], index: &IndexExpr, t: bool, s: bool) -> Vec<i32> {
    let mut key = vec![0; 2 * vars.len()];
    for (v, c) in &index.coeffs {
        let i = vars.iter().position(|w| w == v).expect("index variable is declared");
        if t {
            key[2 * i] += *c as i32;
        }
        if s {
            key[2 * i + 1] += *c as i32;
        }
    }
    key
}

fn factor_sum(vars: &[String], f: &SeqFactor) -> Sum {
    let d = f.index.constant;
    let sign = match f.kind {
        SeqKind::U => Rational::from_integer((-1).into()),
        SeqKind::V => Rational::from_integer(1.into()),
        SeqKind::W => unreachable!("W factors are rewritten before expansion"),
    };
    let mut out = Sum::new();
    out.insert(key_of(vars, &f.index, true, false), alpha_pow("alpha", d));
    accumulate(&mut out, key_of(vars, &f.index, false, true), alpha_pow("alphabar", d).scale(&sign));
    out
}

fn q_sum(vars: &[String], e: &IndexExpr) -> Sum {
    let d = e.constant as i32;
    let c = LaurentPoly::monomial(Rational::from_integer(1.into()), &[("alpha", d), ("alphabar", d)]);
    Sum::from([(key_of(vars, e, true, true), c)])
}

fn accumulate(s: &mut Sum, k: Vec<i32>, c: LaurentPoly) {
    if c.is_zero() {
        return;
    }
    match s.get_mut(&k) {
        Some(x) => {
            let v = &*x + &c;
            if v.is_zero() {
                s.remove(&k);
            } else {
                *x = v;
            }
        }
        None => {
            s.insert(k, c);
        }
    }
}

fn mul_sum(a: &Sum, b: &Sum) -> Sum {
    let mut out = Sum::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            let k: Vec<i32> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
            accumulate(&mut out, k, ca * cb);
        }
    }
    out
}

fn free_of_pq(c: &RationalFunction) -> bool {
    !c.used_vars().iter().any(|v| v == "P" || v == "Q")
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Replace every `W_e` by `a1 U_e + a0 p1 U_{e−1}` over `(p0, −p1)`.
///
/// The `U` terms must share the template's `P`, `Q`: either `p0 = P` and
/// `p1 = −Q`, or the template has no `U`, `V` or `Q` terms, in which case the
/// parameters are renamed to `P = p0`, `Q = −p1`.
pub fn rewrite_w(t: &IdentityTemplate) -> Result<IdentityTemplate, VerifyError> {
    if !t.uses_w() {
        return Ok(t.clone());
    }
    let mut h = t
        .horadam
        .clone()
        .ok_or_else(|| VerifyError::Unsupported("W factor without declared parameters".into()))?;
    let (p_t, q_t) = match &t.params {
        Some(p) => (RationalFunction::constant(p.p.clone()), RationalFunction::constant(p.q.clone())),
        None => (RationalFunction::var("P"), RationalFunction::var("Q")),
    };
    let mut out = t.clone();
    if !(h.p0 == p_t && -&h.p1 == q_t) {
        let only_w = t
            .terms
            .iter()
            .all(|term| term.q_exponent.is_zero() && term.factors.iter().all(|f| f.kind == SeqKind::W));
        let no_pq = t.terms.iter().all(|term| free_of_pq(term.coefficient.scalar()))
            && [&h.a0, &h.a1, &h.p0, &h.p1].iter().all(|c| free_of_pq(c));
        if !(only_w && no_pq) {
            return Err(VerifyError::Unsupported(
                "W parameters must satisfy p0 = P and p1 = -Q when U, V or Q terms are present".into(),
            ));
        }
        match (h.p0.constant_value(), h.p1.constant_value()) {
            (Some(p0), Some(p1)) => out.params = Some(SequenceParams::new(p0, -p1)),
            _ => {
                let image = |v: &str| match v {
                    "p0" => Some(RationalFunction::var("P")),
                    "p1" => Some(-&RationalFunction::var("Q")),
                    _ => None,
                };
                h.a0 = h.a0.compose(&image)?;
                h.a1 = h.a1.compose(&image)?;
                h.p0 = h.p0.compose(&image)?;
                h.p1 = h.p1.compose(&image)?;
                if !(h.p0 == RationalFunction::var("P") && -&h.p1 == RationalFunction::var("Q")) {
                    return Err(VerifyError::Unsupported("W recurrence coefficients must be numbers or p0, p1".into()));
                }
                for term in &mut out.terms {
                    let c = term.coefficient.scalar().compose(&image)?;
                    term.coefficient = Coefficient::Known(c);
                }
                out.params = None;
            }
        }
    }
    let c1 = h.a1.clone();
    let c0 = &h.a0 * &h.p1;
    let mut terms = Vec::new();
    for term in &out.terms {
        let mut partial: Vec<(RationalFunction, Vec<SeqFactor>)> = vec![(
            term.coefficient.scalar().clone(),
            term.factors.iter().filter(|f| f.kind != SeqKind::W).cloned().collect(),
        )];
        for f in term.factors.iter().filter(|f| f.kind == SeqKind::W) {
            let n = f.exponent;
            let mut next = Vec::new();
            for (c, fs) in &partial {
                for j in 0..=n {
                    let coef = c
                        * &(&c1.powi(j as i64)? * &c0.powi((n - j) as i64)?).scale(&Rational::from_integer(binomial(n, j).into()));
                    if coef.is_zero() {
                        continue;
                    }
                    let mut fs = fs.clone();
                    fs.push(SeqFactor::new(SeqKind::U, f.index.clone(), j));
                    fs.push(SeqFactor::new(SeqKind::U, f.index.shift(-1), n - j));
                    next.push((coef, fs));
                }
            }
            partial = next;
        }
        for (c, fs) in partial {
            terms.push(Term::known(c, fs).with_q(term.q_exponent.clone()));
        }
    }
    out.terms = terms;
    out.horadam = None;
    out.display = None;
    Ok(out.canonicalize()?)
}

pub(crate) fn expand_cleared(t: &IdentityTemplate) -> Result<Cleared, VerifyError> {
    let unknowns = t.unknowns();
    if !unknowns.is_empty() {
        return Err(VerifyError::HasUnknowns(unknowns));
    }
    let t = rewrite_w(t)?;
    let field = match &t.params {
        Some(p) => Some(QuadField::new(p.p.clone(), p.q.clone()).ok_or(VerifyError::DegenerateDiscriminant)?),
        None => None,
    };
    let sym_p = RationalFunction::from_poly(&LaurentPoly::var("alpha") + &LaurentPoly::var("alphabar"));
    let sym_q = RationalFunction::from_poly(&LaurentPoly::var("alpha") * &LaurentPoly::var("alphabar"));
    let mut coefs = Vec::new();
    for term in &t.terms {
        let c = term.coefficient.scalar();
        let c = if field.is_none() {
            c.compose(&|v| match v {
                "P" => Some(sym_p.clone()),
                "Q" => Some(sym_q.clone()),
                _ => None,
            })?
        } else {
            c.clone()
        };
        coefs.push(c);
    }
    let lcm = coefs.iter().fold(LaurentPoly::int(1), |acc, c| poly_lcm(&acc, c.denom()));
    let u_count = |term: &Term| term.factors.iter().filter(|f| f.kind == SeqKind::U).map(|f| f.exponent).sum::<u32>();
    let n = t.terms.iter().map(u_count).max().unwrap_or(0);
    let sqrt_delta = &LaurentPoly::var("alpha") - &LaurentPoly::var("alphabar");
    let vars = t.index_vars.clone();
    let mut sum = Sum::new();
    for (term, c) in t.terms.iter().zip(&coefs) {
        let scale = lcm.div_exact(c.denom()).expect("lcm is divisible by each denominator");
        let base = &(c.numer() * &scale) * &sqrt_delta.pow((n - u_count(term)) as i64)?;
        let mut acc = Sum::from([(vec![0; 2 * vars.len()], base)]);
        for f in &term.factors {
            let fs = factor_sum(&vars, f);
            for _ in 0..f.exponent {
                acc = mul_sum(&acc, &fs);
            }
        }
        if !term.q_exponent.is_zero() {
            acc = mul_sum(&acc, &q_sum(&vars, &term.q_exponent));
        }
        for (k, c) in acc {
            accumulate(&mut sum, k, c);
        }
    }
    Ok(Cleared { index_vars: vars, sum, lcm, n, field })
}

/// Value of a coefficient polynomial in `alpha`, `alphabar` and other
/// variables, with the roots evaluated in `field`.
fn eval_in_field(field: &QuadField, c: &LaurentPoly, cache: &mut BTreeMap<(i32, i32), Quad<Rational>>) -> Quad<LaurentPoly> {
    let vars = c.vars();
    let ia = vars.index_of("alpha");
    let ib = vars.index_of("alphabar");
    let mut parts: BTreeMap<Vec<i32>, (Rational, Rational)> = BTreeMap::new();
    for (m, coef) in c.terms() {
        let mut rest = m.0.clone();
        let x = ia.map_or(0, |i| std::mem::take(&mut rest[i]));
        let y = ib.map_or(0, |i| std::mem::take(&mut rest[i]));
        let v = cache.entry((x, y)).or_insert_with(|| field.character(x as i64, y as i64));
        let e = parts.entry(rest).or_insert_with(|| (Rational::zero(), Rational::zero()));
        e.0 += coef * &v.a;
        e.1 += coef * &v.b;
    }
    let a = LaurentPoly::from_terms(vars.clone(), parts.iter().map(|(k, (a, _))| (k.clone(), a.clone())));
    let b = LaurentPoly::from_terms(vars.clone(), parts.into_iter().map(|(k, (_, b))| (k, b)));
    Quad { a, b }
}

/// Nonzero coefficients after identifying monomials that define the same
/// function of the indices. Ordered by smallest representative monomial.
pub(crate) struct Reduced {
    pub index_vars: Vec<String>,
    pub groups: Vec<(Vec<i32>, Group)>,
}

pub(crate) enum Group {
    Symbolic(LaurentPoly),
    Numeric(Quad<LaurentPoly>),
}

pub(crate) fn reduce(c: &Cleared) -> Reduced {
    let groups = match &c.field {
        None => c.sum.iter().map(|(k, v)| (k.clone(), Group::Symbolic(v.clone()))).collect(),
        Some(field) => {
            let mut cache = BTreeMap::new();
            let mut by_char: BTreeMap<Vec<Quad<Rational>>, (Vec<i32>, Quad<LaurentPoly>)> = BTreeMap::new();
            for (k, v) in &c.sum {
                let chars: Vec<Quad<Rational>> =
                    (0..c.index_vars.len()).map(|i| field.character(k[2 * i] as i64, k[2 * i + 1] as i64)).collect();
                let value = eval_in_field(field, v, &mut cache);
                match by_char.get_mut(&chars) {
                    Some((_, acc)) => *acc = acc.add(&value),
                    None => {
                        by_char.insert(chars, (k.clone(), value));
                    }
                }
            }
            let mut out: Vec<(Vec<i32>, Group)> = by_char
                .into_values()
                .filter(|(_, v)| !v.is_zero())
                .map(|(k, v)| (k, Group::Numeric(v)))
                .collect();
            out.sort_by(|a, b| a.0.cmp(&b.0));
            out
        }
    };
    Reduced { index_vars: c.index_vars.clone(), groups }
}

/// The true coefficient of one group.
pub(crate) fn group_coefficient(c: &Cleared, g: &Group) -> Result<RationalFunction, VerifyError> {
    match (g, &c.field) {
        (Group::Symbolic(v), _) => {
            let sqrt_delta = &LaurentPoly::var("alpha") - &LaurentPoly::var("alphabar");
            Ok(RationalFunction::new(v.clone(), &c.lcm * &sqrt_delta.pow(c.n as i64)?)?)
        }
        (Group::Numeric(v), Some(field)) => {
            let (a, b) = (field.alpha(), field.alphabar());
            let diff = Quad { a: &a.a - &b.a, b: &a.b - &b.b };
            let inv = field.inv(&field.pow(&diff, c.n as i64).expect("nonzero")).expect("nonzero");
            let v = field.scale(&inv, v);
            let num = &RationalFunction::from_poly(v.a) + &(&RationalFunction::from_poly(v.b) * &RationalFunction::var("alpha"));
            Ok(num.div(&RationalFunction::from_poly(c.lcm.clone()))?)
        }
        (Group::Numeric(_), None) => unreachable!("numeric groups come from a field"),
    }
}

pub fn binet_expand(t: &IdentityTemplate) -> Result<BinetPoly, VerifyError> {
    let c = expand_cleared(t)?;
    let r = reduce(&c);
    let mut terms = BTreeMap::new();
    for (k, g) in &r.groups {
        terms.insert(k.clone(), group_coefficient(&c, g)?);
    }
    Ok(BinetPoly { index_vars: r.index_vars, terms })
}
