//! Partial factorization by gcd refinement.
//!
//! No irreducibility test is attempted. A polynomial is split into a
//! gcd-free basis using its derivatives and any caller-supplied hint
//! polynomials (typically the entries of the matrix whose determinant is
//! being factored). For the small determinants produced by ansatz systems
//! this recovers the factors one would write by hand.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::gcd::poly_gcd;
use super::poly::LaurentPoly;
use super::ratfunc::RationalFunction;
use super::rational::{format_rational, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub content: Rational,
    /// Primitive factors with positive leading coefficient, each with its
    /// multiplicity; sorted by degree and then term by term.
    pub factors: Vec<(LaurentPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> LaurentPoly {
        let mut acc = LaurentPoly::constant(self.content.clone());
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e as i64).expect("nonnegative power");
        }
        acc
    }

    fn render_factors(&self, out: &mut String) {
        for (i, (f, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                out.push('*');
            }
            let base = if f.num_terms() > 1 { format!("({f})") } else { f.to_string() };
            if *e == 1 {
                out.push_str(&base);
            } else {
                out.push_str(&format!("{base}^{e}"));
            }
        }
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        if self.factors.is_empty() {
            return write!(f, "{}", format_rational(&self.content));
        }
        if self.content == -Rational::one() {
            s.push('-');
        } else if !self.content.is_one() {
            s.push_str(&format_rational(&self.content));
            s.push('*');
        }
        self.render_factors(&mut s);
        write!(f, "{s}")
    }
}

/// A rational function with numerator and denominator factored.
#[derive(Clone, Debug, PartialEq)]
pub struct FactoredFraction {
    pub numer: Factorization,
    pub denom: Vec<(LaurentPoly, u32)>,
}

impl FactoredFraction {
    /// Every distinct nonconstant factor of numerator and denominator.
    pub fn all_factors(&self) -> Vec<LaurentPoly> {
        let mut out: Vec<LaurentPoly> = self.numer.factors.iter().map(|(f, _)| f.clone()).collect();
        for (f, _) in &self.denom {
            if !out.contains(f) {
                out.push(f.clone());
            }
        }
        out
    }
}

impl fmt::Display for FactoredFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.numer)?;
        if self.denom.is_empty() {
            return Ok(());
        }
        let d = Factorization { content: Rational::one(), factors: self.denom.clone() };
        if self.denom.len() == 1 {
            write!(f, "/{d}")
        } else {
            write!(f, "/({d})")
        }
    }
}

pub fn factor_fraction(r: &RationalFunction, hints: &[LaurentPoly]) -> FactoredFraction {
    let numer = factor_by_gcd(r.numer(), hints);
    let denom = factor_by_gcd(r.denom(), hints);
    let mut numer = numer;
    numer.content /= denom.content;
    FactoredFraction { numer, denom: denom.factors }
}

/// Split `p` into rational content, monomial factors and a gcd-free basis of
/// the remainder refined against `hints`.
pub fn factor_by_gcd(p: &LaurentPoly, hints: &[LaurentPoly]) -> Factorization {
    if p.is_zero() {
        return Factorization { content: Rational::zero(), factors: vec![] };
    }
    if let Some(c) = p.constant_value() {
        return Factorization { content: c, factors: vec![] };
    }
    let content = p.content();
    let prim = p.scale(&content.recip());
    let mins = prim.min_exponents();
    let mut factors: Vec<(LaurentPoly, u32)> = Vec::new();
    for (i, &e) in mins.iter().enumerate() {
        if e != 0 {
            factors.push((LaurentPoly::var(&prim.vars().names()[i]), e.max(0) as u32));
        }
    }
    let core = prim.shift(&mins.iter().map(|e| -e).collect::<Vec<_>>());
    if !core.is_constant() {
        match split_core(&core, hints) {
            Some(parts) => factors.extend(parts),
            None => factors.push((core.primitive(), 1)),
        }
    }
    factors.sort_by(|a, b| {
        a.0.total_degree()
            .cmp(&b.0.total_degree())
            .then_with(|| term_order(&a.0, &b.0))
    });
    let out = Factorization { content, factors };
    debug_assert_eq!(out.expand(), *p);
    out
}

/// Compare term by term from the leading monomial down, so `P^2 - 2*Q`
/// sorts before `P^2 - Q` and `P^2 + Q`.
fn term_order(a: &LaurentPoly, b: &LaurentPoly) -> std::cmp::Ordering {
    let (a, b) = LaurentPoly::aligned(a, b);
    let ta = a.terms().rev();
    let tb = b.terms().rev();
    for ((ma, ca), (mb, cb)) in ta.zip(tb) {
        let o = mb.cmp(ma).then_with(|| ca.cmp(cb));
        if o.is_ne() {
            return o;
        }
    }
    a.num_terms().cmp(&b.num_terms())
}

fn strip_monomial(p: &LaurentPoly) -> LaurentPoly {
    let m = p.min_exponents();
    p.shift(&m.iter().map(|e| -e).collect::<Vec<_>>()).primitive()
}

fn split_core(core: &LaurentPoly, hints: &[LaurentPoly]) -> Option<Vec<(LaurentPoly, u32)>> {
    let mut basis = vec![core.primitive()];
    for h in hints {
        if h.is_zero() || h.has_negative_exponents() {
            continue;
        }
        let h = strip_monomial(h);
        if h.is_constant() {
            continue;
        }
        basis = refine_against(basis, &h);
    }
    // Repeated factors show up in gcd(f, df/dv).
    let names: Vec<String> = core.used_vars();
    for v in &names {
        let snapshot = basis.clone();
        for b in snapshot {
            let d = b.derivative(v);
            if d.is_zero() {
                continue;
            }
            let g = poly_gcd(&b, &d);
            if !g.is_constant() {
                basis = refine_against(basis, &g);
            }
        }
    }
    basis = make_coprime(basis);

    let mut rest = core.primitive();
    let mut out = Vec::new();
    for f in basis {
        let mut e = 0u32;
        while let Some(q) = rest.div_exact(&f) {
            rest = q;
            e += 1;
        }
        if e > 0 {
            out.push((f, e));
        }
    }
    if rest.is_constant() {
        Some(out)
    } else {
        None
    }
}

fn refine_against(basis: Vec<LaurentPoly>, h: &LaurentPoly) -> Vec<LaurentPoly> {
    let mut out = Vec::new();
    for b in basis {
        let g = poly_gcd(&b, h);
        if g.is_constant() || g == b {
            out.push(b);
            continue;
        }
        let q = b.div_exact(&g).expect("gcd divides").primitive();
        out.push(g);
        if !q.is_constant() {
            out.push(q);
        }
    }
    out
}

/// Refine until every pair of basis elements is coprime.
fn make_coprime(mut basis: Vec<LaurentPoly>) -> Vec<LaurentPoly> {
    'outer: loop {
        basis.dedup();
        for i in 0..basis.len() {
            for j in (i + 1)..basis.len() {
                if basis[i] == basis[j] {
                    basis.remove(j);
                    continue 'outer;
                }
                let g = poly_gcd(&basis[i], &basis[j]);
                if g.is_constant() {
                    continue;
                }
                let a = basis[i].div_exact(&g).expect("gcd divides").primitive();
                let b = basis[j].div_exact(&g).expect("gcd divides").primitive();
                basis.remove(j);
                basis.remove(i);
                for x in [g, a, b] {
                    if !x.is_constant() {
                        basis.push(x);
                    }
                }
                continue 'outer;
            }
        }
        return basis;
    }
}

/// Sign of the leading coefficient; used when comparing determinants up to
/// sign.
pub fn leading_sign(p: &LaurentPoly) -> i32 {
    match p.leading_coefficient() {
        Some(c) if c.is_negative() => -1,
        Some(_) => 1,
        None => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn p() -> LaurentPoly {
        LaurentPoly::var("P")
    }
    fn q() -> LaurentPoly {
        LaurentPoly::var("Q")
    }

    #[test]
    fn splits_determinant_with_hints() {
        let p2 = &p() * &p();
        let a = &p2 - &q().scale(&rat(2));
        let b = &p2 - &q();
        let c = &p2 + &q();
        let det = &(&(&(&p2 * &p2) * &a) * &b) * &c;
        let det = det.scale(&rat(-2));
        let hints = vec![&a * &b, &b * &c];
        let f = factor_by_gcd(&det, &hints);
        assert_eq!(f.content, rat(-2));
        let names: Vec<(String, u32)> = f.factors.iter().map(|(x, e)| (x.to_string(), *e)).collect();
        let expect = [("P", 4), ("P^2 - 2*Q", 1), ("P^2 - Q", 1), ("P^2 + Q", 1)];
        assert_eq!(names, expect.map(|(a, b)| (a.to_string(), b)));
        assert_eq!(f.to_string(), "-2*P^4*(P^2 - 2*Q)*(P^2 - Q)*(P^2 + Q)");
    }

    #[test]
    fn repeated_factor_from_derivative() {
        let b = &(&p() * &p()) - &q();
        let sq = &b * &b;
        let f = factor_by_gcd(&(&sq * &(&p() + &LaurentPoly::int(1))), &[]);
        assert!(f.factors.contains(&(b.clone(), 2)));
        assert_eq!(f.expand(), &sq * &(&p() + &LaurentPoly::int(1)));
    }
}
