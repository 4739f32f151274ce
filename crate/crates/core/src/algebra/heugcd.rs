//! Heuristic gcd of integer polynomials by evaluation at a large integer and
//! ξ-adic reconstruction (Char, Geddes and Gonnet). A candidate is accepted
//! only if it divides both inputs, so a `None` just means "use the PRS".

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{LaurentPoly, VarSet};
use super::rational::Rational;

type IPoly = BTreeMap<Vec<i32>, BigInt>;

const ATTEMPTS: usize = 6;

fn to_int(p: &LaurentPoly) -> Option<IPoly> {
    let mut out = IPoly::new();
    for (m, c) in p.terms() {
        if !c.is_integer() {
            return None;
        }
        out.insert(m.0.clone(), c.to_integer());
    }
    Some(out)
}

fn from_int(vars: &VarSet, p: &IPoly) -> LaurentPoly {
    LaurentPoly::from_terms(vars.clone(), p.iter().map(|(m, c)| (m.clone(), Rational::from_integer(c.clone()))))
}

fn content(p: &IPoly) -> BigInt {
    p.values().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

fn max_norm(p: &IPoly) -> BigInt {
    p.values().map(|c| c.abs()).max().unwrap_or_default()
}

fn degree(p: &IPoly, v: usize) -> i32 {
    p.keys().map(|m| m[v]).max().unwrap_or(0)
}

/// Magnitude of the coefficient with the lexicographically largest exponents.
fn leading_abs(p: &IPoly) -> BigInt {
    p.iter().next_back().map(|(_, c)| c.abs()).unwrap_or_else(BigInt::one)
}

/// `p` with variable `v` replaced by the integer `x`.
fn eval(p: &IPoly, v: usize, x: &BigInt) -> IPoly {
    let mut out = IPoly::new();
    for (m, c) in p {
        let mut k = m.clone();
        let e = std::mem::replace(&mut k[v], 0);
        let t = c * num_traits::pow(x.clone(), e as usize);
        let entry = out.entry(k).or_insert_with(BigInt::zero);
        *entry += t;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Symmetric ξ-adic expansion of every coefficient into powers of `v`.
fn interpolate(h: &IPoly, v: usize, x: &BigInt) -> IPoly {
    let half = x >> 1;
    let mut out = IPoly::new();
    for (m, c) in h {
        let mut c = c.clone();
        let mut i = 0;
        while !c.is_zero() {
            let mut d = c.mod_floor(x);
            if d > half {
                d -= x;
            }
            if !d.is_zero() {
                let mut k = m.clone();
                k[v] += i;
                out.insert(k, d.clone());
            }
            c = (c - d) / x;
            i += 1;
        }
    }
    out
}

fn divides(vars: &VarSet, d: &IPoly, p: &IPoly) -> bool {
    from_int(vars, p).div_exact(&from_int(vars, d)).is_some()
}

fn heu(vars: &VarSet, f: &IPoly, g: &IPoly, active: &[usize]) -> Option<IPoly> {
    let cf = content(f);
    let cg = content(g);
    let c = cf.gcd(&cg);
    let Some((&v, rest)) = active.split_last() else {
        let zero = vec![0; vars.len()];
        return Some(IPoly::from([(zero, c)]));
    };
    let f: IPoly = f.iter().map(|(m, x)| (m.clone(), x / &cf)).collect();
    let g: IPoly = g.iter().map(|(m, x)| (m.clone(), x / &cg)).collect();
    if degree(&f, v) == 0 && degree(&g, v) == 0 {
        return heu(vars, &f, &g, rest).map(|h| h.into_iter().map(|(m, x)| (m, x * &c)).collect());
    }
    let (nf, ng) = (max_norm(&f), max_norm(&g));
    let by_norm: BigInt = nf.clone().min(ng.clone()) * 2 + 29;
    let by_lead: BigInt = (nf / leading_abs(&f)).min(ng / leading_abs(&g)) * 2 + 4;
    let mut xi = by_norm.max(by_lead);
    for _ in 0..ATTEMPTS {
        let ff = eval(&f, v, &xi);
        let gg = eval(&g, v, &xi);
        if !ff.is_empty() && !gg.is_empty() {
            if let Some(h) = heu(vars, &ff, &gg, rest) {
                let h = interpolate(&h, v, &xi);
                let ch = content(&h);
                if !ch.is_zero() {
                    let mut h: IPoly = h.into_iter().map(|(m, x)| (m, x / &ch)).collect();
                    if h.iter().next_back().map_or(false, |(_, x)| x.is_negative()) {
                        h.values_mut().for_each(|x| *x = -&*x);
                    }
                    if divides(vars, &h, &f) && divides(vars, &h, &g) {
                        return Some(h.into_iter().map(|(m, x)| (m, x * &c)).collect());
                    }
                }
            }
        }
        xi = xi * 73794 / 27011;
    }
    None
}

/// gcd of two nonzero polynomials with integer coefficients on the same
/// variable set, or `None` when the heuristic gives up.
pub(crate) fn heuristic_gcd(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    let vars = a.vars().clone();
    let f = to_int(a)?;
    let g = to_int(b)?;
    let active: Vec<usize> = (0..vars.len()).filter(|&i| degree(&f, i) > 0 || degree(&g, i) > 0).collect();
    let h = heu(&vars, &f, &g, &active)?;
    Some(from_int(&vars, &h).primitive())
}
