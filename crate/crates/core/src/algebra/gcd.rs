//! Multivariate polynomial gcd over the rationals.
//!
//! Recursive primitive Euclidean algorithm: pick a main variable, split off
//! the content (gcd of the coefficients, computed recursively in the
//! remaining variables) and run a primitive pseudo-remainder sequence on the
//! primitive parts. A heuristic evaluation gcd is tried first.

use std::collections::BTreeMap;
use std::iter;

use super::heugcd::heuristic_gcd;
use super::poly::LaurentPoly;

/// Greatest common divisor of two ordinary polynomials, primitive and with
/// positive leading coefficient. `gcd(a, 0)` is the primitive part of `a`
/// and `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    debug_assert!(!a.has_negative_exponents() && !b.has_negative_exponents());
    let (a, b) = LaurentPoly::aligned(a, b);
    gcd_aligned(&a, &b)
}

pub fn poly_lcm(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() || b.is_zero() {
        return LaurentPoly::zero();
    }
    let g = poly_gcd(a, b);
    let prod = a * b;
    prod.div_exact(&g).expect("gcd divides the product").primitive()
}

fn gcd_aligned(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    if a.is_constant() || b.is_constant() {
        return LaurentPoly::int(1);
    }
    let vars = a.vars().clone();
    let n = vars.len();

    // Pull out the monomial content first; handles the very common case of
    // Q-power denominators without any recursion.
    let ma = a.min_exponents();
    let mb = b.min_exponents();
    let mg: Vec<i32> = ma.iter().zip(&mb).map(|(x, y)| *x.min(y)).collect();
    let mono_g = LaurentPoly::from_terms(vars.clone(), [(mg, num_traits::One::one())]);
    if a.is_monomial() || b.is_monomial() {
        return mono_g;
    }
    let neg = |m: &[i32]| m.iter().map(|e| -e).collect::<Vec<_>>();
    let a1 = a.shift(&neg(&ma));
    let b1 = b.shift(&neg(&mb));

    if let Some(g) = heuristic_gcd(&a1.primitive(), &b1.primitive()) {
        return (&mono_g * &g).primitive();
    }
    let main = (0..n).find(|&i| degree(&a1, i) > 0 || degree(&b1, i) > 0);
    let Some(v) = main else {
        return mono_g;
    };
    let da = degree(&a1, v);
    let db = degree(&b1, v);
    let rest = if da == 0 {
        gcd_aligned(&content_in(&b1, v), &a1)
    } else if db == 0 {
        gcd_aligned(&content_in(&a1, v), &b1)
    } else {
        let ca = content_in(&a1, v);
        let cb = content_in(&b1, v);
        let pa = a1.div_exact(&ca).expect("content divides");
        let pb = b1.div_exact(&cb).expect("content divides");
        let c = gcd_aligned(&ca, &cb);
        let g = primitive_prs(pa, pb, v);
        &c * &g
    };
    (&mono_g * &rest).primitive()
}

fn degree(p: &LaurentPoly, v: usize) -> i32 {
    p.terms().map(|(m, _)| m.0[v]).max().unwrap_or(0)
}

/// gcd of the coefficients of `p` viewed as a polynomial in variable `v`.
pub(crate) fn content_in(p: &LaurentPoly, v: usize) -> LaurentPoly {
    let coeffs = p.as_univariate(v);
    let mut acc = LaurentPoly::zero();
    for c in coeffs.values() {
        acc = gcd_aligned(&acc.remap(p.vars()), c);
        if acc.is_constant() {
            return LaurentPoly::int(1).remap(p.vars());
        }
    }
    acc.remap(p.vars())
}

fn primitive_in(p: &LaurentPoly, v: usize) -> LaurentPoly {
    if p.is_zero() {
        return p.clone();
    }
    let c = content_in(p, v);
    p.div_exact(&c).expect("content divides").primitive()
}

fn primitive_prs(a: LaurentPoly, b: LaurentPoly, v: usize) -> LaurentPoly {
    let (mut a, mut b) = if degree(&a, v) >= degree(&b, v) { (a, b) } else { (b, a) };
    loop {
        let r = pseudo_remainder(&a, &b, v);
        if r.is_zero() {
            return primitive_in(&b, v);
        }
        if degree(&r, v) == 0 {
            return LaurentPoly::int(1);
        }
        a = b;
        b = primitive_in(&r, v);
    }
}

/// Pseudo-remainder of `a` by `b` with respect to variable `v`.
fn pseudo_remainder(a: &LaurentPoly, b: &LaurentPoly, v: usize) -> LaurentPoly {
    let vars = a.vars().clone();
    let bu = b.as_univariate(v);
    let (&db, lcb) = bu.iter().next_back().unwrap();
    let lcb = lcb.clone();
    let lcb_const = lcb.constant_value();
    let mut r: BTreeMap<i32, LaurentPoly> = a.as_univariate(v);
    loop {
        let Some((&dr, lcr)) = r.iter().next_back() else { break };
        if dr < db {
            break;
        }
        let lcr = lcr.clone();
        let shift = dr - db;
        match &lcb_const {
            Some(c) => {
                let f = lcr.scale(&c.recip());
                for (&d, bc) in &bu {
                    sub_into(&mut r, d + shift, &(&f * bc));
                }
            }
            None => {
                for p in r.values_mut() {
                    *p = &*p * &lcb;
                }
                for (&d, bc) in &bu {
                    sub_into(&mut r, d + shift, &(&lcr * bc));
                }
            }
        }
        debug_assert!(r.get(&dr).map_or(true, |p| p.is_zero()));
        r.remove(&dr);
    }
    LaurentPoly::from_univariate(&vars, v, &r)
}

fn sub_into(r: &mut BTreeMap<i32, LaurentPoly>, d: i32, p: &LaurentPoly) {
    let cur = r.remove(&d).unwrap_or_else(LaurentPoly::zero);
    let next = &cur - p;
    if !next.is_zero() {
        r.insert(d, next);
    }
}

/// Monomial gcd helper exposed for callers that only need the monomial part.
pub fn monomial_content(p: &LaurentPoly) -> LaurentPoly {
    if p.is_zero() {
        return LaurentPoly::zero();
    }
    LaurentPoly::from_terms(p.vars().clone(), iter::once((p.min_exponents(), num_traits::One::one())))
}
