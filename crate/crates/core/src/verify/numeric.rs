//! Randomized exact evaluation at concrete parameters and indices.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Rational, RationalFunction};
use crate::identity::{Bindings, IdentityTemplate};

/// A concrete assignment at which the template does not vanish.
#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub p: Rational,
    pub q: Rational,
    /// Other free parameters, e.g. Horadam initial values.
    pub extra: BTreeMap<String, Rational>,
    pub indices: BTreeMap<String, i64>,
    /// Value of the template sum (left side minus right side).
    pub value: Rational,
}

pub const PARAM_RANGE: i64 = 9;
pub const INDEX_RANGE: i64 = 6;

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    let n = rng.gen_range(-PARAM_RANGE..=PARAM_RANGE);
    let d = rng.gen_range(1..=PARAM_RANGE);
    Rational::new(n.into(), d.into())
}

fn free_parameters(t: &IdentityTemplate) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    let mut add = |c: &RationalFunction| out.extend(c.used_vars());
    for term in &t.terms {
        add(term.coefficient.scalar());
    }
    if let Some(h) = &t.horadam {
        for c in [&h.a0, &h.a1, &h.p0, &h.p1] {
            add(c);
        }
    }
    out.remove("P");
    out.remove("Q");
    out
}

/// Sum of a template whose indices and parameters are all bound.
fn constant_value(t: &IdentityTemplate) -> Option<Rational> {
    let mut acc = Rational::zero();
    for term in &t.terms {
        if !term.factors.is_empty() || !term.q_exponent.is_zero() {
            return None;
        }
        acc += term.coefficient.scalar().constant_value()?;
    }
    Some(acc)
}

/// Evaluate at `trials` random points and return the first nonzero one.
/// Points where a coefficient is singular, `Q = 0` or `Δ = 0` are skipped
/// and still count as trials.
pub fn numeric_check(t: &IdentityTemplate, trials: usize, seed: u64) -> Option<Counterexample> {
    if t.is_zero() || !t.unknowns().is_empty() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let extras = free_parameters(t);
    let mut t = t.clone();
    t.display = None;
    for _ in 0..trials {
        let mut b = Bindings::new();
        let (p, q) = match &t.params {
            Some(params) => (params.p.clone(), params.q.clone()),
            None => {
                let p = random_rational(&mut rng);
                let q = random_rational(&mut rng);
                b = b.number("P", p.clone()).number("Q", q.clone());
                (p, q)
            }
        };
        let mut extra = BTreeMap::new();
        for v in &extras {
            let x = random_rational(&mut rng);
            b = b.number(v, x.clone());
            extra.insert(v.clone(), x);
        }
        let mut indices = BTreeMap::new();
        for v in &t.index_vars {
            let k = rng.gen_range(-INDEX_RANGE..=INDEX_RANGE);
            b = b.index(v, k);
            indices.insert(v.clone(), k);
        }
        let delta = &p * &p - Rational::from_integer(4.into()) * &q;
        if q.is_zero() || delta.is_zero() {
            continue;
        }
        let Ok(s) = t.substitute(&b) else { continue };
        let Some(value) = constant_value(&s) else { continue };
        if !value.is_zero() {
            return Some(Counterexample { p, q, extra, indices, value });
        }
    }
    None
}
