use std::collections::BTreeMap;

use super::DiscoverError;
use crate::algebra::RationalFunction;
use crate::identity::{Bindings, IdentityTemplate};

/// One assignment of the index variables.
pub type Sample = BTreeMap<String, i64>;

pub fn sample_text(s: &Sample) -> String {
    let parts: Vec<String> = s.iter().map(|(k, v)| format!("{k}={v}")).collect();
    parts.join(", ")
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnsatzSystem {
    /// Row `r`, column `c`: multiplier of unknown `c` at sample `r`.
    pub matrix: Vec<Vec<RationalFunction>>,
    /// Negated sum of the known terms at each sample.
    pub rhs: Vec<RationalFunction>,
    pub unknowns: Vec<String>,
    pub samples: Vec<Sample>,
}

impl AnsatzSystem {
    pub fn is_homogeneous(&self) -> bool {
        self.rhs.iter().all(RationalFunction::is_zero)
    }
}

/// Row of the system at one sample, or the reason it is singular.
fn row(t: &IdentityTemplate, unknowns: &[String], s: &Sample) -> Result<(Vec<RationalFunction>, RationalFunction), String> {
    let mut b = Bindings::new();
    for (k, v) in s {
        b = b.index(k, *v);
    }
    let inst = t.substitute(&b).map_err(|e| e.to_string())?;
    let mut entries = vec![RationalFunction::zero(); unknowns.len()];
    let mut known = RationalFunction::zero();
    for term in &inst.terms {
        if !term.factors.is_empty() || !term.q_exponent.is_zero() {
            return Err("sample leaves an index unbound".into());
        }
        match term.coefficient.unknown_name() {
            Some(name) => {
                let c = unknowns.iter().position(|u| u == name).expect("unknown is listed");
                entries[c] = &entries[c] + term.coefficient.scalar();
            }
            None => known = &known + term.coefficient.scalar(),
        }
    }
    Ok((entries, -&known))
}

/// The primary index runs over a window of `n + extra` values starting at
/// `-⌊(n−1)/2⌋`, growing alternately to the right and left past singular
/// samples up to `|k| ≤ n + 4`. Other index variables are fixed to 1, 2, 3, …
pub fn default_samples(t: &IdentityTemplate, extra: usize) -> Result<Vec<Sample>, DiscoverError> {
    let unknowns = t.unknowns();
    let n = unknowns.len();
    if n == 0 {
        return Err(DiscoverError::NoUnknowns);
    }
    let needed = n + extra;
    let limit = (n + 4) as i64;
    let Some(primary) = t.primary_index() else {
        // No index variable: a single row is all there is.
        let s = Sample::new();
        return match row(t, &unknowns, &s) {
            Ok(_) if needed == 1 => Ok(vec![s]),
            Ok(_) => Err(DiscoverError::SamplingFailure { needed, found: 1, limit }),
            Err(reason) => Err(DiscoverError::SingularSample { sample: String::new(), reason }),
        };
    };
    let mut base = Sample::new();
    let mut next = 1;
    for v in &t.index_vars {
        if v != primary {
            base.insert(v.clone(), next);
            next += 1;
        }
    }
    let start = -(((n as i64) - 1) / 2);
    let mut order: Vec<i64> = (start..start + needed as i64).collect();
    let (mut right, mut left) = (start + needed as i64, start - 1);
    while right <= limit || left >= -limit {
        if right <= limit {
            order.push(right);
            right += 1;
        }
        if left >= -limit {
            order.push(left);
            left -= 1;
        }
    }
    let mut out = Vec::new();
    for k in order.into_iter().filter(|k| k.abs() <= limit) {
        let mut s = base.clone();
        s.insert(primary.to_string(), k);
        if row(t, &unknowns, &s).is_ok() {
            out.push(s);
            if out.len() == needed {
                out.sort_by_key(|s| s[primary]);
                return Ok(out);
            }
        }
    }
    Err(DiscoverError::SamplingFailure { needed, found: out.len(), limit })
}

pub fn build_system(t: &IdentityTemplate, samples: &[Sample]) -> Result<AnsatzSystem, DiscoverError> {
    let unknowns = t.unknowns();
    if unknowns.is_empty() {
        return Err(DiscoverError::NoUnknowns);
    }
    let mut matrix = Vec::new();
    let mut rhs = Vec::new();
    for s in samples {
        let (r, b) = row(t, &unknowns, s)
            .map_err(|reason| DiscoverError::SingularSample { sample: sample_text(s), reason })?;
        matrix.push(r);
        rhs.push(b);
    }
    Ok(AnsatzSystem { matrix, rhs, unknowns, samples: samples.to_vec() })
}
