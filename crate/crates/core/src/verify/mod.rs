//! Decide identities for all integer indices by Binet expansion, with a
//! randomized numeric refuter.

pub mod binet;
pub mod numeric;
pub mod quad;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use binet::{binet_expand, rewrite_w, BinetPoly};
pub use numeric::{numeric_check, Counterexample};
pub use quad::{Quad, QuadField};

use crate::algebra::{format_rational, AlgebraError};
use crate::identity::{IdentityError, IdentityTemplate};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("template has unknown coefficients: {}", .0.join(", "))]
    HasUnknowns(Vec<String>),
    #[error("Binet expansion needs P^2 - 4Q != 0")]
    DegenerateDiscriminant,
    #[error("unsupported template: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Identity(#[from] IdentityError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Verified,
    Refuted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub monomial: String,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub status: Status,
    pub witness: Option<Witness>,
    pub counterexample: Option<Counterexample>,
    /// Nonconstant denominators of the coefficients; the identity is claimed
    /// only where they do not vanish.
    pub guards: Vec<String>,
}

impl Verdict {
    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Trials for the counterexample search after a refutation.
    pub trials: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { trials: 100, seed: 0 }
    }
}

pub fn verify(t: &IdentityTemplate) -> Result<Verdict, VerifyError> {
    verify_with(t, &VerifyOptions::default())
}

pub fn verify_with(t: &IdentityTemplate, opts: &VerifyOptions) -> Result<Verdict, VerifyError> {
    let cleared = binet::expand_cleared(t)?;
    let reduced = binet::reduce(&cleared);
    let guards = t.guards().iter().map(|g| format!("{g} != 0")).collect();
    let Some((key, group)) = reduced.groups.first() else {
        return Ok(Verdict { status: Status::Verified, witness: None, counterexample: None, guards });
    };
    let coefficient = binet::group_coefficient(&cleared, group)?;
    let witness = Witness { monomial: binet::monomial_text(&reduced.index_vars, key), coefficient: coefficient.to_string() };
    Ok(Verdict {
        status: Status::Refuted,
        witness: Some(witness),
        counterexample: numeric_check(t, opts.trials, opts.seed),
        guards,
    })
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleJson {
    #[serde(rename = "P")]
    pub p: String,
    #[serde(rename = "Q")]
    pub q: String,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub params: BTreeMap<String, String>,
    pub indices: BTreeMap<String, i64>,
    pub value: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct VerdictJson {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<CounterexampleJson>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub guards: Vec<String>,
}

impl Counterexample {
    pub fn to_json(&self) -> CounterexampleJson {
        CounterexampleJson {
            p: format_rational(&self.p),
            q: format_rational(&self.q),
            params: self.extra.iter().map(|(k, v)| (k.clone(), format_rational(v))).collect(),
            indices: self.indices.clone(),
            value: format_rational(&self.value),
        }
    }
}

impl Verdict {
    pub fn to_json(&self) -> VerdictJson {
        VerdictJson {
            status: self.status,
            witness: self.witness.clone(),
            counterexample: self.counterexample.as_ref().map(Counterexample::to_json),
            guards: self.guards.clone(),
        }
    }
}
