//! JSON form of templates. Coefficients are stored as canonical text.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::index::IndexExpr;
use super::parse::parse_ratfunc;
use super::template::{Coefficient, IdentityTemplate, SeqFactor, SeqKind, Term};
use super::IdentityError;
use crate::algebra::{format_rational, RationalFunction};
use crate::lucas::{HoradamParams, SequenceParams};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexJson {
    pub coeffs: BTreeMap<String, i64>,
    #[serde(rename = "const")]
    pub constant: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CoeffJson {
    Known {
        value: String,
    },
    Unknown {
        name: String,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        scale: Option<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub kind: String,
    pub index: IndexJson,
    pub exp: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: CoeffJson,
    pub qexp: IndexJson,
    pub factors: Vec<FactorJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsJson {
    #[serde(rename = "P")]
    pub p: String,
    #[serde(rename = "Q")]
    pub q: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoradamJson {
    pub a0: String,
    pub a1: String,
    pub p0: String,
    pub p1: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemplateJson {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub name: Option<String>,
    pub index_vars: Vec<String>,
    pub terms: Vec<TermJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub params: Option<ParamsJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub horadam: Option<HoradamJson>,
}

fn index_json(e: &IndexExpr) -> IndexJson {
    IndexJson { coeffs: e.coeffs.clone(), constant: e.constant }
}

fn index_from(j: &IndexJson) -> IndexExpr {
    IndexExpr::from_parts(j.coeffs.clone(), j.constant)
}

pub fn to_json(t: &IdentityTemplate) -> TemplateJson {
    TemplateJson {
        name: t.name.clone(),
        index_vars: t.index_vars.clone(),
        terms: t
            .terms
            .iter()
            .map(|term| TermJson {
                coeff: match &term.coefficient {
                    Coefficient::Known(c) => CoeffJson::Known { value: c.to_string() },
                    Coefficient::Unknown { name, scale } => CoeffJson::Unknown {
                        name: name.clone(),
                        scale: (!scale.is_one()).then(|| scale.to_string()),
                    },
                },
                qexp: index_json(&term.q_exponent),
                factors: term
                    .factors
                    .iter()
                    .map(|f| FactorJson { kind: f.kind.letter().into(), index: index_json(&f.index), exp: f.exponent })
                    .collect(),
            })
            .collect(),
        params: t.params.as_ref().map(|p| ParamsJson { p: format_rational(&p.p), q: format_rational(&p.q) }),
        horadam: t.horadam.as_ref().map(|h| HoradamJson {
            a0: h.a0.to_string(),
            a1: h.a1.to_string(),
            p0: h.p0.to_string(),
            p1: h.p1.to_string(),
        }),
    }
}

pub fn to_json_value(t: &IdentityTemplate) -> serde_json::Value {
    serde_json::to_value(to_json(t)).expect("template JSON is always serializable")
}

pub fn to_json_string(t: &IdentityTemplate) -> String {
    serde_json::to_string_pretty(&to_json(t)).expect("template JSON is always serializable")
}

pub fn from_json(j: &TemplateJson) -> Result<IdentityTemplate, IdentityError> {
    let mut terms = Vec::new();
    for tj in &j.terms {
        let coefficient = match &tj.coeff {
            CoeffJson::Known { value } => Coefficient::Known(parse_ratfunc(value)?),
            CoeffJson::Unknown { name, scale } => Coefficient::Unknown {
                name: name.clone(),
                scale: match scale {
                    Some(s) => parse_ratfunc(s)?,
                    None => RationalFunction::one(),
                },
            },
        };
        let mut factors = Vec::new();
        for f in &tj.factors {
            let kind = SeqKind::from_letter(&f.kind).ok_or_else(|| IdentityError::UnknownSequence(f.kind.clone()))?;
            factors.push(SeqFactor::new(kind, index_from(&f.index), f.exp));
        }
        terms.push(Term { coefficient, q_exponent: index_from(&tj.qexp), factors });
    }
    let num = |s: &str| {
        parse_ratfunc(s)?.constant_value().ok_or_else(|| IdentityError::Invalid(format!("'{s}' is not a number")))
    };
    let params = match &j.params {
        Some(p) => Some(SequenceParams::new(num(&p.p)?, num(&p.q)?)),
        None => None,
    };
    let horadam = match &j.horadam {
        Some(h) => Some(HoradamParams {
            a0: parse_ratfunc(&h.a0)?,
            a1: parse_ratfunc(&h.a1)?,
            p0: parse_ratfunc(&h.p0)?,
            p1: parse_ratfunc(&h.p1)?,
        }),
        None => None,
    };
    let t = IdentityTemplate { name: j.name.clone(), index_vars: vec![], terms, params, horadam, display: None };
    t.canonicalize()
}

pub fn from_json_str(s: &str) -> Result<IdentityTemplate, IdentityError> {
    let j: TemplateJson = serde_json::from_str(s).map_err(|e| IdentityError::Invalid(format!("bad template JSON: {e}")))?;
    from_json(&j)
}
