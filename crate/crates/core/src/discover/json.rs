//! JSON forms of solver reports and discovery results. Rational functions
//! are stored as canonical text; vectors follow the order of `unknowns`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::engine::{Candidate, Discovery};
use super::solve::SolutionReport;
use crate::identity::{to_json, TemplateJson};
use crate::verify::VerdictJson;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub unknowns: Vec<String>,
    pub rank: usize,
    pub nullity: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub determinant: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub determinant_factored: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub particular: Option<Vec<String>>,
    pub nullspace: Vec<Vec<String>>,
    pub parameter_conditions: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueJson {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateJson {
    pub values: Vec<ValueJson>,
    pub identity: TemplateJson,
    pub text: String,
    pub verdict: VerdictJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscoveryJson {
    pub samples: Vec<BTreeMap<String, i64>>,
    pub report: ReportJson,
    pub candidates: Vec<CandidateJson>,
}

impl SolutionReport {
    pub fn to_json(&self) -> ReportJson {
        let texts = |v: &Vec<_>| v.iter().map(ToString::to_string).collect::<Vec<String>>();
        ReportJson {
            unknowns: self.unknowns.clone(),
            rank: self.rank,
            nullity: self.nullity,
            determinant: self.determinant.as_ref().map(ToString::to_string),
            determinant_factored: self.determinant_factored(),
            particular: self.particular.as_ref().map(texts),
            nullspace: self.nullspace.iter().map(texts).collect(),
            parameter_conditions: self.parameter_conditions.iter().map(ToString::to_string).collect(),
        }
    }
}

impl Candidate {
    pub fn to_json(&self) -> CandidateJson {
        CandidateJson {
            values: self.values.iter().map(|(n, v)| ValueJson { name: n.clone(), value: v.to_string() }).collect(),
            identity: to_json(&self.identity),
            text: crate::identity::render_text(&self.identity),
            verdict: self.verdict.to_json(),
        }
    }
}

impl Discovery {
    pub fn to_json(&self) -> DiscoveryJson {
        DiscoveryJson {
            samples: self.system.samples.clone(),
            report: self.report.to_json(),
            candidates: self.candidates.iter().map(Candidate::to_json).collect(),
        }
    }
}
