use lucid_core::algebra::format_rational;
use lucid_core::discover::{Discovery, SolutionReport};
use lucid_core::identity::{render_text, to_json, IdentityTemplate, TemplateJson};
use lucid_core::verify::{Verdict, VerdictJson};
use serde::Serialize;

#[derive(Serialize)]
pub struct VerificationJson {
    pub identity: TemplateJson,
    pub text: String,
    pub verdict: VerdictJson,
}

impl VerificationJson {
    pub fn new(t: &IdentityTemplate, v: &Verdict) -> Self {
        VerificationJson { identity: to_json(t), text: render_text(t), verdict: v.to_json() }
    }
}

#[derive(Serialize)]
pub struct CatalogEntryJson {
    pub name: &'static str,
    pub summary: &'static str,
    pub text: &'static str,
}

#[derive(Serialize)]
pub struct EvalJson {
    pub kind: &'static str,
    pub k: i64,
    #[serde(rename = "P")]
    pub p: String,
    #[serde(rename = "Q")]
    pub q: String,
    pub method: &'static str,
    pub value: String,
}

#[derive(Serialize)]
pub struct BenchRowJson {
    pub method: &'static str,
    pub seconds: f64,
    pub digits: usize,
}

#[derive(Serialize)]
pub struct BenchJson {
    #[serde(rename = "P")]
    pub p: String,
    #[serde(rename = "Q")]
    pub q: String,
    pub k: u64,
    pub rows: Vec<BenchRowJson>,
}

pub fn to_json_text<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output types serialize")
}

pub fn verdict_text(v: &Verdict) -> String {
    let mut out = format!("{:?}\n", v.status);
    if let Some(w) = &v.witness {
        out.push_str(&format!("  witness: {} with coefficient {}\n", w.monomial, w.coefficient));
    }
    if let Some(c) = &v.counterexample {
        let mut at = vec![format!("P={}", format_rational(&c.p)), format!("Q={}", format_rational(&c.q))];
        at.extend(c.extra.iter().map(|(k, x)| format!("{k}={}", format_rational(x))));
        at.extend(c.indices.iter().map(|(k, x)| format!("{k}={x}")));
        out.push_str(&format!("  counterexample: {} gives {}\n", at.join(", "), format_rational(&c.value)));
    }
    if !v.guards.is_empty() {
        out.push_str(&format!("  assuming: {}\n", v.guards.join(", ")));
    }
    out
}

pub fn verification_text(t: &IdentityTemplate, v: &Verdict) -> String {
    let mut out = String::new();
    if let Some(n) = &t.name {
        out.push_str(&format!("{n}\n"));
    }
    for line in render_text(t).lines() {
        out.push_str(&format!("  {line}\n"));
    }
    out.push_str(&verdict_text(v));
    out
}

fn vector_text(names: &[String], v: &[impl ToString]) -> String {
    let parts: Vec<String> = names.iter().zip(v).map(|(n, x)| format!("{n} = {}", x.to_string())).collect();
    parts.join(", ")
}

pub fn report_text(r: &SolutionReport) -> String {
    let mut out = format!("rank {}, nullity {}\n", r.rank, r.nullity);
    if let Some(d) = r.determinant_factored() {
        out.push_str(&format!("determinant: {d}\n"));
    }
    match &r.particular {
        None => out.push_str("system is inconsistent\n"),
        Some(p) if p.iter().any(|x| !x.is_zero()) => {
            out.push_str(&format!("particular: {}\n", vector_text(&r.unknowns, p)));
        }
        Some(_) => {}
    }
    for v in &r.nullspace {
        out.push_str(&format!("nullspace: {}\n", vector_text(&r.unknowns, v)));
    }
    if !r.parameter_conditions.is_empty() {
        let c: Vec<String> = r.parameter_conditions.iter().map(|f| format!("{f} = 0")).collect();
        out.push_str(&format!("rank changes where: {}\n", c.join(" or ")));
    }
    out
}

pub fn discovery_text(d: &Discovery) -> String {
    let samples: Vec<String> = d
        .system
        .samples
        .iter()
        .map(|s| s.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(","))
        .collect();
    let mut out = format!("samples: {}\n", samples.join("; "));
    out.push_str(&report_text(&d.report));
    if d.candidates.is_empty() {
        out.push_str("no candidate identity\n");
    }
    for (i, c) in d.candidates.iter().enumerate() {
        let names: Vec<String> = c.values.iter().map(|(n, _)| n.clone()).collect();
        let values: Vec<String> = c.values.iter().map(|(_, v)| v.to_string()).collect();
        out.push_str(&format!("candidate {}: {}\n", i + 1, vector_text(&names, &values)));
        if c.is_trivial() {
            out.push_str("  all terms cancel\n");
            continue;
        }
        for line in render_text(&c.identity).lines() {
            out.push_str(&format!("  {line}\n"));
        }
        out.push_str(&verdict_text(&c.verdict));
    }
    out
}
