use super::template::{Coefficient, IdentityTemplate, Term};
use crate::algebra::{format_rational, RationalFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

pub fn render(t: &IdentityTemplate, format: Format) -> String {
    match format {
        Format::Text => render_text(t),
        Format::Json => super::json::to_json_string(t),
    }
}

/// Directives for bound parameters followed by the equation. Parsing the
/// result gives back a structurally equal template.
pub fn render_text(t: &IdentityTemplate) -> String {
    let mut out = String::new();
    if let Some(p) = &t.params {
        out.push_str(&format!("@params P={}, Q={}\n", format_rational(&p.p), format_rational(&p.q)));
    }
    if let Some(h) = &t.horadam {
        out.push_str(&format!("@params W: a0={}, a1={}, p0={}, p1={}\n", h.a0, h.a1, h.p0, h.p1));
    }
    out.push_str(&render_body(t));
    out
}

/// The equation alone: the original text when available, otherwise the
/// canonical sum `... = 0`.
pub fn render_body(t: &IdentityTemplate) -> String {
    if let Some(d) = &t.display {
        return d.clone();
    }
    canonical_body(t)
}

pub fn canonical_body(t: &IdentityTemplate) -> String {
    if t.terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, term) in t.terms.iter().enumerate() {
        let (neg, body) = term_text(term);
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out.push_str(" = 0");
    out
}

fn scalar_text(c: &RationalFunction) -> String {
    match c.constant_value() {
        Some(v) => format_rational(&v),
        None if c.is_polynomial() && c.numer().is_monomial() => c.to_string(),
        None => format!("({c})"),
    }
}

/// Sign and magnitude of one term.
pub fn term_text(term: &Term) -> (bool, String) {
    let scalar = term.coefficient.scalar();
    let neg = scalar.is_negative();
    let mag = if neg { -scalar } else { scalar.clone() };
    let mut parts: Vec<String> = Vec::new();
    if !mag.is_one() {
        parts.push(scalar_text(&mag));
    }
    if let Coefficient::Unknown { name, .. } = &term.coefficient {
        parts.push(name.clone());
    }
    if !term.q_exponent.is_zero() {
        let e = &term.q_exponent;
        if e.constant == 0 && e.coeffs.len() == 1 && e.coeffs.values().all(|c| *c == 1) {
            parts.push(format!("Q^{e}"));
        } else {
            parts.push(format!("Q^({e})"));
        }
    }
    for f in &term.factors {
        if f.exponent == 1 {
            parts.push(format!("{}[{}]", f.kind.letter(), f.index));
        } else {
            parts.push(format!("{}[{}]^{}", f.kind.letter(), f.index, f.exponent));
        }
    }
    if parts.is_empty() {
        parts.push("1".into());
    }
    (neg, parts.join("*"))
}
