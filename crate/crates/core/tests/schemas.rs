use std::path::PathBuf;

use jsonschema::JSONSchema;
use lucid_core::discover::{discover, DiscoverOptions};
use lucid_core::identity::{catalog, catalog_names, from_json_str, parse_identity, to_json_value};
use lucid_core::verify::verify;
use serde_json::{json, Value};

const SCHEMAS: [&str; 5] = ["template", "verdict", "report", "discovery", "verification"];

fn load(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(format!("{name}.schema.json"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn schema(name: &str) -> JSONSchema {
    let mut opts = JSONSchema::options();
    for other in SCHEMAS {
        opts.with_document(format!("urn:lucid:{other}"), load(other));
    }
    opts.compile(&load(name)).unwrap()
}

fn check(s: &JSONSchema, v: &Value) {
    if let Err(errors) = s.validate(v) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("{}\n{}", msgs.join("\n"), serde_json::to_string_pretty(v).unwrap());
    }
}

#[test]
fn catalog_templates_match_the_schema() {
    let s = schema("template");
    for name in catalog_names() {
        let v = to_json_value(&catalog(name).unwrap());
        check(&s, &v);
        let back = from_json_str(&v.to_string()).unwrap();
        assert_eq!(to_json_value(&back), v, "{name}");
    }
    let horadam = parse_identity("@params W: a0=1, a1=0, p0=P, p1=-Q\nW[k] = -Q*U[k-1]").unwrap();
    check(&s, &to_json_value(&horadam));
    check(&s, &to_json_value(&parse_identity("c1*U[k]^2 + c2*Q^k = 0").unwrap()));
}

#[test]
fn verdicts_match_the_schema() {
    let s = schema("verdict");
    let ok = verify(&catalog("GF.5").unwrap()).unwrap().to_json();
    check(&s, &serde_json::to_value(ok).unwrap());
    let bad = parse_identity("U[2k] = 2*U[k]*U[k+1]").unwrap();
    let v = serde_json::to_value(verify(&bad).unwrap().to_json()).unwrap();
    check(&s, &v);
    assert!(v["counterexample"].is_object());
}

#[test]
fn discovery_results_match_the_schema() {
    let d = schema("discovery");
    let r = schema("report");
    for text in [
        "U[3k] = c0*U[k+1]^3 + c1*U[k+1]^2*U[k] + c2*U[k+1]*U[k]^2 + c3*U[k]^3",
        "c1*(U[k-1]*U[k+2])^2 + c2*(U[k]*U[k+1])^2 + c3*U[2k+1]^2 = 0",
        "c1*U[k+1]^2 + c2*U[k]^2 + c3*U[k-1]^2 = 0",
    ] {
        let found = discover(&parse_identity(text).unwrap(), &DiscoverOptions::default()).unwrap();
        let v = serde_json::to_value(found.to_json()).unwrap();
        check(&d, &v);
        check(&r, &v["report"]);
    }
}

#[test]
fn malformed_documents_are_rejected() {
    let s = schema("verdict");
    assert!(!s.is_valid(&json!({"status": "Maybe"})));
    assert!(!s.is_valid(&json!({"status": "Refuted"})));
    assert!(!s.is_valid(&json!({"status": "Verified", "witness": {"monomial": "T_k", "coefficient": "1"}})));
    let t = schema("template");
    let factor = json!({"kind": "X", "index": {"coeffs": {}, "const": 0}, "exp": 1});
    let term = json!({"coeff": {"kind": "known", "value": "1"}, "qexp": {"coeffs": {}, "const": 0}, "factors": [factor]});
    assert!(!t.is_valid(&json!({"index_vars": ["k"], "terms": [term]})));
    assert!(!t.is_valid(&json!({"index_vars": ["k"]})));
    let r = schema("report");
    assert!(!r.is_valid(&json!({"unknowns": ["c1"], "rank": -1, "nullity": 0, "nullspace": [], "parameter_conditions": []})));
}
