use lucid_core::identity::{
    catalog, catalog_names, entries, from_json_str, generic_of, parse_identity, render_text, to_json_string, Bindings,
    IdentityError, SeqKind,
};

#[test]
fn four_term_square_identity() {
    let t = catalog("GF.9").unwrap();
    assert_eq!(t.terms.len(), 4);
    assert_eq!(t.index_vars, vec!["k"]);
    assert!(t.terms.iter().all(|term| term.factors.len() == 1 && term.factors[0].exponent == 2));
}

#[test]
fn trivial_identity_is_zero() {
    let t = parse_identity("U[k] = U[k]").unwrap();
    assert!(t.is_zero());
    let t = parse_identity("U[k+1] - P*U[k] + Q*U[k-1] = 0").unwrap();
    assert_eq!(t.terms.len(), 3, "recurrence is not folded symbolically");
}

#[test]
fn constant_indices_fold() {
    let t = parse_identity("U[3]*U[k] = (P^2 - Q)*U[k]").unwrap();
    assert!(t.is_zero());
    let t = parse_identity("@params P=1, Q=-1\nU[10] = 55").unwrap();
    assert!(t.is_zero());
}

#[test]
fn every_entry_roundtrips_through_text_and_json() {
    for e in entries() {
        let t = catalog(e.name).unwrap();
        let text = render_text(&t);
        let back = parse_identity(&text).unwrap();
        assert_eq!(back, t, "text roundtrip of {}:\n{text}", e.name);

        let mut canonical = t.clone();
        canonical.display = None;
        let back = parse_identity(&render_text(&canonical)).unwrap();
        assert_eq!(back, t, "canonical text roundtrip of {}", e.name);

        let json = to_json_string(&t);
        let back = from_json_str(&json).unwrap();
        assert_eq!(back, t, "json roundtrip of {}:\n{json}", e.name);
        assert_eq!(back.name.as_deref(), Some(e.name));
    }
}

#[test]
fn generic_entries_specialize_to_fibonacci_entries() {
    let mut checked = 0;
    for name in catalog_names() {
        let Some(g) = generic_of(name) else { continue };
        let f = catalog(name).unwrap();
        let s = catalog(&g).unwrap().substitute(&Bindings::fibonacci()).unwrap();
        assert!(s.is_proportional(&f), "{g} at P=1, Q=-1 is not {name}:\n{}\n{}", render_text(&s), render_text(&f));
        checked += 1;
    }
    assert_eq!(checked, 14);
}

#[test]
fn index_substitution() {
    let t = catalog("GF.2").unwrap().substitute(&Bindings::new().index("n", 3)).unwrap();
    assert_eq!(t, catalog("CAT.3").unwrap());
}

#[test]
fn parse_errors() {
    assert!(matches!(parse_identity("X[k] = 0"), Err(IdentityError::UnknownSequence(_))));
    assert!(matches!(parse_identity("U[k*n] = 0"), Err(IdentityError::NonAffine(_))));
    match parse_identity("U[k] = U[k+1") {
        Err(IdentityError::Syntax { line: 1, .. }) => {}
        other => panic!("{other:?}"),
    }
    assert!(parse_identity("c1*c2*U[k] = 0").is_err());
    assert!(parse_identity("U[k] = U[Q]").is_err());
}

#[test]
fn unknown_name_lists_entries() {
    let err = catalog("GF.99").unwrap_err();
    let msg = err.to_string();
    assert!(msg.contains("GF.99") && msg.contains("GF.1") && msg.contains("F.14"), "{msg}");
}

#[test]
fn unknowns_and_horadam() {
    let t = parse_identity("U[3k] = c0*U[k+1]^3 + c1*U[k+1]^2*U[k] + c2*U[k+1]*U[k]^2 + c3*U[k]^3").unwrap();
    assert_eq!(t.unknowns(), vec!["c0", "c1", "c2", "c3"]);
    let w = parse_identity("@params W: a0=2, a1=P, p0=P, p1=-Q\nW[k] = V[k]").unwrap();
    assert!(w.is_zero() || w.uses_w());
    assert!(w.terms.iter().all(|t| t.factors.iter().all(|f| f.kind != SeqKind::U)));
}
