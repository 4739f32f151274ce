use lucid_core::algebra::{rat, ratio, Rational, RationalFunction};
use lucid_core::identity::{catalog, catalog_names, generic_of, parse_identity, Bindings, Coefficient, IdentityTemplate};
use lucid_core::lucas::{lucas_value, LucasKind, SequenceParams};
use lucid_core::verify::{binet_expand, numeric_check, verify, Status, VerifyError};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EXAMPLE2_CANDIDATE: &str =
    "Q^2/P^2*(U[k-1]*U[k+2])^2 + (P^2-Q)^2/P^2*(U[k]*U[k+1])^2 - U[2k+1]^2 = 0";

fn parse(text: &str) -> IdentityTemplate {
    parse_identity(text).unwrap()
}

/// Bump the coefficient of one term by +1.
fn perturb(t: &IdentityTemplate, term: usize) -> IdentityTemplate {
    let mut out = t.clone();
    out.display = None;
    let i = term % out.terms.len();
    if let Coefficient::Known(c) = &out.terms[i].coefficient {
        out.terms[i].coefficient = Coefficient::Known(c + &RationalFunction::one());
    }
    out.canonicalize().unwrap()
}

#[test]
fn expansion_examples() {
    assert!(binet_expand(&parse("U[k] - U[k] = 0")).unwrap().is_zero());
    assert!(binet_expand(&catalog("GF.3").unwrap()).unwrap().is_zero());

    // U_k = (T - S)/(alpha - alphabar)
    let e = binet_expand(&parse("U[k] = 0")).unwrap();
    assert_eq!(e.terms.len(), 2);
    let inv = RationalFunction::from_poly(
        &lucid_core::algebra::LaurentPoly::var("alpha") - &lucid_core::algebra::LaurentPoly::var("alphabar"),
    )
    .inv()
    .unwrap();
    assert_eq!(e.terms[&vec![1, 0]], inv);
    assert_eq!(e.terms[&vec![0, 1]], -&inv);
    assert_eq!(e.monomial_text(&[1, 0]), "T_k");
    assert_eq!(e.monomial_text(&[0, 1]), "S_k");
}

#[test]
fn catalog_examples_verify() {
    for name in ["GF.8", "GF.13", "GF.2", "GF.5"] {
        let v = verify(&catalog(name).unwrap()).unwrap();
        assert_eq!(v.status, Status::Verified, "{name}");
        assert!(v.witness.is_none());
    }
    assert_eq!(verify(&catalog("GF.5").unwrap()).unwrap().guards, vec!["P != 0".to_string()]);
    assert!(verify(&catalog("GF.8").unwrap()).unwrap().guards.is_empty());
}

#[test]
fn every_catalog_entry_verifies() {
    for name in catalog_names() {
        let v = verify(&catalog(name).unwrap()).unwrap();
        assert!(v.is_verified(), "{name}: {:?}", v.witness);
    }
}

#[test]
fn example_two_candidate_is_refuted() {
    let t = parse(EXAMPLE2_CANDIDATE);
    let v = verify(&t).unwrap();
    assert_eq!(v.status, Status::Refuted);
    let w = v.witness.as_ref().unwrap();
    assert_eq!(w.monomial, "S_k^4");
    assert_eq!(v.guards, vec!["P != 0".to_string()]);

    let c = v.counterexample.expect("counterexample within 100 trials");
    assert_eq!((c.p.clone(), c.q.clone()), (ratio(4, 5), rat(4)));
    assert_eq!(c.indices["k"], 5);
    // Recompute the template sum at the reported point from sequence values.
    let sp = SequenceParams::new(c.p.clone(), c.q.clone());
    let u = |k: i64| lucas_value(LucasKind::U, &sp, k).unwrap();
    let (p, q) = (c.p.clone(), c.q.clone());
    let k = 5;
    let d = &p * &p - &q;
    let lhs: Rational = &q * &q / (&p * &p) * (u(k - 1) * u(k + 2)).pow(2)
        + &d * &d / (&p * &p) * (u(k) * u(k + 1)).pow(2)
        - u(2 * k + 1).pow(2);
    assert_ne!(lhs, rat(0));
    assert_eq!(c.value, lhs);
}

#[test]
fn numeric_check_examples() {
    let gf2 = catalog("GF.2").unwrap().substitute(&Bindings::new().index("n", 3)).unwrap();
    assert!(numeric_check(&gf2, 200, 0).is_none());
    assert!(numeric_check(&IdentityTemplate::zero(), 100, 0).is_none());
    assert!(numeric_check(&parse(EXAMPLE2_CANDIDATE), 100, 0).is_some());
}

#[test]
fn verify_rejects_unknowns() {
    let e = verify(&parse("c1*U[k]^2 = 0")).unwrap_err();
    assert_eq!(e, VerifyError::HasUnknowns(vec!["c1".into()]));
}

#[test]
fn degenerate_discriminant_is_rejected() {
    let t = parse("@params P=2, Q=1\nU[k+1] = 2*U[k] - U[k-1]");
    assert_eq!(verify(&t).unwrap_err(), VerifyError::DegenerateDiscriminant);
}

#[test]
fn split_discriminant_parameters() {
    // P = 3, Q = 2: roots 1 and 2, U_k = 2^k - 1
    assert!(verify(&parse("@params P=3, Q=2\nU[k+1] = 2*U[k] + 1*U[1]")).unwrap().is_verified());
    assert!(!verify(&parse("@params P=3, Q=2\nU[k+1] = 2*U[k]")).unwrap().is_verified());
}

#[test]
fn soundness_cross_check() {
    for name in catalog_names() {
        let t = catalog(name).unwrap();
        assert!(verify(&t).unwrap().is_verified());
        assert!(numeric_check(&t, 500, 7).is_none(), "{name}");
    }
}

#[test]
fn perturbed_entries_are_refuted() {
    let names = catalog_names();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..20 {
        let name = names[rng.gen_range(0..names.len())];
        let t = catalog(name).unwrap();
        let bumped = perturb(&t, rng.gen_range(0..t.terms.len()));
        let v = verify(&bumped).unwrap();
        assert_eq!(v.status, Status::Refuted, "{name}");
        assert!(v.counterexample.is_some(), "{name}: no counterexample");
    }
}

#[test]
fn specialization_keeps_verified_entries_verified() {
    for name in catalog_names() {
        if !name.starts_with("GF.") {
            continue;
        }
        let t = catalog(name).unwrap();
        assert!(verify(&t).unwrap().is_verified());
        let f = t.substitute(&Bindings::fibonacci()).unwrap();
        assert!(verify(&f).unwrap().is_verified(), "{name} at P=1, Q=-1");
    }
    assert_eq!(generic_of("F.9").as_deref(), Some("GF.9"));
}

#[test]
fn catalog_instances() {
    let t = catalog("GF.13").unwrap().substitute(&Bindings::new().index("m", 1).index("l", 1)).unwrap();
    assert!(t.is_zero());
    let t = catalog("GF.14").unwrap().substitute(&Bindings::new().index("m", 1).index("l", 2).index("s", 3)).unwrap();
    assert_eq!(t.index_vars, vec!["k".to_string()]);
    assert!(t.terms.len() >= 4);
    assert!(verify(&t).unwrap().is_verified());
}

#[test]
fn horadam_instances() {
    let t = parse("@params W: a0=1, a1=0, p0=P, p1=-Q\nW[k] = -Q*U[k-1]");
    assert!(verify(&t).unwrap().is_verified());
    let t = parse("@params W: a0=a0, a1=a1, p0=p0, p1=p1\nW[k+2] = p0*W[k+1] + p1*W[k]");
    assert!(verify(&t).unwrap().is_verified());
    let t = parse("@params W: a0=a0, a1=a1, p0=p0, p1=p1\nW[k+2] = p0*W[k+1] - p1*W[k]");
    assert!(!verify(&t).unwrap().is_verified());
}

fn arb_term() -> impl Strategy<Value = String> {
    let coeff = prop::sample::select(vec!["1", "-2", "P", "Q", "(P^2-Q)", "3/Q", "-P*Q"]);
    let factor = (prop::sample::select(vec!["U", "V"]), -2..=2i64, 1..=2u32).prop_map(|(s, d, e)| {
        let idx = match d {
            0 => "k".to_string(),
            d if d > 0 => format!("k+{d}"),
            d => format!("k{d}"),
        };
        format!("{s}[{idx}]^{e}")
    });
    (coeff, prop::collection::vec(factor, 1..=2), prop::bool::ANY).prop_map(|(c, f, double)| {
        let mut parts = vec![c.to_string()];
        parts.extend(f);
        if double {
            parts.push("U[2k]".into());
        }
        parts.join("*")
    })
}

fn arb_template() -> impl Strategy<Value = IdentityTemplate> {
    prop::collection::vec(arb_term(), 1..=3).prop_map(|ts| parse(&format!("{} = 0", ts.join(" + "))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn expansion_is_linear(a in arb_template(), b in arb_template()) {
        let sum = a.plus(&b).unwrap();
        let lhs = binet_expand(&sum).unwrap();
        let rhs = binet_expand(&a).unwrap().add(&binet_expand(&b).unwrap());
        prop_assert_eq!(lhs.terms, rhs.terms);
    }

    #[test]
    fn verdict_agrees_with_numeric_check(a in arb_template(), seed in 0..1000u64) {
        let v = verify(&a).unwrap();
        let found = numeric_check(&a, 50, seed);
        if v.is_verified() {
            prop_assert!(found.is_none());
        }
        if let Some(c) = found {
            prop_assert_ne!(c.value, rat(0));
            prop_assert_eq!(v.status, Status::Refuted);
        }
    }
}
