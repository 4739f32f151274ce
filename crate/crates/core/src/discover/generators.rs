//! Closed-form identity families: powers of a multiple index in terms of
//! `U_k`, `U_{k+1}`, and interpolation identities over a set of nodes.

use super::DiscoverError;
use crate::algebra::{rat, Rational, RationalFunction};
use crate::identity::{IdentityTemplate, IndexExpr, SeqFactor, SeqKind, Term};
use crate::lucas::{horadam, lucas_symbolic, lucas_value, HoradamParams, LucasKind, SequenceParams};
use crate::verify::{verify, Verdict};

#[derive(Clone, Debug)]
pub struct Generated {
    pub template: IdentityTemplate,
    pub verdict: Verdict,
}

fn binomial(n: u32, k: u32) -> Rational {
    rat((0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64))
}

fn u(index: IndexExpr, exp: u32) -> SeqFactor {
    SeqFactor::new(SeqKind::U, index, exp)
}

/// `U_{mk}` (or `V_{mk}`) as a form of degree `m` in `U_k`, `U_{k+1}`.
pub fn power_representation(m: u32, kind: LucasKind) -> Result<Generated, DiscoverError> {
    if m == 0 {
        return Err(DiscoverError::InvalidNodes("m must be positive".into()));
    }
    let k = IndexExpr::var("k");
    let lhs_kind = if kind == LucasKind::U { SeqKind::U } else { SeqKind::V };
    let mut terms = vec![Term::known(RationalFunction::one(), vec![SeqFactor::new(lhs_kind, k.scale(m as i64), 1)])];
    for i in 0..=m {
        let sign = if (i % 2 == 1) == (kind == LucasKind::U) { 1 } else { -1 };
        let c = lucas_symbolic(kind, i as i64).scale(&(binomial(m, i) * rat(sign)));
        // Moved to the left side.
        terms.push(Term::known(-&c, vec![u(k.clone(), i), u(k.shift(1), m - i)]));
    }
    let name = format!("powrep.{}.{m}", if kind == LucasKind::U { "U" } else { "V" });
    let template = IdentityTemplate::new(terms).with_name(&name).canonicalize()?;
    let verdict = verify(&template)?;
    Ok(Generated { template, verdict })
}

/// `U_{mk} = Σ cᵢ U_k^i U_{k+1}^{m−i}` with unknowns `c0 … cm`.
pub fn power_ansatz(m: u32, kind: LucasKind) -> Result<IdentityTemplate, DiscoverError> {
    let k = IndexExpr::var("k");
    let lhs_kind = if kind == LucasKind::U { SeqKind::U } else { SeqKind::V };
    let mut terms = vec![Term::known(RationalFunction::one(), vec![SeqFactor::new(lhs_kind, k.scale(m as i64), 1)])];
    for i in 0..=m {
        terms.push(Term::unknown(&format!("c{i}"), vec![u(k.clone(), i), u(k.shift(1), m - i)]).negated());
    }
    Ok(IdentityTemplate::new(terms).canonicalize()?)
}

/// Where the shifted sum is evaluated: a free index variable or a number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeIndex {
    Symbolic(String),
    Value(i64),
}

impl NodeIndex {
    fn expr(&self) -> IndexExpr {
        match self {
            NodeIndex::Symbolic(v) => IndexExpr::var(v),
            NodeIndex::Value(x) => IndexExpr::constant(*x),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum InterpVariant {
    /// `U_{k+x}^n = Σᵢ U_{k+dᵢ}^n Πⱼ≠ᵢ U_{x−dⱼ} / U_{dᵢ−dⱼ}`.
    Lagrange,
    /// The `x = 0` form `U_k^n = Σᵢ Q^{−n dᵢ} U_{k+dᵢ}^n Πⱼ≠ᵢ U_{dⱼ} / U_{dⱼ−dᵢ}`.
    QScaled,
    /// `W_{k+x}^n = Σᵢ W_{k+dᵢ}^n Πⱼ≠ᵢ W_{x−dⱼ+s} / W_{dᵢ−dⱼ+s}`; valid when `W_s = 0`.
    Horadam { s: i64, params: HoradamParams<RationalFunction> },
}

fn check_nodes(n: u32, nodes: &[i64]) -> Result<(), DiscoverError> {
    if nodes.len() != n as usize + 1 {
        return Err(DiscoverError::InvalidNodes(format!("expected {} nodes, got {}", n + 1, nodes.len())));
    }
    for (i, a) in nodes.iter().enumerate() {
        if nodes[..i].contains(a) {
            return Err(DiscoverError::InvalidNodes(format!("node {a} is repeated")));
        }
    }
    Ok(())
}

fn u_value(params: &Option<SequenceParams<Rational>>, k: i64) -> Result<RationalFunction, DiscoverError> {
    Ok(match params {
        Some(p) => RationalFunction::constant(lucas_value(LucasKind::U, p, k)?),
        None => lucas_symbolic(LucasKind::U, k),
    })
}

fn q_value(params: &Option<SequenceParams<Rational>>, e: i64) -> Result<RationalFunction, DiscoverError> {
    let q = match params {
        Some(p) => RationalFunction::constant(p.q.clone()),
        None => RationalFunction::var("Q"),
    };
    Ok(q.powi(e)?)
}

pub fn interpolation_identity(
    n: u32,
    nodes: &[i64],
    x: &NodeIndex,
    variant: &InterpVariant,
    params: Option<SequenceParams<Rational>>,
) -> Result<Generated, DiscoverError> {
    check_nodes(n, nodes)?;
    let k = IndexExpr::var("k");
    let singular = |what: String| DiscoverError::InvalidNodes(format!("{what} vanishes at these parameters"));
    let mut terms = Vec::new();
    let mut horadam_params = None;
    match variant {
        InterpVariant::Lagrange => {
            terms.push(Term::known(RationalFunction::one(), vec![u(k.add(&x.expr()), n)]));
            for (i, di) in nodes.iter().enumerate() {
                let mut c = RationalFunction::one();
                let mut factors = vec![u(k.shift(*di), n)];
                for (j, dj) in nodes.iter().enumerate() {
                    if i != j {
                        let d = u_value(&params, di - dj)?;
                        if d.is_zero() {
                            return Err(singular(format!("U[{}]", di - dj)));
                        }
                        c = &c / &d;
                        factors.push(u(x.expr().shift(-dj), 1));
                    }
                }
                terms.push(Term::known(-&c, factors));
            }
        }
        InterpVariant::QScaled => {
            terms.push(Term::known(RationalFunction::one(), vec![u(k.clone(), n)]));
            for (i, di) in nodes.iter().enumerate() {
                let mut c = q_value(&params, -(n as i64) * di)?;
                for (j, dj) in nodes.iter().enumerate() {
                    if i != j {
                        let d = u_value(&params, dj - di)?;
                        if d.is_zero() {
                            return Err(singular(format!("U[{}]", dj - di)));
                        }
                        c = &(&c * &u_value(&params, *dj)?) / &d;
                    }
                }
                terms.push(Term::known(-&c, vec![u(k.shift(*di), n)]));
            }
        }
        InterpVariant::Horadam { s, params: h } => {
            let w = |e: IndexExpr, exp| SeqFactor::new(SeqKind::W, e, exp);
            let h = match &params {
                Some(p) => specialize(h, p)?,
                None => h.clone(),
            };
            terms.push(Term::known(RationalFunction::one(), vec![w(k.add(&x.expr()), n)]));
            for (i, di) in nodes.iter().enumerate() {
                let mut c = RationalFunction::one();
                let mut factors = vec![w(k.shift(*di), n)];
                for (j, dj) in nodes.iter().enumerate() {
                    if i != j {
                        let d = horadam(&h, di - dj + s)?;
                        if d.is_zero() {
                            return Err(singular(format!("W[{}]", di - dj + s)));
                        }
                        c = &c / &d;
                        factors.push(w(x.expr().shift(s - dj), 1));
                    }
                }
                terms.push(Term::known(-&c, factors));
            }
            horadam_params = Some(h);
        }
    }
    let mut t = IdentityTemplate::new(terms);
    t.params = params;
    t.horadam = horadam_params;
    let variant_name = match variant {
        InterpVariant::Lagrange => "lagrange",
        InterpVariant::QScaled => "qscaled",
        InterpVariant::Horadam { .. } => "horadam",
    };
    let nodes_text: Vec<String> = nodes.iter().map(i64::to_string).collect();
    let x_text = match x {
        NodeIndex::Symbolic(v) => v.clone(),
        NodeIndex::Value(v) => v.to_string(),
    };
    let t = t.with_name(&format!("interp.{variant_name}.n{n}.[{}].x={x_text}", nodes_text.join(",")));
    let template = t.canonicalize()?;
    let verdict = verify(&template)?;
    Ok(Generated { template, verdict })
}

fn specialize(
    h: &HoradamParams<RationalFunction>,
    p: &SequenceParams<Rational>,
) -> Result<HoradamParams<RationalFunction>, DiscoverError> {
    let (pv, qv) = (RationalFunction::constant(p.p.clone()), RationalFunction::constant(p.q.clone()));
    let image = |v: &str| match v {
        "P" => Some(pv.clone()),
        "Q" => Some(qv.clone()),
        _ => None,
    };
    Ok(HoradamParams { a0: h.a0.compose(&image)?, a1: h.a1.compose(&image)?, p0: h.p0.compose(&image)?, p1: h.p1.compose(&image)? })
}
