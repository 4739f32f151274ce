use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use super::index::IndexExpr;
use super::IdentityError;
use crate::algebra::{factor_by_gcd, rational::rational_pow, AlgebraError, LaurentPoly, Rational, RationalFunction};
use crate::lucas::{horadam, lucas_symbolic, lucas_value, HoradamParams, LucasKind, SequenceParams};

/// Names that always denote parameters, never unknown coefficients.
pub const RESERVED: [&str; 6] = ["P", "Q", "a0", "a1", "p0", "p1"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SeqKind {
    U,
    V,
    W,
}

impl SeqKind {
    pub fn letter(self) -> &'static str {
        match self {
            SeqKind::U => "U",
            SeqKind::V => "V",
            SeqKind::W => "W",
        }
    }

    pub fn from_letter(s: &str) -> Option<SeqKind> {
        match s {
            "U" => Some(SeqKind::U),
            "V" => Some(SeqKind::V),
            "W" => Some(SeqKind::W),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeqFactor {
    pub kind: SeqKind,
    pub index: IndexExpr,
    pub exponent: u32,
}

impl SeqFactor {
    pub fn new(kind: SeqKind, index: IndexExpr, exponent: u32) -> Self {
        SeqFactor { kind, index, exponent }
    }

    pub fn u(index: IndexExpr) -> Self {
        SeqFactor::new(SeqKind::U, index, 1)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Coefficient {
    Known(RationalFunction),
    /// `scale · name` for an unknown coefficient `name`.
    Unknown { name: String, scale: RationalFunction },
}

impl Coefficient {
    pub fn known(&self) -> Option<&RationalFunction> {
        match self {
            Coefficient::Known(c) => Some(c),
            Coefficient::Unknown { .. } => None,
        }
    }

    pub fn unknown_name(&self) -> Option<&str> {
        match self {
            Coefficient::Known(_) => None,
            Coefficient::Unknown { name, .. } => Some(name),
        }
    }

    pub fn scalar(&self) -> &RationalFunction {
        match self {
            Coefficient::Known(c) => c,
            Coefficient::Unknown { scale, .. } => scale,
        }
    }

    fn with_scalar(&self, s: RationalFunction) -> Coefficient {
        match self {
            Coefficient::Known(_) => Coefficient::Known(s),
            Coefficient::Unknown { name, .. } => Coefficient::Unknown { name: name.clone(), scale: s },
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub coefficient: Coefficient,
    pub q_exponent: IndexExpr,
    pub factors: Vec<SeqFactor>,
}

impl Term {
    pub fn known(c: RationalFunction, factors: Vec<SeqFactor>) -> Self {
        Term { coefficient: Coefficient::Known(c), q_exponent: IndexExpr::default(), factors }
    }

    pub fn unknown(name: &str, factors: Vec<SeqFactor>) -> Self {
        Term {
            coefficient: Coefficient::Unknown { name: name.to_string(), scale: RationalFunction::one() },
            q_exponent: IndexExpr::default(),
            factors,
        }
    }

    pub fn with_q(mut self, q: IndexExpr) -> Self {
        self.q_exponent = q;
        self
    }

    pub fn negated(&self) -> Term {
        let mut t = self.clone();
        t.coefficient = t.coefficient.with_scalar(-self.coefficient.scalar());
        t
    }

    fn index_vars(&self, out: &mut BTreeSet<String>) {
        out.extend(self.q_exponent.vars().cloned());
        for f in &self.factors {
            out.extend(f.index.vars().cloned());
        }
    }
}

/// A formal sum of terms asserted to vanish for every integer assignment of
/// its index variables.
#[derive(Clone, Debug)]
pub struct IdentityTemplate {
    pub name: Option<String>,
    pub index_vars: Vec<String>,
    pub terms: Vec<Term>,
    /// Numeric Lucas parameters; `None` leaves `P` and `Q` symbolic.
    pub params: Option<SequenceParams<Rational>>,
    /// Parameters of the `W` sequence, possibly in terms of `P` and `Q`.
    pub horadam: Option<HoradamParams<RationalFunction>>,
    /// Original equation text, kept for display only.
    pub display: Option<String>,
}

impl PartialEq for IdentityTemplate {
    fn eq(&self, o: &Self) -> bool {
        self.index_vars == o.index_vars && self.terms == o.terms && self.params == o.params && self.horadam == o.horadam
    }
}

/// `c2 < c10`: compare alphabetic prefix, then the numeric suffix.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn split(s: &str) -> (&str, Option<u64>, &str) {
        let start = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
        let end = s[start..].find(|c: char| !c.is_ascii_digit()).map_or(s.len(), |e| start + e);
        (&s[..start], s[start..end].parse().ok(), &s[end..])
    }
    let (pa, na, ra) = split(a);
    let (pb, nb, rb) = split(b);
    pa.cmp(pb).then(na.cmp(&nb)).then_with(|| ra.cmp(rb)).then_with(|| a.cmp(b))
}

fn term_order(a: &Term, b: &Term) -> Ordering {
    let na = a.coefficient.unknown_name();
    let nb = b.coefficient.unknown_name();
    let by_name = match (na, nb) {
        (Some(x), Some(y)) => natural_cmp(x, y),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => Ordering::Equal,
    };
    by_name
        .then_with(|| b.factors.cmp(&a.factors))
        .then_with(|| a.q_exponent.cmp(&b.q_exponent))
}

impl IdentityTemplate {
    pub fn new(terms: Vec<Term>) -> Self {
        IdentityTemplate { name: None, index_vars: vec![], terms, params: None, horadam: None, display: None }
    }

    pub fn zero() -> Self {
        Self::new(vec![])
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    pub fn with_params(mut self, params: SequenceParams<Rational>) -> Self {
        self.params = Some(params);
        self.display = None;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_fully_known(&self) -> bool {
        self.terms.iter().all(|t| t.coefficient.known().is_some())
    }

    /// Distinct unknown names in natural order; the column order of ansatz
    /// systems.
    pub fn unknowns(&self) -> Vec<String> {
        let mut names: Vec<String> = self
            .terms
            .iter()
            .filter_map(|t| t.coefficient.unknown_name().map(str::to_string))
            .collect();
        names.sort_by(|a, b| natural_cmp(a, b));
        names.dedup();
        names
    }

    /// The index sampled first by the discovery engine.
    pub fn primary_index(&self) -> Option<&str> {
        self.index_vars
            .iter()
            .find(|v| v.as_str() == "k")
            .or_else(|| self.index_vars.first())
            .map(String::as_str)
    }

    pub fn uses_w(&self) -> bool {
        self.terms.iter().any(|t| t.factors.iter().any(|f| f.kind == SeqKind::W))
    }

    /// Distinct nonconstant factors of the known coefficients' denominators,
    /// e.g. `P` for identities with a `1/P` coefficient.
    pub fn guards(&self) -> Vec<LaurentPoly> {
        let mut out: Vec<LaurentPoly> = Vec::new();
        for t in &self.terms {
            let d = t.coefficient.scalar().denom();
            for (f, _) in factor_by_gcd(d, &[]).factors {
                if !out.contains(&f) {
                    out.push(f);
                }
            }
        }
        out
    }

    pub fn negated(&self) -> Self {
        let mut t = self.clone();
        t.terms = self.terms.iter().map(Term::negated).collect();
        t.display = None;
        t
    }

    /// Sum of two templates over the same parameters.
    pub fn plus(&self, o: &Self) -> Result<Self, IdentityError> {
        if self.params != o.params || self.horadam != o.horadam {
            return Err(IdentityError::Invalid("cannot add templates over different parameters".into()));
        }
        let mut t = self.clone();
        t.terms.extend(o.terms.iter().cloned());
        t.display = None;
        t.name = None;
        t.canonicalize()
    }

    fn value_of(&self, kind: SeqKind, c: i64) -> Result<RationalFunction, IdentityError> {
        match kind {
            SeqKind::U | SeqKind::V => {
                let lk = if kind == SeqKind::U { LucasKind::U } else { LucasKind::V };
                match &self.params {
                    Some(p) => Ok(RationalFunction::constant(lucas_value(lk, p, c)?)),
                    None => Ok(lucas_symbolic(lk, c)),
                }
            }
            SeqKind::W => {
                let h = self
                    .horadam
                    .as_ref()
                    .ok_or_else(|| IdentityError::Invalid("W factor without declared parameters".into()))?;
                Ok(horadam(h, c)?)
            }
        }
    }

    fn q_power(&self, e: i64) -> Result<RationalFunction, IdentityError> {
        match &self.params {
            Some(p) => rational_pow(&p.q, e)
                .map(RationalFunction::constant)
                .ok_or_else(|| AlgebraError::Singularity { factor: "Q".into() }.into()),
            None => Ok(RationalFunction::from_poly(LaurentPoly::var_pow("Q", e as i32))),
        }
    }

    fn specialize_coefficient(&self, c: &RationalFunction) -> Result<RationalFunction, IdentityError> {
        let Some(p) = &self.params else { return Ok(c.clone()) };
        if !c.used_vars().iter().any(|v| v == "P" || v == "Q") {
            return Ok(c.clone());
        }
        let (pv, qv) = (RationalFunction::constant(p.p.clone()), RationalFunction::constant(p.q.clone()));
        Ok(c.compose(&|v| match v {
            "P" => Some(pv.clone()),
            "Q" => Some(qv.clone()),
            _ => None,
        })?)
    }

    /// Canonical form: constant Q-powers and constant-index factors folded
    /// into coefficients, factors merged and sorted, like terms collected,
    /// zero terms dropped. Structural equality is meaningful only between
    /// canonical templates.
    pub fn canonicalize(mut self) -> Result<Self, IdentityError> {
        if let Some(p) = &self.params {
            if p.q.is_zero() {
                return Err(IdentityError::Invalid("Q = 0 is not a valid Lucas parameter".into()));
            }
            if let Some(h) = self.horadam.clone() {
                let f = |x: &RationalFunction| self.specialize_coefficient(x);
                let h = HoradamParams { a0: f(&h.a0)?, a1: f(&h.a1)?, p0: f(&h.p0)?, p1: f(&h.p1)? };
                self.horadam = Some(h);
            }
        }
        let q_value = self.params.as_ref().map(|p| p.q.clone());
        let mut collected: Vec<Term> = Vec::new();
        for term in std::mem::take(&mut self.terms) {
            let mut scalar = self.specialize_coefficient(term.coefficient.scalar())?;
            let mut q = term.q_exponent.linear_part();
            if term.q_exponent.constant != 0 {
                scalar = &scalar * &self.q_power(term.q_exponent.constant)?;
            }
            if let Some(qv) = &q_value {
                if qv.is_one() {
                    q = IndexExpr::default();
                } else if *qv == -Rational::one() {
                    q = q.mod2();
                }
            }
            let mut merged: BTreeMap<(SeqKind, IndexExpr), u32> = BTreeMap::new();
            for f in term.factors {
                if f.exponent == 0 {
                    continue;
                }
                if let Some(c) = f.index.as_constant() {
                    let v = self.value_of(f.kind, c)?;
                    scalar = &scalar * &v.powi(f.exponent as i64)?;
                } else {
                    *merged.entry((f.kind, f.index)).or_insert(0) += f.exponent;
                }
            }
            if scalar.is_zero() {
                continue;
            }
            let factors: Vec<SeqFactor> =
                merged.into_iter().map(|((kind, index), exponent)| SeqFactor { kind, index, exponent }).collect();
            let coefficient = term.coefficient.with_scalar(scalar);
            match collected.iter_mut().find(|t| {
                t.factors == factors && t.q_exponent == q && t.coefficient.unknown_name() == coefficient.unknown_name()
            }) {
                Some(t) => t.coefficient = t.coefficient.with_scalar(t.coefficient.scalar() + coefficient.scalar()),
                None => collected.push(Term { coefficient, q_exponent: q, factors }),
            }
        }
        collected.retain(|t| !t.coefficient.scalar().is_zero());
        collected.sort_by(term_order);
        let mut vars = BTreeSet::new();
        for t in &collected {
            t.index_vars(&mut vars);
        }
        for t in &collected {
            if let Some(n) = t.coefficient.unknown_name() {
                if vars.contains(n) {
                    return Err(IdentityError::Invalid(format!("'{n}' is used both as an index and as a coefficient")));
                }
            }
        }
        self.index_vars = vars.into_iter().collect();
        self.terms = collected;
        Ok(self)
    }

    /// Specialize parameters, unknowns and index variables; the result is
    /// canonical and has no display text.
    pub fn substitute(&self, b: &Bindings) -> Result<Self, IdentityError> {
        let mut t = self.clone();
        t.display = None;
        match (b.values.get("P"), b.values.get("Q")) {
            (None, None) => {}
            (Some(p), Some(q)) => {
                let (Some(p), Some(q)) = (p.constant_value(), q.constant_value()) else {
                    return Err(IdentityError::Invalid("P and Q can only be bound to numbers".into()));
                };
                if t.params.is_some() {
                    return Err(IdentityError::Invalid("P and Q are already bound".into()));
                }
                t.params = Some(SequenceParams::new(p, q));
            }
            _ => return Err(IdentityError::Invalid("P and Q must be bound together".into())),
        }
        let horadam_names = ["a0", "a1", "p0", "p1"];
        let sub_h: BTreeMap<&str, RationalFunction> = b
            .values
            .iter()
            .filter(|(k, _)| horadam_names.contains(&k.as_str()))
            .map(|(k, v)| (k.as_str(), v.clone()))
            .collect();
        if !sub_h.is_empty() {
            let image = |v: &str| sub_h.get(v).cloned();
            if let Some(h) = &t.horadam {
                t.horadam = Some(HoradamParams {
                    a0: h.a0.compose(&image)?,
                    a1: h.a1.compose(&image)?,
                    p0: h.p0.compose(&image)?,
                    p1: h.p1.compose(&image)?,
                });
            }
        }
        let mut terms = Vec::new();
        for term in &t.terms {
            let mut term = term.clone();
            let scalar = term.coefficient.scalar();
            if !sub_h.is_empty() {
                let image = |v: &str| sub_h.get(v).cloned();
                term.coefficient = term.coefficient.with_scalar(scalar.compose(&image)?);
            }
            if let Coefficient::Unknown { name, scale } = &term.coefficient {
                if let Some(v) = b.values.get(name) {
                    term.coefficient = Coefficient::Known(scale * v);
                }
            }
            term.q_exponent = term.q_exponent.substitute(&b.indices);
            for f in &mut term.factors {
                f.index = f.index.substitute(&b.indices);
            }
            terms.push(term);
        }
        t.terms = terms;
        t.canonicalize()
    }

    /// `t` divided by the coefficient of its first term that has a constant
    /// coefficient, making the result independent of an overall scale.
    pub fn normalized(&self) -> Result<Self, IdentityError> {
        let Some(lead) = self.terms.iter().find_map(|t| t.coefficient.known().filter(|c| !c.is_zero()).cloned()) else {
            return Ok(self.clone());
        };
        let inv = lead.inv()?;
        let mut t = self.clone();
        for term in &mut t.terms {
            term.coefficient = term.coefficient.with_scalar(term.coefficient.scalar() * &inv);
        }
        t.display = None;
        Ok(t)
    }

    /// Scale every coefficient.
    pub fn scaled(&self, s: &RationalFunction) -> Self {
        let mut t = self.clone();
        for term in &mut t.terms {
            term.coefficient = term.coefficient.with_scalar(term.coefficient.scalar() * s);
        }
        t.display = None;
        t
    }

    /// Equal up to a nonzero overall factor.
    pub fn is_proportional(&self, o: &Self) -> bool {
        match (self.normalized(), o.normalized()) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }
}

/// Values for [`IdentityTemplate::substitute`]: parameters or unknown
/// coefficients by name, index variables by name.
#[derive(Clone, Debug, Default)]
pub struct Bindings {
    pub values: BTreeMap<String, RationalFunction>,
    pub indices: BTreeMap<String, i64>,
}

impl Bindings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn value(mut self, name: &str, v: RationalFunction) -> Self {
        self.values.insert(name.to_string(), v);
        self
    }

    pub fn number(self, name: &str, v: Rational) -> Self {
        self.value(name, RationalFunction::constant(v))
    }

    pub fn index(mut self, name: &str, v: i64) -> Self {
        self.indices.insert(name.to_string(), v);
        self
    }

    /// `P = 1, Q = -1`.
    pub fn fibonacci() -> Self {
        Self::new().number("P", Rational::one()).number("Q", -Rational::one())
    }
}

impl Default for IdentityTemplate {
    fn default() -> Self {
        Self::zero()
    }
}
