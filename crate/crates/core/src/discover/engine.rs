use super::solve::{solve, SolutionReport};
use super::system::{build_system, default_samples, AnsatzSystem, Sample};
use super::DiscoverError;
use crate::algebra::RationalFunction;
use crate::identity::{Bindings, IdentityTemplate};
use crate::verify::{verify_with, Verdict, VerifyOptions};

#[derive(Clone, Debug, Default)]
pub struct DiscoverOptions {
    /// Explicit samples; otherwise [`default_samples`].
    pub samples: Option<Vec<Sample>>,
    /// Rows beyond the number of unknowns, as a consistency check.
    pub extra_rows: usize,
    /// Value fixed for one unknown when scaling a nullspace direction. The
    /// default sets the last nonzero unknown to `-1`.
    pub normalize: Option<(String, RationalFunction)>,
    pub verify: VerifyOptions,
}

#[derive(Clone, Debug)]
pub struct Candidate {
    pub values: Vec<(String, RationalFunction)>,
    pub identity: IdentityTemplate,
    pub verdict: Verdict,
}

impl Candidate {
    /// All coefficients cancel, e.g. a nullspace direction that only
    /// restates `0 = 0`.
    pub fn is_trivial(&self) -> bool {
        self.identity.is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct Discovery {
    pub system: AnsatzSystem,
    /// Index values shared by every sample and substituted into candidates.
    pub fixed: Sample,
    pub report: SolutionReport,
    pub candidates: Vec<Candidate>,
}

impl Discovery {
    pub fn verified(&self) -> impl Iterator<Item = &Candidate> {
        self.candidates.iter().filter(|c| c.verdict.is_verified() && !c.is_trivial())
    }

    pub fn refuted(&self) -> impl Iterator<Item = &Candidate> {
        self.candidates.iter().filter(|c| !c.verdict.is_verified())
    }
}

fn normalized(v: &[RationalFunction], unknowns: &[String], target: &Option<(String, RationalFunction)>) -> Vec<RationalFunction> {
    let (i, want) = match target {
        Some((name, value)) => match unknowns.iter().position(|u| u == name) {
            Some(i) if !v[i].is_zero() => (i, value.clone()),
            _ => return v.to_vec(),
        },
        None => match v.iter().rposition(|x| !x.is_zero()) {
            Some(i) => (i, RationalFunction::int(-1)),
            None => return v.to_vec(),
        },
    };
    let s = &want / &v[i];
    v.iter().map(|x| x * &s).collect()
}

fn candidate(
    t: &IdentityTemplate,
    unknowns: &[String],
    v: Vec<RationalFunction>,
    fixed: &Sample,
    opts: &VerifyOptions,
) -> Result<Candidate, DiscoverError> {
    let mut b = Bindings::new();
    for (k, x) in fixed {
        b = b.index(k, *x);
    }
    for (u, x) in unknowns.iter().zip(&v) {
        b = b.value(u, x.clone());
    }
    let mut identity = t.substitute(&b)?;
    identity.name = t.name.clone();
    let verdict = verify_with(&identity, opts)?;
    Ok(Candidate { values: unknowns.iter().cloned().zip(v).collect(), identity, verdict })
}

/// Build and solve the system, then turn the particular solution (for an
/// inhomogeneous system) and every normalized nullspace direction into a
/// candidate identity with its verdict.
pub fn discover(t: &IdentityTemplate, opts: &DiscoverOptions) -> Result<Discovery, DiscoverError> {
    let samples = match &opts.samples {
        Some(s) => s.clone(),
        None => default_samples(t, opts.extra_rows)?,
    };
    let system = build_system(t, &samples)?;
    // Index variables held constant over all samples: the solution is only
    // known at those values, so candidates are stated there.
    let mut fixed = Sample::new();
    if let Some(first) = samples.first() {
        for (k, x) in first {
            if samples.len() > 1 && samples.iter().all(|s| s.get(k) == Some(x)) {
                fixed.insert(k.clone(), *x);
            }
        }
    }
    let report = solve(&system);
    let mut candidates = Vec::new();
    if let Some(p) = &report.particular {
        if !system.is_homogeneous() {
            candidates.push(candidate(t, &system.unknowns, p.clone(), &fixed, &opts.verify)?);
        }
    }
    if report.is_consistent() {
        for v in &report.nullspace {
            let v = normalized(v, &system.unknowns, &opts.normalize);
            let mut b = Bindings::new();
            for (u, x) in system.unknowns.iter().zip(&v) {
                b = b.value(u, x.clone());
            }
            // A direction of the homogeneous part: drop the known terms.
            let homogeneous = IdentityTemplate {
                terms: t.terms.iter().filter(|term| term.coefficient.known().is_none()).cloned().collect(),
                ..t.clone()
            };
            candidates.push(candidate(&homogeneous, &system.unknowns, v, &fixed, &opts.verify)?);
        }
    }
    Ok(Discovery { system, fixed, report, candidates })
}
