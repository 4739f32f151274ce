//! Text syntax for identities.
//!
//! ```text
//! @name GF.9
//! @params P=1, Q=-1
//! U[k+1]^2 - Q^3*U[k-2]^2 = (P^2-Q)*(U[k]^2 - Q*U[k-1]^2)   # comment
//! ```
//!
//! `@params W: a0=.., a1=.., p0=.., p1=..` declares the parameters of `W`.
//! Division is allowed only by known, sequence-free terms; `Q` may be raised
//! to an affine index expression.

use std::fmt;

use num_bigint::BigInt;

use super::index::IndexExpr;
use super::template::{Coefficient, IdentityTemplate, SeqFactor, SeqKind, Term, RESERVED};
use super::IdentityError;
use crate::algebra::{Rational, RationalFunction};
use crate::lucas::{HoradamParams, SequenceParams};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
    /// Whitespace directly precedes this token.
    spaced: bool,
}

fn lex(text: &str, line0: usize) -> Result<Vec<Token>, IdentityError> {
    let mut out = Vec::new();
    let mut spaced = true;
    for (li, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        spaced = true;
        while i < chars.len() {
            let c = chars[i];
            let (line, col) = (line0 + li, i + 1);
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                spaced = true;
                i += 1;
                continue;
            }
            if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Token { tok: Tok::Num(s.parse().unwrap()), line, col, spaced });
            } else if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), line, col, spaced });
            } else if "+-*/^()[]=,:".contains(c) {
                out.push(Token { tok: Tok::Sym(c), line, col, spaced });
                i += 1;
            } else {
                return Err(IdentityError::Syntax { line, column: col, message: format!("unexpected character '{c}'") });
            }
            spaced = false;
        }
    }
    let (line, col) = out.last().map_or((line0, 1), |t| (t.line, t.col + 1));
    out.push(Token { tok: Tok::End, line, col, spaced });
    Ok(out)
}

/// Expression tree of the concrete syntax, kept for display.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigInt),
    Ident(String),
    Seq(SeqKind, IndexExpr),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    QPow(IndexExpr),
}

impl Expr {
    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) | Expr::QPow(_) => 4,
            _ => 5,
        }
    }
}

fn paren(e: &Expr, min: u8) -> String {
    if e.prec() < min {
        format!("({e})")
    } else {
        e.to_string()
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(n) => write!(f, "{n}"),
            Expr::Ident(s) => write!(f, "{s}"),
            Expr::Seq(k, i) => write!(f, "{}[{i}]", k.letter()),
            Expr::Neg(e) => write!(f, "-{}", paren(e, 3)),
            Expr::Add(a, b) => write!(f, "{} + {}", a, paren(b, 2)),
            Expr::Sub(a, b) => write!(f, "{} - {}", a, paren(b, 2)),
            Expr::Mul(a, b) => write!(f, "{}*{}", paren(a, 2), paren(b, 3)),
            Expr::Div(a, b) => write!(f, "{}/{}", paren(a, 2), paren(b, 4)),
            Expr::Pow(b, e) => write!(f, "{}^{e}", paren(b, 5)),
            Expr::QPow(e) => {
                if e.constant == 0 && e.coeffs.len() == 1 && e.coeffs.values().all(|c| *c == 1) {
                    write!(f, "Q^{e}")
                } else {
                    write!(f, "Q^({e})")
                }
            }
        }
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, t: &Token, message: impl Into<String>) -> Result<T, IdentityError> {
        Err(IdentityError::Syntax { line: t.line, column: t.col, message: message.into() })
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn expect(&mut self, c: char) -> Result<(), IdentityError> {
        let t = self.next();
        if t.tok == Tok::Sym(c) {
            Ok(())
        } else {
            self.err(&t, format!("expected '{c}'"))
        }
    }

    fn expr(&mut self) -> Result<Expr, IdentityError> {
        let mut lhs = self.term()?;
        loop {
            if self.is_sym('+') {
                self.next();
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.is_sym('-') {
                self.next();
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, IdentityError> {
        let mut lhs = self.unary()?;
        loop {
            if self.is_sym('*') {
                self.next();
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.is_sym('/') {
                self.next();
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, IdentityError> {
        if self.is_sym('-') {
            self.next();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.is_sym('+') {
            self.next();
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, IdentityError> {
        let base = self.atom()?;
        if !self.is_sym('^') {
            return Ok(base);
        }
        self.next();
        if base == Expr::Ident("Q".into()) {
            let t = self.peek().clone();
            let e = match &t.tok {
                Tok::Sym('(') => {
                    self.next();
                    let e = self.index_expr()?;
                    self.expect(')')?;
                    e
                }
                Tok::Ident(_) => self.index_atom()?,
                _ => IndexExpr::constant(self.signed_int()?),
            };
            return Ok(match e.as_constant() {
                Some(c) => Expr::Pow(Box::new(base), c),
                None => Expr::QPow(e),
            });
        }
        let e = self.signed_int()?;
        Ok(Expr::Pow(Box::new(base), e))
    }

    fn signed_int(&mut self) -> Result<i64, IdentityError> {
        let t = self.next();
        match &t.tok {
            Tok::Sym('-') => Ok(-self.signed_int()?),
            Tok::Sym('(') => {
                let v = self.signed_int()?;
                self.expect(')')?;
                Ok(v)
            }
            Tok::Num(n) => i64::try_from(n.clone()).or_else(|_| self.err(&t, "exponent too large")),
            _ => self.err(&t, "expected an integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<Expr, IdentityError> {
        let t = self.next();
        match &t.tok {
            Tok::Num(n) => Ok(Expr::Num(n.clone())),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                if self.is_sym('[') && !self.peek().spaced {
                    let Some(kind) = SeqKind::from_letter(name) else {
                        return Err(IdentityError::UnknownSequence(format!(
                            "{name} (line {}, column {})",
                            t.line, t.col
                        )));
                    };
                    self.next();
                    let idx = self.index_expr()?;
                    self.expect(']')?;
                    Ok(Expr::Seq(kind, idx))
                } else {
                    Ok(Expr::Ident(name.clone()))
                }
            }
            Tok::End => self.err(&t, "unexpected end of input"),
            Tok::Sym(c) => self.err(&t, format!("unexpected '{c}'")),
        }
    }

    fn index_expr(&mut self) -> Result<IndexExpr, IdentityError> {
        let mut acc = if self.is_sym('-') {
            self.next();
            self.index_term()?.scale(-1)
        } else {
            self.index_term()?
        };
        loop {
            if self.is_sym('+') {
                self.next();
                acc = acc.add(&self.index_term()?);
            } else if self.is_sym('-') {
                self.next();
                acc = acc.sub(&self.index_term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn index_term(&mut self) -> Result<IndexExpr, IdentityError> {
        let start = self.peek().clone();
        let mut acc = self.index_atom()?;
        loop {
            // implicit multiplication: `2k`, `3(k+1)`
            let implicit = acc.as_constant().is_some()
                && !self.peek().spaced
                && matches!(self.peek().tok, Tok::Ident(_) | Tok::Sym('('));
            if !(self.is_sym('*') || implicit) {
                return Ok(acc);
            }
            if !implicit {
                self.next();
            }
            let rhs = self.index_atom()?;
            acc = match (acc.as_constant(), rhs.as_constant()) {
                (Some(a), _) => rhs.scale(a),
                (_, Some(b)) => acc.scale(b),
                _ => {
                    return Err(IdentityError::NonAffine(format!(
                        "product of index variables at line {}, column {}",
                        start.line, start.col
                    )))
                }
            };
        }
    }

    fn index_atom(&mut self) -> Result<IndexExpr, IdentityError> {
        let t = self.next();
        match &t.tok {
            Tok::Num(n) => Ok(IndexExpr::constant(i64::try_from(n.clone()).or_else(|_| self.err(&t, "index too large"))?)),
            Tok::Ident(v) => {
                if RESERVED.contains(&v.as_str()) {
                    return self.err(&t, format!("parameter {v} cannot appear in an index"));
                }
                if self.is_sym('[') || self.is_sym('^') {
                    return Err(IdentityError::NonAffine(format!("at line {}, column {}", t.line, t.col)));
                }
                Ok(IndexExpr::var(v))
            }
            Tok::Sym('(') => {
                let e = self.index_expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Sym('-') => Ok(self.index_atom()?.scale(-1)),
            _ => self.err(&t, "expected an index expression"),
        }
    }
}

/// A product of sequence factors with symbolic coefficient, before
/// canonicalization.
#[derive(Clone, Debug)]
struct Mono {
    coef: RationalFunction,
    unknown: Option<String>,
    q: IndexExpr,
    factors: Vec<SeqFactor>,
}

impl Mono {
    fn constant(c: RationalFunction) -> Mono {
        Mono { coef: c, unknown: None, q: IndexExpr::default(), factors: vec![] }
    }

    fn is_pure(&self) -> bool {
        self.unknown.is_none() && self.factors.is_empty()
    }

    fn mul(&self, o: &Mono) -> Result<Mono, IdentityError> {
        let unknown = match (&self.unknown, &o.unknown) {
            (Some(a), Some(b)) => {
                return Err(IdentityError::Invalid(format!("product of unknown coefficients {a} and {b}")))
            }
            (a, b) => a.clone().or_else(|| b.clone()),
        };
        let mut factors = self.factors.clone();
        factors.extend(o.factors.iter().cloned());
        Ok(Mono { coef: &self.coef * &o.coef, unknown, q: self.q.add(&o.q), factors })
    }
}

fn expand(e: &Expr) -> Result<Vec<Mono>, IdentityError> {
    Ok(match e {
        Expr::Num(n) => vec![Mono::constant(RationalFunction::constant(Rational::from_integer(n.clone())))],
        Expr::Ident(name) => {
            if RESERVED.contains(&name.as_str()) {
                vec![Mono::constant(RationalFunction::var(name))]
            } else {
                vec![Mono { unknown: Some(name.clone()), ..Mono::constant(RationalFunction::one()) }]
            }
        }
        Expr::Seq(kind, idx) => {
            vec![Mono { factors: vec![SeqFactor::new(*kind, idx.clone(), 1)], ..Mono::constant(RationalFunction::one()) }]
        }
        Expr::QPow(idx) => vec![Mono { q: idx.clone(), ..Mono::constant(RationalFunction::one()) }],
        Expr::Neg(a) => expand(a)?.into_iter().map(|m| Mono { coef: -&m.coef, ..m }).collect(),
        Expr::Add(a, b) => {
            let mut v = expand(a)?;
            v.extend(expand(b)?);
            v
        }
        Expr::Sub(a, b) => {
            let mut v = expand(a)?;
            v.extend(expand(b)?.into_iter().map(|m| Mono { coef: -&m.coef, ..m }));
            v
        }
        Expr::Mul(a, b) => product(&expand(a)?, &expand(b)?)?,
        Expr::Div(a, b) => {
            let d = single_pure(&expand(b)?)
                .ok_or_else(|| IdentityError::Invalid(format!("can only divide by a known coefficient, not by {b}")))?;
            if d.coef.is_zero() {
                return Err(crate::algebra::AlgebraError::DivideByZero.into());
            }
            let inv = Mono { coef: d.coef.inv()?, unknown: None, q: d.q.scale(-1), factors: vec![] };
            product(&expand(a)?, &[inv])?
        }
        Expr::Pow(base, n) => {
            let b = expand(base)?;
            if *n < 0 {
                let d = single_pure(&b).ok_or_else(|| {
                    IdentityError::Invalid(format!("negative power of {base}, which is not a known coefficient"))
                })?;
                let m = n.unsigned_abs() as i64;
                vec![Mono { coef: d.coef.powi(-m)?, unknown: None, q: d.q.scale(*n), factors: vec![] }]
            } else if b.len() == 1 && b[0].unknown.is_none() {
                let m = &b[0];
                let factors = m
                    .factors
                    .iter()
                    .map(|f| SeqFactor::new(f.kind, f.index.clone(), f.exponent * *n as u32))
                    .collect();
                vec![Mono { coef: m.coef.powi(*n)?, unknown: None, q: m.q.scale(*n), factors }]
            } else {
                let mut acc = vec![Mono::constant(RationalFunction::one())];
                for _ in 0..*n {
                    acc = product(&acc, &b)?;
                }
                acc
            }
        }
    })
}

/// Collapse a sum to one coefficient-only monomial, if it is one.
fn single_pure(v: &[Mono]) -> Option<Mono> {
    if v.iter().any(|m| !m.is_pure()) {
        return None;
    }
    let q = v.first().map(|m| m.q.clone()).unwrap_or_default();
    if v.iter().any(|m| m.q != q) {
        return None;
    }
    let mut c = RationalFunction::zero();
    for m in v {
        c = &c + &m.coef;
    }
    Some(Mono { coef: c, unknown: None, q, factors: vec![] })
}

fn product(a: &[Mono], b: &[Mono]) -> Result<Vec<Mono>, IdentityError> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x.mul(y)?);
        }
    }
    Ok(out)
}

fn to_terms(monos: Vec<Mono>) -> Vec<Term> {
    monos
        .into_iter()
        .map(|m| Term {
            coefficient: match m.unknown {
                None => Coefficient::Known(m.coef),
                Some(name) => Coefficient::Unknown { name, scale: m.coef },
            },
            q_exponent: m.q,
            factors: m.factors,
        })
        .collect()
}

/// Parse a coefficient expression such as `(P^2 - Q)/Q^3`.
pub fn parse_ratfunc(text: &str) -> Result<RationalFunction, IdentityError> {
    let mut p = Parser { toks: lex(text, 1)?, pos: 0 };
    let e = p.expr()?;
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return p.err(&t, "unexpected trailing input");
    }
    let m = single_pure(&expand(&e)?)
        .filter(|m| m.q.is_zero())
        .ok_or_else(|| IdentityError::Invalid(format!("'{text}' is not a known coefficient")))?;
    Ok(m.coef)
}

fn parse_rational_value(text: &str) -> Result<Rational, IdentityError> {
    parse_ratfunc(text)?
        .constant_value()
        .ok_or_else(|| IdentityError::Invalid(format!("'{text}' is not a number")))
}

struct Directives {
    name: Option<String>,
    params: Option<SequenceParams<Rational>>,
    horadam: Option<HoradamParams<RationalFunction>>,
}

fn parse_assignments(body: &str, line: usize) -> Result<Vec<(String, String)>, IdentityError> {
    body.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|kv| {
            let (k, v) = kv.split_once('=').ok_or_else(|| IdentityError::Syntax {
                line,
                column: 1,
                message: format!("expected NAME=VALUE, got '{}'", kv.trim()),
            })?;
            Ok((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

fn directive(line_no: usize, line: &str, d: &mut Directives) -> Result<(), IdentityError> {
    let rest = line.trim_start().trim_start_matches('@');
    let (word, body) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
    let body = body.trim();
    match word {
        "name" => d.name = Some(body.to_string()),
        "params" => {
            if let Some(w) = body.strip_prefix("W:").or_else(|| body.strip_prefix("W :")) {
                let mut h = HoradamParams::symbolic();
                for (k, v) in parse_assignments(w, line_no)? {
                    let v = parse_ratfunc(&v)?;
                    match k.as_str() {
                        "a0" => h.a0 = v,
                        "a1" => h.a1 = v,
                        "p0" => h.p0 = v,
                        "p1" => h.p1 = v,
                        _ => return Err(IdentityError::Invalid(format!("unknown W parameter '{k}'"))),
                    }
                }
                d.horadam = Some(h);
            } else {
                let mut p = None;
                let mut q = None;
                for (k, v) in parse_assignments(body, line_no)? {
                    match k.as_str() {
                        "P" => p = Some(parse_rational_value(&v)?),
                        "Q" => q = Some(parse_rational_value(&v)?),
                        _ => return Err(IdentityError::Invalid(format!("unknown parameter '{k}'"))),
                    }
                }
                match (p, q) {
                    (Some(p), Some(q)) => d.params = Some(SequenceParams::new(p, q)),
                    _ => return Err(IdentityError::Invalid("@params needs both P and Q".into())),
                }
            }
        }
        _ => {
            return Err(IdentityError::Syntax { line: line_no, column: 1, message: format!("unknown directive @{word}") })
        }
    }
    Ok(())
}

/// Parse an identity, `LHS = RHS` or a single expression asserted to vanish.
pub fn parse_identity(text: &str) -> Result<IdentityTemplate, IdentityError> {
    let mut d = Directives { name: None, params: None, horadam: None };
    let mut body = String::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim_start().starts_with('@') {
            let content = line.split('#').next().unwrap_or("");
            directive(i + 1, content, &mut d)?;
            body.push('\n');
        } else {
            body.push_str(line);
            body.push('\n');
        }
    }
    let mut p = Parser { toks: lex(&body, 1)?, pos: 0 };
    let lhs = p.expr()?;
    let rhs = if p.is_sym('=') {
        p.next();
        Some(p.expr()?)
    } else {
        None
    };
    let t = p.peek().clone();
    if t.tok != Tok::End {
        return p.err(&t, "unexpected trailing input");
    }
    let mut monos = expand(&lhs)?;
    let display = match &rhs {
        Some(r) => {
            monos.extend(expand(r)?.into_iter().map(|m| Mono { coef: -&m.coef, ..m }));
            format!("{lhs} = {r}")
        }
        None => format!("{lhs} = 0"),
    };
    let tpl = IdentityTemplate {
        name: d.name,
        index_vars: vec![],
        terms: to_terms(monos),
        params: d.params,
        horadam: d.horadam,
        display: Some(display),
    };
    tpl.canonicalize()
}

/// Parse with an explicit name, overriding any `@name` directive.
pub fn parse_named(name: &str, text: &str) -> Result<IdentityTemplate, IdentityError> {
    Ok(parse_identity(text)?.with_name(name))
}
