//! Built-in identities.
//!
//! `F.n` entries are the Fibonacci forms, written as `U` identities with
//! `P = 1, Q = -1`. The multi-node square and cube identities `GF.14`,
//! `GF.15` (and `F.14`) are stored with their denominators cleared, so every
//! entry is a polynomial identity in the sequence terms.

use super::parse::parse_named;
use super::template::IdentityTemplate;
use super::IdentityError;

pub struct CatalogEntry {
    pub name: &'static str,
    pub summary: &'static str,
    pub text: &'static str,
}

macro_rules! entries {
    ($( $name:literal, $summary:literal, $text:expr; )*) => {
        &[ $( CatalogEntry { name: $name, summary: $summary, text: $text }, )* ]
    };
}

static ENTRIES: &[CatalogEntry] = entries![
    "GF.1", "fourth powers of three consecutive terms",
        "2*(Q^4*U[k]^4 + P^4*U[k+1]^4 + U[k+2]^4) = (Q^2*U[k]^2 + P^2*U[k+1]^2 + U[k+2]^2)^2";
    "GF.2", "Catalan's identity",
        "U[k]^2 - U[k+n]*U[k-n] = Q^(k-n)*U[n]^2";
    "GF.3", "odd-index doubling step",
        "U[2k+1] = U[k+1]^2 - Q*U[k]^2";
    "GF.4", "even-index doubling step",
        "U[2k] = U[k]*(2*U[k+1] - P*U[k])";
    "GF.5", "triple index",
        "U[3k] = U[k+1]^3/P + (U[3] - P^2)*U[k]^3 + Q^3*U[k-1]^3/P";
    "GF.6", "quadruple index",
        "U[4k] = U[k+1]^4/P + (U[4] - P^3)*U[k]^4 - Q^4*U[k-1]^4/P + 4*Q^2*U[k]^3*U[k-1]";
    "GF.7", "quintuple index",
        "U[5k] = U[k+1]^5/P + (U[5] - P^4)*U[k]^5 + Q^5*U[k-1]^5/P + 10*Q^2*U[k+1]*U[k]^3*U[k-1]";
    "GF.8", "squares of products of four consecutive terms",
        "(Q*U[k-1]*U[k+2])^2 + ((P^2-Q)*U[k]*U[k+1])^2 = (P*U[2k+1])^2 + 2*Q*(P^2+Q)*U[k-1]*U[k]*U[k+1]*U[k+2]";
    "GF.9", "four consecutive squares",
        "U[k+1]^2 - Q^3*U[k-2]^2 = (P^2-Q)*(U[k]^2 - Q*U[k-1]^2)";
    "GF.10", "difference of squares two apart",
        "P*U[2k] = U[k+1]^2 - Q^2*U[k-1]^2";
    "GF.11", "square in terms of three predecessors",
        "U[k+1]^2 = 2*P*(P^2-Q)*U[k]*U[k-1] + (Q^2-P^4)*U[k-1]^2 + P^2*Q^2*U[k-2]^2";
    "GF.12", "squares four apart",
        "U[k+2]^2 - Q^4*U[k-2]^2 = (P^2-2*Q)*(U[k+1]^2 - Q^2*U[k-1]^2)";
    "GF.13", "symmetric differences of squares",
        "U[2l]*(U[k+m]^2 - Q^(2m)*U[k-m]^2) = U[2m]*(U[k+l]^2 - Q^(2l)*U[k-l]^2)";
    "GF.14", "square through three shifted squares",
        "U[k]^2*U[l-m]*U[s-m]*U[s-l] = Q^(-2m)*U[k+m]^2*U[l]*U[s]*U[s-l] \
         - Q^(-l-m)*U[k+l]^2*U[s]*U[m]*U[s-m] + Q^(-l-m)*U[k+s]^2*U[m]*U[l]*U[l-m]";
    "GF.15", "cube through four shifted cubes",
        "U[k]^3*U[l-m]*U[p-m]*U[s-m]*U[p-l]*U[s-l]*U[s-p] = \
         Q^(-3m)*U[k+m]^3*U[l]*U[p]*U[s]*U[p-l]*U[s-l]*U[s-p] \
         - Q^(-2l-m)*U[k+l]^3*U[m]*U[p]*U[s]*U[p-m]*U[s-m]*U[s-p] \
         + Q^(-l-m-p)*U[k+p]^3*U[m]*U[l]*U[s]*U[l-m]*U[s-m]*U[s-l] \
         - Q^(-l-m-p)*U[k+s]^3*U[m]*U[l]*U[p]*U[l-m]*U[p-m]*U[p-l]";
    "F.1", "fourth powers of three consecutive Fibonacci numbers",
        concat!("@params P=1, Q=-1\n", "2*(U[k]^4 + U[k+1]^4 + U[k+2]^4) = (U[k]^2 + U[k+1]^2 + U[k+2]^2)^2");
    "F.2", "Catalan's identity for Fibonacci numbers",
        concat!("@params P=1, Q=-1\n", "U[k]^2 - U[k+n]*U[k-n] = Q^(k-n)*U[n]^2");
    "F.3", "odd-index doubling",
        concat!("@params P=1, Q=-1\n", "U[2k+1] = U[k+1]^2 + U[k]^2");
    "F.4", "even-index doubling",
        concat!("@params P=1, Q=-1\n", "U[2k] = U[k]*(2*U[k+1] - U[k])");
    "F.5", "triple index",
        concat!("@params P=1, Q=-1\n", "U[3k] = U[k+1]^3 + U[k]^3 - U[k-1]^3");
    "F.6", "quadruple index",
        concat!("@params P=1, Q=-1\n", "U[4k] = U[k+1]^4 + 2*U[k]^4 - U[k-1]^4 + 4*U[k]^3*U[k-1]");
    "F.7", "quintuple index",
        concat!("@params P=1, Q=-1\n", "U[5k] = U[k+1]^5 + 4*U[k]^5 - U[k-1]^5 + 10*U[k+1]*U[k]^3*U[k-1]");
    "F.8", "Pythagorean triple from four consecutive terms",
        concat!("@params P=1, Q=-1\n", "(U[k-1]*U[k+2])^2 + (2*U[k]*U[k+1])^2 = U[2k+1]^2");
    "F.9", "four consecutive squares",
        concat!("@params P=1, Q=-1\n", "U[k+1]^2 + U[k-2]^2 = 2*(U[k]^2 + U[k-1]^2)");
    "F.10", "difference of squares two apart",
        concat!("@params P=1, Q=-1\n", "U[2k] = U[k+1]^2 - U[k-1]^2");
    "F.11", "square in terms of three predecessors",
        concat!("@params P=1, Q=-1\n", "U[k+1]^2 = 4*U[k]*U[k-1] + U[k-2]^2");
    "F.12", "squares four apart",
        concat!("@params P=1, Q=-1\n", "U[k+2]^2 - U[k-2]^2 = 3*(U[k+1]^2 - U[k-1]^2)");
    "F.13", "symmetric differences of squares",
        concat!("@params P=1, Q=-1\n", "U[2l]*(U[k+m]^2 - U[k-m]^2) = U[2m]*(U[k+l]^2 - U[k-l]^2)");
    "F.14", "square through three shifted squares",
        concat!("@params P=1, Q=-1\n", "U[k]^2*U[l-m]*U[s-m]*U[s-l] = U[k+m]^2*U[l]*U[s]*U[s-l] \
         - Q^(l+m)*U[k+l]^2*U[s]*U[m]*U[s-m] + Q^(l+m)*U[k+s]^2*U[m]*U[l]*U[l-m]");
    "EQ.20", "cubes at five consecutive indices",
        concat!("@params P=1, Q=-1\n", "U[k+2]^3 + U[k-2]^3 = 3*(U[k+1]^3 - U[k-1]^3) + 6*U[k]^3");
    "EQ.21", "fourth powers at six indices",
        concat!("@params P=1, Q=-1\n", "U[k+3]^4 - U[k-3]^4 = 4*(U[k+2]^4 - U[k-2]^4) + 20*(U[k+1]^4 - U[k-1]^4)");
    "EQ.22", "fifth powers at seven indices",
        concat!("@params P=1, Q=-1\n", "U[k+3]^5 - U[k-3]^5 = 8*(U[k+2]^5 + U[k-2]^5) + 40*(U[k+1]^5 - U[k-1]^5) - 60*U[k]^5");
    "ADD", "addition formula",
        "U[n+m] = U[n]*U[m+1] - Q*U[m]*U[n-1]";
    "CAT.1", "Catalan's identity, n = 1", "U[k]^2 - U[k+1]*U[k-1] = Q^(k-1)*U[1]^2";
    "CAT.2", "Catalan's identity, n = 2", "U[k]^2 - U[k+2]*U[k-2] = Q^(k-2)*U[2]^2";
    "CAT.3", "Catalan's identity, n = 3", "U[k]^2 - U[k+3]*U[k-3] = Q^(k-3)*U[3]^2";
    "CAT.4", "Catalan's identity, n = 4", "U[k]^2 - U[k+4]*U[k-4] = Q^(k-4)*U[4]^2";
    "CAT.5", "Catalan's identity, n = 5", "U[k]^2 - U[k+5]*U[k-5] = Q^(k-5)*U[5]^2";
    "CAT.6", "Catalan's identity, n = 6", "U[k]^2 - U[k+6]*U[k-6] = Q^(k-6)*U[6]^2";
];

pub fn entries() -> &'static [CatalogEntry] {
    ENTRIES
}

pub fn catalog_names() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.name).collect()
}

pub fn catalog(name: &str) -> Result<IdentityTemplate, IdentityError> {
    let entry = ENTRIES.iter().find(|e| e.name.eq_ignore_ascii_case(name)).ok_or_else(|| {
        IdentityError::UnknownName { name: name.to_string(), available: catalog_names().join(", ") }
    })?;
    parse_named(entry.name, entry.text)
}

/// The generic counterpart of an `F.n` entry.
pub fn generic_of(name: &str) -> Option<String> {
    name.strip_prefix("F.").map(|n| format!("GF.{n}"))
}
