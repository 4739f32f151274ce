//! Identity templates: sums of coefficient-weighted products of sequence terms.

pub mod catalog;
pub mod index;
pub mod json;
pub mod parse;
pub mod render;
pub mod template;

pub use catalog::{catalog, catalog_names, entries, generic_of, CatalogEntry};
pub use index::IndexExpr;
pub use json::{from_json, from_json_str, to_json, to_json_string, to_json_value, TemplateJson};
pub use parse::{parse_identity, parse_named, parse_ratfunc, Expr};
pub use render::{canonical_body, render, render_body, render_text, Format};
pub use template::{Bindings, Coefficient, IdentityTemplate, SeqFactor, SeqKind, Term, RESERVED};

use crate::algebra::AlgebraError;
use crate::lucas::LucasError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IdentityError {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unknown sequence '{0}' (expected U, V or W)")]
    UnknownSequence(String),
    #[error("index is not affine: {0}")]
    NonAffine(String),
    #[error("{0}")]
    Invalid(String),
    #[error("unknown identity '{name}'; available: {available}")]
    UnknownName { name: String, available: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Lucas(#[from] LucasError),
}
