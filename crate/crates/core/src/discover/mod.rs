//! Find coefficients of an ansatz by solving an exact linear system built
//! from small index samples, then verify every candidate.

pub mod engine;
pub mod generators;
pub mod json;
pub mod solve;
pub mod system;

pub use engine::{discover, Candidate, DiscoverOptions, Discovery};
pub use generators::{
    interpolation_identity, power_ansatz, power_representation, Generated, InterpVariant, NodeIndex,
};
pub use json::{CandidateJson, DiscoveryJson, ReportJson, ValueJson};
pub use solve::{solve, Matrix, SolutionReport};
pub use system::{build_system, default_samples, AnsatzSystem, Sample};

use crate::algebra::AlgebraError;
use crate::identity::IdentityError;
use crate::lucas::LucasError;
use crate::verify::VerifyError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiscoverError {
    #[error("template has no unknown coefficients")]
    NoUnknowns,
    #[error("found only {found} nonsingular samples of the {needed} needed within |k| <= {limit}")]
    SamplingFailure { needed: usize, found: usize, limit: i64 },
    #[error("sample {sample} is singular: {reason}")]
    SingularSample { sample: String, reason: String },
    #[error("invalid nodes: {0}")]
    InvalidNodes(String),
    #[error(transparent)]
    Identity(#[from] IdentityError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Lucas(#[from] LucasError),
}
