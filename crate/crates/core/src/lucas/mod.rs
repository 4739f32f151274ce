//! Lucas sequences `U_k(P, Q)`, `V_k(P, Q)` and Horadam sequences, numeric
//! and symbolic, for every integer index.

pub mod horadam;
pub mod matrix;
pub mod sequence;

pub use horadam::{horadam, horadam_over_lucas, horadam_recurrence, horadam_symbolic, HoradamParams};
pub use matrix::{matrix_power, Companion, Mat2};
pub use sequence::{
    lucas_laurent, lucas_numeric, lucas_symbolic, lucas_value, methods_agree, pair_field, pair_nonneg, v_from_u,
    LucasKind, LucasPair, Method, SequenceParams,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LucasError {
    #[error("singular parameters: {0}")]
    SingularParameter(String),
}
