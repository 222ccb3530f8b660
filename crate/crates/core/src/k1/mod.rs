//! Closed forms for `K_1` of free modules as formal direct sums, their
//! finite truncations, and the embedding of algebraic `K_1`.

mod formal;
mod ring;
mod theorems;

pub use formal::{formal_equal, Atom, FormalAbGroup, Mult, Rank, Summand};
pub use ring::{derive_flags, ModuleKind, RingDescriptor, TheoryFlags};
pub use theorems::{
    embedding_target, k1_algebraic, k1_expression, k1_module, omega_nn_ab, omega_nn_ab_unnormalized,
    truncation_consistency, EmbeddingTarget, K1Expression,
};

use crate::groups::GroupError;

#[derive(Debug, thiserror::Error)]
pub enum K1Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid flags: {0}")]
    InvalidFlags(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("malformed expression: {0}")]
    Json(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}
