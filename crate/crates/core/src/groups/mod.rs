//! Concrete finite groups: enumeration, commutator subgroups, abelianization
//! to invariant factors, and coinvariants of group actions.

mod abelian;
mod action;
mod element;
mod group;
mod perm;

use thiserror::Error;

pub use abelian::{abelian_iso, AbInvariants};
pub use action::{abelianized_coinvariants, coinvariants, GroupAction};
pub use element::{GroupElement, ModVector};
pub use group::{enumerate_group, FiniteGroup, DEFAULT_CAP};
pub use perm::Perm;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group would exceed the element cap of {cap}")]
    CapExceeded { cap: usize },
    #[error("no generators given")]
    NoGenerators,
    #[error("not invertible: {0}")]
    NonInvertible(String),
    #[error("not a bijection: {0}")]
    NotABijection(String),
    #[error("incompatible generators: {0}")]
    Incompatible(String),
    #[error("constructed elements need their owning group to multiply")]
    NotComposable,
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("group {0} is not abelian")]
    NotAbelian(String),
    #[error("{0:?} is not a divisibility chain of factors >= 2")]
    NotCanonical(Vec<u64>),
    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("{0}")]
    Precondition(String),
}
