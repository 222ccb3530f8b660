//! Exact computations around `K_1` of free modules: finite-group
//! abelianization oracles, definable sets over the rationals and their
//! automorphisms, and symbolic direct-sum expressions.

pub mod affine;
pub mod automorphism;
pub mod constructions;
pub mod definable;
pub mod formula;
pub mod groups;
pub mod k1;
pub mod linear;
pub mod rational;
pub mod report;
pub mod verify;
