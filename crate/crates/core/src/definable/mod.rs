//! Definable sets of `Q^n` in the language of vector spaces: affine cosets,
//! blocks `P \ U holes`, disjoint-block normal forms and their classes in
//! `Z[X]`.

mod block;
mod class;
mod coset;
mod count;
mod set;
mod shift;

use thiserror::Error;

pub use block::Block;
pub use class::{definably_isomorphic, dim, k0_class, union_class, K0Class};
pub use coset::AffineCoset;
pub use count::{count_points_mod_p, PointCount};
pub use set::{boolean_normalize, DefinableSet, PpSystem, SetExpr};
pub use shift::{shift_witness, ShiftWitness};

use crate::rational::{fmt_rat, Rat};
use num_traits::{One, Signed, Zero};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CalcError {
    #[error("ambient dimensions differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
    #[error("leaf data must be integral")]
    NotIntegral,
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("{0}")]
    Precondition(String),
    #[error("invalid map: {}", .0.join("; "))]
    InvalidMap(Vec<String>),
}

/// `[a_1 .. a_n, b]` as `a_1 x1 + .. = b`.
pub(crate) fn format_equation(row: &[Rat]) -> String {
    let n = row.len() - 1;
    let mut s = String::new();
    for (i, a) in row[..n].iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let neg = a.is_negative();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let abs = a.abs();
        if !abs.is_one() {
            s.push_str(&fmt_rat(&abs));
            s.push('*');
        }
        s.push_str(&format!("x{}", i + 1));
    }
    if s.is_empty() {
        s.push('0');
    }
    format!("{s} = {}", fmt_rat(&row[n]))
}
