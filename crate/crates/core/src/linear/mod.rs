//! Finite rings, matrices over them, and the matrix groups `GL_n`, `E_n` and
//! `GL_n x| (R^n)^c`.

mod matgroups;
mod matrix;
mod ring;

pub use matgroups::{
    affine_group, det_class, elementary_closure, gl_group, matrix_action, special_linear_members, verify_gl_ab,
    GlAbReport, KNOWN_GL_AB_EXCEPTIONS,
};
pub use matrix::Matrix;
pub(crate) use ring::is_prime;
pub use ring::{MatRing, RingElem, RingKind, UnitSumWitness};
