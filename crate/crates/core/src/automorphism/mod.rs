//! Piecewise affine definable bijections of `Q^n`: support, dimension,
//! the filtration by support dimension, and the splitting off of the affine
//! part of the top-dimensional piece.

mod json;
mod pamap;
mod random;

pub use crate::affine::AffineMap;
pub use json::{affine_to_json, pamap_from_json, pamap_to_json};
pub use pamap::{upsilon_decompose, MapValidation, PAMap};
pub use random::{random_affine, random_lower_dim, random_pamap};
