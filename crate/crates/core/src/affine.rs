//! Invertible affine maps `x -> A x + b` of `Q^n`.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::definable::{AffineCoset, Block, CalcError, DefinableSet};
use crate::rational::{fmt_rat, identity_matrix, mat_inverse, mat_mul, mat_vec, vec_add, zero_vec, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineMap {
    matrix: Vec<Vec<Rat>>,
    offset: Vec<Rat>,
}

impl AffineMap {
    pub fn new(matrix: Vec<Vec<Rat>>, offset: Vec<Rat>) -> Result<AffineMap, CalcError> {
        let n = offset.len();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(CalcError::Shape(format!("matrix must be {n} x {n}")));
        }
        if mat_inverse(&matrix).is_none() {
            return Err(CalcError::Singular);
        }
        Ok(AffineMap { matrix, offset })
    }

    pub fn identity(n: usize) -> AffineMap {
        AffineMap { matrix: identity_matrix(n), offset: zero_vec(n) }
    }

    pub fn translation(v: Vec<Rat>) -> AffineMap {
        AffineMap { matrix: identity_matrix(v.len()), offset: v }
    }

    pub fn linear(matrix: Vec<Vec<Rat>>) -> Result<AffineMap, CalcError> {
        let n = matrix.len();
        AffineMap::new(matrix, zero_vec(n))
    }

    pub fn dim(&self) -> usize {
        self.offset.len()
    }

    pub fn matrix(&self) -> &[Vec<Rat>] {
        &self.matrix
    }

    pub fn offset(&self) -> &[Rat] {
        &self.offset
    }

    pub fn apply(&self, x: &[Rat]) -> Vec<Rat> {
        vec_add(&mat_vec(&self.matrix, x), &self.offset)
    }

    /// `self o other`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        AffineMap {
            matrix: mat_mul(&self.matrix, &other.matrix),
            offset: vec_add(&mat_vec(&self.matrix, &other.offset), &self.offset),
        }
    }

    pub fn inverse(&self) -> AffineMap {
        let inv = mat_inverse(&self.matrix).expect("invertible by construction");
        let offset = mat_vec(&inv, &self.offset).into_iter().map(|x| -x).collect();
        AffineMap { matrix: inv, offset }
    }

    pub fn is_identity(&self) -> bool {
        self.offset.iter().all(Zero::is_zero) && self.matrix == identity_matrix(self.dim())
    }

    /// `{x : (A - I) x = -b}`.
    pub fn fixed_coset(&self) -> AffineCoset {
        let n = self.dim();
        let rows = (0..n)
            .map(|i| {
                let mut r: Vec<Rat> = self.matrix[i].clone();
                r[i] -= Rat::one();
                r.push(-self.offset[i].clone());
                r
            })
            .collect();
        AffineCoset::from_rows(n, rows).expect("square")
    }

    pub fn image_coset(&self, c: &AffineCoset) -> AffineCoset {
        let inv = self.inverse();
        c.preimage(&inv.matrix, &inv.offset)
    }

    pub fn preimage_coset(&self, c: &AffineCoset) -> AffineCoset {
        c.preimage(&self.matrix, &self.offset)
    }

    pub fn image_block(&self, b: &Block) -> Block {
        b.map_cosets(|c| self.image_coset(c))
    }

    pub fn preimage_block(&self, b: &Block) -> Block {
        b.map_cosets(|c| self.preimage_coset(c))
    }

    pub fn image_set(&self, d: &DefinableSet) -> DefinableSet {
        d.map_blocks(|c| self.image_coset(c))
    }

    /// `g o self o g^-1`.
    pub fn conjugate_by(&self, g: &AffineMap) -> AffineMap {
        g.compose(self).compose(&g.inverse())
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x -> [")?;
        for (i, r) in self.matrix.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}", r.iter().map(fmt_rat).collect::<Vec<_>>().join(" "))?;
        }
        write!(f, "] x + ({})", self.offset.iter().map(fmt_rat).collect::<Vec<_>>().join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn compose_and_invert() {
        let a = AffineMap::new(m(&[&[2, 1], &[1, 1]]), vec![rat(3), rat(-1)]).unwrap();
        assert!(a.compose(&a.inverse()).is_identity());
        let t1 = AffineMap::translation(vec![rat(1), rat(2)]);
        let t2 = AffineMap::translation(vec![rat(5), rat(-2)]);
        assert_eq!(t1.compose(&t2), AffineMap::translation(vec![rat(6), rat(0)]));
        assert!(AffineMap::new(m(&[&[1, 2], &[2, 4]]), vec![rat(0), rat(0)]).is_err());
    }

    #[test]
    fn fixed_sets() {
        let swap = AffineMap::linear(m(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(swap.fixed_coset().dim(), Some(1));
        let shift = AffineMap::translation(vec![rat(1), rat(0)]);
        assert!(shift.fixed_coset().is_empty());
        assert_eq!(AffineMap::identity(2).fixed_coset(), AffineCoset::full(2));
    }

    #[test]
    fn images_of_cosets() {
        let a = AffineMap::new(m(&[&[2, 0], &[0, 1]]), vec![rat(1), rat(0)]).unwrap();
        let line = AffineCoset::from_rows(2, m(&[&[1, 0, 1]])).unwrap();
        // x1 = 1 maps to x1 = 3
        assert_eq!(a.image_coset(&line), AffineCoset::from_rows(2, m(&[&[1, 0, 3]])).unwrap());
        assert_eq!(a.preimage_coset(&a.image_coset(&line)), line);
    }
}
