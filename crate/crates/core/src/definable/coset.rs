use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::CalcError;
use crate::rational::{mat_mul, mat_vec, null_space, rref, zero_vec, Rat};

/// `{x in Q^n : A x = b}` stored as the reduced row-echelon form of `[A | b]`.
/// All empty cosets of a given ambient share one representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineCoset {
    empty: bool,
    ambient: usize,
    rows: Vec<Vec<Rat>>,
}

impl AffineCoset {
    /// Canonicalizes the system whose rows are `[a_1 .. a_n, b]`.
    pub fn from_rows(ambient: usize, rows: Vec<Vec<Rat>>) -> Result<AffineCoset, CalcError> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ambient + 1) {
            return Err(CalcError::Shape(format!("row of length {} in ambient {ambient}", bad.len())));
        }
        let mut rows = rows;
        rref(&mut rows, ambient);
        if rows.iter().any(|r| r[..ambient].iter().all(Zero::is_zero)) {
            return Ok(AffineCoset::empty(ambient));
        }
        Ok(AffineCoset { empty: false, ambient, rows })
    }

    pub fn full(ambient: usize) -> AffineCoset {
        AffineCoset { empty: false, ambient, rows: Vec::new() }
    }

    pub fn empty(ambient: usize) -> AffineCoset {
        AffineCoset { empty: true, ambient, rows: Vec::new() }
    }

    pub fn point(p: &[Rat]) -> AffineCoset {
        let n = p.len();
        let rows = (0..n)
            .map(|i| {
                let mut r = zero_vec(n + 1);
                r[i] = Rat::one();
                r[n] = p[i].clone();
                r
            })
            .collect();
        AffineCoset { empty: false, ambient: n, rows }
    }

    /// `p + span(directions)`.
    pub fn through(p: &[Rat], directions: &[Vec<Rat>]) -> AffineCoset {
        let n = p.len();
        // the constraints are the annihilator of the directions
        let normals = null_space(directions, n);
        let rows = normals
            .into_iter()
            .map(|a| {
                let b = a.iter().zip(p).fold(Rat::zero(), |acc, (x, y)| acc + x * y);
                a.into_iter().chain(std::iter::once(b)).collect()
            })
            .collect();
        AffineCoset::from_rows(n, rows).expect("well-formed")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }

    /// Canonical rows `[a_1 .. a_n, b]`; empty for the full space and for the empty coset.
    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    /// `None` for the empty coset.
    pub fn dim(&self) -> Option<usize> {
        (!self.empty).then(|| self.ambient - self.rows.len())
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        !self.empty
            && x.len() == self.ambient
            && self.rows.iter().all(|r| {
                r[..self.ambient].iter().zip(x).fold(Rat::zero(), |acc, (a, v)| acc + a * v) == r[self.ambient]
            })
    }

    fn check_ambient(&self, other: &AffineCoset) -> Result<(), CalcError> {
        if self.ambient != other.ambient {
            return Err(CalcError::AmbientMismatch { left: self.ambient, right: other.ambient });
        }
        Ok(())
    }

    pub fn intersect(&self, other: &AffineCoset) -> Result<AffineCoset, CalcError> {
        self.check_ambient(other)?;
        if self.empty || other.empty {
            return Ok(AffineCoset::empty(self.ambient));
        }
        let rows = self.rows.iter().chain(&other.rows).cloned().collect();
        AffineCoset::from_rows(self.ambient, rows)
    }

    pub fn is_subset(&self, other: &AffineCoset) -> Result<bool, CalcError> {
        Ok(&self.intersect(other)? == self)
    }

    /// Image under the projection onto the first `keep` coordinates.
    pub fn project(&self, keep: usize) -> Result<AffineCoset, CalcError> {
        if keep > self.ambient {
            return Err(CalcError::Shape(format!("cannot keep {keep} of {} coordinates", self.ambient)));
        }
        if self.empty {
            return Ok(AffineCoset::empty(keep));
        }
        let n = self.ambient;
        let elim = n - keep;
        // eliminated columns first, so that pivots land there whenever possible
        let mut rows: Vec<Vec<Rat>> = self
            .rows
            .iter()
            .map(|r| r[keep..n].iter().chain(&r[..keep]).chain(std::iter::once(&r[n])).cloned().collect())
            .collect();
        rref(&mut rows, n);
        let kept =
            rows.into_iter().filter(|r| r[..elim].iter().all(Zero::is_zero)).map(|r| r[elim..].to_vec()).collect();
        AffineCoset::from_rows(keep, kept)
    }

    /// Some point of the coset: free variables set to zero.
    pub fn point_in(&self) -> Option<Vec<Rat>> {
        if self.empty {
            return None;
        }
        let n = self.ambient;
        let mut p = zero_vec(n);
        for r in &self.rows {
            let pivot = r.iter().position(|x| !x.is_zero()).expect("nonzero row");
            p[pivot] = r[n].clone();
        }
        Some(p)
    }

    /// A basis of the direction space `P - p`.
    pub fn directions(&self) -> Vec<Vec<Rat>> {
        if self.empty {
            return Vec::new();
        }
        null_space(&self.rows, self.ambient)
    }

    /// Whether `v` lies in the direction space.
    pub fn contains_direction(&self, v: &[Rat]) -> bool {
        self.rows.iter().all(|r| r[..self.ambient].iter().zip(v).fold(Rat::zero(), |acc, (a, x)| acc + a * x).is_zero())
    }

    /// `{x : m x + c in self}` for an `n x n` matrix `m`.
    pub fn preimage(&self, m: &[Vec<Rat>], c: &[Rat]) -> AffineCoset {
        if self.empty {
            return self.clone();
        }
        let n = self.ambient;
        let a: Vec<Vec<Rat>> = self.rows.iter().map(|r| r[..n].to_vec()).collect();
        let am = mat_mul(&a, m);
        let ac = mat_vec(&a, c);
        let rows = am
            .into_iter()
            .zip(self.rows.iter().zip(ac))
            .map(|(mut row, (r, shift))| {
                row.push(&r[n] - shift);
                row
            })
            .collect();
        AffineCoset::from_rows(n, rows).expect("well-formed")
    }

    /// `self x other` in `Q^{n + n'}`.
    pub fn product(&self, other: &AffineCoset) -> AffineCoset {
        let (n1, n2) = (self.ambient, other.ambient);
        if self.empty || other.empty {
            return AffineCoset::empty(n1 + n2);
        }
        let mut rows = Vec::new();
        for r in &self.rows {
            rows.push(r[..n1].iter().cloned().chain(zero_vec(n2)).chain(std::iter::once(r[n1].clone())).collect());
        }
        for r in &other.rows {
            rows.push(zero_vec(n1).into_iter().chain(r.iter().cloned()).collect());
        }
        AffineCoset::from_rows(n1 + n2, rows).expect("well-formed")
    }
}

impl fmt::Display for AffineCoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.empty {
            return write!(f, "{{}}");
        }
        if self.rows.is_empty() {
            return write!(f, "Q^{}", self.ambient);
        }
        write!(f, "{{")?;
        for (k, r) in self.rows.iter().enumerate() {
            if k > 0 {
                write!(f, " & ")?;
            }
            write!(f, "{}", super::format_equation(r))?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn c(n: usize, rows: &[&[i64]]) -> AffineCoset {
        AffineCoset::from_rows(n, rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn parallel_lines_do_not_meet() {
        let a = c(2, &[&[0, 1, 0]]);
        let b = c(2, &[&[0, 1, 1]]);
        assert!(a.intersect(&b).unwrap().is_empty());
        assert_eq!(a.intersect(&b).unwrap().dim(), None);
    }

    #[test]
    fn axes_meet_at_origin() {
        let x = c(2, &[&[0, 1, 0]]);
        let y = c(2, &[&[1, 0, 0]]);
        let o = x.intersect(&y).unwrap();
        assert_eq!(o.dim(), Some(0));
        assert_eq!(o, AffineCoset::point(&[rat(0), rat(0)]));
    }

    #[test]
    fn canonical_form_is_unique() {
        let a = c(3, &[&[1, 1, 0, 2], &[0, 1, 1, 3]]);
        let b = c(3, &[&[2, 4, 2, 10], &[1, 0, -1, -1]]);
        assert_eq!(a, b);
    }

    #[test]
    fn projections() {
        let graph = c(2, &[&[-2, 1, 0]]);
        assert_eq!(graph.project(1).unwrap(), AffineCoset::full(1));
        assert!(AffineCoset::empty(3).project(1).unwrap().is_empty());
        let s = c(3, &[&[1, 1, 1, 0], &[0, 1, -1, 1]]);
        assert_eq!(s.project(1).unwrap(), AffineCoset::full(1));
        let pt = c(2, &[&[1, 1, 3], &[1, -1, 1]]);
        assert_eq!(pt.project(1).unwrap(), AffineCoset::point(&[rat(2)]));
    }

    #[test]
    fn through_and_directions() {
        let p = [rat(1), rat(2), rat(3)];
        let l = AffineCoset::through(&p, &[vec![rat(1), rat(1), rat(0)]]);
        assert_eq!(l.dim(), Some(1));
        assert!(l.contains(&p));
        assert!(l.contains(&[rat(3), rat(4), rat(3)]));
        assert_eq!(l.directions().len(), 1);
        assert!(l.contains(&l.point_in().unwrap()));
    }

    #[test]
    fn preimage_under_shift() {
        let line = c(2, &[&[0, 1, 0]]);
        // x -> x + (0, 1): preimage of {x2 = 0} is {x2 = -1}
        let m = crate::rational::identity_matrix(2);
        let pre = line.preimage(&m, &[rat(0), rat(1)]);
        assert_eq!(pre, c(2, &[&[0, 1, -1]]));
    }

    #[test]
    fn product_dimension() {
        let a = c(1, &[&[1, 5]]);
        let b = AffineCoset::full(2);
        assert_eq!(a.product(&b).dim(), Some(2));
        assert!(a.product(&AffineCoset::empty(1)).is_empty());
    }
}
