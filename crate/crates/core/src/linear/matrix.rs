use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::ring::{MatRing, RingElem};
use crate::groups::GroupError;

/// A square matrix over a finite ring, row-major.
#[derive(Clone)]
pub struct Matrix {
    ring: Arc<MatRing>,
    n: usize,
    entries: Vec<RingElem>,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.entries == other.entries && self.ring == other.ring
    }
}

impl Eq for Matrix {}

impl Hash for Matrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.entries.hash(state);
    }
}

impl PartialOrd for Matrix {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Matrix {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.ring.kind(), self.n, &self.entries).cmp(&(other.ring.kind(), other.n, &other.entries))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "] over {}", self.ring)
    }
}

impl Matrix {
    pub fn new(ring: Arc<MatRing>, n: usize, entries: Vec<RingElem>) -> Result<Matrix, GroupError> {
        if entries.len() != n * n {
            return Err(GroupError::Shape(format!("{} entries for a {n}x{n} matrix", entries.len())));
        }
        if let Some(&bad) = entries.iter().find(|&&e| e as usize >= ring.size()) {
            return Err(GroupError::Shape(format!("entry {bad} is not an element of {ring}")));
        }
        Ok(Matrix { ring, n, entries })
    }

    pub fn from_rows(ring: Arc<MatRing>, rows: &[&[RingElem]]) -> Result<Matrix, GroupError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(GroupError::Shape("matrix rows are not square".into()));
        }
        Matrix::new(ring, n, rows.concat())
    }

    pub fn identity(ring: Arc<MatRing>, n: usize) -> Matrix {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        Matrix { ring, n, entries }
    }

    /// The transvection `I + c e_ij`.
    pub fn elementary(ring: Arc<MatRing>, n: usize, i: usize, j: usize, c: RingElem) -> Matrix {
        let mut m = Matrix::identity(ring, n);
        m.entries[i * n + j] = c;
        m
    }

    pub fn diagonal(ring: Arc<MatRing>, diag: &[RingElem]) -> Matrix {
        let n = diag.len();
        let mut m = Matrix::identity(ring, n);
        for (i, &d) in diag.iter().enumerate() {
            m.entries[i * n + i] = d;
        }
        m
    }

    pub fn ring(&self) -> &Arc<MatRing> {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[RingElem] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> RingElem {
        self.entries[i * self.n + j]
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let (n, r) = (self.n, &self.ring);
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let t = r.mul(a, other.entries[k * n + j]);
                    entries[i * n + j] = r.add(entries[i * n + j], t);
                }
            }
        }
        Matrix { ring: self.ring.clone(), n, entries }
    }

    pub fn mul_vec(&self, v: &[RingElem]) -> Vec<RingElem> {
        let r = &self.ring;
        (0..self.n).map(|i| (0..self.n).fold(0, |acc, j| r.add(acc, r.mul(self.get(i, j), v[j])))).collect()
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> Matrix {
        let n = self.n;
        let mut entries = Vec::with_capacity((n - 1) * (n - 1));
        for i in (0..n).filter(|&i| i != skip_row) {
            for j in (0..n).filter(|&j| j != skip_col) {
                entries.push(self.get(i, j));
            }
        }
        Matrix { ring: self.ring.clone(), n: n - 1, entries }
    }

    /// Laplace expansion along the first row; exact over any commutative ring.
    pub fn det(&self) -> RingElem {
        let r = &self.ring;
        match self.n {
            0 => 1,
            1 => self.entries[0],
            2 => r.sub(r.mul(self.get(0, 0), self.get(1, 1)), r.mul(self.get(0, 1), self.get(1, 0))),
            n => (0..n).fold(0, |acc, j| {
                let term = r.mul(self.get(0, j), self.minor(0, j).det());
                if j % 2 == 0 {
                    r.add(acc, term)
                } else {
                    r.sub(acc, term)
                }
            }),
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.ring.is_unit(self.det())
    }

    /// Inverse via the adjugate; `None` when the determinant is not a unit.
    pub fn inverse(&self) -> Option<Matrix> {
        let r = &self.ring;
        let d_inv = r.inv(self.det())?;
        let n = self.n;
        if n == 0 {
            return Some(self.clone());
        }
        if n == 1 {
            return Some(Matrix { ring: r.clone(), n, entries: vec![d_inv] });
        }
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let c = self.minor(j, i).det();
                let c = if (i + j) % 2 == 0 { c } else { r.neg(c) };
                entries[i * n + j] = r.mul(d_inv, c);
            }
        }
        Some(Matrix { ring: r.clone(), n, entries })
    }

    /// True when the matrix is `diag(A', 1)`, i.e. lies in the image of the
    /// standard embedding of `GL_{n-1}`.
    pub fn in_lower_rank_image(&self) -> bool {
        let n = self.n;
        if n == 0 {
            return true;
        }
        (0..n).all(|k| {
            let expected = if k == n - 1 { 1 } else { 0 };
            self.get(n - 1, k) == expected && self.get(k, n - 1) == expected
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u32) -> Arc<MatRing> {
        Arc::new(MatRing::finite_field(q).unwrap())
    }

    #[test]
    fn det_and_inverse_3x3() {
        let r = f(5);
        let a = Matrix::from_rows(r.clone(), &[&[1, 2, 0], &[0, 1, 4], &[3, 0, 1]]).unwrap();
        // 1*(1-0) - 2*(0-12) + 0 = 25 = 0 mod 5
        assert_eq!(a.det(), 0);
        assert!(a.inverse().is_none());
        let b = Matrix::from_rows(r.clone(), &[&[2, 1, 0], &[0, 1, 4], &[3, 0, 1]]).unwrap();
        let inv = b.inverse().unwrap();
        assert_eq!(b.mul(&inv), Matrix::identity(r, 3));
    }

    #[test]
    fn inverse_over_integers_mod() {
        let r = Arc::new(MatRing::integers_mod(6).unwrap());
        let a = Matrix::from_rows(r.clone(), &[&[1, 3], &[0, 5]]).unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(inv.mul(&a), Matrix::identity(r, 2));
    }

    #[test]
    fn lower_rank_image() {
        let r = f(3);
        assert!(Matrix::identity(r.clone(), 2).in_lower_rank_image());
        assert!(!Matrix::diagonal(r.clone(), &[1, 2]).in_lower_rank_image());
        assert!(Matrix::diagonal(r, &[2, 1]).in_lower_rank_image());
    }
}
