use std::fmt;

use serde::{Deserialize, Serialize};

use super::{AffineCoset, CalcError, DefinableSet};

/// An element of `Z[X]`, lowest degree first, without trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct K0Class {
    coeffs: Vec<i64>,
}

impl K0Class {
    pub fn new(mut coeffs: Vec<i64>) -> K0Class {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        K0Class { coeffs }
    }

    pub fn zero() -> K0Class {
        K0Class::default()
    }

    /// `X^k`, the class of a `k`-dimensional coset.
    pub fn monomial(k: usize) -> K0Class {
        let mut c = vec![0; k + 1];
        c[k] = 1;
        K0Class { coeffs: c }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &K0Class) -> K0Class {
        let len = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[i64], i: usize| v.get(i).copied().unwrap_or(0);
        K0Class::new((0..len).map(|i| get(&self.coeffs, i) + get(&other.coeffs, i)).collect())
    }

    pub fn neg(&self) -> K0Class {
        K0Class { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &K0Class) -> K0Class {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &K0Class) -> K0Class {
        if self.is_zero() || other.is_zero() {
            return K0Class::zero();
        }
        let mut c = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        K0Class::new(c)
    }

    pub fn eval(&self, x: i64) -> i128 {
        self.coeffs.iter().rev().fold(0i128, |acc, &c| acc * x as i128 + c as i128)
    }
}

impl fmt::Display for K0Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    if k == 1 {
                        write!(f, "X")?;
                    } else {
                        write!(f, "X^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Class of a union of cosets by inclusion-exclusion:
/// `[C u R] = [C] + [R] - [R n C]`.
pub fn union_class(cosets: &[AffineCoset]) -> Result<K0Class, CalcError> {
    let mut cs: Vec<AffineCoset> = cosets.iter().filter(|c| !c.is_empty()).cloned().collect();
    cs.sort();
    cs.dedup();
    let maximal: Vec<AffineCoset> = cs
        .iter()
        .enumerate()
        .filter(|(i, c)| !cs.iter().enumerate().any(|(j, d)| j != *i && c.is_subset(d).unwrap()))
        .map(|(_, c)| c.clone())
        .collect();
    let Some((first, rest)) = maximal.split_first() else { return Ok(K0Class::zero()) };
    let head = K0Class::monomial(first.dim().expect("nonempty"));
    let meets = rest.iter().map(|c| c.intersect(first)).collect::<Result<Vec<_>, _>>()?;
    Ok(head.add(&union_class(rest)?).sub(&union_class(&meets)?))
}

/// `[D] = sum over blocks of X^{dim P} - [U holes]`.
pub fn k0_class(d: &DefinableSet) -> K0Class {
    d.blocks().iter().fold(K0Class::zero(), |acc, b| {
        let holes = union_class(b.holes()).expect("holes share the ambient");
        acc.add(&K0Class::monomial(b.dim().expect("nonempty block")).sub(&holes))
    })
}

/// Degree of the class; `None` stands for the dimension of the empty set.
pub fn dim(d: &DefinableSet) -> Option<usize> {
    k0_class(d).degree()
}

pub fn definably_isomorphic(a: &DefinableSet, b: &DefinableSet) -> bool {
    k0_class(a) == k0_class(b)
}
