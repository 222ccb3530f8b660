use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::{GroupError, Perm};
use crate::linear::{MatRing, Matrix, RingElem};

/// A vector in a free module over a finite ring, under addition.
#[derive(Clone)]
pub struct ModVector {
    ring: Arc<MatRing>,
    entries: Vec<RingElem>,
}

impl ModVector {
    pub fn new(ring: Arc<MatRing>, entries: Vec<RingElem>) -> ModVector {
        ModVector { ring, entries }
    }

    pub fn zero(ring: Arc<MatRing>, len: usize) -> ModVector {
        ModVector { ring, entries: vec![0; len] }
    }

    pub fn ring(&self) -> &Arc<MatRing> {
        &self.ring
    }

    pub fn entries(&self) -> &[RingElem] {
        &self.entries
    }

    pub fn add(&self, other: &ModVector) -> ModVector {
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| self.ring.add(a, b)).collect();
        ModVector { ring: self.ring.clone(), entries }
    }

    pub fn neg(&self) -> ModVector {
        let entries = self.entries.iter().map(|&a| self.ring.neg(a)).collect();
        ModVector { ring: self.ring.clone(), entries }
    }
}

impl PartialEq for ModVector {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries && self.ring == other.ring
    }
}

impl Eq for ModVector {}

impl Hash for ModVector {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.entries.hash(state);
    }
}

impl fmt::Debug for ModVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} over {}", self.entries, self.ring)
    }
}

/// An element of a concrete finite group.
///
/// `Perm`, `Matrix` and `Vector` multiply on their own. `Pair` and `Tuple`
/// hold indices into the factor groups of a constructed product and only
/// make sense together with the group that owns them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupElement {
    Perm(Perm),
    Matrix(Matrix),
    Vector(ModVector),
    /// `(target index, acting index)` in a semidirect product.
    Pair(u32, u32),
    /// Component indices in a direct power.
    Tuple(Vec<u32>),
}

impl GroupElement {
    /// Shape tag used to check that generators are compatible.
    pub(crate) fn shape(&self) -> (u8, usize, Option<crate::linear::RingKind>) {
        match self {
            GroupElement::Perm(p) => (0, p.degree(), None),
            GroupElement::Matrix(m) => (1, m.size(), Some(m.ring().kind())),
            GroupElement::Vector(v) => (2, v.entries().len(), Some(v.ring().kind())),
            GroupElement::Pair(..) => (3, 0, None),
            GroupElement::Tuple(t) => (4, t.len(), None),
        }
    }

    pub(crate) fn identity_like(&self) -> Result<GroupElement, GroupError> {
        Ok(match self {
            GroupElement::Perm(p) => GroupElement::Perm(Perm::identity(p.degree())),
            GroupElement::Matrix(m) => GroupElement::Matrix(Matrix::identity(m.ring().clone(), m.size())),
            GroupElement::Vector(v) => GroupElement::Vector(ModVector::zero(v.ring().clone(), v.entries().len())),
            _ => return Err(GroupError::NotComposable),
        })
    }

    pub(crate) fn check_invertible(&self) -> Result<(), GroupError> {
        match self {
            GroupElement::Matrix(m) if !m.is_invertible() => Err(GroupError::NonInvertible(m.to_string())),
            _ => Ok(()),
        }
    }

    pub(crate) fn compose(&self, other: &GroupElement) -> GroupElement {
        match (self, other) {
            (GroupElement::Perm(a), GroupElement::Perm(b)) => GroupElement::Perm(a.compose(b)),
            (GroupElement::Matrix(a), GroupElement::Matrix(b)) => GroupElement::Matrix(a.mul(b)),
            (GroupElement::Vector(a), GroupElement::Vector(b)) => GroupElement::Vector(a.add(b)),
            _ => unreachable!("compose called on incompatible or constructed elements"),
        }
    }

    pub(crate) fn invert(&self) -> GroupElement {
        match self {
            GroupElement::Perm(p) => GroupElement::Perm(p.inverse()),
            GroupElement::Matrix(m) => GroupElement::Matrix(m.inverse().expect("group matrices are invertible")),
            GroupElement::Vector(v) => GroupElement::Vector(v.neg()),
            _ => unreachable!("invert called on a constructed element"),
        }
    }

    pub fn as_perm(&self) -> Option<&Perm> {
        match self {
            GroupElement::Perm(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_matrix(&self) -> Option<&Matrix> {
        match self {
            GroupElement::Matrix(m) => Some(m),
            _ => None,
        }
    }

    pub fn as_vector(&self) -> Option<&ModVector> {
        match self {
            GroupElement::Vector(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Perm(p) => write!(f, "{p}"),
            GroupElement::Matrix(m) => write!(f, "{m}"),
            GroupElement::Vector(v) => write!(f, "{:?}", v.entries()),
            GroupElement::Pair(h, k) => write!(f, "({h}, {k})"),
            GroupElement::Tuple(t) => write!(f, "{t:?}"),
        }
    }
}
