use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{AffineCoset, CalcError};
use crate::rational::{rat, vec_add, zero_vec, Rat};

/// `P \ (H_1 u .. u H_k)` with every hole a proper sub-coset of `P` and the
/// holes an antichain in canonical order. A block is empty iff its carrier is.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Block {
    carrier: AffineCoset,
    holes: Vec<AffineCoset>,
}

impl Block {
    pub fn new(carrier: AffineCoset, holes: Vec<AffineCoset>) -> Result<Block, CalcError> {
        let n = carrier.ambient();
        if carrier.is_empty() {
            return Ok(Block::empty(n));
        }
        let mut hs = Vec::with_capacity(holes.len());
        for h in holes {
            let h = h.intersect(&carrier)?;
            if h == carrier {
                return Ok(Block::empty(n));
            }
            if !h.is_empty() {
                hs.push(h);
            }
        }
        hs.sort();
        hs.dedup();
        let mut kept: Vec<AffineCoset> = Vec::with_capacity(hs.len());
        for (i, h) in hs.iter().enumerate() {
            let covered = hs.iter().enumerate().any(|(j, g)| j != i && g != h && h.is_subset(g).unwrap());
            if !covered {
                kept.push(h.clone());
            }
        }
        Ok(Block { carrier, holes: kept })
    }

    pub fn from_coset(carrier: AffineCoset) -> Block {
        Block::new(carrier, Vec::new()).expect("single coset")
    }

    pub fn empty(ambient: usize) -> Block {
        Block { carrier: AffineCoset::empty(ambient), holes: Vec::new() }
    }

    pub fn carrier(&self) -> &AffineCoset {
        &self.carrier
    }

    pub fn holes(&self) -> &[AffineCoset] {
        &self.holes
    }

    pub fn ambient(&self) -> usize {
        self.carrier.ambient()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.carrier.dim()
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.carrier.contains(x) && !self.holes.iter().any(|h| h.contains(x))
    }

    pub fn intersect(&self, other: &Block) -> Result<Block, CalcError> {
        let carrier = self.carrier.intersect(&other.carrier)?;
        Block::new(carrier, self.holes.iter().chain(&other.holes).cloned().collect())
    }

    /// `self \ other` as pairwise disjoint blocks:
    /// `(P \ U(b u {P n Q})) u  U_i ((P n G_i) \ U(b u {G_1 .. G_{i-1}}))`.
    pub fn difference(&self, other: &Block) -> Result<Vec<Block>, CalcError> {
        if self.is_empty() || other.is_empty() {
            return Ok(if self.is_empty() { Vec::new() } else { vec![self.clone()] });
        }
        let meet = self.carrier.intersect(&other.carrier)?;
        if meet.is_empty() {
            return Ok(vec![self.clone()]);
        }
        let mut out = Vec::new();
        let mut outside = self.holes.clone();
        outside.push(meet);
        let first = Block::new(self.carrier.clone(), outside)?;
        if !first.is_empty() {
            out.push(first);
        }
        for (i, g) in other.holes.iter().enumerate() {
            let carrier = self.carrier.intersect(g)?;
            let holes = self.holes.iter().chain(&other.holes[..i]).cloned().collect();
            let piece = Block::new(carrier, holes)?;
            if !piece.is_empty() {
                out.push(piece);
            }
        }
        Ok(out)
    }

    /// `self x other`: carrier `P x P'`, holes `H x P'` and `P x H'`.
    pub fn product(&self, other: &Block) -> Block {
        let carrier = self.carrier.product(&other.carrier);
        let holes = self
            .holes
            .iter()
            .map(|h| h.product(&other.carrier))
            .chain(other.holes.iter().map(|h| self.carrier.product(h)))
            .collect();
        Block::new(carrier, holes).expect("same ambient")
    }

    /// A point of the block, or `None` when it is empty.
    ///
    /// Walks `p + t d` for `t = 0, 1, ..` along a direction `d` of the carrier
    /// that lies in no hole's direction space; each hole then meets the line
    /// at most once.
    pub fn witness(&self) -> Option<Vec<Rat>> {
        let p = self.carrier.point_in()?;
        if self.holes.is_empty() {
            return Some(p);
        }
        let basis = self.carrier.directions();
        let n = self.ambient();
        let mut k = 1i64;
        let d = loop {
            let mut d = zero_vec(n);
            let mut coeff = Rat::one();
            for b in &basis {
                d = vec_add(&d, &b.iter().map(|x| x * &coeff).collect::<Vec<_>>());
                coeff *= rat(k);
            }
            if self.holes.iter().all(|h| !h.contains_direction(&d)) {
                break d;
            }
            k += 1;
        };
        (0..=self.holes.len() as i64)
            .map(|t| {
                let t = rat(t);
                p.iter().zip(&d).map(|(x, y)| x + &t * y).collect::<Vec<Rat>>()
            })
            .find(|x| self.contains(x))
    }

    pub(crate) fn map_cosets(&self, f: impl Fn(&AffineCoset) -> AffineCoset) -> Block {
        let carrier = f(&self.carrier);
        let holes = self.holes.iter().map(&f).collect();
        Block::new(carrier, holes).expect("same ambient")
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.carrier)?;
        for h in &self.holes {
            write!(f, " \\ {h}")?;
        }
        Ok(())
    }
}
