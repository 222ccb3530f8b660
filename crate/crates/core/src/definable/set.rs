use std::fmt;

use serde::{Deserialize, Serialize};

use super::{AffineCoset, Block, CalcError};
use crate::rational::Rat;

/// A finite disjoint union of nonempty blocks in `Q^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DefinableSet {
    ambient: usize,
    blocks: Vec<Block>,
}

impl DefinableSet {
    pub fn empty(ambient: usize) -> DefinableSet {
        DefinableSet { ambient, blocks: Vec::new() }
    }

    pub fn full(ambient: usize) -> DefinableSet {
        DefinableSet::from_block(Block::from_coset(AffineCoset::full(ambient)))
    }

    pub fn from_coset(c: AffineCoset) -> DefinableSet {
        DefinableSet::from_block(Block::from_coset(c))
    }

    pub fn from_block(b: Block) -> DefinableSet {
        let ambient = b.ambient();
        let blocks = if b.is_empty() { Vec::new() } else { vec![b] };
        DefinableSet { ambient, blocks }
    }

    /// Blocks must be pairwise disjoint; this is checked.
    pub fn from_blocks(ambient: usize, blocks: Vec<Block>) -> Result<DefinableSet, CalcError> {
        let mut blocks: Vec<Block> = blocks.into_iter().filter(|b| !b.is_empty()).collect();
        for b in &blocks {
            if b.ambient() != ambient {
                return Err(CalcError::AmbientMismatch { left: ambient, right: b.ambient() });
            }
        }
        blocks.sort();
        let set = DefinableSet { ambient, blocks };
        if !set.blocks_disjoint() {
            return Err(CalcError::Precondition("blocks are not pairwise disjoint".into()));
        }
        Ok(set)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.blocks.iter().any(|b| b.contains(x))
    }

    pub fn blocks_disjoint(&self) -> bool {
        self.blocks
            .iter()
            .enumerate()
            .all(|(i, a)| self.blocks[i + 1..].iter().all(|b| a.intersect(b).map(|x| x.is_empty()).unwrap_or(false)))
    }

    fn check(&self, other: &DefinableSet) -> Result<(), CalcError> {
        if self.ambient != other.ambient {
            return Err(CalcError::AmbientMismatch { left: self.ambient, right: other.ambient });
        }
        Ok(())
    }

    fn with_blocks(ambient: usize, mut blocks: Vec<Block>) -> DefinableSet {
        blocks.retain(|b| !b.is_empty());
        blocks.sort();
        DefinableSet { ambient, blocks }
    }

    fn subtract_block(pieces: Vec<Block>, cut: &Block) -> Result<Vec<Block>, CalcError> {
        let mut out = Vec::new();
        for p in pieces {
            out.extend(p.difference(cut)?);
        }
        Ok(out)
    }

    pub fn difference(&self, other: &DefinableSet) -> Result<DefinableSet, CalcError> {
        self.check(other)?;
        let mut out = Vec::new();
        for b in &self.blocks {
            let mut pieces = vec![b.clone()];
            for cut in &other.blocks {
                pieces = Self::subtract_block(pieces, cut)?;
            }
            out.extend(pieces);
        }
        Ok(Self::with_blocks(self.ambient, out))
    }

    pub fn intersect(&self, other: &DefinableSet) -> Result<DefinableSet, CalcError> {
        self.check(other)?;
        let mut out = Vec::new();
        for a in &self.blocks {
            for b in &other.blocks {
                out.push(a.intersect(b)?);
            }
        }
        Ok(Self::with_blocks(self.ambient, out))
    }

    pub fn union(&self, other: &DefinableSet) -> Result<DefinableSet, CalcError> {
        let extra = other.difference(self)?;
        Ok(Self::with_blocks(self.ambient, self.blocks.iter().chain(&extra.blocks).cloned().collect()))
    }

    pub fn complement(&self) -> DefinableSet {
        DefinableSet::full(self.ambient).difference(self).expect("same ambient")
    }

    pub fn is_subset(&self, other: &DefinableSet) -> Result<bool, CalcError> {
        Ok(self.difference(other)?.is_empty())
    }

    /// Equality as point sets.
    pub fn same_points(&self, other: &DefinableSet) -> Result<bool, CalcError> {
        Ok(self.is_subset(other)? && other.is_subset(self)?)
    }

    pub fn product(&self, other: &DefinableSet) -> DefinableSet {
        let blocks = self.blocks.iter().flat_map(|a| other.blocks.iter().map(move |b| a.product(b))).collect();
        Self::with_blocks(self.ambient + other.ambient, blocks)
    }

    /// Applies a coset transformer blockwise; it must come from a bijection.
    pub(crate) fn map_blocks(&self, f: impl Fn(&AffineCoset) -> AffineCoset) -> DefinableSet {
        Self::with_blocks(self.ambient, self.blocks.iter().map(|b| b.map_cosets(&f)).collect())
    }

    pub fn witness(&self) -> Option<Vec<Rat>> {
        self.blocks.first().and_then(Block::witness)
    }
}

impl fmt::Display for DefinableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "{{}}");
        }
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, " u ")?;
            }
            write!(f, "[{b}]")?;
        }
        Ok(())
    }
}

/// A positive primitive system `E y_1 .. y_m : A (x, y) = b` in `Q^n`; each
/// row is `[a_1 .. a_n, c_1 .. c_m, b]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PpSystem {
    pub ambient: usize,
    pub bound: usize,
    pub equations: Vec<Vec<Rat>>,
}

impl PpSystem {
    pub fn new(ambient: usize, bound: usize, equations: Vec<Vec<Rat>>) -> Result<PpSystem, CalcError> {
        if let Some(bad) = equations.iter().find(|r| r.len() != ambient + bound + 1) {
            return Err(CalcError::Shape(format!(
                "equation of length {}, expected {}",
                bad.len(),
                ambient + bound + 1
            )));
        }
        Ok(PpSystem { ambient, bound, equations })
    }

    /// The defining coset after eliminating the bound variables.
    pub fn coset(&self) -> AffineCoset {
        let n = self.ambient + self.bound;
        AffineCoset::from_rows(n, self.equations.clone())
            .expect("shape checked")
            .project(self.ambient)
            .expect("keep <= n")
    }

    pub fn from_coset(c: &AffineCoset) -> PpSystem {
        let equations = if c.is_empty() {
            let mut r = vec![Rat::from_integer(0.into()); c.ambient() + 1];
            r[c.ambient()] = Rat::from_integer(1.into());
            vec![r]
        } else {
            c.rows().to_vec()
        };
        PpSystem { ambient: c.ambient(), bound: 0, equations }
    }
}

/// Boolean combination of pp-sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SetExpr {
    Atom(PpSystem),
    And(Box<SetExpr>, Box<SetExpr>),
    Or(Box<SetExpr>, Box<SetExpr>),
    Not(Box<SetExpr>),
}

impl SetExpr {
    pub fn atom(c: &AffineCoset) -> SetExpr {
        SetExpr::Atom(PpSystem::from_coset(c))
    }

    pub fn and(a: SetExpr, b: SetExpr) -> SetExpr {
        SetExpr::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: SetExpr, b: SetExpr) -> SetExpr {
        SetExpr::Or(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: SetExpr) -> SetExpr {
        SetExpr::Not(Box::new(a))
    }

    pub fn ambient(&self) -> Result<usize, CalcError> {
        match self {
            SetExpr::Atom(s) => Ok(s.ambient),
            SetExpr::Not(a) => a.ambient(),
            SetExpr::And(a, b) | SetExpr::Or(a, b) => {
                let (l, r) = (a.ambient()?, b.ambient()?);
                if l != r {
                    return Err(CalcError::AmbientMismatch { left: l, right: r });
                }
                Ok(l)
            }
        }
    }

    pub fn leaves(&self) -> Vec<&PpSystem> {
        match self {
            SetExpr::Atom(s) => vec![s],
            SetExpr::Not(a) => a.leaves(),
            SetExpr::And(a, b) | SetExpr::Or(a, b) => {
                let mut v = a.leaves();
                v.extend(b.leaves());
                v
            }
        }
    }

    /// Evaluates the combination given membership of each leaf, in leaf order.
    pub(crate) fn eval_with(&self, member: &mut impl FnMut(&PpSystem) -> bool) -> bool {
        match self {
            SetExpr::Atom(s) => member(s),
            SetExpr::Not(a) => !a.eval_with(member),
            SetExpr::And(a, b) => {
                let l = a.eval_with(member);
                let r = b.eval_with(member);
                l && r
            }
            SetExpr::Or(a, b) => {
                let l = a.eval_with(member);
                let r = b.eval_with(member);
                l || r
            }
        }
    }

    /// Membership of a rational point, straight from the definition.
    pub fn contains(&self, x: &[Rat]) -> bool {
        self.eval_with(&mut |s| s.coset().contains(x))
    }
}

/// Disjoint-block normal form of a boolean combination.
pub fn boolean_normalize(expr: &SetExpr) -> Result<DefinableSet, CalcError> {
    expr.ambient()?;
    normalize_rec(expr)
}

fn normalize_rec(expr: &SetExpr) -> Result<DefinableSet, CalcError> {
    match expr {
        SetExpr::Atom(s) => Ok(DefinableSet::from_coset(s.coset())),
        SetExpr::Not(a) => Ok(normalize_rec(a)?.complement()),
        SetExpr::And(a, b) => normalize_rec(a)?.intersect(&normalize_rec(b)?),
        SetExpr::Or(a, b) => normalize_rec(a)?.union(&normalize_rec(b)?),
    }
}
