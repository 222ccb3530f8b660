use std::fmt;

use serde::{Deserialize, Serialize};

use crate::affine::AffineMap;
use crate::definable::{dim, AffineCoset, Block, CalcError, DefinableSet};
use crate::rational::Rat;

/// A piecewise affine self-bijection of a definable set `D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PAMap {
    ambient: usize,
    domain: DefinableSet,
    pieces: Vec<(Block, AffineMap)>,
}

/// Outcome of the exact partition checks of [`PAMap::validate`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapValidation {
    pub passed: bool,
    pub violations: Vec<String>,
}

impl fmt::Display for MapValidation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            return write!(f, "valid");
        }
        write!(f, "invalid: {}", self.violations.join("; "))
    }
}

impl PAMap {
    /// Pieces are taken as given; the domain defaults to the union of the
    /// piece blocks. Use [`PAMap::validate`] to check bijectivity.
    pub fn new(
        ambient: usize,
        domain: Option<DefinableSet>,
        pieces: Vec<(Block, AffineMap)>,
    ) -> Result<PAMap, CalcError> {
        for (b, a) in &pieces {
            if b.ambient() != ambient || a.dim() != ambient {
                return Err(CalcError::AmbientMismatch { left: ambient, right: b.ambient().max(a.dim()) });
            }
        }
        let pieces: Vec<(Block, AffineMap)> = pieces.into_iter().filter(|(b, _)| !b.is_empty()).collect();
        let domain = match domain {
            Some(d) if d.ambient() != ambient => {
                return Err(CalcError::AmbientMismatch { left: ambient, right: d.ambient() })
            }
            Some(d) => d,
            None => {
                let mut d = DefinableSet::empty(ambient);
                for (b, _) in &pieces {
                    d = d.union(&DefinableSet::from_block(b.clone()))?;
                }
                d
            }
        };
        Ok(PAMap { ambient, domain, pieces })
    }

    /// Like [`PAMap::new`] but rejects maps that fail validation.
    pub fn checked(
        ambient: usize,
        domain: Option<DefinableSet>,
        pieces: Vec<(Block, AffineMap)>,
    ) -> Result<PAMap, CalcError> {
        let f = PAMap::new(ambient, domain, pieces)?;
        let v = f.validate();
        if !v.passed {
            return Err(CalcError::InvalidMap(v.violations));
        }
        Ok(f)
    }

    pub fn identity(domain: DefinableSet) -> PAMap {
        let n = domain.ambient();
        let pieces = domain.blocks().iter().map(|b| (b.clone(), AffineMap::identity(n))).collect();
        PAMap { ambient: n, domain, pieces }
    }

    /// A global affine map of `Q^n`.
    pub fn affine(a: AffineMap) -> PAMap {
        let n = a.dim();
        let full = Block::from_coset(AffineCoset::full(n));
        PAMap { ambient: n, domain: DefinableSet::full(n), pieces: vec![(full, a)] }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn domain(&self) -> &DefinableSet {
        &self.domain
    }

    pub fn pieces(&self) -> &[(Block, AffineMap)] {
        &self.pieces
    }

    pub fn apply(&self, x: &[Rat]) -> Option<Vec<Rat>> {
        self.pieces.iter().find(|(b, _)| b.contains(x)).map(|(_, a)| a.apply(x))
    }

    fn union_of(&self, blocks: impl Iterator<Item = Block>) -> Result<DefinableSet, CalcError> {
        let mut d = DefinableSet::empty(self.ambient);
        for b in blocks {
            d = d.union(&DefinableSet::from_block(b))?;
        }
        Ok(d)
    }

    fn images(&self) -> Vec<Block> {
        self.pieces.iter().map(|(b, a)| a.image_block(b)).collect()
    }

    /// Exact check that the pieces partition the domain and their images do too.
    pub fn validate(&self) -> MapValidation {
        let mut violations = Vec::new();
        let overlaps = |blocks: &[Block], what: &str, out: &mut Vec<String>| {
            for i in 0..blocks.len() {
                for j in i + 1..blocks.len() {
                    if !blocks[i].intersect(&blocks[j]).expect("same ambient").is_empty() {
                        out.push(format!("{what} {i} and {j} overlap"));
                    }
                }
            }
        };
        let sources: Vec<Block> = self.pieces.iter().map(|(b, _)| b.clone()).collect();
        overlaps(&sources, "pieces", &mut violations);
        let images = self.images();
        overlaps(&images, "images of pieces", &mut violations);
        match self.union_of(sources.into_iter()).and_then(|u| u.same_points(&self.domain)) {
            Ok(true) => {}
            Ok(false) => violations.push("pieces do not cover exactly the domain".into()),
            Err(e) => violations.push(e.to_string()),
        }
        match self.union_of(images.into_iter()).and_then(|u| u.same_points(&self.domain)) {
            Ok(true) => {}
            Ok(false) => violations.push("images do not cover exactly the domain".into()),
            Err(e) => violations.push(e.to_string()),
        }
        MapValidation { passed: violations.is_empty(), violations }
    }

    /// `{x in D : f(x) != x}`, piece by piece `B \ Fix(a)`.
    pub fn support(&self) -> DefinableSet {
        let mut blocks = Vec::new();
        for (b, a) in &self.pieces {
            let fixed = Block::from_coset(a.fixed_coset());
            blocks.extend(b.difference(&fixed).expect("same ambient"));
        }
        DefinableSet::from_blocks(self.ambient, blocks).expect("pieces are disjoint")
    }

    pub fn dim_aut(&self) -> Option<usize> {
        dim(&self.support())
    }

    pub fn in_omega_m(&self, m: usize) -> bool {
        self.dim_aut().is_none_or(|d| d <= m)
    }

    fn same_domain(&self, other: &PAMap) -> Result<(), CalcError> {
        if self.ambient != other.ambient {
            return Err(CalcError::AmbientMismatch { left: self.ambient, right: other.ambient });
        }
        if !self.domain.same_points(&other.domain)? {
            return Err(CalcError::Precondition("maps have different domains".into()));
        }
        Ok(())
    }

    /// `self o other`, on the common refinement `B_g n g^-1(B_f)`.
    pub fn compose(&self, other: &PAMap) -> Result<PAMap, CalcError> {
        self.same_domain(other)?;
        let mut pieces = Vec::new();
        for (bg, ag) in &other.pieces {
            for (bf, af) in &self.pieces {
                let piece = bg.intersect(&ag.preimage_block(bf))?;
                if !piece.is_empty() {
                    pieces.push((piece, af.compose(ag)));
                }
            }
        }
        Ok(PAMap { ambient: self.ambient, domain: other.domain.clone(), pieces })
    }

    pub fn invert(&self) -> PAMap {
        let pieces = self.pieces.iter().map(|(b, a)| (a.image_block(b), a.inverse())).collect();
        PAMap { ambient: self.ambient, domain: self.domain.clone(), pieces }
    }

    /// Whether the two maps agree pointwise on a common domain.
    pub fn agrees_with(&self, other: &PAMap) -> Result<bool, CalcError> {
        Ok(self.compose(&other.invert())?.support().is_empty())
    }

    /// `g o self o g^-1` for an affine `g`, carried to the domain `g(D)`.
    pub fn conjugate_by_affine(&self, g: &AffineMap) -> PAMap {
        let pieces = self.pieces.iter().map(|(b, a)| (g.image_block(b), a.conjugate_by(g))).collect();
        PAMap { ambient: self.ambient, domain: g.image_set(&self.domain), pieces }
    }

    /// `g o self o g^-1`.
    pub fn conjugate(&self, g: &PAMap) -> Result<PAMap, CalcError> {
        g.compose(self)?.compose(&g.invert())
    }
}

/// `f = g o h` with `g` the affine map of the top-dimensional piece and
/// `h = g^-1 o f` supported in dimension below `n`.
pub fn upsilon_decompose(f: &PAMap) -> Result<(AffineMap, PAMap), CalcError> {
    let n = f.ambient();
    if !f.domain().same_points(&DefinableSet::full(n))? {
        return Err(CalcError::Precondition("domain must be the whole space".into()));
    }
    let top: Vec<&(Block, AffineMap)> = f.pieces().iter().filter(|(b, _)| b.dim() == Some(n)).collect();
    let [(_, g)] = top.as_slice() else {
        return Err(CalcError::Precondition(format!("{} pieces of full dimension", top.len())));
    };
    let h = PAMap::affine(g.inverse()).compose(f)?;
    if n > 0 && !h.in_omega_m(n - 1) {
        return Err(CalcError::Precondition("remainder is not supported in lower dimension".into()));
    }
    Ok((g.clone(), h))
}

impl fmt::Display for PAMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "map on {} ({} pieces)", self.domain, self.pieces.len())?;
        for (b, a) in &self.pieces {
            writeln!(f, "  on {b}: {a}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};

    fn pt(x: &[i64]) -> AffineCoset {
        AffineCoset::point(&x.iter().map(|&v| rat(v)).collect::<Vec<_>>())
    }

    fn scale(k: i64) -> AffineMap {
        AffineMap::linear(vec![vec![rat(k)]]).unwrap()
    }

    fn to(v: i64, from: i64) -> AffineMap {
        AffineMap::translation(vec![rat(v - from)])
    }

    /// `2x` off `{1, 2}`, `1 -> 4`, `2 -> 2`.
    fn doubling_with_fix() -> PAMap {
        let rest = Block::new(AffineCoset::full(1), vec![pt(&[1]), pt(&[2])]).unwrap();
        PAMap::new(
            1,
            None,
            vec![(rest, scale(2)), (Block::from_coset(pt(&[1])), to(4, 1)), (Block::from_coset(pt(&[2])), to(2, 2))],
        )
        .unwrap()
    }

    fn swap01() -> PAMap {
        let rest = Block::new(AffineCoset::full(1), vec![pt(&[0]), pt(&[1])]).unwrap();
        PAMap::new(
            1,
            None,
            vec![
                (rest, AffineMap::identity(1)),
                (Block::from_coset(pt(&[0])), to(1, 0)),
                (Block::from_coset(pt(&[1])), to(0, 1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn validation() {
        assert!(PAMap::identity(DefinableSet::full(2)).validate().passed);
        assert!(doubling_with_fix().validate().passed);
        let overlapping = PAMap::new(
            1,
            Some(DefinableSet::full(1)),
            vec![
                (Block::from_coset(AffineCoset::full(1)), AffineMap::identity(1)),
                (Block::from_coset(pt(&[0])), AffineMap::identity(1)),
            ],
        )
        .unwrap();
        let v = overlapping.validate();
        assert!(!v.passed);
        assert!(v.violations.iter().any(|s| s.contains("overlap")));
        // 2x on all of Q \ {0} is not onto the complement of {0} plus the point
        let not_onto = PAMap::new(
            1,
            None,
            vec![
                (Block::new(AffineCoset::full(1), vec![pt(&[0])]).unwrap(), scale(2)),
                (Block::from_coset(pt(&[0])), to(1, 0)),
            ],
        )
        .unwrap();
        assert!(!not_onto.validate().passed);
    }

    #[test]
    fn supports() {
        assert!(PAMap::identity(DefinableSet::full(2)).support().is_empty());
        assert_eq!(PAMap::identity(DefinableSet::full(2)).dim_aut(), None);
        let shift = PAMap::affine(AffineMap::translation(vec![rat(1), rat(0)]));
        assert_eq!(shift.dim_aut(), Some(2));
        let s = swap01().support();
        assert_eq!(crate::definable::k0_class(&s).coeffs(), &[2]);
        assert_eq!(swap01().dim_aut(), Some(0));
        let reflect = PAMap::affine(AffineMap::linear(vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)]]).unwrap());
        assert_eq!(crate::definable::k0_class(&reflect.support()).coeffs(), &[0, -1, 1]);
    }

    #[test]
    fn compose_and_invert() {
        let f = doubling_with_fix();
        let id = f.compose(&f.invert()).unwrap();
        assert!(id.support().is_empty());
        let t1 = PAMap::affine(AffineMap::translation(vec![rat(1)]));
        let t2 = PAMap::affine(AffineMap::translation(vec![frac(1, 2)]));
        assert!(t1
            .compose(&t2)
            .unwrap()
            .agrees_with(&PAMap::affine(AffineMap::translation(vec![frac(3, 2)])))
            .unwrap());
        let g = swap01().compose(&PAMap::affine(scale(2))).unwrap();
        assert!(g.validate().passed);
        assert_eq!(g.dim_aut(), Some(1));
        assert_eq!(g.apply(&[frac(1, 2)]), Some(vec![rat(0)]));
    }

    #[test]
    fn omega_membership() {
        assert!(swap01().in_omega_m(0));
        assert!(!PAMap::affine(AffineMap::translation(vec![rat(1), rat(1)])).in_omega_m(1));
        let line = AffineCoset::from_rows(2, vec![vec![rat(0), rat(1), rat(0)]]).unwrap();
        let rest = Block::new(AffineCoset::full(2), vec![line.clone()]).unwrap();
        let slide = PAMap::new(
            2,
            None,
            vec![
                (rest, AffineMap::identity(2)),
                (Block::from_coset(line), AffineMap::translation(vec![rat(1), rat(0)])),
            ],
        )
        .unwrap();
        assert!(slide.validate().passed);
        assert!(slide.in_omega_m(1));
        assert!(!slide.in_omega_m(0));
    }

    #[test]
    fn decomposition() {
        let f = doubling_with_fix();
        let (g, h) = upsilon_decompose(&f).unwrap();
        assert_eq!(g, scale(2));
        assert_eq!(h.dim_aut(), Some(0));
        assert_eq!(h.apply(&[rat(1)]), Some(vec![rat(2)]));
        assert_eq!(h.apply(&[rat(2)]), Some(vec![rat(1)]));
        assert!(PAMap::affine(g).compose(&h).unwrap().agrees_with(&f).unwrap());
        let affine = PAMap::affine(AffineMap::translation(vec![rat(3)]));
        let (g, h) = upsilon_decompose(&affine).unwrap();
        assert_eq!(g, AffineMap::translation(vec![rat(3)]));
        assert!(h.support().is_empty());
    }

    #[test]
    fn conjugation() {
        let t = AffineMap::translation(vec![rat(5)]);
        let c = swap01().conjugate_by_affine(&t);
        assert_eq!(c.dim_aut(), Some(0));
        assert_eq!(c.apply(&[rat(5)]), Some(vec![rat(6)]));
        assert!(swap01().conjugate_by_affine(&AffineMap::identity(1)).agrees_with(&swap01()).unwrap());
        let via_pamap = swap01().conjugate(&PAMap::affine(t)).unwrap();
        assert!(via_pamap.agrees_with(&c).unwrap());
    }
}
