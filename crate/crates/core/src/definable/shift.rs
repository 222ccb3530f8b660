use serde::{Deserialize, Serialize};

use super::{dim, Block, CalcError, DefinableSet};
use crate::affine::AffineMap;
use crate::rational::{extend_to_basis, mat_inverse, mat_mul, mat_vec, transpose, vec_sub, Rat};

/// A set `D = g(D_2)` with `dim(D_1 n D) > m`, together with `g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftWitness {
    pub set: DefinableSet,
    pub map: AffineMap,
    pub note: String,
}

fn top_block(d: &DefinableSet) -> &Block {
    d.blocks().iter().max_by_key(|b| b.dim()).expect("nonempty")
}

fn dim_text(d: Option<usize>) -> String {
    d.map_or("-inf".to_string(), |k| k.to_string())
}

/// Moves `d2` by an affine bijection so that a top block of it overlaps a top
/// block of `d1` in dimension `min(dim d1, dim d2)`.
///
/// The bijection sends a witness point of the `d2` block to one of the `d1`
/// block and the first `k` carrier directions onto each other, so the common
/// `k`-dimensional coset through the witness is not covered by any hole.
pub fn shift_witness(d1: &DefinableSet, d2: &DefinableSet, m: usize) -> Result<ShiftWitness, CalcError> {
    if d1.ambient() != d2.ambient() {
        return Err(CalcError::AmbientMismatch { left: d1.ambient(), right: d2.ambient() });
    }
    let (e1, e2) = (dim(d1), dim(d2));
    if e1.is_none_or(|k| k <= m) || e2.is_none_or(|k| k <= m) {
        return Err(CalcError::Precondition(format!(
            "dimensions {} and {} must both exceed {m}",
            dim_text(e1),
            dim_text(e2)
        )));
    }
    let n = d1.ambient();
    let (b1, b2) = (top_block(d1), top_block(d2));
    let k = b1.dim().unwrap().min(b2.dim().unwrap());
    let w1 = b1.witness().expect("nonempty block");
    let w2 = b2.witness().expect("nonempty block");
    let u1: Vec<Vec<Rat>> = b1.carrier().directions().into_iter().take(k).collect();
    let u2: Vec<Vec<Rat>> = b2.carrier().directions().into_iter().take(k).collect();
    let basis1 = transpose(&extend_to_basis(&u1, n));
    let basis2 = transpose(&extend_to_basis(&u2, n));
    let linear = mat_mul(&basis1, &mat_inverse(&basis2).expect("basis"));
    let offset = vec_sub(&w1, &mat_vec(&linear, &w2));
    let map = AffineMap::new(linear, offset)?;
    let set = map.image_set(d2);
    let meet = dim(&d1.intersect(&set)?);
    debug_assert!(meet.is_some_and(|d| d > m));
    let note = format!("aligned blocks of dimension {k}; dim(D1 n D) = {}", dim_text(meet));
    Ok(ShiftWitness { set, map, note })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::definable::{definably_isomorphic, AffineCoset};
    use crate::rational::rat;

    fn c(n: usize, rows: &[&[i64]]) -> AffineCoset {
        AffineCoset::from_rows(n, rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()).unwrap()
    }

    fn check(d1: &DefinableSet, d2: &DefinableSet, m: usize) -> ShiftWitness {
        let w = shift_witness(d1, d2, m).unwrap();
        assert!(definably_isomorphic(&w.set, d2));
        assert!(dim(&d1.intersect(&w.set).unwrap()).is_some_and(|k| k > m));
        w
    }

    #[test]
    fn axes_align() {
        let d1 = DefinableSet::from_coset(c(2, &[&[0, 1, 0]]));
        let d2 = DefinableSet::from_coset(c(2, &[&[1, 0, 0]]));
        let w = check(&d1, &d2, 0);
        assert!(w.set.same_points(&d1).unwrap());
    }

    #[test]
    fn full_space() {
        let d = DefinableSet::full(2);
        let w = check(&d, &d, 1);
        assert!(w.set.same_points(&d).unwrap());
    }

    #[test]
    fn plane_and_plane_with_point() {
        let d1 = DefinableSet::from_coset(c(3, &[&[0, 0, 1, 0]]));
        let plane = DefinableSet::from_coset(c(3, &[&[1, 0, 0, 5]]));
        let pt = DefinableSet::from_coset(AffineCoset::point(&[rat(1), rat(1), rat(1)]));
        let d2 = plane.union(&pt).unwrap();
        let w = check(&d1, &d2, 1);
        assert_eq!(dim(&d1.intersect(&w.set).unwrap()), Some(2));
    }

    #[test]
    fn holes_are_respected() {
        let d1 = DefinableSet::from_coset(c(2, &[&[0, 1, 0]])).complement();
        let d2 = DefinableSet::from_coset(c(2, &[&[1, 1, 0]]))
            .difference(&DefinableSet::from_coset(AffineCoset::point(&[rat(0), rat(0)])))
            .unwrap();
        check(&d1, &d2, 0);
    }

    #[test]
    fn precondition() {
        let pt = DefinableSet::from_coset(AffineCoset::point(&[rat(0)]));
        assert!(shift_witness(&pt, &DefinableSet::full(1), 0).is_err());
    }
}
