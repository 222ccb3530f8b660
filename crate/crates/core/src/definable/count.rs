use serde::{Deserialize, Serialize};

use super::{CalcError, PpSystem, SetExpr};
use crate::linear::is_prime;
use crate::rational::{is_integral, reduce_mod, rref_mod};

const MAX_POINTS: u64 = 1_000_000;
const MAX_LEAVES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCount {
    pub prime: u64,
    pub count: u64,
    /// Every intersection of leaves has the same dimension over `F_p` as over `Q`.
    pub good_prime: bool,
}

/// Rows in the ambient variables of the projection of a leaf to `F_p^n`, or
/// `None` when the leaf is empty mod `p`.
fn reduce_leaf(leaf: &PpSystem, p: u64) -> Result<Option<Vec<Vec<u64>>>, CalcError> {
    let (n, m) = (leaf.ambient, leaf.bound);
    let mut rows = Vec::with_capacity(leaf.equations.len());
    for eq in &leaf.equations {
        if !eq.iter().all(is_integral) {
            return Err(CalcError::NotIntegral);
        }
        let r: Vec<u64> = eq.iter().map(|x| reduce_mod(x, p).expect("integral")).collect();
        // bound variables first so they are eliminated
        rows.push(r[n..n + m].iter().chain(&r[..n]).chain(std::iter::once(&r[n + m])).copied().collect::<Vec<u64>>());
    }
    rref_mod(&mut rows, n + m, p);
    if rows.iter().any(|r| r[..n + m].iter().all(|&x| x == 0)) {
        return Ok(None);
    }
    Ok(Some(rows.into_iter().filter(|r| r[..m].iter().all(|&x| x == 0)).map(|r| r[m..].to_vec()).collect()))
}

fn dim_mod(systems: &[&Vec<Vec<u64>>], n: usize, p: u64) -> Option<usize> {
    let mut rows: Vec<Vec<u64>> = systems.iter().flat_map(|s| s.iter().cloned()).collect();
    let rank = rref_mod(&mut rows, n, p).len();
    if rows.iter().any(|r| r[..n].iter().all(|&x| x == 0)) {
        return None;
    }
    Some(n - rank)
}

/// Exhaustive count of the combination's points in `F_p^n`, reading every
/// leaf's integer equations modulo `p`.
pub fn count_points_mod_p(expr: &SetExpr, p: u64) -> Result<PointCount, CalcError> {
    if !is_prime(p) {
        return Err(CalcError::Precondition(format!("{p} is not prime")));
    }
    let n = expr.ambient()?;
    let total = (0..n).try_fold(1u64, |acc, _| acc.checked_mul(p).filter(|&t| t <= MAX_POINTS));
    let total = total.ok_or(CalcError::TooLarge(format!("{p}^{n} points exceed {MAX_POINTS}")))?;
    let leaves = expr.leaves();
    if leaves.len() > MAX_LEAVES {
        return Err(CalcError::TooLarge(format!("{} leaves exceed {MAX_LEAVES}", leaves.len())));
    }
    let reduced = leaves.iter().map(|l| reduce_leaf(l, p)).collect::<Result<Vec<_>, _>>()?;

    let mut count = 0;
    let mut point = vec![0u64; n];
    for idx in 0..total {
        let mut t = idx;
        for x in point.iter_mut() {
            *x = t % p;
            t /= p;
        }
        let member: Vec<bool> = reduced
            .iter()
            .map(|sys| {
                sys.as_ref().is_some_and(|rows| {
                    rows.iter().all(|r| {
                        let lhs = r[..n].iter().zip(&point).fold(0u64, |acc, (a, x)| (acc + a * x) % p);
                        lhs == r[n]
                    })
                })
            })
            .collect();
        let mut k = 0;
        let inside = expr.eval_with(&mut |_| {
            k += 1;
            member[k - 1]
        });
        if inside {
            count += 1;
        }
    }

    let cosets: Vec<_> = leaves.iter().map(|l| l.coset()).collect();
    let mut good_prime = true;
    'subsets: for mask in 1u32..(1 << leaves.len()) {
        let chosen: Vec<usize> = (0..leaves.len()).filter(|i| mask & (1 << i) != 0).collect();
        let mut over_q = cosets[chosen[0]].clone();
        for &i in &chosen[1..] {
            over_q = over_q.intersect(&cosets[i])?;
        }
        let mut systems = Vec::with_capacity(chosen.len());
        for &i in &chosen {
            match &reduced[i] {
                Some(s) => systems.push(s),
                None => {
                    if over_q.dim().is_some() {
                        good_prime = false;
                        break 'subsets;
                    }
                    continue 'subsets;
                }
            }
        }
        if dim_mod(&systems, n, p) != over_q.dim() {
            good_prime = false;
            break;
        }
    }
    Ok(PointCount { prime: p, count, good_prime })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::definable::AffineCoset;
    use crate::rational::rat;

    fn atom(n: usize, rows: &[&[i64]]) -> SetExpr {
        SetExpr::Atom(PpSystem::new(n, 0, rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()).unwrap())
    }

    #[test]
    fn punctured_plane() {
        let e = SetExpr::not(atom(2, &[&[0, 1, 0]]));
        let c = count_points_mod_p(&e, 5).unwrap();
        assert_eq!(c.count, 20);
        assert!(c.good_prime);
    }

    #[test]
    fn crossing_lines() {
        let e = SetExpr::or(atom(2, &[&[0, 1, 0]]), atom(2, &[&[1, 0, 0]]));
        let c = count_points_mod_p(&e, 7).unwrap();
        assert_eq!(c.count, 13);
        assert!(c.good_prime);
    }

    #[test]
    fn coefficient_divisible_by_p_is_bad() {
        let e = atom(2, &[&[5, 0, 1]]);
        let c = count_points_mod_p(&e, 5).unwrap();
        assert!(!c.good_prime);
        assert_eq!(c.count, 0);
        // 2x = 2y coincides with x = y except mod 2
        let e = SetExpr::and(atom(2, &[&[2, 0, 0]]), atom(2, &[&[0, 1, 0]]));
        assert!(count_points_mod_p(&e, 3).unwrap().good_prime);
    }

    #[test]
    fn quantified_leaf_projects() {
        // E y : x1 - 2 y = 0 is all of F_p for odd p
        let leaf = PpSystem::new(1, 1, vec![vec![rat(1), rat(-2), rat(0)]]).unwrap();
        assert_eq!(leaf.coset(), AffineCoset::full(1));
        let c = count_points_mod_p(&SetExpr::Atom(leaf), 7).unwrap();
        assert_eq!(c.count, 7);
        assert!(c.good_prime);
    }

    #[test]
    fn rejects_large_and_composite() {
        let e = SetExpr::atom(&AffineCoset::full(9));
        assert!(matches!(count_points_mod_p(&e, 5), Err(CalcError::TooLarge(_))));
        assert!(count_points_mod_p(&SetExpr::atom(&AffineCoset::full(1)), 6).is_err());
    }
}
