use rand::seq::SliceRandom;
use rand::Rng;

use super::PAMap;
use crate::affine::AffineMap;
use crate::definable::{AffineCoset, Block};
use crate::rational::{rat, vec_sub, Rat};

/// An invertible affine map with small integer entries.
pub fn random_affine<R: Rng>(rng: &mut R, n: usize) -> AffineMap {
    loop {
        let m: Vec<Vec<Rat>> = (0..n).map(|_| (0..n).map(|_| rat(rng.gen_range(-2..=2))).collect()).collect();
        let b: Vec<Rat> = (0..n).map(|_| rat(rng.gen_range(-3..=3))).collect();
        if let Ok(a) = AffineMap::new(m, b) {
            return a;
        }
    }
}

/// A bijection of `Q^n` that permutes a few integer points and, for `n >= 2`,
/// possibly slides a line missing those points along itself.
pub fn random_lower_dim<R: Rng>(rng: &mut R, n: usize) -> PAMap {
    let k = rng.gen_range(1..=3);
    let mut points: Vec<Vec<Rat>> = Vec::new();
    while points.len() < k {
        let p: Vec<Rat> = (0..n).map(|_| rat(rng.gen_range(-4..=4))).collect();
        if !points.contains(&p) {
            points.push(p);
        }
    }
    let mut images = points.clone();
    images.shuffle(rng);
    let mut pieces = Vec::new();
    let mut holes: Vec<AffineCoset> = points.iter().map(|p| AffineCoset::point(p)).collect();
    for (p, q) in points.iter().zip(&images) {
        pieces.push((Block::from_coset(AffineCoset::point(p)), AffineMap::translation(vec_sub(q, p))));
    }
    if n >= 2 && rng.gen_bool(0.5) {
        let line = loop {
            let (a, b) = (rng.gen_range(-2..=2), rng.gen_range(-2..=2));
            if a == 0 && b == 0 {
                continue;
            }
            let c = rng.gen_range(-5..=5);
            let mut row = vec![rat(0); n + 1];
            row[0] = rat(a);
            row[1] = rat(b);
            row[n] = rat(c);
            // remaining coordinates pinned to zero so the set is a line
            let mut rows = vec![row];
            for i in 2..n {
                let mut r = vec![rat(0); n + 1];
                r[i] = rat(1);
                rows.push(r);
            }
            let line = AffineCoset::from_rows(n, rows).expect("shape");
            if points.iter().all(|p| !line.contains(p)) {
                break line;
            }
        };
        let dir = line.directions().remove(0);
        let t = rat(rng.gen_range(1..=2));
        let shift: Vec<Rat> = dir.iter().map(|x| x * &t).collect();
        pieces.push((Block::from_coset(line.clone()), AffineMap::translation(shift)));
        holes.push(line);
    }
    let rest = Block::new(AffineCoset::full(n), holes).expect("same ambient");
    pieces.push((rest, AffineMap::identity(n)));
    PAMap::new(n, None, pieces).expect("same ambient")
}

/// `A o s` with `A` affine and `s` supported in lower dimension; either factor
/// may be trivial.
pub fn random_pamap<R: Rng>(rng: &mut R, n: usize) -> PAMap {
    let a = if rng.gen_bool(0.8) { random_affine(rng, n) } else { AffineMap::identity(n) };
    let s = if rng.gen_bool(0.8) { random_lower_dim(rng, n) } else { PAMap::affine(AffineMap::identity(n)) };
    PAMap::affine(a).compose(&s).expect("both on Q^n")
}
