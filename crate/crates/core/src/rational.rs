//! Dense linear algebra over exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero_vec(n: usize) -> Vec<Rat> {
    vec![Rat::zero(); n]
}

pub fn identity_matrix(n: usize) -> Vec<Vec<Rat>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect()).collect()
}

/// Brings `rows` to reduced row-echelon form in place, choosing pivots only
/// among the first `pivot_cols` columns, and drops rows that become zero in
/// those columns and are zero elsewhere. Returns the pivot columns.
pub(crate) fn rref(rows: &mut Vec<Vec<Rat>>, pivot_cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let lead = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = &*x / &lead;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let (src, dst) = if i < r {
                    let (a, b) = rows.split_at_mut(r);
                    (&b[0], &mut a[i])
                } else {
                    let (a, b) = rows.split_at_mut(i);
                    (&a[r], &mut b[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    *d = &*d - &f * s;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.retain(|row| row.iter().any(|x| !x.is_zero()));
    pivots
}

pub(crate) fn rank(rows: &[Vec<Rat>], cols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, cols).len()
}

/// A basis of `{x : A x = 0}` for `A` with `cols` columns.
pub(crate) fn null_space(a: &[Vec<Rat>], cols: usize) -> Vec<Vec<Rat>> {
    let mut m: Vec<Vec<Rat>> = a.iter().map(|r| r[..cols].to_vec()).collect();
    let pivots = rref(&mut m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = zero_vec(cols);
            v[f] = Rat::one();
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}

pub(crate) fn mat_mul(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols).map(|j| row.iter().zip(b).fold(Rat::zero(), |acc, (x, brow)| acc + x * &brow[j])).collect()
        })
        .collect()
}

pub(crate) fn mat_vec(a: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    a.iter().map(|row| row.iter().zip(v).fold(Rat::zero(), |acc, (x, y)| acc + x * y)).collect()
}

pub(crate) fn vec_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn vec_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn transpose(a: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let cols = a.first().map_or(0, |r| r.len());
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Gauss-Jordan inverse of a square matrix.
pub(crate) fn mat_inverse(a: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = a.len();
    let mut aug: Vec<Vec<Rat>> =
        a.iter().zip(identity_matrix(n)).map(|(row, id)| row.iter().cloned().chain(id).collect()).collect();
    let pivots = rref(&mut aug, n);
    if pivots.len() != n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Extends independent `vectors` in `Q^n` by standard basis vectors to a basis.
pub(crate) fn extend_to_basis(vectors: &[Vec<Rat>], n: usize) -> Vec<Vec<Rat>> {
    let mut basis = vectors.to_vec();
    for i in 0..n {
        if basis.len() == n {
            break;
        }
        let mut e = zero_vec(n);
        e[i] = Rat::one();
        basis.push(e);
        if rank(&basis, n) < basis.len() {
            basis.pop();
        }
    }
    basis
}

pub(crate) fn is_integral(x: &Rat) -> bool {
    x.denom().is_one()
}

/// `x mod p` for a rational whose denominator is prime to `p`.
pub(crate) fn reduce_mod(x: &Rat, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let num = ((x.numer() % &pb) + &pb) % &pb;
    let den = ((x.denom() % &pb) + &pb) % &pb;
    if den.is_zero() {
        return None;
    }
    let (num, den): (u64, u64) = (num.try_into().ok()?, den.try_into().ok()?);
    Some(num * mod_inverse(den, p) % p)
}

pub(crate) fn mod_inverse(a: u64, p: u64) -> u64 {
    // p prime
    let mut result = 1u64;
    let (mut base, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Row reduction modulo a prime with pivots in the first `pivot_cols`
/// columns; zero rows are dropped. Returns the pivot columns.
pub(crate) fn rref_mod(rows: &mut Vec<Vec<u64>>, pivot_cols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, piv);
        let inv = mod_inverse(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (d, s) in row.iter_mut().zip(&pivot_row) {
                    *d = (*d + p - f * s % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.retain(|row| row.iter().any(|&x| x != 0));
    pivots
}

pub(crate) fn fmt_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
