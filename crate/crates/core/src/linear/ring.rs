use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::groups::GroupError;

/// Elements are encoded as integers `0..size`. For `F_{p^e}` the encoding of
/// `c_0 + c_1 x + .. + c_{e-1} x^{e-1}` is `c_0 + c_1 p + .. + c_{e-1} p^{e-1}`.
pub type RingElem = u16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RingKind {
    FiniteField { p: u32, degree: u32 },
    IntegersMod(u32),
}

/// Fixed defining polynomials for the non-prime fields, as low-order
/// coefficients of a monic polynomial of the given degree.
const FIELD_POLYNOMIALS: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1]),          // F_4:  x^2 + x + 1
    (2, 3, &[1, 1, 0]),       // F_8:  x^3 + x + 1
    (2, 4, &[1, 1, 0, 0]),    // F_16: x^4 + x + 1
    (2, 5, &[1, 0, 1, 0, 0]), // F_32: x^5 + x^2 + 1
    (3, 2, &[1, 0]),          // F_9:  x^2 + 1
    (3, 3, &[1, 2, 0]),       // F_27: x^3 + 2x + 1
    (5, 2, &[2, 0]),          // F_25: x^2 + 2
    (7, 2, &[1, 0]),          // F_49: x^2 + 1
];

const MAX_RING_SIZE: u32 = 256;

/// A finite commutative ring given by exact operation tables.
#[derive(Clone)]
pub struct MatRing {
    kind: RingKind,
    size: usize,
    add: Vec<RingElem>,
    mul: Vec<RingElem>,
    neg: Vec<RingElem>,
    inv: Vec<Option<RingElem>>,
}

impl PartialEq for MatRing {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for MatRing {}

impl Hash for MatRing {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.kind.hash(state);
    }
}

impl fmt::Debug for MatRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatRing({self})")
    }
}

impl fmt::Display for MatRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RingKind::FiniteField { .. } => write!(f, "F_{}", self.size),
            RingKind::IntegersMod(m) => write!(f, "Z/{m}"),
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, e)` with `q = p^e` when `q` is a prime power.
pub(crate) fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

impl MatRing {
    /// The finite field with `q` elements. Prime `q < 256` and
    /// `q in {4, 8, 9, 16, 25, 27, 32, 49}` are supported.
    pub fn finite_field(q: u32) -> Result<MatRing, GroupError> {
        let (p, e) = prime_power(q as u64).ok_or(GroupError::UnsupportedRing(format!("{q} is not a prime power")))?;
        let (p, e) = (p as u32, e);
        if q >= MAX_RING_SIZE {
            return Err(GroupError::UnsupportedRing(format!("F_{q} is too large")));
        }
        let ring = if e == 1 {
            Self::build(RingKind::FiniteField { p, degree: 1 }, q as usize, |a, b| (a + b) % p, |a, b| (a * b) % p)
        } else {
            let poly = FIELD_POLYNOMIALS
                .iter()
                .find(|(pp, ee, _)| *pp == p && *ee == e)
                .map(|(_, _, c)| *c)
                .ok_or(GroupError::UnsupportedRing(format!("no fixed polynomial for F_{q}")))?;
            let add = |a: u32, b: u32| {
                let (x, y) = (digits(a, p, e), digits(b, p, e));
                undigits(&x.iter().zip(&y).map(|(s, t)| (s + t) % p).collect::<Vec<_>>(), p)
            };
            let mul = |a: u32, b: u32| poly_mul(a, b, p, e, poly);
            Self::build(RingKind::FiniteField { p, degree: e }, q as usize, add, mul)
        };
        if q <= 16 {
            ring.check_field_axioms()?;
        }
        Ok(ring)
    }

    pub fn integers_mod(m: u32) -> Result<MatRing, GroupError> {
        if !(2..MAX_RING_SIZE).contains(&m) {
            return Err(GroupError::UnsupportedRing(format!("Z/{m}")));
        }
        Ok(Self::build(RingKind::IntegersMod(m), m as usize, |a, b| (a + b) % m, |a, b| (a * b) % m))
    }

    fn build(kind: RingKind, size: usize, add: impl Fn(u32, u32) -> u32, mul: impl Fn(u32, u32) -> u32) -> MatRing {
        let mut add_t = vec![0; size * size];
        let mut mul_t = vec![0; size * size];
        for a in 0..size {
            for b in 0..size {
                add_t[a * size + b] = add(a as u32, b as u32) as RingElem;
                mul_t[a * size + b] = mul(a as u32, b as u32) as RingElem;
            }
        }
        let neg = (0..size).map(|a| (0..size).find(|&b| add_t[a * size + b] == 0).unwrap() as RingElem).collect();
        let inv = (0..size).map(|a| (0..size).find(|&b| mul_t[a * size + b] == 1).map(|b| b as RingElem)).collect();
        MatRing { kind, size, add: add_t, mul: mul_t, neg, inv }
    }

    fn check_field_axioms(&self) -> Result<(), GroupError> {
        let n = self.size as RingElem;
        let bad = |what: &str| Err(GroupError::UnsupportedRing(format!("{self}: {what} fails")));
        for a in 0..n {
            if a != 0 && self.inv(a).is_none() {
                return bad("inverse");
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return bad("commutativity");
                }
                for c in 0..n {
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return bad("distributivity");
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
                        || self.add(self.add(a, b), c) != self.add(a, self.add(b, c))
                    {
                        return bad("associativity");
                    }
                }
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_field(&self) -> bool {
        matches!(self.kind, RingKind::FiniteField { .. })
    }

    pub fn characteristic(&self) -> u32 {
        match self.kind {
            RingKind::FiniteField { p, .. } => p,
            RingKind::IntegersMod(m) => m,
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = RingElem> {
        0..self.size as RingElem
    }

    pub fn units(&self) -> Vec<RingElem> {
        self.elements().filter(|&a| self.inv[a as usize].is_some()).collect()
    }

    /// Elements `p^j`; their additive span is the whole ring.
    pub fn additive_generators(&self) -> Vec<RingElem> {
        match self.kind {
            RingKind::FiniteField { p, degree } => (0..degree).map(|j| p.pow(j) as RingElem).collect(),
            RingKind::IntegersMod(_) => vec![1],
        }
    }

    pub fn add(&self, a: RingElem, b: RingElem) -> RingElem {
        self.add[a as usize * self.size + b as usize]
    }

    pub fn sub(&self, a: RingElem, b: RingElem) -> RingElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: RingElem, b: RingElem) -> RingElem {
        self.mul[a as usize * self.size + b as usize]
    }

    pub fn neg(&self, a: RingElem) -> RingElem {
        self.neg[a as usize]
    }

    pub fn inv(&self, a: RingElem) -> Option<RingElem> {
        self.inv[a as usize]
    }

    pub fn is_unit(&self, a: RingElem) -> bool {
        self.inv(a).is_some()
    }
}

fn digits(mut a: u32, p: u32, e: u32) -> Vec<u32> {
    (0..e)
        .map(|_| {
            let d = a % p;
            a /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

fn poly_mul(a: u32, b: u32, p: u32, e: u32, modulus: &[u32]) -> u32 {
    let (x, y) = (digits(a, p, e), digits(b, p, e));
    let e = e as usize;
    let mut prod = vec![0u32; 2 * e];
    for i in 0..e {
        for j in 0..e {
            prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
        }
    }
    // x^e = -(c_0 + c_1 x + ...)
    for k in (e..2 * e).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for (i, &m) in modulus.iter().enumerate() {
            prod[k - e + i] = (prod[k - e + i] + (p - m % p) * c) % p;
        }
    }
    undigits(&prod[..e], p)
}

/// Units `u, v` with `u + v = 1`, when they exist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitSumWitness {
    pub exists: bool,
    pub u: RingElem,
    pub v: RingElem,
}

impl UnitSumWitness {
    pub fn find(ring: &MatRing) -> UnitSumWitness {
        for u in ring.units() {
            let v = ring.sub(1, u);
            if ring.is_unit(v) {
                return UnitSumWitness { exists: true, u, v };
            }
        }
        UnitSumWitness { exists: false, u: 0, v: 0 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fields_satisfy_axioms() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = MatRing::finite_field(q).unwrap();
            assert_eq!(f.units().len(), q as usize - 1, "F_{q}");
        }
        for q in [25, 27, 32, 49] {
            let f = MatRing::finite_field(q).unwrap();
            assert_eq!(f.units().len(), q as usize - 1, "F_{q}");
        }
    }

    #[test]
    fn f4_has_unit_sum() {
        let f4 = MatRing::finite_field(4).unwrap();
        // x^2 = x + 1, so x * x = x + 1 has encoding 3
        assert_eq!(f4.mul(2, 2), 3);
        let w = UnitSumWitness::find(&f4);
        assert!(w.exists);
        assert_eq!(f4.add(w.u, w.v), 1);
    }

    #[test]
    fn unit_sum_witnesses() {
        assert!(!UnitSumWitness::find(&MatRing::finite_field(2).unwrap()).exists);
        let f3 = MatRing::finite_field(3).unwrap();
        let w = UnitSumWitness::find(&f3);
        assert_eq!((w.u, w.v), (2, 2));
        assert!(!UnitSumWitness::find(&MatRing::integers_mod(4).unwrap()).exists);
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert!(MatRing::finite_field(6).is_err());
        assert!(MatRing::finite_field(1).is_err());
        assert!(MatRing::finite_field(81).is_err());
    }

    #[test]
    fn integers_mod_units() {
        let z8 = MatRing::integers_mod(8).unwrap();
        assert_eq!(z8.units(), vec![1, 3, 5, 7]);
        assert!(!z8.is_field());
    }
}
