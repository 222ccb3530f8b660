use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::GroupError;

/// A finite abelian group in invariant-factor form `d_1 | d_2 | .. | d_r`,
/// every `d_i >= 2`. The empty list is the trivial group.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AbInvariants {
    factors: Vec<u64>,
}

fn factorize(mut n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut pk = 1;
            while n.is_multiple_of(p) {
                n /= p;
                pk *= p;
            }
            out.push((p, pk));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, n));
    }
    out
}

impl AbInvariants {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_cyclic_orders(&[n])
    }

    /// Accepts an already canonical divisibility chain.
    pub fn from_factors(factors: Vec<u64>) -> Result<Self, GroupError> {
        if factors.iter().any(|&d| d < 2) || factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(GroupError::NotCanonical(factors));
        }
        Ok(AbInvariants { factors })
    }

    /// Canonical form of `Z_{n_1} + Z_{n_2} + ..` for arbitrary cyclic orders;
    /// orders equal to 1 contribute nothing.
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        // prime -> its prime-power parts, largest first
        let mut parts: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &n in orders {
            assert!(n >= 1, "cyclic order must be positive");
            for (p, pk) in factorize(n) {
                parts.entry(p).or_default().push(pk);
            }
        }
        let len = parts.values().map(Vec::len).max().unwrap_or(0);
        let mut factors = vec![1u64; len];
        for powers in parts.values_mut() {
            powers.sort_unstable_by(|a, b| b.cmp(a));
            for (i, pk) in powers.iter().enumerate() {
                factors[i] *= pk;
            }
        }
        factors.reverse();
        AbInvariants { factors }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn direct_sum(&self, other: &AbInvariants) -> AbInvariants {
        let all: Vec<u64> = self.factors.iter().chain(&other.factors).copied().collect();
        Self::from_cyclic_orders(&all)
    }
}

pub fn abelian_iso(a: &AbInvariants, b: &AbInvariants) -> bool {
    a == b
}

impl fmt::Display for AbInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, d) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_forms() {
        assert_eq!(AbInvariants::from_cyclic_orders(&[2, 3]).factors(), &[6]);
        assert_eq!(AbInvariants::from_cyclic_orders(&[2, 6]).factors(), &[2, 6]);
        assert_eq!(AbInvariants::from_cyclic_orders(&[4, 2]).factors(), &[2, 4]);
        assert_eq!(AbInvariants::from_cyclic_orders(&[1, 1]).factors(), &[] as &[u64]);
        assert_eq!(AbInvariants::from_cyclic_orders(&[12, 18]).factors(), &[6, 36]);
    }

    #[test]
    fn iso_compares_factor_lists() {
        let a = AbInvariants::from_factors(vec![2, 4]).unwrap();
        assert!(abelian_iso(&a, &AbInvariants::from_cyclic_orders(&[4, 2])));
        assert!(!abelian_iso(&AbInvariants::cyclic(8), &a));
    }

    #[test]
    fn from_factors_rejects_broken_chain() {
        assert!(AbInvariants::from_factors(vec![4, 2]).is_err());
        assert!(AbInvariants::from_factors(vec![1, 2]).is_err());
        assert!(AbInvariants::from_factors(vec![2, 6]).is_ok());
    }

    proptest! {
        #[test]
        fn canonicalization_preserves_order_and_chain(orders in proptest::collection::vec(1u64..60, 0..6)) {
            let inv = AbInvariants::from_cyclic_orders(&orders);
            prop_assert_eq!(inv.order(), orders.iter().product::<u64>());
            prop_assert!(inv.factors().windows(2).all(|w| w[1] % w[0] == 0));
            let mut shuffled = orders.clone();
            shuffled.reverse();
            prop_assert_eq!(AbInvariants::from_cyclic_orders(&shuffled), inv);
        }
    }
}
