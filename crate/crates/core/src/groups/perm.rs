use std::fmt;

use serde::{Deserialize, Serialize};

use super::GroupError;

/// A permutation of `{0, .., k-1}` stored as its image list.
///
/// Products follow function composition: `(a * b)(x) = a(b(x))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn new(images: Vec<u32>) -> Result<Perm, GroupError> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            let x = x as usize;
            if x >= images.len() || seen[x] {
                return Err(GroupError::NotABijection(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Perm(images))
    }

    pub fn identity(degree: usize) -> Perm {
        Perm((0..degree as u32).collect())
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Perm, GroupError> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                let y = cycle[(i + 1) % cycle.len()];
                if x as usize >= degree || y as usize >= degree {
                    return Err(GroupError::NotABijection(format!("cycle {cycle:?} on {degree} points")));
                }
                images[x as usize] = y;
            }
        }
        Perm::new(images)
    }

    pub fn transposition(degree: usize, a: u32, b: u32) -> Result<Perm, GroupError> {
        Perm::from_cycles(degree, &[&[a, b]])
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.0[x as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.0.len()];
        let mut cycles = 0;
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
            }
        }
        cycles
    }

    pub fn is_even(&self) -> bool {
        (self.degree() - self.cycle_count()).is_multiple_of(2)
    }

    /// +1 for even permutations, -1 for odd ones.
    pub fn sign(&self) -> i8 {
        if self.is_even() {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Perm {
    /// Cycle notation, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut wrote = false;
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
                first = false;
                x = self.0[x] as usize;
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_applies_right_factor_first() {
        let a = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        // a(b(1)) = a(2) = 2, a(b(0)) = a(0) = 1
        assert_eq!(a.compose(&b).images(), &[1, 2, 0]);
    }

    #[test]
    fn parity() {
        assert!(Perm::identity(4).is_even());
        assert!(!Perm::transposition(4, 0, 3).unwrap().is_even());
        assert!(Perm::from_cycles(4, &[&[0, 1, 2]]).unwrap().is_even());
        assert_eq!(Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap().sign(), -1);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Perm::new(vec![0, 0]).is_err());
        assert!(Perm::new(vec![0, 2]).is_err());
    }

    #[test]
    fn display_cycles() {
        let p = Perm::from_cycles(5, &[&[0, 2], &[1, 3, 4]]).unwrap();
        assert_eq!(p.to_string(), "(0 2)(1 3 4)");
        assert_eq!(Perm::identity(3).to_string(), "()");
    }
}
