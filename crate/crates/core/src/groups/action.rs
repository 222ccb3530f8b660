use std::sync::Arc;

use super::{AbInvariants, FiniteGroup, GroupError};

/// An action of `acting` on `target` by automorphisms, tabulated as
/// `table[k * |target| + h] = phi(k)(h)`.
#[derive(Clone, Debug)]
pub struct GroupAction {
    acting: FiniteGroup,
    target: FiniteGroup,
    table: Arc<Vec<u32>>,
}

impl GroupAction {
    /// Tabulates `map(k, h)` and checks that it is a homomorphism into `Aut(target)`.
    pub fn from_fn(
        acting: &FiniteGroup,
        target: &FiniteGroup,
        map: impl Fn(usize, usize) -> usize,
    ) -> Result<GroupAction, GroupError> {
        let (nk, nh) = (acting.order(), target.order());
        let mut table = Vec::with_capacity(nk * nh);
        for k in 0..nk {
            for h in 0..nh {
                let img = map(k, h);
                if img >= nh {
                    return Err(GroupError::InvalidAction(format!("image index {img} out of range")));
                }
                table.push(img as u32);
            }
        }
        let action = GroupAction { acting: acting.clone(), target: target.clone(), table: Arc::new(table) };
        action.validate()?;
        Ok(action)
    }

    pub fn trivial(acting: &FiniteGroup, target: &FiniteGroup) -> GroupAction {
        let nh = target.order();
        let table = (0..acting.order()).flat_map(|_| 0..nh as u32).collect();
        GroupAction { acting: acting.clone(), target: target.clone(), table: Arc::new(table) }
    }

    /// A group acting on itself by conjugation, `k . h = k h k^-1`.
    pub fn conjugation(group: &FiniteGroup) -> GroupAction {
        let n = group.order();
        let table = (0..n)
            .flat_map(|k| (0..n).map(move |h| (k, h)))
            .map(|(k, h)| group.mul(k, group.mul(h, group.inv(k))) as u32)
            .collect();
        GroupAction { acting: group.clone(), target: group.clone(), table: Arc::new(table) }
    }

    /// Each `k` is a bijection of the target, respects the target product on
    /// its generators, and `phi(k s) = phi(k) phi(s)` holds for acting generators `s`.
    fn validate(&self) -> Result<(), GroupError> {
        let (nk, nh) = (self.acting.order(), self.target.order());
        let target_gens = self.target.generators();
        for k in 0..nk {
            let mut seen = vec![false; nh];
            for h in 0..nh {
                let img = self.apply(k, h);
                if seen[img] {
                    return Err(GroupError::InvalidAction(format!("element {k} does not act bijectively")));
                }
                seen[img] = true;
                for &s in &target_gens {
                    if self.apply(k, self.target.mul(h, s)) != self.target.mul(img, self.apply(k, s)) {
                        return Err(GroupError::InvalidAction(format!("element {k} is not a homomorphism")));
                    }
                }
            }
        }
        for h in 0..nh {
            if self.apply(self.acting.identity(), h) != h {
                return Err(GroupError::InvalidAction("identity acts non-trivially".into()));
            }
        }
        for &s in &self.acting.generators() {
            for k in 0..nk {
                let ks = self.acting.mul(k, s);
                for h in 0..nh {
                    if self.apply(ks, h) != self.apply(k, self.apply(s, h)) {
                        return Err(GroupError::InvalidAction("action does not respect the acting product".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn acting(&self) -> &FiniteGroup {
        &self.acting
    }

    pub fn target(&self) -> &FiniteGroup {
        &self.target
    }

    pub(crate) fn table(&self) -> Arc<Vec<u32>> {
        self.table.clone()
    }

    pub fn apply(&self, k: usize, h: usize) -> usize {
        self.table[k * self.target.order() + h] as usize
    }

    pub fn is_trivial(&self) -> bool {
        (0..self.acting.order()).all(|k| (0..self.target.order()).all(|h| self.apply(k, h) == h))
    }

    /// Elements `phi(g)(h) h^-1` for every `h` and every acting generator `g`.
    fn relators(&self) -> Vec<usize> {
        let t = &self.target;
        self.acting
            .generators()
            .iter()
            .flat_map(|&g| (0..t.order()).map(move |h| (g, h)))
            .map(|(g, h)| t.mul(self.apply(g, h), t.inv(h)))
            .filter(|&x| x != t.identity())
            .collect()
    }
}

/// `H_G`: the quotient of an abelian `H` by `<h^g h^-1>`.
pub fn coinvariants(action: &GroupAction) -> Result<AbInvariants, GroupError> {
    if !action.target().is_abelian() {
        return Err(GroupError::NotAbelian(action.target().name().to_string()));
    }
    let rel = action.relators();
    let members = action.target().closure(&rel);
    Ok(action.target().abelian_quotient_invariants(&members))
}

/// `(H^ab)_G` for a possibly non-abelian target: `H` modulo `[H, H]` and the
/// relators `h^g h^-1`.
pub fn abelianized_coinvariants(action: &GroupAction) -> AbInvariants {
    let t = action.target();
    let mut gens: Vec<usize> = t.commutator_subgroup().parent_indices().expect("subgroup");
    gens.retain(|&x| x != t.identity());
    gens.extend(action.relators());
    let members = t.closure(&gens);
    t.abelian_quotient_invariants(&members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{enumerate_group, GroupElement, Perm, DEFAULT_CAP};

    fn cyclic(n: usize) -> FiniteGroup {
        let cycle: Vec<u32> = (0..n as u32).collect();
        enumerate_group(&[GroupElement::Perm(Perm::from_cycles(n, &[&cycle]).unwrap())], DEFAULT_CAP).unwrap()
    }

    #[test]
    fn inversion_on_z4() {
        let z2 = cyclic(2);
        let z4 = cyclic(4);
        let act = GroupAction::from_fn(&z2, &z4, |k, h| if k == z2.identity() { h } else { z4.inv(h) }).unwrap();
        // <h^-2> = 2 Z_4, quotient Z_2
        assert_eq!(coinvariants(&act).unwrap().factors(), &[2]);
    }

    #[test]
    fn trivial_action_gives_abelianization() {
        let z2 = cyclic(2);
        let z6 = cyclic(6);
        assert_eq!(coinvariants(&GroupAction::trivial(&z2, &z6)).unwrap().factors(), &[6]);
    }

    #[test]
    fn non_homomorphism_rejected() {
        let z2 = cyclic(2);
        let z3 = cyclic(3);
        // swapping the identity with another element is not an automorphism
        let bad = GroupAction::from_fn(&z2, &z3, |k, h| if k == z2.identity() { h } else { (h + 1) % 3 });
        assert!(matches!(bad, Err(GroupError::InvalidAction(_))));
    }

    #[test]
    fn coinvariants_require_abelian_target() {
        let s3 = enumerate_group(
            &[
                GroupElement::Perm(Perm::transposition(3, 0, 1).unwrap()),
                GroupElement::Perm(Perm::transposition(3, 1, 2).unwrap()),
            ],
            DEFAULT_CAP,
        )
        .unwrap();
        let act = GroupAction::conjugation(&s3);
        assert!(matches!(coinvariants(&act), Err(GroupError::NotAbelian(_))));
        // inner action on S_3: (S_3^ab)_{S_3} = Z_2
        assert_eq!(abelianized_coinvariants(&act).factors(), &[2]);
    }
}
