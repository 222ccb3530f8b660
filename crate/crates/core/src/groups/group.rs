use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use super::{AbInvariants, GroupElement, GroupError};

/// Default bound on the number of elements any enumeration may produce.
pub const DEFAULT_CAP: usize = 20_000;

const NOT_MEMBER: u32 = u32::MAX;

enum Repr {
    /// Elements multiply through their own representation.
    Concrete(HashMap<GroupElement, u32>),
    /// Index `k * |target| + h` holds the pair `(h, k)`; `action[k * |target| + h]`
    /// is the image of `h` under `k`.
    Semidirect {
        target: FiniteGroup,
        acting: FiniteGroup,
        action: Arc<Vec<u32>>,
    },
    /// Mixed-radix index over `copies` components, component 0 least significant.
    DirectPower {
        base: FiniteGroup,
        copies: usize,
    },
    Subgroup {
        parent: FiniteGroup,
        members: Vec<u32>,
        local: Vec<u32>,
    },
}

struct GroupData {
    name: String,
    elements: Vec<GroupElement>,
    generators: Vec<u32>,
    identity: u32,
    inverses: Vec<u32>,
    repr: Repr,
}

/// A finite group with an explicit, deterministically ordered element list.
///
/// Elements are addressed by their index in that list. Cloning is cheap.
#[derive(Clone)]
pub struct FiniteGroup(Arc<GroupData>);

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.0.name, self.order())
    }
}

/// Enumerates the group generated by `generators` in breadth-first order from
/// the identity, trying generators in the given order.
pub fn enumerate_group(generators: &[GroupElement], cap: usize) -> Result<FiniteGroup, GroupError> {
    let first = generators.first().ok_or(GroupError::NoGenerators)?;
    let identity = first.identity_like()?;
    FiniteGroup::generate(identity, generators, cap)
}

impl FiniteGroup {
    /// Like [`enumerate_group`] but with an explicit identity, so an empty
    /// generator list yields the trivial group.
    pub fn generate(
        identity: GroupElement,
        generators: &[GroupElement],
        cap: usize,
    ) -> Result<FiniteGroup, GroupError> {
        let shape = identity.shape();
        for g in generators {
            if g.shape() != shape {
                return Err(GroupError::Incompatible(format!("generator {g} does not match identity {identity}")));
            }
            g.check_invertible()?;
        }
        let mut index: HashMap<GroupElement, u32> = HashMap::new();
        let mut elements = vec![identity.clone()];
        index.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let prod = elements[i].compose(g);
                if !index.contains_key(&prod) {
                    if elements.len() >= cap {
                        return Err(GroupError::CapExceeded { cap });
                    }
                    index.insert(prod.clone(), elements.len() as u32);
                    elements.push(prod);
                    queue.push_back(elements.len() - 1);
                }
            }
        }
        let gens = generators.iter().map(|g| index[g]).collect();
        let inverses = elements.iter().map(|e| index[&e.invert()]).collect();
        Ok(FiniteGroup(Arc::new(GroupData {
            name: String::new(),
            elements,
            generators: gens,
            identity: 0,
            inverses,
            repr: Repr::Concrete(index),
        })))
    }

    pub(crate) fn semidirect_raw(
        target: FiniteGroup,
        acting: FiniteGroup,
        action: Arc<Vec<u32>>,
        cap: usize,
    ) -> Result<FiniteGroup, GroupError> {
        let (nh, nk) = (target.order(), acting.order());
        if nh.saturating_mul(nk) > cap {
            return Err(GroupError::CapExceeded { cap });
        }
        let elements =
            (0..nk).flat_map(|k| (0..nh).map(move |h| GroupElement::Pair(h as u32, k as u32))).collect::<Vec<_>>();
        let mut inverses = Vec::with_capacity(nh * nk);
        for k in 0..nk {
            let k_inv = acting.inv(k);
            for h in 0..nh {
                let h_img = action[k_inv * nh + target.inv(h)] as usize;
                inverses.push((k_inv * nh + h_img) as u32);
            }
        }
        let identity = (acting.identity() * nh + target.identity()) as u32;
        let mut generators: Vec<u32> =
            target.generators().iter().map(|&h| (acting.identity() * nh + h) as u32).collect();
        generators.extend(acting.generators().iter().map(|&k| (k * nh + target.identity()) as u32));
        Ok(FiniteGroup(Arc::new(GroupData {
            name: format!("{} x| {}", acting.name(), target.name()),
            elements,
            generators,
            identity,
            inverses,
            repr: Repr::Semidirect { target, acting, action },
        })))
    }

    /// `base^copies` with componentwise multiplication.
    pub fn direct_power(base: &FiniteGroup, copies: usize, cap: usize) -> Result<FiniteGroup, GroupError> {
        let nb = base.order();
        let total = (0..copies).try_fold(1usize, |acc, _| acc.checked_mul(nb).filter(|&t| t <= cap));
        let total = total.ok_or(GroupError::CapExceeded { cap })?;
        let decode = |mut idx: usize| {
            (0..copies)
                .map(|_| {
                    let c = idx % nb;
                    idx /= nb;
                    c as u32
                })
                .collect::<Vec<u32>>()
        };
        let encode = |comps: &[u32]| comps.iter().rev().fold(0usize, |acc, &c| acc * nb + c as usize);
        let elements: Vec<GroupElement> = (0..total).map(|i| GroupElement::Tuple(decode(i))).collect();
        let inverses = (0..total)
            .map(|i| {
                let comps: Vec<u32> = decode(i).iter().map(|&c| base.inv(c as usize) as u32).collect();
                encode(&comps) as u32
            })
            .collect();
        let e = base.identity() as u32;
        let identity = encode(&vec![e; copies]) as u32;
        let mut generators = Vec::new();
        for slot in 0..copies {
            for g in base.generators() {
                let mut comps = vec![e; copies];
                comps[slot] = g as u32;
                generators.push(encode(&comps) as u32);
            }
        }
        Ok(FiniteGroup(Arc::new(GroupData {
            name: format!("{}^{copies}", base.name()),
            elements,
            generators,
            identity,
            inverses,
            repr: Repr::DirectPower { base: base.clone(), copies },
        })))
    }

    /// The subgroup generated by the given elements, as a group in its own right.
    pub fn subgroup(&self, generators: &[usize]) -> FiniteGroup {
        let members = self.closure(generators);
        self.subgroup_from_members(members, generators)
    }

    fn subgroup_from_members(&self, members: Vec<usize>, generators: &[usize]) -> FiniteGroup {
        let mut local = vec![NOT_MEMBER; self.order()];
        for (i, &m) in members.iter().enumerate() {
            local[m] = i as u32;
        }
        let elements = members.iter().map(|&m| self.element(m).clone()).collect();
        let inverses = members.iter().map(|&m| local[self.inv(m)]).collect();
        let generators = generators.iter().map(|&g| local[g]).collect();
        FiniteGroup(Arc::new(GroupData {
            name: format!("subgroup of {}", self.name()),
            elements,
            generators,
            identity: local[self.identity()],
            inverses,
            repr: Repr::Subgroup { parent: self.clone(), members: members.iter().map(|&m| m as u32).collect(), local },
        }))
    }

    /// Returns a copy carrying a display name.
    pub fn named(self, name: impl Into<String>) -> FiniteGroup {
        let data = match Arc::try_unwrap(self.0) {
            Ok(mut d) => {
                d.name = name.into();
                d
            }
            Err(shared) => {
                // Rebuild a shallow copy sharing the heavy parts where possible.
                let g = FiniteGroup(shared);
                return g.renamed_copy(name.into());
            }
        };
        FiniteGroup(Arc::new(data))
    }

    fn renamed_copy(&self, name: String) -> FiniteGroup {
        let d = &self.0;
        let repr = match &d.repr {
            Repr::Concrete(map) => Repr::Concrete(map.clone()),
            Repr::Semidirect { target, acting, action } => {
                Repr::Semidirect { target: target.clone(), acting: acting.clone(), action: action.clone() }
            }
            Repr::DirectPower { base, copies } => Repr::DirectPower { base: base.clone(), copies: *copies },
            Repr::Subgroup { parent, members, local } => {
                Repr::Subgroup { parent: parent.clone(), members: members.clone(), local: local.clone() }
            }
        };
        FiniteGroup(Arc::new(GroupData {
            name,
            elements: d.elements.clone(),
            generators: d.generators.clone(),
            identity: d.identity,
            inverses: d.inverses.clone(),
            repr,
        }))
    }

    pub fn name(&self) -> &str {
        if self.0.name.is_empty() {
            "G"
        } else {
            &self.0.name
        }
    }

    pub fn order(&self) -> usize {
        self.0.elements.len()
    }

    pub fn identity(&self) -> usize {
        self.0.identity as usize
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.0.elements[i]
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.0.elements
    }

    pub fn generators(&self) -> Vec<usize> {
        self.0.generators.iter().map(|&g| g as usize).collect()
    }

    pub fn index_of(&self, e: &GroupElement) -> Option<usize> {
        match &self.0.repr {
            Repr::Concrete(map) => map.get(e).map(|&i| i as usize),
            Repr::Semidirect { target, acting, .. } => match e {
                GroupElement::Pair(h, k) if (*h as usize) < target.order() && (*k as usize) < acting.order() => {
                    Some(*k as usize * target.order() + *h as usize)
                }
                _ => None,
            },
            Repr::DirectPower { base, copies } => match e {
                GroupElement::Tuple(t) if t.len() == *copies && t.iter().all(|&c| (c as usize) < base.order()) => {
                    Some(t.iter().rev().fold(0usize, |acc, &c| acc * base.order() + c as usize))
                }
                _ => None,
            },
            Repr::Subgroup { parent, local, .. } => {
                parent.index_of(e).map(|p| local[p]).filter(|&l| l != NOT_MEMBER).map(|l| l as usize)
            }
        }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.0.repr {
            Repr::Concrete(map) => {
                let prod = self.0.elements[a].compose(&self.0.elements[b]);
                map[&prod] as usize
            }
            Repr::Semidirect { target, acting, action } => {
                let nh = target.order();
                let (h1, k1) = (a % nh, a / nh);
                let (h2, k2) = (b % nh, b / nh);
                let h = target.mul(h1, action[k1 * nh + h2] as usize);
                acting.mul(k1, k2) * nh + h
            }
            Repr::DirectPower { base, copies } => {
                let nb = base.order();
                let (mut x, mut y) = (a, b);
                let mut out = 0usize;
                let mut place = 1usize;
                for _ in 0..*copies {
                    out += base.mul(x % nb, y % nb) * place;
                    x /= nb;
                    y /= nb;
                    place *= nb;
                }
                out
            }
            Repr::Subgroup { parent, members, local } => {
                let p = parent.mul(members[a] as usize, members[b] as usize);
                local[p] as usize
            }
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.0.inverses[a] as usize
    }

    pub fn pow(&self, a: usize, mut k: u64) -> usize {
        let (mut base, mut acc) = (a, self.identity());
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `a^-1 b^-1 a b`
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ba_inv = self.inv(self.mul(b, a));
        self.mul(ba_inv, ab)
    }

    /// `g^-1 x g`
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.inv(g), self.mul(x, g))
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != self.identity() {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter().all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Members of the subgroup generated by `generators`, in breadth-first order.
    pub fn closure(&self, generators: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        let e = self.identity();
        seen[e] = true;
        let mut members = vec![e];
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            head += 1;
            for &g in generators {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    members.push(y);
                }
            }
        }
        members
    }

    /// Members of the smallest normal subgroup containing `generators`.
    pub fn normal_closure(&self, generators: &[usize]) -> Vec<usize> {
        let mut gens: Vec<usize> = generators.to_vec();
        let group_gens = self.generators();
        loop {
            let members = self.closure(&gens);
            let mut member = vec![false; self.order()];
            for &m in &members {
                member[m] = true;
            }
            let mut added = false;
            for i in 0..gens.len() {
                for &g in &group_gens {
                    let c = self.conjugate(gens[i], g);
                    if !member[c] {
                        gens.push(c);
                        added = true;
                        break;
                    }
                }
                if added {
                    break;
                }
            }
            if !added {
                return members;
            }
        }
    }

    pub fn is_normal(&self, members: &[usize]) -> bool {
        let mut member = vec![false; self.order()];
        for &m in members {
            member[m] = true;
        }
        members.iter().all(|&x| (0..self.order()).all(|g| member[self.conjugate(x, g)]))
    }

    fn commutator_members(&self) -> Vec<usize> {
        let gens = self.generators();
        let comms: Vec<usize> = gens
            .iter()
            .flat_map(|&a| gens.iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.commutator(a, b))
            .filter(|&c| c != self.identity())
            .collect();
        self.normal_closure(&comms)
    }

    /// `[G, G]`, the normal closure of the commutators of the generators.
    pub fn commutator_subgroup(&self) -> FiniteGroup {
        let members = self.commutator_members();
        let gens: Vec<usize> = members.iter().copied().filter(|&m| m != self.identity()).collect();
        let sub = self.subgroup_from_members(members, &[]);
        // Generators of the subgroup: a small generating set picked greedily.
        let local_gens = greedy_generators(self, &gens);
        let local: Vec<usize> = local_gens.iter().map(|&g| self.local_index(&sub, g)).collect();
        sub.with_generators(local).named(format!("[{}, {}]", self.name(), self.name()))
    }

    fn local_index(&self, sub: &FiniteGroup, parent_idx: usize) -> usize {
        match &sub.0.repr {
            Repr::Subgroup { local, .. } => local[parent_idx] as usize,
            _ => unreachable!(),
        }
    }

    fn with_generators(self, gens: Vec<usize>) -> FiniteGroup {
        let mut copy = match Arc::try_unwrap(self.0) {
            Ok(d) => d,
            Err(shared) => return FiniteGroup(shared).renamed_copy(String::new()).with_generators(gens),
        };
        copy.generators = gens.iter().map(|&g| g as u32).collect();
        FiniteGroup(Arc::new(copy))
    }

    /// For a subgroup produced by [`FiniteGroup::subgroup`] or
    /// [`FiniteGroup::commutator_subgroup`], the parent indices of its members.
    pub fn parent_indices(&self) -> Option<Vec<usize>> {
        match &self.0.repr {
            Repr::Subgroup { members, .. } => Some(members.iter().map(|&m| m as usize).collect()),
            _ => None,
        }
    }

    /// Invariant factors of `G / [G, G]`.
    pub fn abelianization(&self) -> AbInvariants {
        let comm = self.commutator_members();
        self.abelian_quotient_invariants(&comm)
    }

    /// Invariant factors of `G / N` for a subgroup `N` containing `[G, G]`.
    ///
    /// Repeatedly takes an element of maximal order in the current quotient
    /// and splits off its cyclic span.
    pub fn abelian_quotient_invariants(&self, normal: &[usize]) -> AbInvariants {
        let n = self.order();
        let mut gens: Vec<usize> = normal.iter().copied().filter(|&x| x != self.identity()).collect();
        gens = greedy_generators(self, &gens);
        let mut factors = Vec::new();
        loop {
            let members = self.closure(&gens);
            if members.len() == n {
                break;
            }
            let mut in_k = vec![false; n];
            for &m in &members {
                in_k[m] = true;
            }
            let mut coset_seen = vec![false; n];
            let (mut best, mut best_order) = (self.identity(), 1u64);
            for g in 0..n {
                if coset_seen[g] {
                    continue;
                }
                for &m in &members {
                    coset_seen[self.mul(g, m)] = true;
                }
                let mut x = g;
                let mut order = 1u64;
                while !in_k[x] {
                    x = self.mul(x, g);
                    order += 1;
                }
                if order > best_order {
                    best = g;
                    best_order = order;
                }
            }
            factors.push(best_order);
            gens.push(best);
        }
        factors.reverse();
        AbInvariants::from_factors(factors).expect("max-order splitting yields a divisibility chain")
    }
}

/// A subset of `candidates` generating the same subgroup, chosen greedily.
fn greedy_generators(g: &FiniteGroup, candidates: &[usize]) -> Vec<usize> {
    let mut member = vec![false; g.order()];
    member[g.identity()] = true;
    let mut chosen: Vec<usize> = Vec::new();
    for &c in candidates {
        if member[c] {
            continue;
        }
        chosen.push(c);
        for m in g.closure(&chosen) {
            member[m] = true;
        }
    }
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Perm;

    fn perm(degree: usize, cycles: &[&[u32]]) -> GroupElement {
        GroupElement::Perm(Perm::from_cycles(degree, cycles).unwrap())
    }

    fn sym(k: usize) -> FiniteGroup {
        let gens: Vec<_> = (0..k as u32 - 1).map(|i| perm(k, &[&[i, i + 1]])).collect();
        enumerate_group(&gens, DEFAULT_CAP).unwrap()
    }

    /// Commutator subgroup by closing over every pair of elements.
    fn brute_force_commutators(g: &FiniteGroup) -> Vec<usize> {
        let n = g.order();
        let comms: Vec<usize> =
            (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| g.commutator(a, b)).collect();
        let mut m = g.closure(&comms);
        m.sort_unstable();
        m
    }

    #[test]
    fn sym3_from_transposition_and_three_cycle() {
        let g = enumerate_group(&[perm(3, &[&[0, 1]]), perm(3, &[&[0, 1, 2]])], DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
    }

    #[test]
    fn identity_generates_trivial_group() {
        let g = enumerate_group(&[GroupElement::Perm(Perm::identity(4))], DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.abelianization().is_trivial());
    }

    #[test]
    fn empty_generators_rejected() {
        assert!(matches!(enumerate_group(&[], DEFAULT_CAP), Err(GroupError::NoGenerators)));
    }

    #[test]
    fn cap_is_a_hard_error() {
        let gens: Vec<_> = (0..4u32).map(|i| perm(5, &[&[i, i + 1]])).collect();
        assert!(matches!(enumerate_group(&gens, 100), Err(GroupError::CapExceeded { cap: 100 })));
        assert_eq!(enumerate_group(&gens, 120).unwrap().order(), 120);
    }

    #[test]
    fn mixed_generators_rejected() {
        let r = enumerate_group(&[perm(3, &[&[0, 1]]), perm(4, &[&[0, 1]])], DEFAULT_CAP);
        assert!(matches!(r, Err(GroupError::Incompatible(_))));
    }

    #[test]
    fn commutator_subgroup_matches_brute_force() {
        for k in 2..=5 {
            let g = sym(k);
            let fast = g.commutator_subgroup();
            let mut fast_members = fast.parent_indices().unwrap();
            fast_members.sort_unstable();
            assert_eq!(fast_members, brute_force_commutators(&g), "Sym({k})");
            assert!(g.is_normal(&fast_members));
        }
    }

    #[test]
    fn sym4_commutator_is_alt4() {
        let g = sym(4);
        let c = g.commutator_subgroup();
        assert_eq!(c.order(), 12);
        assert!(c.elements().iter().all(|e| e.as_perm().unwrap().is_even()));
        assert_eq!(g.abelianization().factors(), &[2]);
        // the subgroup is a group in its own right
        assert_eq!(c.commutator_subgroup().order(), 4);
    }

    #[test]
    fn abelian_groups_have_trivial_commutator() {
        // Z_6 as a 6-cycle
        let g = enumerate_group(&[perm(6, &[&[0, 1, 2, 3, 4, 5]])], DEFAULT_CAP).unwrap();
        assert_eq!(g.commutator_subgroup().order(), 1);
        assert_eq!(g.abelianization().factors(), &[6]);
        // Z_2 x Z_4 on disjoint supports
        let h = enumerate_group(&[perm(6, &[&[0, 1]]), perm(6, &[&[2, 3, 4, 5]])], DEFAULT_CAP).unwrap();
        assert_eq!(h.abelianization().factors(), &[2, 4]);
    }

    #[test]
    fn dihedral_of_order_eight() {
        let d4 = enumerate_group(&[perm(4, &[&[0, 1, 2, 3]]), perm(4, &[&[1, 3]])], DEFAULT_CAP).unwrap();
        assert_eq!(d4.order(), 8);
        assert_eq!(d4.abelianization().factors(), &[2, 2]);
    }

    #[test]
    fn abelianization_ignores_generator_order() {
        let a = enumerate_group(&[perm(4, &[&[0, 1, 2, 3]]), perm(4, &[&[0, 1]])], DEFAULT_CAP).unwrap();
        let b = enumerate_group(&[perm(4, &[&[0, 1]]), perm(4, &[&[0, 1, 2, 3]])], DEFAULT_CAP).unwrap();
        assert_eq!(a.abelianization(), b.abelianization());
    }

    #[test]
    fn inverses_and_powers() {
        let g = sym(4);
        for a in 0..g.order() {
            assert_eq!(g.mul(a, g.inv(a)), g.identity());
            assert_eq!(g.pow(a, g.element_order(a)), g.identity());
        }
    }
}
