//! Semidirect and wreath products, symmetric groups, the coset-lifting maps
//! between finite quotients `Z_n -> Z_m`, and brute-force checks of the
//! abelianization formulas for semidirect and wreath products.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::groups::{
    abelianized_coinvariants, enumerate_group, FiniteGroup, GroupAction, GroupElement, GroupError, Perm,
};
use crate::linear::{MatRing, Matrix};
use crate::report::VerificationReport;

/// `acting x| target` on pairs `(h, k)` with `(h, k)(h', k') = (h phi(k)(h'), k k')`.
pub fn semidirect(action: &GroupAction, cap: usize) -> Result<FiniteGroup, GroupError> {
    FiniteGroup::semidirect_raw(action.target().clone(), action.acting().clone(), action.table(), cap)
}

/// The action of a permutation group of degree `k` on `base^k` by
/// `l.(t_x) = (t_{l^-1 x})`.
pub fn index_permutation_action(
    perms: &FiniteGroup,
    power: &FiniteGroup,
    base_order: usize,
    copies: usize,
) -> Result<GroupAction, GroupError> {
    let decode = |mut idx: usize| {
        (0..copies)
            .map(|_| {
                let c = idx % base_order;
                idx /= base_order;
                c
            })
            .collect::<Vec<_>>()
    };
    let mut ps = Vec::with_capacity(perms.order());
    for e in perms.elements() {
        match e.as_perm() {
            Some(p) if p.degree() == copies => ps.push(p.clone()),
            _ => return Err(GroupError::Incompatible(format!("{e} is not a permutation of {copies} points"))),
        }
    }
    GroupAction::from_fn(perms, power, |l, t| {
        let old = decode(t);
        let mut new = vec![0; copies];
        for (y, &c) in old.iter().enumerate() {
            new[ps[l].apply(y as u32) as usize] = c;
        }
        new.iter().rev().fold(0usize, |acc, &c| acc * base_order + c)
    })
}

/// `K wr_k L = L x| K^k` with `L` permuting coordinates. A trivial `K` returns `L`.
pub fn wreath(base: &FiniteGroup, k: usize, top: &FiniteGroup, cap: usize) -> Result<FiniteGroup, GroupError> {
    if base.order() == 1 {
        return Ok(top.clone());
    }
    let power = FiniteGroup::direct_power(base, k, cap)?;
    let action = index_permutation_action(top, &power, base.order(), k)?;
    Ok(semidirect(&action, cap)?.named(format!("{} wr {}", base.name(), top.name())))
}

/// `Sym(k)` generated by the adjacent transpositions, `2 <= k <= 8`.
pub fn symmetric_group(k: usize, cap: usize) -> Result<FiniteGroup, GroupError> {
    if !(2..=8).contains(&k) {
        return Err(GroupError::Precondition(format!("Sym({k}) requires 2 <= k <= 8")));
    }
    let gens: Vec<GroupElement> =
        (0..k as u32 - 1).map(|i| GroupElement::Perm(Perm::transposition(k, i, i + 1).unwrap())).collect();
    Ok(enumerate_group(&gens, cap)?.named(format!("Sym({k})")))
}

/// `Alt(k)` generated by the 3-cycles `(0 1 i)`.
pub fn alternating_group(k: usize, cap: usize) -> Result<FiniteGroup, GroupError> {
    if !(2..=8).contains(&k) {
        return Err(GroupError::Precondition(format!("Alt({k}) requires 2 <= k <= 8")));
    }
    let identity = GroupElement::Perm(Perm::identity(k));
    let gens: Vec<GroupElement> =
        (2..k as u32).map(|i| GroupElement::Perm(Perm::from_cycles(k, &[&[0, 1, i]]).unwrap())).collect();
    Ok(FiniteGroup::generate(identity, &gens, cap)?.named(format!("Alt({k})")))
}

/// `Z_n` as the group generated by an `n`-cycle.
pub fn cyclic_group(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::Precondition("Z_0 is not finite".into()));
    }
    let cycle: Vec<u32> = (0..n as u32).collect();
    let gen = GroupElement::Perm(Perm::from_cycles(n, &[&cycle])?);
    Ok(FiniteGroup::generate(GroupElement::Perm(Perm::identity(n)), &[gen], usize::MAX)?.named(format!("Z_{n}")))
}

/// The dihedral group of the given (even, >= 4) order acting on `order / 2` points.
pub fn dihedral_group(order: usize) -> Result<FiniteGroup, GroupError> {
    if order < 4 || !order.is_multiple_of(2) {
        return Err(GroupError::Precondition(format!("no dihedral group of order {order}")));
    }
    let n = order / 2;
    let rotation: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
    let reflection: Vec<u32> = (0..n as u32).map(|i| (n as u32 - i) % n as u32).collect();
    let gens = [GroupElement::Perm(Perm::new(rotation)?), GroupElement::Perm(Perm::new(reflection)?)];
    Ok(enumerate_group(&gens, usize::MAX)?.named(format!("D_{order}")))
}

/// `SL_2(F_3)` from the two unipotent generators.
pub fn sl2_f3() -> FiniteGroup {
    let f3 = Arc::new(MatRing::finite_field(3).unwrap());
    let a = Matrix::from_rows(f3.clone(), &[&[1, 1], &[0, 1]]).unwrap();
    let b = Matrix::from_rows(f3, &[&[1, 0], &[1, 1]]).unwrap();
    enumerate_group(&[GroupElement::Matrix(a), GroupElement::Matrix(b)], usize::MAX).unwrap().named("SL(2,3)")
}

/// Compares `(G x| H)^ab` with `G^ab + (H^ab)_G`, both computed by brute force.
pub fn verify_semiab(action: &GroupAction, cap: usize) -> Result<VerificationReport, GroupError> {
    let product = semidirect(action, cap)?;
    let lhs = product.abelianization();
    let rhs = action.acting().abelianization().direct_sum(&abelianized_coinvariants(action));
    let subject = format!("({} x| {})^ab", action.acting().name(), action.target().name());
    Ok(VerificationReport::compare(subject, lhs, rhs))
}

/// Compares `(K wr Sym(k))^ab` with `K^ab + Z_2`.
pub fn verify_wreath_ab(base: &FiniteGroup, k: usize, cap: usize) -> Result<VerificationReport, GroupError> {
    let top = symmetric_group(k, cap)?;
    let w = wreath(base, k, &top, cap)?;
    let lhs = w.abelianization();
    let rhs = base.abelianization().direct_sum(&crate::groups::AbInvariants::cyclic(2));
    Ok(VerificationReport::compare(format!("({} wr Sym({k}))^ab", base.name()), lhs, rhs))
}

/// Result of lifting a permutation of `Z_n` to `Z_m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftedPermutation {
    pub lifted: Perm,
    pub input_even: bool,
    pub output_even: bool,
}

fn check_divides(n: usize, m: usize) -> Result<(), GroupError> {
    if n == 0 || m == 0 || !m.is_multiple_of(n) {
        return Err(GroupError::Precondition(format!("{n} does not divide {m}")));
    }
    Ok(())
}

/// `t -> t + sigma(t mod n) - (t mod n)  (mod m)` for `n | m`.
pub fn lift_permutation(n: usize, m: usize, sigma: &Perm) -> Result<LiftedPermutation, GroupError> {
    check_divides(n, m)?;
    if sigma.degree() != n {
        return Err(GroupError::Precondition(format!("permutation of {} points, expected {n}", sigma.degree())));
    }
    let images = (0..m as i64)
        .map(|t| {
            let theta = t % n as i64;
            (t + sigma.apply(theta as u32) as i64 - theta).rem_euclid(m as i64) as u32
        })
        .collect();
    let lifted = Perm::new(images)?;
    Ok(LiftedPermutation { input_even: sigma.is_even(), output_even: lifted.is_even(), lifted })
}

/// A component `(zeta, h)` of the base of `Aut(nZ) wr FS(Z_n)`: a sign in
/// `GL_1(Z)` and a translation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedTranslation {
    pub sign: i8,
    pub shift: i64,
}

/// Pulls a tuple indexed by `Z_n` back along the quotient `Z_m -> Z_n`:
/// entry `l'` of the result is entry `l' mod n` of the input.
pub fn lift_wreath_component<T: Clone>(n: usize, m: usize, tuple: &[T]) -> Result<Vec<T>, GroupError> {
    check_divides(n, m)?;
    if tuple.len() != n {
        return Err(GroupError::Precondition(format!("tuple of length {}, expected {n}", tuple.len())));
    }
    Ok((0..m).map(|l| tuple[l % n].clone()).collect())
}

/// Whether every transposition of `Z_n` lifts to an even permutation of `Z_m`.
/// Vacuously true for `n = 1`.
pub fn check_eventually_even(n: usize, m: usize) -> Result<bool, GroupError> {
    check_divides(n, m)?;
    for a in 0..n as u32 {
        for b in a + 1..n as u32 {
            let t = Perm::transposition(n, a, b)?;
            if !lift_permutation(n, m, &t)?.output_even {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
