use mtk_core::constructions::{
    alternating_group, cyclic_group, dihedral_group, index_permutation_action, lift_permutation, semidirect, sl2_f3,
    symmetric_group, verify_semiab, wreath,
};
use mtk_core::groups::{FiniteGroup, GroupAction, Perm, DEFAULT_CAP};
use mtk_core::linear::{affine_group, elementary_closure, gl_group, MatRing};
use proptest::prelude::*;
use std::sync::Arc;

fn ab(g: &FiniteGroup) -> Vec<u64> {
    g.abelianization().factors().to_vec()
}

fn field(q: u32) -> Arc<MatRing> {
    Arc::new(MatRing::finite_field(q).unwrap())
}

#[test]
fn textbook_abelianizations() {
    assert_eq!(ab(&cyclic_group(12).unwrap()), vec![12]);
    assert_eq!(ab(&dihedral_group(8).unwrap()), vec![2, 2]);
    assert_eq!(ab(&dihedral_group(10).unwrap()), vec![2]);
    assert_eq!(ab(&alternating_group(4, DEFAULT_CAP).unwrap()), vec![3]);
    assert!(ab(&alternating_group(5, DEFAULT_CAP).unwrap()).is_empty());
    assert_eq!(ab(&sl2_f3()), vec![3]);
    assert_eq!(sl2_f3().order(), 24);
    let gl23 = gl_group(2, &field(3), DEFAULT_CAP).unwrap();
    assert_eq!(gl23.order(), 48);
    assert_eq!(ab(&gl23), vec![2]);
    // GL_2(F_2) is Sym(3)
    assert_eq!(ab(&gl_group(2, &field(2), DEFAULT_CAP).unwrap()), vec![2]);
}

#[test]
fn group_orders() {
    assert_eq!(symmetric_group(5, DEFAULT_CAP).unwrap().order(), 120);
    assert_eq!(gl_group(2, &field(4), DEFAULT_CAP).unwrap().order(), 180);
    assert_eq!(elementary_closure(2, &field(5), DEFAULT_CAP).unwrap().order(), 120);
    assert_eq!(affine_group(2, &field(3), 1, DEFAULT_CAP).unwrap().order(), 48 * 9);
    let top = symmetric_group(3, DEFAULT_CAP).unwrap();
    assert_eq!(wreath(&cyclic_group(3).unwrap(), 3, &top, DEFAULT_CAP).unwrap().order(), 27 * 6);
}

#[test]
fn cap_is_enforced() {
    assert!(symmetric_group(8, 1000).is_err());
}

#[test]
fn holomorph_of_z5() {
    // Z_4 = Aut(Z_5) acting by multiplication by 2: the Frobenius group of order 20
    let h = cyclic_group(5).unwrap();
    let g = cyclic_group(4).unwrap();
    let gen = g.generators()[0];
    let log = |k: usize| (0..4).find(|&j| g.pow(gen, j) == k).unwrap();
    let action = GroupAction::from_fn(&g, &h, |k, x| {
        let mut y = x;
        for _ in 0..log(k) {
            y = h.pow(y, 2);
        }
        y
    })
    .unwrap();
    let s = semidirect(&action, DEFAULT_CAP).unwrap();
    assert_eq!(s.order(), 20);
    assert_eq!(ab(&s), vec![4]);
}

/// Sym(3) on Z_3 x Z_3: odd permutations swap the coordinates and negate.
/// The coinvariants are Z_3, so the product has abelianization Z_6.
#[test]
fn signed_coordinate_swap() {
    let sym = symmetric_group(3, DEFAULT_CAP).unwrap();
    let h = FiniteGroup::direct_power(&cyclic_group(3).unwrap(), 2, DEFAULT_CAP).unwrap();
    let z2 = symmetric_group(2, DEFAULT_CAP).unwrap();
    let swap = index_permutation_action(&z2, &h, 3, 2).unwrap();
    let odd = |k: usize| !sym.element(k).as_perm().unwrap().is_even();
    let flip = z2.elements().iter().position(|e| !e.as_perm().unwrap().is_identity()).unwrap();
    let action = GroupAction::from_fn(&sym, &h, |k, x| if odd(k) { h.inv(swap.apply(flip, x)) } else { x }).unwrap();
    let r = verify_semiab(&action, DEFAULT_CAP).unwrap();
    assert!(r.passed, "{r}");
    assert_eq!(r.lhs.factors(), &[6]);
}

#[test]
fn lift_of_a_transposition() {
    let sigma = Perm::transposition(2, 0, 1).unwrap();
    let l = lift_permutation(2, 4, &sigma).unwrap();
    assert_eq!(l.lifted.images(), &[1, 0, 3, 2]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cyclic_products(a in 1usize..12, b in 1usize..12) {
        let g = FiniteGroup::direct_power(&cyclic_group(a).unwrap(), 1, DEFAULT_CAP).unwrap();
        prop_assert_eq!(g.order(), a);
        let h = FiniteGroup::direct_power(&cyclic_group(b).unwrap(), 2, DEFAULT_CAP).unwrap();
        let expected: Vec<u64> = if b == 1 { vec![] } else { vec![b as u64, b as u64] };
        prop_assert_eq!(ab(&h), expected);
    }

    #[test]
    fn sign_is_multiplicative(
        p in Just((0..6u32).collect::<Vec<_>>()).prop_shuffle(),
        q in Just((0..6u32).collect::<Vec<_>>()).prop_shuffle(),
    ) {
        let (p, q) = (Perm::new(p).unwrap(), Perm::new(q).unwrap());
        prop_assert_eq!(p.compose(&q).sign(), p.sign() * q.sign());
        prop_assert!(p.compose(&p.inverse()).is_identity());
    }
}
