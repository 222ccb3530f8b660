use mtk_core::groups::DEFAULT_CAP;
use mtk_core::k1::{
    derive_flags, k1_algebraic, k1_expression, k1_module, omega_nn_ab, truncation_consistency, Atom, FormalAbGroup,
    ModuleKind, Mult, RingDescriptor, TheoryFlags,
};
use mtk_core::linear::{affine_group, MatRing};
use proptest::prelude::*;
use std::sync::Arc;

fn fq(q: u32) -> RingDescriptor {
    RingDescriptor::FiniteField { q }
}

fn shown(ring: &RingDescriptor, module: ModuleKind) -> String {
    let flags = derive_flags(ring, ModuleKind::InfiniteFree).unwrap();
    k1_expression(ring, module, flags).unwrap().normalize().to_string()
}

#[test]
fn closed_forms_as_text() {
    assert_eq!(shown(&fq(4), ModuleKind::InfiniteFree), "Z_2 ⊕ ⊕_{n≥1} (Z_3 ⊕ Z_2)");
    assert_eq!(shown(&fq(5), ModuleKind::InfiniteFree), "Z_2 ⊕ ⊕_{n≥1} (Z_4 ⊕ Z_2 ⊕ Z_2)");
    assert_eq!(shown(&RingDescriptor::Integers, ModuleKind::Regular), "⊕_{n≥0} Z_2");
}

#[test]
fn flattened_finite_field_forms() {
    let flags = derive_flags(&fq(7), ModuleKind::InfiniteFree).unwrap();
    let k = k1_module(&fq(7), ModuleKind::InfiniteFree, flags).unwrap();
    assert_eq!(k.multiplicity(&Atom::Zmod(6)), Mult::Countable);
    assert_eq!(k.multiplicity(&Atom::z2()), Mult::Countable);
    assert_eq!(k.summands().len(), 2);
}

#[test]
fn derived_flags() {
    assert_eq!(derive_flags(&fq(8), ModuleKind::InfiniteFree).unwrap(), TheoryFlags::not_closed(true));
    assert_eq!(derive_flags(&fq(9), ModuleKind::InfiniteFree).unwrap(), TheoryFlags::not_closed(false));
    assert_eq!(derive_flags(&RingDescriptor::rationals(), ModuleKind::InfiniteFree).unwrap(), TheoryFlags::closed());
    let pid = RingDescriptor::Pid { units: "U".into() };
    assert!(derive_flags(&pid, ModuleKind::InfiniteFree).is_err());
}

#[test]
fn algebraic_k1_is_the_unit_group() {
    assert_eq!(k1_algebraic(&fq(9)).unwrap(), FormalAbGroup::atoms([Atom::Zmod(8)]));
    assert_eq!(k1_algebraic(&RingDescriptor::Integers).unwrap(), FormalAbGroup::atoms([Atom::z2()]));
}

/// Level one over `F_q` with the odd branch is `Aff(1, F_q)^ab ⊕ Z_2 ⊕ Z_2`.
#[test]
fn first_truncation_against_brute_force() {
    for q in [3u32, 5, 7] {
        let ring = Arc::new(MatRing::finite_field(q).unwrap());
        let aff = affine_group(1, &ring, 1, DEFAULT_CAP).unwrap().abelianization();
        let mut orders: Vec<u64> = aff.factors().to_vec();
        orders.extend([2, 2]);
        orders.sort_unstable();
        let flags = derive_flags(&fq(q), ModuleKind::InfiniteFree).unwrap();
        let mut got = omega_nn_ab(&fq(q), flags, 1).unwrap().finite_factors().unwrap();
        got.sort_unstable();
        assert_eq!(got, orders, "q = {q}");
    }
}

#[test]
fn truncation_over_f3() {
    let r = truncation_consistency(3, 2, DEFAULT_CAP).unwrap();
    assert!(r.passed, "{r}");
    assert!(!truncation_consistency(2, 1, DEFAULT_CAP).unwrap().passed);
}

#[test]
fn descriptor_text_round_trip() {
    for s in ["fq:9", "z", "inf:Q", "poly-char0:Q", "ed:U:unit-sum", "ed:U:no-unit-sum", "pid:U"] {
        let r: RingDescriptor = s.parse().unwrap();
        assert_eq!(r.to_string().parse::<RingDescriptor>().unwrap(), r, "{s}");
    }
    assert!("fq:6".parse::<RingDescriptor>().is_err());
}

proptest! {
    #[test]
    fn levels_grow(q in prop::sample::select(vec![3u32, 4, 5, 7, 8, 9, 11, 13, 16]), n in 1usize..6) {
        let flags = derive_flags(&fq(q), ModuleKind::InfiniteFree).unwrap();
        let lo = omega_nn_ab(&fq(q), flags, n).unwrap();
        let hi = omega_nn_ab(&fq(q), flags, n + 1).unwrap();
        prop_assert!(hi.contains(&lo));
        prop_assert!(!lo.contains(&hi));
        let orders = lo.finite_factors().unwrap();
        let expected = if q % 2 == 0 { 2 * n } else { 3 * n };
        prop_assert_eq!(orders.len(), expected);
    }

    #[test]
    fn json_round_trip(q in prop::sample::select(vec![3u32, 4, 5, 8]), n in 1usize..4) {
        let flags = derive_flags(&fq(q), ModuleKind::InfiniteFree).unwrap();
        let g = omega_nn_ab(&fq(q), flags, n).unwrap();
        prop_assert_eq!(FormalAbGroup::from_json(&g.to_json()).unwrap(), g);
    }
}
