use mtk_core::definable::{boolean_normalize, dim, k0_class, AffineCoset, DefinableSet, K0Class, SetExpr};
use mtk_core::formula::{parse, Formula, LinEq, Node, Pos, PpAtom};
use mtk_core::rational::{rat, Rat};
use mtk_core::verify::random_set_expr;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn set_from_seed(seed: u64, n: usize) -> DefinableSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    boolean_normalize(&random_set_expr(&mut rng, n, 3)).unwrap()
}

fn lin_eq(ambient: usize, bound: usize) -> impl Strategy<Value = LinEq> {
    (prop::collection::vec(-3i64..=3, ambient + bound), -4i64..=4, 1i64..=3)
        .prop_filter("nonzero", |(c, _, _)| c.iter().any(|&x| x != 0))
        .prop_map(|(c, b, d)| LinEq {
            coeffs: c.into_iter().map(rat).collect(),
            constant: Rat::new(b.into(), d.into()),
        })
}

fn atom(ambient: usize) -> impl Strategy<Value = Node> {
    (0usize..=1).prop_flat_map(move |bound| {
        prop::collection::vec(lin_eq(ambient, bound), 1..=2).prop_map(move |equations| {
            Node::Pp(PpAtom {
                bound: (0..bound).map(|i| format!("y{i}")).collect(),
                equations,
                pos: Pos { line: 1, col: 1 },
            })
        })
    })
}

fn node(ambient: usize) -> impl Strategy<Value = Node> {
    atom(ambient).prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..=3).prop_map(Node::And),
            prop::collection::vec(inner.clone(), 2..=3).prop_map(Node::Or),
            inner.prop_map(|n| Node::Not(Box::new(n))),
        ]
    })
}

fn formula() -> impl Strategy<Value = Formula> {
    (1usize..=3).prop_flat_map(|n| node(n).prop_map(move |body| Formula { ambient: n, body }))
}

#[test]
fn documented_examples() {
    let line = parse("ambient 2; pp(x1 = x2)").unwrap().elaborate().unwrap();
    assert_eq!(k0_class(&line), K0Class::monomial(1));
    let off = parse("ambient 2; !pp(x1 = x2)").unwrap().elaborate().unwrap();
    assert_eq!(k0_class(&off).coeffs(), &[0, -1, 1]);
    let proj = parse("ambient 1; pp(E y: x1 = 2*y + 1)").unwrap().elaborate().unwrap();
    assert!(proj.same_points(&DefinableSet::full(1)).unwrap());
    let point = parse("ambient 2; pp(x1 = 1/2 & x2 = -3)").unwrap().elaborate().unwrap();
    assert_eq!(k0_class(&point), K0Class::monomial(0));
    assert_eq!(dim(&point), Some(0));
    assert_eq!(dim(&DefinableSet::empty(2)), None);
}

#[test]
fn parse_errors_carry_positions() {
    let e = parse("ambient 2;\npp(x1 = x3)").unwrap_err().to_string();
    assert!(e.starts_with("2:"), "{e}");
    assert!(parse("ambient 2; pp(x1 * x2 = 0)").is_err());
    assert!(parse("ambient 2; pp(x1 = 0").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn print_then_parse_is_identity(f in formula()) {
        let text = f.to_string();
        let g = parse(&text).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
        prop_assert_eq!(g, f, "{}", text);
    }

    #[test]
    fn negation_is_complement(f in formula()) {
        let d = f.elaborate().unwrap();
        let neg = Formula { ambient: f.ambient, body: Node::Not(Box::new(f.body.clone())) }.elaborate().unwrap();
        prop_assert!(neg.same_points(&d.complement()).unwrap());
        let total = k0_class(&d).add(&k0_class(&neg));
        prop_assert_eq!(total, K0Class::monomial(f.ambient));
    }

    #[test]
    fn class_is_additive(a in any::<u64>(), b in any::<u64>(), n in 1usize..=2) {
        let (x, y) = (set_from_seed(a, n), set_from_seed(b, n));
        let lhs = k0_class(&x.union(&y).unwrap()).add(&k0_class(&x.intersect(&y).unwrap()));
        prop_assert_eq!(lhs, k0_class(&x).add(&k0_class(&y)));
        let split = k0_class(&x.difference(&y).unwrap()).add(&k0_class(&x.intersect(&y).unwrap()));
        prop_assert_eq!(split, k0_class(&x));
    }

    #[test]
    fn class_is_multiplicative(a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (set_from_seed(a, 1), set_from_seed(b, 2));
        prop_assert_eq!(k0_class(&x.product(&y)), k0_class(&x).mul(&k0_class(&y)));
    }

    #[test]
    fn dimension_is_degree(a in any::<u64>(), n in 1usize..=3) {
        let x = set_from_seed(a, n);
        prop_assert_eq!(dim(&x), k0_class(&x).degree());
        prop_assert!(x.blocks_disjoint());
    }

    #[test]
    fn elaboration_respects_membership(a in any::<u64>(), pt in prop::collection::vec(-2i64..=2, 2)) {
        let mut rng = ChaCha8Rng::seed_from_u64(a);
        let e: SetExpr = random_set_expr(&mut rng, 2, 3);
        let d = boolean_normalize(&e).unwrap();
        let p: Vec<Rat> = pt.into_iter().map(rat).collect();
        prop_assert_eq!(d.contains(&p), e.contains(&p));
    }
}

#[test]
fn coset_operations() {
    let plane = AffineCoset::full(2);
    let line = AffineCoset::from_rows(2, vec![vec![rat(1), rat(-1), rat(0)]]).unwrap();
    assert!(line.is_subset(&plane).unwrap());
    assert_eq!(line.dim(), Some(1));
    let other = AffineCoset::from_rows(2, vec![vec![rat(1), rat(-1), rat(1)]]).unwrap();
    assert!(line.intersect(&other).unwrap().is_empty());
}
