use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructions::{
    alternating_group, cyclic_group, dihedral_group, index_permutation_action, lift_permutation, lift_wreath_component,
    sl2_f3, symmetric_group, verify_semiab, verify_wreath_ab, SignedTranslation,
};
use crate::groups::{AbInvariants, FiniteGroup, GroupAction, GroupError, Perm};
use crate::linear::{
    affine_group, elementary_closure, gl_group, matrix_action, special_linear_members, verify_gl_ab, MatRing,
};
use crate::report::SuiteReport;

fn small_group<R: Rng>(rng: &mut R, max_order: usize) -> FiniteGroup {
    loop {
        let g = match rng.gen_range(0..7) {
            0 => cyclic_group(rng.gen_range(1..=12)),
            1 => dihedral_group(2 * rng.gen_range(2..=10)),
            2 => symmetric_group(rng.gen_range(2..=4), usize::MAX),
            3 => alternating_group(4, usize::MAX),
            4 => Ok(sl2_f3()),
            5 => cyclic_group(2).and_then(|z| FiniteGroup::direct_power(&z, rng.gen_range(1..=4), usize::MAX)),
            _ => cyclic_group(3).and_then(|z| FiniteGroup::direct_power(&z, rng.gen_range(1..=2), usize::MAX)),
        }
        .expect("catalogue group");
        if g.order() <= max_order {
            return g;
        }
    }
}

/// `Z_m` acting on `Z_n` by `h -> h^(u^j)` for a unit `u` of order dividing `m`.
fn multiplier_action<R: Rng>(rng: &mut R) -> Result<GroupAction, GroupError> {
    let n = rng.gen_range(2..=40usize);
    let units: Vec<usize> = (1..n).filter(|&u| num_integer::gcd(u, n) == 1).collect();
    let u = *units.choose(rng).unwrap();
    let ord = (1..=n).find(|&k| (0..k).fold(1, |acc, _| acc * u % n) == 1 % n).unwrap();
    let m = ord * rng.gen_range(1..=2);
    let (target, acting) = (cyclic_group(n)?, cyclic_group(m)?);
    let logs = |g: &FiniteGroup, k: usize| {
        let gen = g.generators()[0];
        let mut log = vec![0usize; g.order()];
        for i in 0..k {
            log[g.pow(gen, i as u64)] = i;
        }
        (gen, log)
    };
    let (hgen, hlog) = logs(&target, n);
    let (_, klog) = logs(&acting, m);
    let mut upow = vec![1usize; m];
    for j in 1..m {
        upow[j] = upow[j - 1] * u % n;
    }
    GroupAction::from_fn(&acting, &target, |k, h| target.pow(hgen, (hlog[h] * upow[klog[k]] % n) as u64))
}

/// A subgroup of `h` acting on `h` by conjugation.
fn inner_action<R: Rng>(rng: &mut R, h: &FiniteGroup) -> Result<GroupAction, GroupError> {
    let gens: Vec<usize> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(0..h.order())).collect();
    let sub = h.subgroup(&gens);
    let members = sub.parent_indices().expect("subgroup");
    GroupAction::from_fn(&sub, h, |k, x| h.conjugate(x, members[k]))
}

fn coordinate_action<R: Rng>(rng: &mut R) -> Result<GroupAction, GroupError> {
    let (base, k, top) = match rng.gen_range(0..5) {
        0 => (cyclic_group(3)?, 3, symmetric_group(3, usize::MAX)?),
        1 => (cyclic_group(2)?, 4, symmetric_group(4, usize::MAX)?),
        2 => (symmetric_group(3, usize::MAX)?, 3, symmetric_group(3, usize::MAX)?),
        3 => (cyclic_group(2)?, 5, cyclic_group(5)?),
        _ => (cyclic_group(4)?, 3, alternating_group(3, usize::MAX)?),
    };
    let power = FiniteGroup::direct_power(&base, k, usize::MAX)?;
    index_permutation_action(&top, &power, base.order(), k)
}

fn linear_action<R: Rng>(rng: &mut R, cap: usize) -> Result<GroupAction, GroupError> {
    let (n, q, special) = *[
        (1, 3, false),
        (1, 4, false),
        (1, 5, false),
        (1, 7, false),
        (1, 9, false),
        (2, 2, false),
        (2, 3, false),
        (2, 3, true),
    ]
    .choose(rng)
    .unwrap();
    let ring = Arc::new(MatRing::finite_field(q)?);
    let g = if special { sl2_f3() } else { gl_group(n, &ring, cap)? };
    let ring = if special { g.element(g.identity()).as_matrix().expect("matrix").ring().clone() } else { ring };
    matrix_action(&g, n, &ring, 1, cap)
}

/// `(G x| H)^ab = G^ab + (H^ab)_G` on random actions with `|G| |H| <= 2000`.
pub fn semiab_suite(seed: u64, cases: usize, cap: usize) -> SuiteReport {
    let mut report = SuiteReport::new("semiab");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while report.cases < cases {
        let family = rng.gen_range(0..6);
        let action = match family {
            0 => {
                let h = small_group(&mut rng, 200);
                let g = small_group(&mut rng, 2000 / h.order());
                Ok(GroupAction::trivial(&g, &h))
            }
            1 => Ok(GroupAction::conjugation(&small_group(&mut rng, 44))),
            2 => {
                let h = small_group(&mut rng, 44);
                inner_action(&mut rng, &h)
            }
            3 => multiplier_action(&mut rng),
            4 => coordinate_action(&mut rng),
            _ => linear_action(&mut rng, cap),
        };
        let result = action.and_then(|a| {
            if a.acting().order() * a.target().order() > 2000 {
                return Ok(None);
            }
            verify_semiab(&a, cap).map(Some)
        });
        match result {
            Ok(None) => {}
            Ok(Some(r)) => {
                let line = r.to_string();
                report.record(r.passed, || line);
            }
            Err(e) => report.record(false, || format!("family {family}: {e}")),
        }
    }
    report
}

/// `(K wr Sym(k))^ab = K^ab + Z_2`.
pub fn wreath_suite(cap: usize) -> SuiteReport {
    let mut report = SuiteReport::new("wreath");
    let bases = [cyclic_group(2), cyclic_group(3), cyclic_group(4), symmetric_group(3, cap)];
    for base in bases {
        for k in [2, 3] {
            match base.as_ref().map_err(Clone::clone).and_then(|b| verify_wreath_ab(b, k, cap)) {
                Ok(r) => {
                    let line = r.to_string();
                    report.record(r.passed, || line);
                }
                Err(e) => report.record(false, || format!("wreath with k = {k}: {e}")),
            }
        }
    }
    report
}

fn even_perms(g: &FiniteGroup, members: &[usize]) -> (BTreeSet<Vec<u32>>, BTreeSet<Vec<u32>>) {
    let derived = members.iter().map(|&i| g.element(i).as_perm().expect("perm").images().to_vec()).collect();
    let even =
        g.elements().iter().filter_map(|e| e.as_perm()).filter(|p| p.is_even()).map(|p| p.images().to_vec()).collect();
    (derived, even)
}

/// `[Sym(k), Sym(k)]` is the set of even permutations and `Sym(k)^ab = Z_2`.
pub fn perm_suite(cap: usize) -> SuiteReport {
    let mut report = SuiteReport::new("perm");
    for k in 2..=6 {
        let sym = match symmetric_group(k, cap) {
            Ok(s) => s,
            Err(e) => {
                report.record(false, || format!("Sym({k}): {e}"));
                continue;
            }
        };
        let derived = sym.commutator_subgroup();
        let members = derived.parent_indices().expect("subgroup");
        let (got, even) = even_perms(&sym, &members);
        report.record(got == even, || {
            format!("[Sym({k}), Sym({k})] has {} elements, Alt({k}) {}", got.len(), even.len())
        });
        let ab = sym.abelianization();
        report.record(ab == AbInvariants::cyclic(2), || format!("Sym({k})^ab = {ab}"));
    }
    report
}

/// `GL_n(F_q)^ab = Z_{q-1}` away from the listed exception, and the rank-`n`
/// affine group has the same abelianization as `GL_n`.
pub fn gl_suite(cap: usize) -> SuiteReport {
    let mut report = SuiteReport::new("gl");
    for (n, q) in [(2, 2), (2, 4), (2, 5), (3, 2), (3, 3)] {
        match MatRing::finite_field(q).map(Arc::new).and_then(|r| verify_gl_ab(n, &r, cap)) {
            Ok(r) => {
                let ok = if r.known_exception { !r.report.passed } else { r.report.passed };
                let line = r.report.to_string();
                report.record(ok, || line);
            }
            Err(e) => report.record(false, || format!("GL({n},{q}): {e}")),
        }
    }
    for (n, q) in [(1, 5), (2, 2), (2, 3)] {
        let result = MatRing::finite_field(q)
            .map(Arc::new)
            .and_then(|r| Ok((affine_group(n, &r, 1, cap)?.abelianization(), gl_group(n, &r, cap)?.abelianization())));
        match result {
            Ok((aff, gl)) => report.record(aff == gl, || format!("Aff({n},F_{q})^ab = {aff}, GL^ab = {gl}")),
            Err(e) => report.record(false, || format!("Aff({n},F_{q}): {e}")),
        }
    }
    report
}

/// The elementary matrices generate exactly the determinant-one matrices.
pub fn ed_suite(cap: usize) -> SuiteReport {
    let mut report = SuiteReport::new("ed");
    for (n, q) in [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3)] {
        let result = MatRing::finite_field(q).map(Arc::new).and_then(|r| {
            let gl = gl_group(n, &r, cap)?;
            let e = elementary_closure(n, &r, cap)?;
            let sl: BTreeSet<String> = special_linear_members(&gl).iter().map(|&i| gl.element(i).to_string()).collect();
            let en: BTreeSet<String> = e.elements().iter().map(ToString::to_string).collect();
            Ok((en, sl))
        });
        match result {
            Ok((en, sl)) => {
                report.record(en == sl, || format!("E_{n}(F_{q}) has {} elements, SL {}", en.len(), sl.len()))
            }
            Err(e) => report.record(false, || format!("E_{n}(F_{q}): {e}")),
        }
    }
    report
}

fn all_perms(n: usize) -> Vec<Perm> {
    fn rec(prefix: &mut Vec<u32>, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
        if prefix.len() == used.len() {
            out.push(Perm::new(prefix.clone()).expect("bijection"));
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i as u32);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn compose_signed(a: SignedTranslation, b: SignedTranslation) -> SignedTranslation {
    SignedTranslation { sign: a.sign * b.sign, shift: a.shift + a.sign as i64 * b.shift }
}

/// The lifts `Z_n -> Z_m`: the worked example, the homomorphism property
/// and the parity law, exhaustively for `n <= 4`, `m <= 12`.
pub fn lift_suite() -> SuiteReport {
    let mut report = SuiteReport::new("lift");
    let swap = Perm::new(vec![1, 0]).expect("bijection");
    let table = lift_permutation(2, 4, &swap).map(|l| l.lifted.images().to_vec());
    report.record(table.as_deref() == Ok(&[1, 0, 3, 2][..]), || format!("lift of (0 1) to Z_4: {table:?}"));
    for n in 1..=4 {
        let perms = all_perms(n);
        for m in (n..=12).step_by(n) {
            let lifts: Vec<Perm> = perms.iter().map(|s| lift_permutation(n, m, s).expect("n | m").lifted).collect();
            let mut hom = true;
            for (i, s) in perms.iter().enumerate() {
                for (j, t) in perms.iter().enumerate() {
                    let k = perms.iter().position(|p| *p == s.compose(t)).expect("closed");
                    hom &= lifts[k] == lifts[i].compose(&lifts[j]);
                }
            }
            report.record(hom, || format!("lift Z_{n} -> Z_{m} is not a homomorphism"));
            let parity = perms.iter().zip(&lifts).all(|(s, l)| l.is_even() == (s.is_even() || (m / n) % 2 == 0));
            report.record(parity, || format!("parity law fails for Z_{n} -> Z_{m}"));
            let mut rng = ChaCha8Rng::seed_from_u64((n * 100 + m) as u64);
            let mut draw = || -> Vec<SignedTranslation> {
                (0..n)
                    .map(|_| SignedTranslation {
                        sign: if rng.gen_bool(0.5) { 1 } else { -1 },
                        shift: n as i64 * rng.gen_range(-3..=3),
                    })
                    .collect()
            };
            let (a, b) = (draw(), draw());
            let ab: Vec<_> = a.iter().zip(&b).map(|(x, y)| compose_signed(*x, *y)).collect();
            let la = lift_wreath_component(n, m, &a).expect("n | m");
            let lb = lift_wreath_component(n, m, &b).expect("n | m");
            let lab = lift_wreath_component(n, m, &ab).expect("n | m");
            let pointwise: Vec<_> = la.iter().zip(&lb).map(|(x, y)| compose_signed(*x, *y)).collect();
            report.record(lab == pointwise, || format!("component lift Z_{n} -> Z_{m} is not a homomorphism"));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::DEFAULT_CAP;

    #[test]
    fn fixed_suites_pass() {
        for r in [wreath_suite(DEFAULT_CAP), perm_suite(DEFAULT_CAP), lift_suite()] {
            assert!(r.all_passed(), "{r}");
        }
    }

    #[test]
    fn semiab_small_run() {
        let r = semiab_suite(1, 8, DEFAULT_CAP);
        assert_eq!(r.cases, 8);
        assert!(r.all_passed(), "{r}");
    }
}
