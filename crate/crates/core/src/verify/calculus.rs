use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automorphism::{random_pamap, upsilon_decompose, PAMap};
use crate::definable::{boolean_normalize, count_points_mod_p, k0_class, PpSystem, SetExpr};
use crate::rational::rat;
use crate::report::SuiteReport;

fn random_leaf<R: Rng>(rng: &mut R, n: usize) -> PpSystem {
    let bound = if rng.gen_bool(0.3) { 1 } else { 0 };
    let equations = (0..rng.gen_range(1..=2))
        .map(|_| {
            let mut row: Vec<_> = (0..n + bound).map(|_| rat(rng.gen_range(-2..=2))).collect();
            row.push(rat(rng.gen_range(-3..=3)));
            row
        })
        .collect();
    PpSystem::new(n, bound, equations).expect("shape")
}

/// A boolean combination of at most `2^depth` random integral pp-leaves in `Q^n`.
pub fn random_set_expr<R: Rng>(rng: &mut R, n: usize, depth: usize) -> SetExpr {
    if depth == 0 || rng.gen_bool(0.3) {
        return SetExpr::Atom(random_leaf(rng, n));
    }
    match rng.gen_range(0..3) {
        0 => SetExpr::and(random_set_expr(rng, n, depth - 1), random_set_expr(rng, n, depth - 1)),
        1 => SetExpr::or(random_set_expr(rng, n, depth - 1), random_set_expr(rng, n, depth - 1)),
        _ => SetExpr::not(random_set_expr(rng, n, depth - 1)),
    }
}

/// The class in `Z[X]` evaluated at `p` counts the points over `F_p`, at
/// every good prime among 5, 7, 11.
pub fn k0_suite(seed: u64, cases: usize) -> SuiteReport {
    let mut report = SuiteReport::new("k0");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0;
    while report.cases < cases && attempts < 20 * cases {
        attempts += 1;
        let n = rng.gen_range(1..=3);
        let expr = random_set_expr(&mut rng, n, 3);
        let class = match boolean_normalize(&expr) {
            Ok(d) => k0_class(&d),
            Err(e) => {
                report.record(false, || format!("normalization failed: {e}"));
                continue;
            }
        };
        let mut compared = 0;
        let mut mismatches = Vec::new();
        for p in [5u64, 7, 11] {
            match count_points_mod_p(&expr, p) {
                Ok(c) if c.good_prime => {
                    compared += 1;
                    if class.eval(p as i64) != c.count as i128 {
                        mismatches.push(format!(
                            "p = {p}: class {class} gives {}, count {}",
                            class.eval(p as i64),
                            c.count
                        ));
                    }
                }
                Ok(_) => {}
                Err(e) => mismatches.push(format!("p = {p}: {e}")),
            }
        }
        if compared > 0 || !mismatches.is_empty() {
            report.record(mismatches.is_empty(), || mismatches.join("; "));
        }
    }
    if report.cases < cases {
        report.failures.push(format!("only {} combinations had a good prime", report.cases));
    }
    report
}

fn check_map(f: &PAMap, k: &PAMap) -> Result<Vec<String>, crate::definable::CalcError> {
    let n = f.ambient();
    let mut problems = Vec::new();
    let v = f.validate();
    if !v.passed {
        problems.push(format!("invalid: {}", v.violations.join("; ")));
        return Ok(problems);
    }
    if !f.compose(&f.invert())?.support().is_empty() {
        problems.push("f o f^-1 moves points".into());
    }
    let (g, h) = upsilon_decompose(f)?;
    if !PAMap::affine(g).compose(&h)?.agrees_with(f)? {
        problems.push("g o h differs from f".into());
    }
    if h.dim_aut() >= Some(n) {
        problems.push(format!("h has dimension {:?}", h.dim_aut()));
    }
    let c = f.conjugate(k)?;
    if c.dim_aut() != f.dim_aut() {
        problems.push(format!("conjugation changed dimension {:?} to {:?}", f.dim_aut(), c.dim_aut()));
    }
    Ok(problems)
}

/// Validation, inversion, the affine splitting and conjugation invariance
/// on random maps of `Q^1` and `Q^2`.
pub fn aut_suite(seed: u64, cases: usize) -> SuiteReport {
    let mut report = SuiteReport::new("aut");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..cases {
        let n = 1 + i % 2;
        let f = random_pamap(&mut rng, n);
        let k = random_pamap(&mut rng, n);
        match check_map(&f, &k) {
            Ok(p) => report.record(p.is_empty(), || format!("{f}: {}", p.join("; "))),
            Err(e) => report.record(false, || format!("{f}: {e}")),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_pass() {
        let r = k0_suite(3, 10);
        assert!(r.all_passed(), "{r}");
        let r = aut_suite(3, 6);
        assert!(r.all_passed(), "{r}");
    }
}
