use crate::k1::{
    derive_flags, k1_expression, k1_module, omega_nn_ab, truncation_consistency, Atom, FormalAbGroup, K1Expression,
    ModuleKind, Mult, RingDescriptor, TheoryFlags,
};
use crate::report::SuiteReport;

fn fq(q: u32) -> RingDescriptor {
    RingDescriptor::FiniteField { q }
}

/// The displayed closed forms, written out atom by atom.
fn published(ring: &RingDescriptor) -> K1Expression {
    let z2 = Atom::z2();
    match ring {
        RingDescriptor::Integers => K1Expression { head: vec![z2.clone()], per_level: vec![z2] },
        RingDescriptor::FiniteField { q } if q % 2 == 0 => {
            K1Expression { head: vec![z2.clone()], per_level: vec![Atom::Zmod(*q as u64 - 1), z2] }
        }
        RingDescriptor::FiniteField { q } => {
            K1Expression { head: vec![z2.clone()], per_level: vec![Atom::Zmod(*q as u64 - 1), z2.clone(), z2] }
        }
        RingDescriptor::PolyChar0 { base } => K1Expression {
            head: vec![z2.clone()],
            per_level: vec![Atom::UnitsOf(RingDescriptor::InfiniteField { name: base.clone() }), z2],
        },
        other => K1Expression { head: vec![z2.clone()], per_level: vec![Atom::UnitsOf(other.clone()), z2] },
    }
}

fn module_for(ring: &RingDescriptor) -> ModuleKind {
    if *ring == RingDescriptor::Integers {
        ModuleKind::Regular
    } else {
        ModuleKind::InfiniteFree
    }
}

/// Closed forms against the published statements, the finite-field
/// truncations against brute force, and the two rejection paths.
pub fn symbolic_suite() -> SuiteReport {
    let mut report = SuiteReport::new("symbolic");
    let rings = [
        RingDescriptor::rationals(),
        fq(4),
        fq(8),
        fq(3),
        fq(5),
        fq(7),
        fq(9),
        RingDescriptor::PolyChar0 { base: "Q".into() },
        RingDescriptor::Integers,
    ];
    for ring in &rings {
        let result = derive_flags(ring, ModuleKind::InfiniteFree).and_then(|flags| {
            let e = k1_expression(ring, module_for(ring), flags)?;
            Ok((e.normalize(), k1_module(ring, module_for(ring), flags)?))
        });
        let expected = published(ring);
        match result {
            Ok((e, flat)) => {
                let ok = e == expected && flat == expected.flatten().normalize();
                report.record(ok, || format!("K_1 over {}: {e}, expected {expected}", ring.name()));
            }
            Err(err) => report.record(false, || format!("K_1 over {}: {err}", ring.name())),
        }
    }
    // the GL_n^ab form and the unit-group form agree
    let f = RingDescriptor::rationals();
    let raw = k1_expression(&f, ModuleKind::InfiniteFree, TheoryFlags::closed()).expect("supported").flatten();
    report.record(crate::k1::formal_equal(&raw, &published(&f).flatten()), || format!("{raw} is not normalized away"));
    let t = truncation_suite(crate::groups::DEFAULT_CAP);
    report.cases += t.cases;
    report.passed += t.passed;
    report.failures.extend(t.failures);
    let rejected = k1_module(&fq(2), ModuleKind::InfiniteFree, TheoryFlags::not_closed(true));
    report.record(matches!(&rejected, Err(e) if e.to_string().contains("F_2")), || format!("F_2: {rejected:?}"));
    for module in [ModuleKind::FreeRank(2), ModuleKind::InfiniteFree] {
        let r = k1_module(&RingDescriptor::Integers, module, TheoryFlags::not_closed(true));
        report.record(matches!(&r, Err(e) if e.to_string().contains("Z-modules")), || {
            format!("{module:?} over Z: {r:?}")
        });
    }
    report
}

/// Rank-`n` truncations over `F_4` and `F_5` for `n <= 2` match brute force;
/// over `F_2` the rank-1 truncation is flagged.
pub fn truncation_suite(cap: usize) -> SuiteReport {
    let mut report = SuiteReport::new("truncation");
    for (q, n, consistent) in [(4, 1, true), (4, 2, true), (5, 1, true), (5, 2, true), (2, 1, false)] {
        match truncation_consistency(q, n, cap) {
            Ok(r) => {
                let line = r.to_string();
                report.record(r.passed == consistent, || line);
            }
            Err(e) => report.record(false, || format!("truncation F_{q}, n = {n}: {e}")),
        }
    }
    report
}

fn unmark(g: &FormalAbGroup) -> FormalAbGroup {
    g.substitute(|a| (*a == Atom::UndeterminedZ2).then(|| FormalAbGroup::atoms([Atom::z2()])))
}

/// Each truncation is contained in the next and in the colimit.
pub fn monotone_suite() -> SuiteReport {
    let mut report = SuiteReport::new("monotone");
    let mut cases: Vec<(RingDescriptor, TheoryFlags)> = [3, 4, 5, 7, 8, 9]
        .into_iter()
        .map(fq)
        .chain([RingDescriptor::rationals(), RingDescriptor::PolyChar0 { base: "Q".into() }, RingDescriptor::Integers])
        .map(|r| {
            let flags = derive_flags(&r, ModuleKind::InfiniteFree).expect("derivable");
            (r, flags)
        })
        .collect();
    let ed = RingDescriptor::AbstractEd { units: "U".into(), has_unit_sum: true };
    cases.extend(
        [TheoryFlags::closed(), TheoryFlags::not_closed(true), TheoryFlags::not_closed(false)].map(|f| (ed.clone(), f)),
    );
    for (ring, flags) in &cases {
        let colimit = match k1_module(ring, module_for(ring), *flags) {
            Ok(k) => k,
            Err(e) => {
                report.record(false, || format!("K_1 over {}: {e}", ring.name()));
                continue;
            }
        };
        let levels: Result<Vec<FormalAbGroup>, _> = (1..=7).map(|n| omega_nn_ab(ring, *flags, n)).collect();
        let levels = match levels {
            Ok(l) => l,
            Err(e) => {
                report.record(false, || format!("truncations over {}: {e}", ring.name()));
                continue;
            }
        };
        for n in 1..=6 {
            let (lo, hi) = (&levels[n - 1], &levels[n]);
            report.record(hi.contains(lo), || {
                format!("over {}: level {n} {lo} not inside level {} {hi}", ring.name(), n + 1)
            });
            report.record(colimit.contains(&unmark(lo)), || {
                format!("over {}: level {n} {lo} not inside {colimit}", ring.name())
            });
        }
        let z2 = colimit.multiplicity(&Atom::z2());
        report.record(z2 == Mult::Countable, || format!("over {}: {colimit} lacks infinitely many Z_2", ring.name()));
    }
    report
}
