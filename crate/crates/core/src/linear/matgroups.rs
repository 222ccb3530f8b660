use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{MatRing, Matrix, RingElem, UnitSumWitness};
use crate::constructions::semidirect;
use crate::groups::{AbInvariants, FiniteGroup, GroupAction, GroupElement, GroupError, ModVector};
use crate::report::VerificationReport;

/// `(n, q)` for which `GL_n(F_q)^ab` is not `F_q^x`.
pub const KNOWN_GL_AB_EXCEPTIONS: &[(usize, u32)] = &[(2, 2)];

fn check_size(n: usize) -> Result<(), GroupError> {
    if n == 0 {
        return Err(GroupError::Precondition("matrix size must be at least 1".into()));
    }
    Ok(())
}

fn transvections(ring: &Arc<MatRing>, n: usize, coefficients: &[RingElem]) -> Vec<GroupElement> {
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                for &c in coefficients {
                    gens.push(GroupElement::Matrix(Matrix::elementary(ring.clone(), n, i, j, c)));
                }
            }
        }
    }
    gens
}

/// `GL_n(R)`, generated by elementary matrices and `diag(u, 1, .., 1)`.
pub fn gl_group(n: usize, ring: &Arc<MatRing>, cap: usize) -> Result<FiniteGroup, GroupError> {
    check_size(n)?;
    let mut gens = transvections(ring, n, &ring.additive_generators());
    for u in ring.units() {
        if u != 1 {
            let mut d = vec![1; n];
            d[0] = u;
            gens.push(GroupElement::Matrix(Matrix::diagonal(ring.clone(), &d)));
        }
    }
    let identity = GroupElement::Matrix(Matrix::identity(ring.clone(), n));
    Ok(FiniteGroup::generate(identity, &gens, cap)?.named(format!("GL({n},{ring})")))
}

/// `E_n(R)`: the closure of the transvections `I + c e_ij`.
pub fn elementary_closure(n: usize, ring: &Arc<MatRing>, cap: usize) -> Result<FiniteGroup, GroupError> {
    check_size(n)?;
    let coefficients: Vec<RingElem> = ring.elements().filter(|&c| c != 0).collect();
    let gens = transvections(ring, n, &coefficients);
    let identity = GroupElement::Matrix(Matrix::identity(ring.clone(), n));
    Ok(FiniteGroup::generate(identity, &gens, cap)?.named(format!("E({n},{ring})")))
}

/// Indices of the determinant-one elements of a matrix group.
pub fn special_linear_members(group: &FiniteGroup) -> Vec<usize> {
    (0..group.order()).filter(|&i| group.element(i).as_matrix().is_some_and(|m| m.det() == 1)).collect()
}

/// The determinant, i.e. the image of `A` in `K_1` of a Euclidean domain.
pub fn det_class(a: &Matrix) -> Result<RingElem, GroupError> {
    let d = a.det();
    if !a.ring().is_unit(d) {
        return Err(GroupError::NonInvertible(format!("{a}")));
    }
    Ok(d)
}

/// Brute-force `GL_n(F_q)^ab` against `F_q^x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlAbReport {
    pub n: usize,
    pub q: u32,
    pub report: VerificationReport,
    pub commutator_is_sl: bool,
    pub hypotheses_hold: bool,
    pub known_exception: bool,
}

impl GlAbReport {
    /// Passing where expected, and failing exactly on tabulated exceptions.
    pub fn as_expected(&self) -> bool {
        self.report.passed != self.known_exception
    }
}

pub fn verify_gl_ab(n: usize, ring: &Arc<MatRing>, cap: usize) -> Result<GlAbReport, GroupError> {
    if !ring.is_field() {
        return Err(GroupError::UnsupportedRing(format!("{ring} is not a field")));
    }
    let q = ring.size() as u32;
    let g = gl_group(n, ring, cap)?;
    let comm = g.commutator_subgroup();
    let sl = special_linear_members(&g);
    let mut comm_members = comm.parent_indices().expect("subgroup");
    comm_members.sort_unstable();
    let commutator_is_sl = comm_members == sl;
    let witness = UnitSumWitness::find(ring);
    let hypotheses_hold = n == 1 || n >= 3 || witness.exists;
    let known_exception = KNOWN_GL_AB_EXCEPTIONS.contains(&(n, q));
    let mut report = VerificationReport::compare(
        format!("GL({n},{ring})^ab"),
        g.abelianization(),
        AbInvariants::cyclic(q as u64 - 1),
    );
    if witness.exists && n == 2 {
        report = report.with_note(format!("1 = {} + {}", witness.u, witness.v));
    }
    if known_exception {
        report = report.with_note("known exception");
    }
    Ok(GlAbReport { n, q, report, commutator_is_sl, hypotheses_hold, known_exception })
}

/// A group of `n x n` matrices acting on `(R^n)^copies`, one column block at a time.
pub fn matrix_action(
    matrices: &FiniteGroup,
    n: usize,
    ring: &Arc<MatRing>,
    copies: usize,
    cap: usize,
) -> Result<GroupAction, GroupError> {
    let len = n * copies;
    let mut gens = Vec::new();
    for slot in 0..len {
        for &c in &ring.additive_generators() {
            let mut v = vec![0; len];
            v[slot] = c;
            gens.push(GroupElement::Vector(ModVector::new(ring.clone(), v)));
        }
    }
    let identity = GroupElement::Vector(ModVector::zero(ring.clone(), len));
    let module = FiniteGroup::generate(identity, &gens, cap)?.named(format!("({ring}^{n})^{copies}"));
    for e in matrices.elements() {
        if !e.as_matrix().is_some_and(|m| m.size() == n && **m.ring() == **ring) {
            return Err(GroupError::Incompatible(format!("{e} is not an {n}x{n} matrix over {ring}")));
        }
    }
    GroupAction::from_fn(matrices, &module, |a, v| {
        let m = matrices.element(a).as_matrix().expect("matrix");
        let entries = module.element(v).as_vector().expect("vector").entries();
        let image: Vec<RingElem> = entries.chunks(n).flat_map(|block| m.mul_vec(block)).collect();
        module.index_of(&GroupElement::Vector(ModVector::new(ring.clone(), image))).expect("closed")
    })
}

/// `GL_n(R) x| (R^n)^copies`, matrices acting on each column block.
pub fn affine_group(n: usize, ring: &Arc<MatRing>, copies: usize, cap: usize) -> Result<FiniteGroup, GroupError> {
    check_size(n)?;
    let gl = gl_group(n, ring, cap)?;
    let action = matrix_action(&gl, n, ring, copies, cap)?;
    Ok(semidirect(&action, cap)?.named(format!("Aff({n},{ring})^{copies}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::DEFAULT_CAP;

    fn f(q: u32) -> Arc<MatRing> {
        Arc::new(MatRing::finite_field(q).unwrap())
    }

    fn gl_order(n: u32, q: u64) -> usize {
        (0..n).map(|i| q.pow(n) - q.pow(i)).product::<u64>() as usize
    }

    #[test]
    fn gl_orders_match_formula() {
        for (n, q) in [(1, 2), (1, 5), (2, 2), (2, 3), (2, 4), (2, 5), (3, 2)] {
            assert_eq!(gl_group(n, &f(q), DEFAULT_CAP).unwrap().order(), gl_order(n as u32, q as u64), "GL({n},{q})");
        }
    }

    #[test]
    fn gl_over_integers_mod() {
        let z4 = Arc::new(MatRing::integers_mod(4).unwrap());
        // |GL_2(Z/4)| = 16 * |GL_2(F_2)|
        assert_eq!(gl_group(2, &z4, DEFAULT_CAP).unwrap().order(), 96);
    }

    #[test]
    fn elementary_small_cases() {
        assert_eq!(elementary_closure(2, &f(2), DEFAULT_CAP).unwrap().order(), 6);
        assert_eq!(elementary_closure(2, &f(3), DEFAULT_CAP).unwrap().order(), 24);
        assert_eq!(elementary_closure(1, &f(7), DEFAULT_CAP).unwrap().order(), 1);
    }

    #[test]
    fn gl_ab_reports() {
        let r = verify_gl_ab(2, &f(3), DEFAULT_CAP).unwrap();
        assert!(r.report.passed && r.commutator_is_sl && r.hypotheses_hold);
        let r = verify_gl_ab(2, &f(2), DEFAULT_CAP).unwrap();
        assert!(!r.report.passed && r.known_exception && r.as_expected());
        assert_eq!(r.report.lhs.factors(), &[2]);
        assert!(!r.commutator_is_sl);
        let r = verify_gl_ab(1, &f(5), DEFAULT_CAP).unwrap();
        assert_eq!(r.report.lhs.factors(), &[4]);
        assert!(r.report.passed);
    }

    #[test]
    fn det_class_is_multiplicative_on_gl2_f3() {
        let g = gl_group(2, &f(3), DEFAULT_CAP).unwrap();
        for a in g.elements() {
            for b in g.elements() {
                let (a, b) = (a.as_matrix().unwrap(), b.as_matrix().unwrap());
                let r = a.ring();
                assert_eq!(det_class(&a.mul(b)).unwrap(), r.mul(det_class(a).unwrap(), det_class(b).unwrap()));
            }
        }
        let singular = Matrix::from_rows(f(3), &[&[1, 2], &[2, 1]]).unwrap();
        assert!(det_class(&singular).is_err());
        assert_eq!(det_class(&Matrix::diagonal(f(5), &[3, 1])).unwrap(), 3);
    }

    #[test]
    fn affine_examples() {
        let a = affine_group(1, &f(5), 1, DEFAULT_CAP).unwrap();
        assert_eq!(a.order(), 20);
        assert_eq!(a.abelianization().factors(), &[4]);
        let a = affine_group(1, &f(2), 1, DEFAULT_CAP).unwrap();
        assert_eq!(a.abelianization().factors(), &[2]);
        let a = affine_group(2, &f(2), 1, DEFAULT_CAP).unwrap();
        assert_eq!(a.order(), 24);
        assert_eq!(a.abelianization().factors(), &[2]);
    }
}
