//! Gate classification: leakage, the entangling test, fixed states, and the
//! `V (+) V-perp` block decomposition.
//!
//! Every predicate comes in an exact flavor (a statement in the field, no
//! tolerances) and a float flavor (with [`Tolerances`]). The exact flavor is
//! authoritative; the float flavor exists to screen large batches cheaply.
//!
//! A 5x5 gate is *leakage-free* when it preserves the computational subspace
//! spanned by basis indices 1..4; for a unitary this is equivalent to its
//! `(0,0)` entry having unit modulus. A leakage-free gate restricted to the
//! computational subspace is *entangling* when it is not of the form
//! `A (x) B` or `SWAP . (A (x) B)`; equivalently, neither `U` nor `SWAP . U`
//! has operator-Schmidt rank one. The rank test runs on the realigned matrix
//! (rows indexed by row pairs, columns by column pairs), where rank one is
//! `all 2x2 minors vanish` exactly, or `second singular value < tol` in
//! floats.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::FieldElement;
use crate::matrix::{ExactMatrix, FloatMatrix};
use crate::rep::{swap_4, V_INDICES, V_PERP_INDICES};

#[derive(Debug, Error, PartialEq)]
pub enum GateError {
    #[error("matrix is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },
    #[error("gate is not leakage-free; the computational block is undefined")]
    NotLeakageFree,
}

/// Screening thresholds for the float backend.
#[derive(Clone, Copy, Debug)]
pub struct Tolerances {
    /// `|M_00| >= 1 - leakage` counts as leakage-free.
    pub leakage: f64,
    /// Second Schmidt singular value below this counts as rank one.
    pub entangling: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        // Representation entries are O(1) and products of tens of unitaries
        // accumulate ~1e-13 of error; these sit several orders above that.
        Self { leakage: 1e-9, entangling: 1e-8 }
    }
}

/// Classification record for a 5x5 gate. `entangling` is defined only for
/// leakage-free gates; `v_block`/`v_perp_block` are present only when the
/// gate preserves `V = span{|NC>, |tt>}` (stored as float `[re, im]` entries
/// regardless of the backend that produced the report).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GateReport {
    pub leakage_free: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entangling: Option<bool>,
    pub fixed_states: Vec<usize>,
    pub preserves_v: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v_block: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v_perp_block: Option<Vec<Vec<[f64; 2]>>>,
}

fn to_rows(m: &FloatMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.dim())
        .map(|i| (0..m.dim()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

/// Exact leakage test: `|M_00|^2 = 1` in the field.
pub fn is_leakage_free_exact(m: &ExactMatrix) -> bool {
    assert_eq!(m.dim(), 5, "leakage is a 5x5 notion");
    m[(0, 0)].abs_sq().is_one()
}

pub fn is_leakage_free_float(m: &FloatMatrix, tol: &Tolerances) -> bool {
    assert_eq!(m.dim(), 5, "leakage is a 5x5 notion");
    m[(0, 0)].norm() >= 1.0 - tol.leakage
}

/// The 4x4 computational block (rows/cols 1..4) of a leakage-free gate.
pub fn restrict_to_vc_exact(m: &ExactMatrix) -> Result<ExactMatrix, GateError> {
    if !is_leakage_free_exact(m) {
        return Err(GateError::NotLeakageFree);
    }
    Ok(m.submatrix(&[1, 2, 3, 4], &[1, 2, 3, 4]))
}

pub fn restrict_to_vc_float(m: &FloatMatrix, tol: &Tolerances) -> Result<FloatMatrix, GateError> {
    if !is_leakage_free_float(m, tol) {
        return Err(GateError::NotLeakageFree);
    }
    Ok(m.submatrix(&[1, 2, 3, 4], &[1, 2, 3, 4]))
}

/// Realignment of a two-qubit operator: entry at row pair `(a,c)`, column
/// pair `(b,d)` is `U[(a,b),(c,d)]`. `U` has operator-Schmidt rank one
/// (`U = A (x) B`) iff the realignment has matrix rank one.
fn realign_exact(u: &ExactMatrix) -> ExactMatrix {
    assert_eq!(u.dim(), 4, "realignment is a two-qubit notion");
    let mut m = ExactMatrix::zero(4);
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    m[(2 * a + c, 2 * b + d)] = u[(2 * a + b, 2 * c + d)].clone();
                }
            }
        }
    }
    m
}

fn realign_float(u: &FloatMatrix) -> FloatMatrix {
    assert_eq!(u.dim(), 4, "realignment is a two-qubit notion");
    let mut m = FloatMatrix::zero(4);
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    m[(2 * a + c, 2 * b + d)] = u[(2 * a + b, 2 * c + d)];
                }
            }
        }
    }
    m
}

/// Exact rank-one test: every 2x2 minor vanishes.
fn rank_one_exact(m: &ExactMatrix) -> bool {
    let n = m.dim();
    for r1 in 0..n {
        for r2 in (r1 + 1)..n {
            for c1 in 0..n {
                for c2 in (c1 + 1)..n {
                    let ad = m[(r1, c1)].mul(&m[(r2, c2)]);
                    let bc = m[(r1, c2)].mul(&m[(r2, c1)]);
                    if ad != bc {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Is the 4x4 unitary entangling? Exact backend: neither `U` nor `SWAP . U`
/// realigns to rank one.
pub fn is_entangling_exact(u: &ExactMatrix) -> Result<bool, GateError> {
    if !u.is_unitary() {
        let residual = u.to_float().unitarity_defect();
        return Err(GateError::NotUnitary { residual });
    }
    let plain = rank_one_exact(&realign_exact(u));
    let swapped = rank_one_exact(&realign_exact(&swap_4().mul(u)));
    Ok(!(plain || swapped))
}

/// Float backend: entangling iff the second singular value of both
/// realignments stays above `tol.entangling`.
pub fn is_entangling_float(u: &FloatMatrix, tol: &Tolerances) -> Result<bool, GateError> {
    let residual = u.unitarity_defect();
    if residual > 1e-8 {
        return Err(GateError::NotUnitary { residual });
    }
    let s2_plain = realignment_singular_values(u)[1];
    let s2_swapped = realignment_singular_values(&swap_4().to_float().mul(u))[1];
    Ok(s2_plain.min(s2_swapped) >= tol.entangling)
}

/// Singular values of the realignment of a 4x4 operator, descending.
pub fn realignment_singular_values(u: &FloatMatrix) -> [f64; 4] {
    let sv = singular_values(&realign_float(u));
    std::array::from_fn(|i| sv[i])
}

/// Singular values by one-sided Jacobi: rotate column pairs until mutually
/// orthogonal, then read off the column norms. Working on the matrix itself
/// (not its Gram matrix) keeps tiny singular values accurate to ~1e-15, well
/// below the entangling threshold; a Gram-matrix route bottoms out at
/// sqrt(eps) ~ 1e-8, exactly where the threshold sits.
fn singular_values(m: &FloatMatrix) -> Vec<f64> {
    let n = m.dim();
    let mut a = m.clone();
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let mut app = 0.0;
                let mut aqq = 0.0;
                let mut apq = Complex64::new(0.0, 0.0);
                for i in 0..n {
                    app += a[(i, p)].norm_sqr();
                    aqq += a[(i, q)].norm_sqr();
                    apq += a[(i, p)].conj() * a[(i, q)];
                }
                let r = apq.norm();
                if r <= 1e-15 * (app * aqq).sqrt().max(1e-300) {
                    continue;
                }
                rotated = true;
                // Diagonalize the 2x2 Gram block [[app, apq], [apq*, aqq]].
                let phase = apq / r;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for i in 0..n {
                    let vp = a[(i, p)];
                    let vq = a[(i, q)];
                    a[(i, p)] = vp * c - vq * (phase.conj() * s);
                    a[(i, q)] = vp * (phase * s) + vq * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = (0..n)
        .map(|j| (0..n).map(|i| a[(i, j)].norm_sqr()).sum::<f64>().sqrt())
        .collect();
    sv.sort_by(|x, y| y.partial_cmp(x).expect("finite singular values"));
    sv
}

/// Diagonal-gate entangling criterion for phases `(l0, l1, l2, l3)` on the
/// computational basis: entangling iff `l3 * l0 != l1 * l2`. Exact version.
pub fn is_entangling_diagonal_exact(phases: &[FieldElement; 4]) -> bool {
    phases[3].mul(&phases[0]) != phases[1].mul(&phases[2])
}

/// `|l3*l0 - l1*l2|` — zero exactly for non-entangling diagonal gates.
pub fn diagonal_entangling_gap(phases: &[Complex64; 4]) -> f64 {
    (phases[3] * phases[0] - phases[1] * phases[2]).norm()
}

pub fn is_entangling_diagonal_float(phases: &[Complex64; 4], gap_tol: f64) -> bool {
    diagonal_entangling_gap(phases) > gap_tol
}

/// Does column `index` have its single nonzero entry on the diagonal?
pub fn fixes_state_up_to_phase_exact(m: &ExactMatrix, index: usize) -> bool {
    (0..m.dim()).all(|i| i == index || m[(i, index)].is_zero())
}

pub fn fixes_state_up_to_phase_float(m: &FloatMatrix, index: usize, tol: &Tolerances) -> bool {
    m[(index, index)].norm() >= 1.0 - tol.leakage
}

/// Block decomposition with respect to `V = span{|NC>, |tt>}`; `None` when a
/// cross entry is nonzero (the gate does not preserve `V`).
pub fn v_blocks_exact(m: &ExactMatrix) -> Option<(ExactMatrix, ExactMatrix)> {
    assert_eq!(m.dim(), 5, "V-blocks are a 5x5 notion");
    for &i in &V_INDICES {
        for &j in &V_PERP_INDICES {
            if !m[(i, j)].is_zero() || !m[(j, i)].is_zero() {
                return None;
            }
        }
    }
    Some((m.submatrix(&V_INDICES, &V_INDICES), m.submatrix(&V_PERP_INDICES, &V_PERP_INDICES)))
}

pub fn v_blocks_float(m: &FloatMatrix, tol: &Tolerances) -> Option<(FloatMatrix, FloatMatrix)> {
    assert_eq!(m.dim(), 5, "V-blocks are a 5x5 notion");
    for &i in &V_INDICES {
        for &j in &V_PERP_INDICES {
            if m[(i, j)].norm() > tol.leakage || m[(j, i)].norm() > tol.leakage {
                return None;
            }
        }
    }
    Some((m.submatrix(&V_INDICES, &V_INDICES), m.submatrix(&V_PERP_INDICES, &V_PERP_INDICES)))
}

/// Full classification of a 5x5 gate in the exact backend.
pub fn classify_exact(m: &ExactMatrix) -> GateReport {
    let leakage_free = is_leakage_free_exact(m);
    let entangling = if leakage_free {
        let block = m.submatrix(&[1, 2, 3, 4], &[1, 2, 3, 4]);
        Some(is_entangling_exact(&block).expect("leakage-free restriction is unitary"))
    } else {
        None
    };
    let fixed_states = (0..5).filter(|&i| fixes_state_up_to_phase_exact(m, i)).collect();
    let blocks = v_blocks_exact(m);
    GateReport {
        leakage_free,
        entangling,
        fixed_states,
        preserves_v: blocks.is_some(),
        v_block: blocks.as_ref().map(|(v, _)| to_rows(&v.to_float())),
        v_perp_block: blocks.as_ref().map(|(_, w)| to_rows(&w.to_float())),
    }
}

/// Full classification in the float backend.
pub fn classify_float(m: &FloatMatrix, tol: &Tolerances) -> GateReport {
    let leakage_free = is_leakage_free_float(m, tol);
    let entangling = if leakage_free {
        let block = m.submatrix(&[1, 2, 3, 4], &[1, 2, 3, 4]);
        is_entangling_float(&block, tol).ok()
    } else {
        None
    };
    let fixed_states =
        (0..5).filter(|&i| fixes_state_up_to_phase_float(m, i, tol)).collect();
    let blocks = v_blocks_float(m, tol);
    GateReport {
        leakage_free,
        entangling,
        fixed_states,
        preserves_v: blocks.is_some(),
        v_block: blocks.as_ref().map(|(v, _)| to_rows(v)),
        v_perp_block: blocks.as_ref().map(|(_, w)| to_rows(w)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BraidWord;
    use crate::matrix::ExactMatrix;
    use crate::rep::{B3Rep, B6Rep, FibData};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn b6(s: &str) -> BraidWord {
        BraidWord::parse(6, s).unwrap()
    }

    fn fe(v: i64) -> FieldElement {
        FieldElement::from_integers([v, 0, 0, 0], [0, 0, 0, 0])
    }

    fn cz() -> ExactMatrix {
        let mut m = ExactMatrix::identity(4);
        m[(3, 3)] = fe(-1);
        m
    }

    #[test]
    fn leakage_on_generators_and_named_words() {
        let six = B6Rep::standard();
        let tol = Tolerances::default();
        let g1 = six.evaluate_exact(&b6("1")).unwrap();
        let g3 = six.evaluate_exact(&b6("3")).unwrap();
        let delta = six.evaluate_exact(&crate::braid::NamedBraid::Delta.word()).unwrap();
        assert!(is_leakage_free_exact(&g1));
        assert!(!is_leakage_free_exact(&g3));
        assert!(is_leakage_free_exact(&delta));
        assert!(is_leakage_free_float(&g1.to_float(), &tol));
        assert!(!is_leakage_free_float(&g3.to_float(), &tol));
        assert!(is_leakage_free_float(&delta.to_float(), &tol));
    }

    #[test]
    fn restriction_blocks_match_known_forms() {
        let six = B6Rep::standard();
        let d = FibData::standard();
        let i2 = ExactMatrix::identity(2);
        let r = d.r_matrix();
        let g1 = restrict_to_vc_exact(&six.evaluate_exact(&b6("1")).unwrap()).unwrap();
        assert_eq!(g1, r.kron(&i2));
        let delta =
            restrict_to_vc_exact(&six.evaluate_exact(&crate::braid::NamedBraid::Delta.word()).unwrap())
                .unwrap();
        let phase = d.r_one.mul(&d.r_one).mul(&d.r_one);
        assert_eq!(delta, swap_4().scale(&phase));
        let sigma =
            restrict_to_vc_exact(&six.evaluate_exact(&crate::braid::NamedBraid::Sigma.word()).unwrap())
                .unwrap();
        assert_eq!(sigma, i2.kron(&r.mul(&r)));
        // Restriction of a leaking gate is refused.
        assert_eq!(
            restrict_to_vc_exact(&six.evaluate_exact(&b6("3")).unwrap()),
            Err(GateError::NotLeakageFree)
        );
    }

    #[test]
    fn realignment_of_tensor_products_is_rank_one() {
        let three = B3Rep::standard();
        let a = three.generator_exact(1);
        let b = three.generator_exact(2);
        assert!(rank_one_exact(&realign_exact(&a.kron(b))));
        assert!(!rank_one_exact(&realign_exact(&cz())));
        // Float counterpart: singular values (2,0,0,0) vs (sqrt2, sqrt2, 0, 0).
        let sv = realignment_singular_values(&a.kron(b).to_float());
        assert!((sv[0] - 2.0).abs() < 1e-12 && sv[1] < 1e-12, "{sv:?}");
        let sv = realignment_singular_values(&cz().to_float());
        assert!((sv[0] - 2f64.sqrt()).abs() < 1e-12, "{sv:?}");
        assert!((sv[1] - 2f64.sqrt()).abs() < 1e-12, "{sv:?}");
    }

    #[test]
    fn entangling_test_on_known_gates() {
        let tol = Tolerances::default();
        let three = B3Rep::standard();
        let a = three.generator_exact(1);
        let b = three.generator_exact(2);
        let tensor = a.kron(b);
        let swap = swap_4();
        let swapped_tensor = swap.mul(&tensor);
        assert_eq!(is_entangling_exact(&tensor), Ok(false));
        assert_eq!(is_entangling_exact(&swap), Ok(false));
        assert_eq!(is_entangling_exact(&swapped_tensor), Ok(false));
        assert_eq!(is_entangling_exact(&cz()), Ok(true));
        assert_eq!(is_entangling_float(&tensor.to_float(), &tol), Ok(false));
        assert_eq!(is_entangling_float(&swap.to_float(), &tol), Ok(false));
        assert_eq!(is_entangling_float(&swapped_tensor.to_float(), &tol), Ok(false));
        assert_eq!(is_entangling_float(&cz().to_float(), &tol), Ok(true));
        // Non-unitary input is rejected.
        let mut bad = cz();
        bad[(0, 0)] = fe(2);
        assert!(matches!(is_entangling_exact(&bad), Err(GateError::NotUnitary { .. })));
        assert!(matches!(
            is_entangling_float(&bad.to_float(), &tol),
            Err(GateError::NotUnitary { .. })
        ));
    }

    #[test]
    fn non_entangling_gates_form_a_group() {
        // Random products of tensor gates and SWAP stay non-entangling.
        let three = B3Rep::standard();
        let swap = swap_4();
        let mut rng = StdRng::seed_from_u64(0x9a7e);
        let mut rand_2x2 = |rng: &mut StdRng| {
            let letters: Vec<i32> =
                (0..rng.gen_range(1..=6)).map(|_| *[1, -1, 2, -2].get(rng.gen_range(0..4)).unwrap()).collect();
            three.evaluate_exact(&BraidWord::from_letters(3, letters).unwrap()).unwrap()
        };
        for _ in 0..50 {
            let mut acc = ExactMatrix::identity(4);
            for _ in 0..rng.gen_range(1..5) {
                if rng.gen_bool(0.3) {
                    acc = acc.mul(&swap);
                } else {
                    let a = rand_2x2(&mut rng);
                    let b = rand_2x2(&mut rng);
                    acc = acc.mul(&a.kron(&b));
                }
            }
            assert_eq!(is_entangling_exact(&acc), Ok(false));
        }
    }

    #[test]
    fn diagonal_criterion() {
        let one = FieldElement::one();
        assert!(!is_entangling_diagonal_exact(&[one.clone(), one.clone(), one.clone(), one.clone()]));
        assert!(is_entangling_diagonal_exact(&[one.clone(), one.clone(), one.clone(), one.neg()]));
        // Diagonal of rho6(Sigma)'s computational block: I (x) R^2.
        let six = B6Rep::standard();
        let sigma =
            restrict_to_vc_exact(&six.evaluate_exact(&crate::braid::NamedBraid::Sigma.word()).unwrap())
                .unwrap();
        let phases: [FieldElement; 4] = std::array::from_fn(|i| sigma[(i, i)].clone());
        assert!(!is_entangling_diagonal_exact(&phases));
        assert_eq!(is_entangling_exact(&sigma), Ok(false));
        // Float gap agrees.
        let fphases: [Complex64; 4] = std::array::from_fn(|i| phases[i].to_complex());
        assert!(diagonal_entangling_gap(&fphases) < 1e-14);
        assert!(!is_entangling_diagonal_float(&fphases, 1e-8));
        let mut cz_phases = [Complex64::new(1.0, 0.0); 4];
        cz_phases[3] = Complex64::new(-1.0, 0.0);
        assert!((diagonal_entangling_gap(&cz_phases) - 2.0).abs() < 1e-15);
        assert!(is_entangling_diagonal_float(&cz_phases, 1e-8));
    }

    #[test]
    fn diagonal_criterion_matches_general_test() {
        // For diagonal 4x4 unitaries the two entangling notions coincide.
        let mut rng = StdRng::seed_from_u64(0x41a9);
        for _ in 0..60 {
            let phases: [FieldElement; 4] =
                std::array::from_fn(|_| FieldElement::zeta_pow(rng.gen_range(0..10)));
            let mut m = ExactMatrix::zero(4);
            for i in 0..4 {
                m[(i, i)] = phases[i].clone();
            }
            assert_eq!(
                is_entangling_exact(&m),
                Ok(is_entangling_diagonal_exact(&phases)),
                "phases {phases:?}"
            );
        }
    }

    #[test]
    fn fixed_states() {
        let six = B6Rep::standard();
        let tol = Tolerances::default();
        let delta = six.evaluate_exact(&crate::braid::NamedBraid::Delta.word()).unwrap();
        assert!(fixes_state_up_to_phase_exact(&delta, 0));
        assert!(!fixes_state_up_to_phase_exact(&delta, 2)); // swapped with 3
        assert!(fixes_state_up_to_phase_exact(&delta, 1));
        let m23 = six.evaluate_exact(&b6("2 3 2 3 2 3")).unwrap();
        assert!(fixes_state_up_to_phase_exact(&m23, 1));
        assert!(!fixes_state_up_to_phase_exact(&m23, 0));
        assert!(fixes_state_up_to_phase_float(&m23.to_float(), 1, &tol));
        assert!(!fixes_state_up_to_phase_float(&m23.to_float(), 0, &tol));
    }

    #[test]
    fn v_block_decompositions() {
        let six = B6Rep::standard();
        let d = FibData::standard();
        let three = B3Rep::standard();
        let tol = Tolerances::default();
        let rt2 = d.r_tau.mul(&d.r_tau);
        let cases: [(&str, ExactMatrix, [FieldElement; 3]); 3] = [
            (
                "2 1 1 2",
                three.evaluate_exact(&BraidWord::parse(3, "1 1").unwrap()).unwrap(),
                [fe(1), fe(1), rt2.clone()],
            ),
            (
                "3",
                three.generator_exact(2).clone(),
                [d.r_one.clone(), d.r_tau.clone(), d.r_tau.clone()],
            ),
            (
                "4 5 5 4",
                three.evaluate_exact(&BraidWord::parse(3, "1 1").unwrap()).unwrap(),
                [fe(1), rt2.clone(), fe(1)],
            ),
        ];
        for (word, v_expect, perp_diag) in cases {
            let m = six.evaluate_exact(&b6(word)).unwrap();
            let (v, perp) = v_blocks_exact(&m).unwrap_or_else(|| panic!("{word} preserves V"));
            assert_eq!(v, v_expect, "{word} V block");
            let mut perp_expect = ExactMatrix::zero(3);
            for (i, p) in perp_diag.into_iter().enumerate() {
                perp_expect[(i, i)] = p;
            }
            assert_eq!(perp, perp_expect, "{word} V-perp block");
            assert!(v_blocks_float(&m.to_float(), &tol).is_some());
        }
        // sigma_2 does not preserve V.
        let g2 = six.evaluate_exact(&b6("2")).unwrap();
        assert!(v_blocks_exact(&g2).is_none());
        assert!(v_blocks_float(&g2.to_float(), &tol).is_none());
    }

    #[test]
    fn classify_reports() {
        let six = B6Rep::standard();
        let tol = Tolerances::default();
        // sigma_1: leakage-free, non-entangling, preserves V (diagonal).
        let r1 = classify_exact(&six.evaluate_exact(&b6("1")).unwrap());
        assert!(r1.leakage_free);
        assert_eq!(r1.entangling, Some(false));
        assert!(r1.preserves_v);
        assert!(r1.v_block.is_some());
        // sigma_3: leaking, entangling undefined, still V-preserving.
        let r3 = classify_exact(&six.evaluate_exact(&b6("3")).unwrap());
        assert!(!r3.leakage_free);
        assert_eq!(r3.entangling, None);
        assert!(r3.preserves_v);
        // JSON shape: entangling omitted when undefined.
        let json = serde_json::to_string(&r3).unwrap();
        assert!(!json.contains("entangling"), "{json}");
        assert!(json.contains("\"leakage_free\":false"));
        let back: GateReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r3);
        // Exact and float classifications agree on a handful of words.
        for w in ["1", "3", "2 1 1 2", "1 -4", "5 5 5"] {
            let m = six.evaluate_exact(&b6(w)).unwrap();
            let fe_report = classify_exact(&m);
            let fl_report = classify_float(&m.to_float(), &tol);
            assert_eq!(fe_report.leakage_free, fl_report.leakage_free, "{w}");
            assert_eq!(fe_report.entangling, fl_report.entangling, "{w}");
            assert_eq!(fe_report.fixed_states, fl_report.fixed_states, "{w}");
            assert_eq!(fe_report.preserves_v, fl_report.preserves_v, "{w}");
        }
    }

    #[test]
    fn jacobi_recovers_known_singular_values() {
        // Conjugate a known diagonal by a unitary from the representation;
        // singular values are the absolute diagonal entries. Words over
        // sigma_{1,2,4,5} never touch |NC>, so the restriction is a genuine
        // 4x4 unitary.
        let six = B6Rep::standard();
        let q = restrict_to_vc_exact(&six.evaluate_exact(&b6("1 2 1 5 -4")).unwrap())
            .unwrap()
            .to_float();
        let diag = [3.5, 1.0, 0.25, -2.0];
        let mut d = FloatMatrix::zero(4);
        for (i, v) in diag.iter().enumerate() {
            d[(i, i)] = Complex64::new(*v, 0.0);
        }
        let got = singular_values(&q.mul(&d).mul(&q.dagger()));
        let want = [3.5, 2.0, 1.0, 0.25];
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-12, "{got:?}");
        }
        // Defective-rank input: one singular value collapses to ~0.
        d[(3, 3)] = Complex64::new(0.0, 0.0);
        let got = singular_values(&q.mul(&d).mul(&q.dagger()));
        assert!(got[3] < 1e-13, "{got:?}");
    }
}
