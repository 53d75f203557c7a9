//! The diagonal-driving iteration `U_{k+1} = U D U^-1 D U D^-2` and its
//! braid-word counterpart, plus the density witnesses for the two-generator
//! subgroup used to justify it.
//!
//! The iteration runs on the float backend: word length grows like 3^k, so
//! exact coordinates are out of reach, and every acceptance statement about
//! the limit is tolerance-based anyway. What stays exact: the input words,
//! their evaluation (used to seed the float blocks and to check the
//! hypotheses), and the frozen `V-perp` block, which the iteration never
//! touches.

use num_complex::Complex64;
use thiserror::Error;

use crate::braid::{BraidError, BraidWord};
use crate::gate::{
    is_entangling_diagonal_float, is_leakage_free_float, v_blocks_exact, v_blocks_float,
    GateReport, Tolerances,
};
use crate::matrix::{ExactMatrix, FloatMatrix};
use crate::rep::{B3Rep, B6Rep, V_INDICES, V_PERP_INDICES};

/// Materialization budget for compiled words, in letters. Beyond this the
/// word is kept as a program (initial word, diagonal word, step count); the
/// braid is still well-defined, just not worth expanding.
pub const WORD_CAP: u128 = 10_000_000;

#[derive(Debug, Error)]
pub enum IterError {
    #[error("iteration hypotheses violated: {reason}")]
    Hypotheses { reason: String },
    #[error(
        "no convergence: b = {final_b:.3e} >= tol after {steps} steps (trace attached)"
    )]
    NonConvergence { steps: usize, final_b: f64, trace: Vec<IterationState> },
    #[error("compiled word has ~{letters} letters, beyond the {cap}-letter materialization cap")]
    WordTooLarge { letters: u128, cap: u128 },
}

/// `gamma * diag(e^{-i theta/2}, e^{i theta/2})`. The phase `gamma` is
/// carried for completeness but cancels out of the iteration.
#[derive(Clone, Copy, Debug)]
pub struct DiagonalGate {
    pub theta: f64,
    pub gamma: Complex64,
}

impl DiagonalGate {
    pub fn matrix(&self) -> FloatMatrix {
        let mut m = FloatMatrix::zero(2);
        let half = Complex64::from_polar(1.0, self.theta / 2.0);
        m[(0, 0)] = self.gamma / half;
        m[(1, 1)] = self.gamma * half;
        m
    }

    /// Recover `theta` (principal value) and `gamma` from a diagonal 2x2
    /// unitary. Errors when the matrix is not diagonal to within 1e-12.
    pub fn from_matrix(m: &FloatMatrix) -> Result<Self, IterError> {
        assert_eq!(m.dim(), 2, "diagonal gates are 2x2");
        let off = m[(0, 1)].norm().max(m[(1, 0)].norm());
        if off > 1e-12 {
            return Err(IterError::Hypotheses {
                reason: format!("matrix is not diagonal (off-diagonal {off:.3e})"),
            });
        }
        let theta = (m[(1, 1)] / m[(0, 0)]).arg();
        let gamma = m[(0, 0)] * Complex64::from_polar(1.0, theta / 2.0);
        Ok(Self { theta, gamma })
    }
}

/// One step of the convergence trace. `u` is the full 5x5 gate (the frozen
/// `V-perp` diagonal plus the current `V` block); `word_length` is the exact
/// reduced length while the word is being materialized and the recurrence
/// bound `3*len(w) + 4*len(d)` after that.
#[derive(Clone, Debug)]
pub struct IterationState {
    pub k: usize,
    pub u: FloatMatrix,
    pub v_block: FloatMatrix,
    pub b: f64,
    pub a: Complex64,
    pub epsilon: f64,
    pub word_length: u128,
}

/// The braid word of an iterated gate: materialized while it fits
/// [`WORD_CAP`], otherwise the generating program.
#[derive(Clone, Debug)]
pub enum CompiledWord {
    Literal(BraidWord),
    Program { u0: BraidWord, d: BraidWord, steps: usize, length_bound: u128 },
}

impl CompiledWord {
    /// Reduced length for `Literal`, the recurrence bound for `Program`.
    pub fn word_length(&self) -> u128 {
        match self {
            Self::Literal(w) => w.len() as u128,
            Self::Program { length_bound, .. } => *length_bound,
        }
    }

    /// Expand to a plain braid word; refuses beyond the letter cap.
    pub fn materialize(&self) -> Result<BraidWord, IterError> {
        match self {
            Self::Literal(w) => Ok(w.clone()),
            Self::Program { u0, d, steps, length_bound } => {
                if *length_bound > WORD_CAP {
                    return Err(IterError::WordTooLarge {
                        letters: *length_bound,
                        cap: WORD_CAP,
                    });
                }
                let mut w = u0.clone();
                for _ in 0..*steps {
                    w = word_step(&w, d).expect("strand counts agree");
                }
                Ok(w)
            }
        }
    }
}

/// Everything `compile_entangler` produces: the braid word, the limiting
/// gate, its classification, and the full convergence trace.
#[derive(Debug)]
pub struct CompiledEntangler {
    pub word: CompiledWord,
    pub gate: FloatMatrix,
    pub report: GateReport,
    pub trace: Vec<IterationState>,
}

/// Contraction factor of the iteration:
/// `max{|1 - 2cos(theta)|, |(2 - 2cos(theta))(1 - delta^2) - 1|}`.
/// Under the hypotheses `0 < |theta| < pi/2`, `delta < 1` both branches are
/// strictly below 1. (The second branch needs the absolute value: it is
/// negative for small `delta`, and the per-step shrink factor it predicts --
/// e.g. `delta^2` at `theta = pi/3`, matching the cubing remark -- is its
/// magnitude.)
pub fn contraction_bound(theta: f64, delta: f64) -> Result<f64, IterError> {
    let fail = |reason: String| Err(IterError::Hypotheses { reason });
    if !theta.is_finite() || !delta.is_finite() {
        return fail("theta and delta must be finite".into());
    }
    if theta == 0.0 {
        return fail("theta = 0 gives no contraction".into());
    }
    if theta.abs() >= std::f64::consts::FRAC_PI_2 {
        return fail(format!("|theta| = {} is not below pi/2", theta.abs()));
    }
    if !(0.0..1.0).contains(&delta) {
        return fail(format!("delta = {delta} is not in [0, 1)"));
    }
    let c = theta.cos();
    let first = (1.0 - 2.0 * c).abs();
    let second = ((2.0 - 2.0 * c) * (1.0 - delta * delta) - 1.0).abs();
    Ok(first.max(second))
}

/// Matrix form of one step: `U D U^-1 D U D^-2` (inverses as daggers; both
/// inputs must be unitary and of equal dimension).
pub fn iterate_step(u: &FloatMatrix, d: &FloatMatrix) -> FloatMatrix {
    let d_inv = d.dagger();
    u.mul(d).mul(&u.dagger()).mul(d).mul(u).mul(&d_inv).mul(&d_inv)
}

/// Word form of one step: `w d w^-1 d w d^-1 d^-1`, freely reduced.
pub fn word_step(w: &BraidWord, d: &BraidWord) -> Result<BraidWord, BraidError> {
    let d_inv = d.inverse();
    w.compose(d)?
        .compose(&w.inverse())?
        .compose(d)?
        .compose(w)?
        .compose(&d_inv)?
        .compose(&d_inv)
}

/// The canonical instance: `d = (sigma_2 sigma_1 sigma_1 sigma_2)^3`
/// (whose `V` block is diagonal with phase ratio `e^{2 pi i/5}`) and
/// `u0 = sigma_3`.
pub fn default_entangler_words() -> (BraidWord, BraidWord) {
    let d = BraidWord::parse(6, "2 1 1 2").expect("valid word").pow(3);
    let u0 = BraidWord::parse(6, "3").expect("valid word");
    (d, u0)
}

fn is_diagonal_exact(m: &ExactMatrix) -> bool {
    let n = m.dim();
    (0..n).all(|i| (0..n).all(|j| i == j || m[(i, j)].is_zero()))
}

/// Column-wise Gram-Schmidt on a 2x2 block, restoring unitarity that the
/// float products slowly erode (drift ~1e-4 after 24 raw steps; ~1e-16 with
/// this applied each step).
fn reunitarize_2x2(m: &mut FloatMatrix) {
    let n0 = (m[(0, 0)].norm_sqr() + m[(1, 0)].norm_sqr()).sqrt();
    m[(0, 0)] /= n0;
    m[(1, 0)] /= n0;
    let overlap = m[(0, 0)].conj() * m[(0, 1)] + m[(1, 0)].conj() * m[(1, 1)];
    let (c0, c1) = (m[(0, 0)], m[(1, 0)]);
    m[(0, 1)] -= overlap * c0;
    m[(1, 1)] -= overlap * c1;
    let n1 = (m[(0, 1)].norm_sqr() + m[(1, 1)].norm_sqr()).sqrt();
    m[(0, 1)] /= n1;
    m[(1, 1)] /= n1;
}

/// Assemble the full 5x5 gate from the current `V` block and the frozen
/// `V-perp` diagonal.
fn assemble(v_block: &FloatMatrix, v_perp: &FloatMatrix) -> FloatMatrix {
    let mut u = FloatMatrix::zero(5);
    u.set_submatrix(&V_INDICES, &V_INDICES, v_block);
    u.set_submatrix(&V_PERP_INDICES, &V_PERP_INDICES, v_perp);
    u
}

/// Run the iteration on `u0` with diagonal driver `d` until the `V`-block
/// off-diagonal drops below `tol`, and classify the limit.
///
/// Hypotheses checked exactly up front: both words preserve `V`, both have
/// diagonal `V-perp` blocks (which is what freezes `V-perp`: everything on
/// that subspace commutes), `d` is diagonal on `V`, and the contraction
/// bound's own preconditions hold.
pub fn compile_entangler(
    d_word: &BraidWord,
    u0_word: &BraidWord,
    tol: f64,
    max_iter: usize,
) -> Result<CompiledEntangler, IterError> {
    let six = B6Rep::standard();
    let fail = |reason: String| IterError::Hypotheses { reason };
    let eval = |w: &BraidWord| {
        six.evaluate_exact(w).map_err(|e| fail(format!("evaluating word: {e}")))
    };
    let d_exact = eval(d_word)?;
    let u0_exact = eval(u0_word)?;
    let (d_v, d_perp) =
        v_blocks_exact(&d_exact).ok_or_else(|| fail("d does not preserve V".into()))?;
    let (u0_v, u0_perp) =
        v_blocks_exact(&u0_exact).ok_or_else(|| fail("u0 does not preserve V".into()))?;
    if !is_diagonal_exact(&d_perp) || !is_diagonal_exact(&u0_perp) {
        return Err(fail("a V-perp block is not diagonal; it would not stay frozen".into()));
    }
    if !is_diagonal_exact(&d_v) {
        return Err(fail("d is not diagonal on V".into()));
    }
    let diag = DiagonalGate::from_matrix(&d_v.to_float())?;
    let d_float = diag.matrix();
    let mut a_block = u0_v.to_float();
    let delta = a_block[(0, 1)].norm();
    let epsilon = contraction_bound(diag.theta, delta)?;
    let v_perp = u0_perp.to_float();

    let d_len = d_word.len() as u128;
    let mut word = Some(u0_word.clone());
    let mut length_bound = u0_word.len() as u128;
    let mut trace = Vec::new();
    let record = |trace: &mut Vec<IterationState>, k: usize, a_block: &FloatMatrix, len: u128| {
        trace.push(IterationState {
            k,
            u: assemble(a_block, &v_perp),
            v_block: a_block.clone(),
            b: a_block[(0, 1)].norm(),
            a: a_block[(0, 0)],
            epsilon,
            word_length: len,
        });
    };
    record(&mut trace, 0, &a_block, length_bound);

    let mut steps = 0;
    while trace.last().expect("trace is seeded").b >= tol {
        if steps == max_iter {
            let final_b = trace.last().expect("trace is seeded").b;
            return Err(IterError::NonConvergence { steps, final_b, trace });
        }
        steps += 1;
        a_block = iterate_step(&a_block, &d_float);
        reunitarize_2x2(&mut a_block);
        length_bound = 3 * length_bound + 4 * d_len;
        word = match word {
            Some(w) if 3 * (w.len() as u128) + 4 * d_len <= WORD_CAP => {
                Some(word_step(&w, d_word).expect("strand counts agree"))
            }
            _ => None,
        };
        let len = word.as_ref().map_or(length_bound, |w| w.len() as u128);
        record(&mut trace, steps, &a_block, len);
    }

    let gate = assemble(&a_block, &v_perp);
    let screen = Tolerances { leakage: tol, ..Tolerances::default() };
    let leakage_free = is_leakage_free_float(&gate, &screen);
    let phases: [Complex64; 4] = std::array::from_fn(|i| gate[(i + 1, i + 1)]);
    let entangling =
        leakage_free.then(|| is_entangling_diagonal_float(&phases, screen.entangling));
    let blocks = v_blocks_float(&gate, &screen);
    let to_rows = |m: &FloatMatrix| -> Vec<Vec<[f64; 2]>> {
        (0..m.dim())
            .map(|i| (0..m.dim()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
            .collect()
    };
    let report = GateReport {
        leakage_free,
        entangling,
        fixed_states: (0..5)
            .filter(|&i| gate[(i, i)].norm() >= 1.0 - screen.leakage)
            .collect(),
        preserves_v: blocks.is_some(),
        v_block: blocks.as_ref().map(|(v, _)| to_rows(v)),
        v_perp_block: blocks.as_ref().map(|(_, w)| to_rows(w)),
    };
    let word = match word {
        Some(w) => CompiledWord::Literal(w),
        None => CompiledWord::Program {
            u0: u0_word.clone(),
            d: d_word.clone(),
            steps,
            length_bound,
        },
    };
    Ok(CompiledEntangler { word, gate, report, trace })
}

/// Density witnesses for `<rho3(sigma_1^2), rho3(sigma_2^2)>`: the two
/// elements `U1 = rho3(s1^2 s2^4)`, `U2 = rho3(s1^2 s2^6)` have
/// determinant-normalized eigenvalue real parts `(-2+sqrt5)/2` and
/// `(-3+sqrt5)/2`, and they do not commute.
#[derive(Clone, Debug)]
pub struct DensityReport {
    /// Branch-resolved real parts for the two witnesses.
    pub real_parts: [f64; 2],
    pub targets: [f64; 2],
    pub max_deviation: f64,
    /// Distance of the group commutator from phase times identity.
    pub commutator_distance: f64,
    pub passed: bool,
}

pub fn check_density_witnesses() -> DensityReport {
    let three = B3Rep::standard();
    let eval = |s: &str| {
        three
            .evaluate_exact(&BraidWord::parse(3, s).expect("valid word"))
            .expect("three-strand word")
            .to_float()
    };
    let u1 = eval("1 1 2 2 2 2");
    let u2 = eval("1 1 2 2 2 2 2 2");
    let targets = [(-2.0 + 5f64.sqrt()) / 2.0, (-3.0 + 5f64.sqrt()) / 2.0];
    // det-normalization is two-valued (the sign of sqrt(det)); for a 2x2
    // unitary both normalized eigenvalues share one real part, tr/(2 sqrt(det)),
    // so resolve the branch by proximity to the target.
    let real_part = |m: &FloatMatrix, target: f64| -> f64 {
        let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
        let re = (m.trace() / (2.0 * det.sqrt())).re;
        if (re - target).abs() <= (-re - target).abs() {
            re
        } else {
            -re
        }
    };
    let real_parts = [real_part(&u1, targets[0]), real_part(&u2, targets[1])];
    let max_deviation = (real_parts[0] - targets[0])
        .abs()
        .max((real_parts[1] - targets[1]).abs());
    let comm = u1.mul(&u2).mul(&u1.dagger()).mul(&u2.dagger());
    // For a 2x2 unitary C, min over unit phases c of ||C - c I||_F is
    // sqrt(4 - 2|tr C|) in closed form.
    let commutator_distance = (4.0 - 2.0 * comm.trace().norm()).max(0.0).sqrt();
    DensityReport {
        real_parts,
        targets,
        max_deviation,
        commutator_distance,
        passed: max_deviation < 1e-12 && commutator_distance > 1e-6,
    }
}
