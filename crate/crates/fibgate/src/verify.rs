//! The exact identity suite: every algebraic fact the rest of the crate
//! leans on, checked by exact equality against a given [`FibData`].
//!
//! Taking the data as a parameter (rather than always using
//! [`FibData::standard`]) keeps the suite honest: corrupt one entry of `F`
//! and the dependent identities fail by name, which is how the CLI `verify`
//! command and the injection tests use it.

use crate::braid::{BraidWord, NamedBraid};
use crate::field::FieldElement;
use crate::gate::fixes_state_up_to_phase_exact;
use crate::matrix::ExactMatrix;
use crate::rep::{swap_4, B3Rep, B6Rep, FibData, ThreeStrandBasis};

/// One named exact identity and whether it held.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub passed: bool,
}

pub fn suite_passes(checks: &[IdentityCheck]) -> bool {
    checks.iter().all(|c| c.passed)
}

/// Fixed basis states (up to phase) of `rho6((sigma_2 sigma_3)^3)`.
pub fn sigma23_cubed_fixed_states(data: &FibData) -> Vec<usize> {
    let six = B6Rep::new(data);
    let m = six
        .evaluate_exact(&BraidWord::parse(6, "2 3 2 3 2 3").expect("valid word"))
        .expect("six-strand word");
    (0..5).filter(|&i| fixes_state_up_to_phase_exact(&m, i)).collect()
}

/// Run the whole exact identity suite. Every check is exact equality in the
/// field; there are no tolerances anywhere in this module.
pub fn identity_suite(data: &FibData) -> Vec<IdentityCheck> {
    let mut checks = Vec::new();
    let mut push = |name: &'static str, passed: bool| checks.push(IdentityCheck { name, passed });

    let f = &data.f;
    let r = data.r_matrix();
    let frf = data.frf();
    let i1 = ExactMatrix::identity(1);
    let i2 = ExactMatrix::identity(2);
    let r1 = &data.r_one;
    let rt = &data.r_tau;

    push("F^2 = I", f.mul(f).is_identity());
    push("F = F^dagger", *f == f.dagger());
    push("(RF)^3 = R1 * I", r.mul(f).mul(&r.mul(f)).mul(&r.mul(f)) == i2.scale(r1));
    push("Rtau^2 = R1", rt.mul(rt) == *r1);
    push("FRF unitary", frf.is_unitary());

    let three = B3Rep::new(data, ThreeStrandBasis::Left);
    let b3 = |s: &str| {
        three.evaluate_exact(&BraidWord::parse(3, s).expect("valid word")).expect("three-strand")
    };
    push(
        "B3 images unitary",
        [1, -1, 2, -2].iter().all(|&l| three.generator_exact(l).is_unitary()),
    );
    push("B3 relation 1 2 1 = 2 1 2", b3("1 2 1") == b3("2 1 2"));

    let six = B6Rep::new(data);
    let b6 = |s: &str| {
        six.evaluate_exact(&BraidWord::parse(6, s).expect("valid word")).expect("six-strand")
    };
    push(
        "B6 images unitary",
        (1..=5).all(|k| six.generator_exact(k).is_unitary()),
    );
    push(
        "B6 adjacent relations i i+1 i = i+1 i i+1",
        (1..=4).all(|i| {
            let lhs = format!("{} {} {}", i, i + 1, i);
            let rhs = format!("{} {} {}", i + 1, i, i + 1);
            b6(&lhs) == b6(&rhs)
        }),
    );
    push(
        "B6 far commutations i j = j i (|i-j| >= 2)",
        [(1, 3), (1, 4), (1, 5), (2, 4), (2, 5), (3, 5)].iter().all(|&(i, j)| {
            b6(&format!("{i} {j}")) == b6(&format!("{j} {i}"))
        }),
    );

    let rho = |w: &NamedBraid| six.evaluate_exact(&w.word()).expect("named word");
    let r1_cubed = r1.mul(r1).mul(r1);
    push(
        "Delta lemma: rho6(Delta) = R1^3 (I1 + SWAP)",
        rho(&NamedBraid::Delta) == i1.direct_sum(&swap_4()).scale(&r1_cubed),
    );
    push(
        "Sigma lemma: rho6(Sigma) = I1 + (I (x) R^2)",
        rho(&NamedBraid::Sigma) == i1.direct_sum(&i2.kron(&r.mul(&r))),
    );
    push(
        "half-twist triple: rho6(HalfTwistTriple) = I1 + R1 (F (x) F) SWAP",
        rho(&NamedBraid::HalfTwistTriple)
            == i1.direct_sum(&f.kron(f).mul(&swap_4()).scale(r1)),
    );

    let rt_cubed = rt.mul(rt).mul(rt);
    push(
        "rho6(1 2 1) = Rtau^3 + (R1 F (x) I)",
        b6("1 2 1") == scalar(&rt_cubed).direct_sum(&f.scale(r1).kron(&i2)),
    );
    push(
        "rho6(5 4 5) = Rtau^3 + (I (x) R1 F)",
        b6("5 4 5") == scalar(&rt_cubed).direct_sum(&i2.kron(&f.scale(r1))),
    );

    let one = FieldElement::one();
    let rt2 = rt.mul(rt);
    push(
        "V-block: rho6(2 1 1 2) = rho3(1 1) + diag(1, 1, Rtau^2)",
        v_split(&b6("2 1 1 2"))
            == Some((b3("1 1"), diag3([one.clone(), one.clone(), rt2.clone()]))),
    );
    push(
        "V-block: rho6(4 5 5 4) = rho3(1 1) + diag(1, Rtau^2, 1)",
        v_split(&b6("4 5 5 4"))
            == Some((b3("1 1"), diag3([one.clone(), rt2.clone(), one.clone()]))),
    );
    push(
        "V-block: rho6(3) = rho3(2) + diag(R1, Rtau, Rtau)",
        v_split(&b6("3")) == Some((b3("2"), diag3([r1.clone(), rt.clone(), rt.clone()]))),
    );

    let fixed = sigma23_cubed_fixed_states(data);
    push("(sigma2 sigma3)^3 fixes |11> up to phase", fixed.contains(&1));
    push("(sigma2 sigma3)^3 moves |NC>", !fixed.contains(&0));

    checks
}

fn scalar(x: &FieldElement) -> ExactMatrix {
    let mut m = ExactMatrix::zero(1);
    m[(0, 0)] = x.clone();
    m
}

fn diag3(entries: [FieldElement; 3]) -> ExactMatrix {
    let mut m = ExactMatrix::zero(3);
    for (i, e) in entries.into_iter().enumerate() {
        m[(i, i)] = e;
    }
    m
}

fn v_split(m: &ExactMatrix) -> Option<(ExactMatrix, ExactMatrix)> {
    crate::gate::v_blocks_exact(m)
}
