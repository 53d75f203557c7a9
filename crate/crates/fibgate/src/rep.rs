//! Fibonacci category data and the braid group representations for one and
//! two qubits.
//!
//! Three anyons of charge tau with total charge tau span a qubit; `B_3` acts
//! on it through [`B3Rep`]. Six anyons with trivial total charge span a
//! 5-dimensional space: grouping them into two triples gives a two-qubit
//! computational subspace plus one non-computational state. `B_6` acts
//! through [`B6Rep`] in the basis
//!
//! ```text
//! index 0: |NC>   both triples carry charge 1 (non-computational)
//! index 1: |11>   qubit basis: internal label of each charge-tau triple
//! index 2: |1t>
//! index 3: |t1>
//! index 4: |tt>   ("t" = tau throughout)
//! ```
//!
//! Every generator image is assembled from the `F` and `R` data in
//! [`FibData`]; inverses are conjugate transposes (exact, by unitarity).
//! Three backends share the same tables: exact [`ExactMatrix`], float
//! [`FloatMatrix`] (converted once from the exact images), and an internal
//! `i128`-coefficient fast path. The fast path exists because the generator
//! entries have *integer* power-basis coordinates and integrality is closed
//! under the field product (`s^2` is again integral), so exact word products
//! need big rationals only after an overflow — which checked arithmetic
//! detects, falling back losslessly.

use thiserror::Error;

use crate::braid::{BraidWord, Letter};
use crate::field::small::IntField;
use crate::field::FieldElement;
use crate::matrix::{ExactMatrix, FloatMatrix};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RepError {
    #[error("word is on {got} strands, this representation needs {expected}")]
    WrongStrands { got: usize, expected: usize },
}

/// Anyon charge labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Label {
    One,
    Tau,
}

/// Fusion rules: `1` is transparent and `tau (x) tau = 1 (+) tau`.
pub fn fuse(a: Label, b: Label) -> &'static [Label] {
    match (a, b) {
        (Label::One, Label::One) => &[Label::One],
        (Label::One, Label::Tau) | (Label::Tau, Label::One) => &[Label::Tau],
        (Label::Tau, Label::Tau) => &[Label::One, Label::Tau],
    }
}

/// Basis labels for the five-dimensional `B_6` module, in matrix order.
pub const BASIS6: [&str; 5] = ["NC", "11", "1t", "t1", "tt"];

/// Indices spanning `V = span{|NC>, |tt>}` ...
pub const V_INDICES: [usize; 2] = [0, 4];
/// ... and its complement.
pub const V_PERP_INDICES: [usize; 3] = [1, 2, 3];

/// The `F` and `R` data of the Fibonacci category, over the exact field.
///
/// Fields are public so tests can inject corrupted data and watch the
/// verification suite catch it; [`FibData::standard`] is the real thing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibData {
    /// Basis change between the two fusion orders of three tau's:
    /// `[[1/phi, s], [s, -1/phi]]`, real symmetric with `F^2 = I`.
    pub f: ExactMatrix,
    /// Braiding phase of two tau's fusing to 1: `e^{-4 pi i/5}`.
    pub r_one: FieldElement,
    /// Braiding phase of two tau's fusing to tau: `e^{3 pi i/5}`.
    pub r_tau: FieldElement,
}

impl FibData {
    pub fn standard() -> Self {
        let s = FieldElement::s();
        let phi_inv = FieldElement::phi_inv();
        let f = ExactMatrix::from_rows(vec![
            vec![phi_inv.clone(), s.clone()],
            vec![s, phi_inv.neg()],
        ]);
        // e^{-4 pi i/5} = -zeta and e^{3 pi i/5} = zeta^3 for zeta = e^{pi i/5}.
        Self { f, r_one: FieldElement::zeta().neg(), r_tau: FieldElement::zeta_pow(3) }
    }

    /// `R = diag(r_one, r_tau)` on the pair-charge basis `{1, tau}`.
    pub fn r_matrix(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zero(2);
        m[(0, 0)] = self.r_one.clone();
        m[(1, 1)] = self.r_tau.clone();
        m
    }

    /// `F R F`: braiding of the *second* pair seen from the first fusion
    /// order.
    pub fn frf(&self) -> ExactMatrix {
        self.f.mul(&self.r_matrix()).mul(&self.f)
    }
}

/// The two-qubit SWAP on the computational basis (exchanges `|1t>` and
/// `|t1>`).
pub fn swap_4() -> ExactMatrix {
    ExactMatrix::from_permutation(&[0, 2, 1, 3])
}

/// SWAP extended by the identity on `|NC>`: `I_1 (+) SWAP` on all five
/// states.
pub fn swap_on_five() -> ExactMatrix {
    ExactMatrix::identity(1).direct_sum(&swap_4())
}

/// Which of the three anyons pairs up first in the one-qubit fusion basis.
/// The two choices swap the roles of the generators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ThreeStrandBasis {
    #[default]
    Left,
    Right,
}

/// Generator image slot for letter `l`: `+1, -1, +2, -2, ...`.
fn slot(l: Letter) -> usize {
    debug_assert!(l != 0);
    ((l.unsigned_abs() - 1) * 2 + u32::from(l < 0)) as usize
}

/// The one-qubit representation of `B_3` (2x2, total charge tau).
pub struct B3Rep {
    exact: [ExactMatrix; 4],
    float: [FloatMatrix; 4],
}

impl B3Rep {
    pub const STRANDS: usize = 3;
    pub const DIM: usize = 2;

    pub fn new(data: &FibData, basis: ThreeStrandBasis) -> Self {
        let (g1, g2) = match basis {
            ThreeStrandBasis::Left => (data.r_matrix(), data.frf()),
            ThreeStrandBasis::Right => (data.frf(), data.r_matrix()),
        };
        let exact = [g1.clone(), g1.dagger(), g2.clone(), g2.dagger()];
        let float = std::array::from_fn(|i| exact[i].to_float());
        Self { exact, float }
    }

    pub fn standard() -> Self {
        Self::new(&FibData::standard(), ThreeStrandBasis::Left)
    }

    /// Image of the single letter `l` (`|l|` in `1..=2`).
    pub fn generator_exact(&self, l: Letter) -> &ExactMatrix {
        assert!((1..=2).contains(&l.unsigned_abs()), "no generator {l} in B_3");
        &self.exact[slot(l)]
    }

    pub fn generator_float(&self, l: Letter) -> &FloatMatrix {
        assert!((1..=2).contains(&l.unsigned_abs()), "no generator {l} in B_3");
        &self.float[slot(l)]
    }

    pub fn evaluate_exact(&self, w: &BraidWord) -> Result<ExactMatrix, RepError> {
        if w.strands() != Self::STRANDS {
            return Err(RepError::WrongStrands { got: w.strands(), expected: Self::STRANDS });
        }
        let mut acc = ExactMatrix::identity(Self::DIM);
        for &l in w.letters() {
            acc = acc.mul(&self.exact[slot(l)]);
        }
        Ok(acc)
    }

    pub fn evaluate_float(&self, w: &BraidWord) -> Result<FloatMatrix, RepError> {
        if w.strands() != Self::STRANDS {
            return Err(RepError::WrongStrands { got: w.strands(), expected: Self::STRANDS });
        }
        let mut acc = FloatMatrix::identity(Self::DIM);
        let mut scratch = FloatMatrix::identity(Self::DIM);
        for &l in w.letters() {
            acc.mul_into(&self.float[slot(l)], &mut scratch);
            std::mem::swap(&mut acc, &mut scratch);
        }
        Ok(acc)
    }
}

/// The two-qubit representation of `B_6` (5x5, trivial total charge).
pub struct B6Rep {
    exact: [ExactMatrix; 10],
    float: [FloatMatrix; 10],
    /// Integer-coordinate fast path; `None` if the data has non-integral
    /// entries (possible only with injected nonstandard data).
    ints: Option<Box<[IntMat5; 10]>>,
}

impl B6Rep {
    pub const STRANDS: usize = 6;
    pub const DIM: usize = 5;

    pub fn new(data: &FibData) -> Self {
        let rt = {
            let mut m = ExactMatrix::zero(1);
            m[(0, 0)] = data.r_tau.clone();
            m
        };
        let r = data.r_matrix();
        let frf = data.frf();
        let i2 = ExactMatrix::identity(2);
        // Exchanging the two triples exchanges |NC> with |tt| positions in
        // the sigma_3 block structure: indices 0 and 3 swap.
        let p14 = ExactMatrix::from_permutation(&[3, 1, 2, 0, 4]);
        let images = [
            rt.direct_sum(&r.kron(&i2)),
            rt.direct_sum(&frf.kron(&i2)),
            p14.mul(&rt.direct_sum(&r).direct_sum(&frf)).mul(&p14),
            rt.direct_sum(&i2.kron(&frf)),
            rt.direct_sum(&i2.kron(&r)),
        ];
        let exact: [ExactMatrix; 10] = std::array::from_fn(|i| {
            let img = &images[i / 2];
            if i % 2 == 0 {
                img.clone()
            } else {
                img.dagger()
            }
        });
        let float = std::array::from_fn(|i| exact[i].to_float());
        let ints = exact
            .iter()
            .map(IntMat5::from_exact)
            .collect::<Option<Vec<_>>>()
            .and_then(|v| <Box<[IntMat5; 10]>>::try_from(v.into_boxed_slice()).ok());
        Self { exact, float, ints }
    }

    pub fn standard() -> Self {
        Self::new(&FibData::standard())
    }

    /// Image of the single letter `l` (`|l|` in `1..=5`).
    pub fn generator_exact(&self, l: Letter) -> &ExactMatrix {
        assert!((1..=5).contains(&l.unsigned_abs()), "no generator {l} in B_6");
        &self.exact[slot(l)]
    }

    pub fn generator_float(&self, l: Letter) -> &FloatMatrix {
        assert!((1..=5).contains(&l.unsigned_abs()), "no generator {l} in B_6");
        &self.float[slot(l)]
    }

    pub(crate) fn generator_int(&self, l: Letter) -> Option<&IntMat5> {
        self.ints.as_ref().map(|g| &g[slot(l)])
    }

    pub fn evaluate_exact(&self, w: &BraidWord) -> Result<ExactMatrix, RepError> {
        if w.strands() != Self::STRANDS {
            return Err(RepError::WrongStrands { got: w.strands(), expected: Self::STRANDS });
        }
        let letters = w.letters();
        if let Some(ints) = &self.ints {
            let mut acc = IntMat5::identity();
            let mut done = 0;
            for (i, &l) in letters.iter().enumerate() {
                match acc.mul(&ints[slot(l)]) {
                    Some(next) => {
                        acc = next;
                        done = i + 1;
                    }
                    None => break,
                }
            }
            let mut big = acc.to_exact();
            for &l in &letters[done..] {
                big = big.mul(&self.exact[slot(l)]);
            }
            return Ok(big);
        }
        Ok(self.evaluate_big(letters))
    }

    /// Pure big-rational product, bypassing the integer fast path.
    fn evaluate_big(&self, letters: &[Letter]) -> ExactMatrix {
        let mut acc = ExactMatrix::identity(Self::DIM);
        for &l in letters {
            acc = acc.mul(&self.exact[slot(l)]);
        }
        acc
    }

    pub fn evaluate_float(&self, w: &BraidWord) -> Result<FloatMatrix, RepError> {
        if w.strands() != Self::STRANDS {
            return Err(RepError::WrongStrands { got: w.strands(), expected: Self::STRANDS });
        }
        let mut acc = FloatMatrix::identity(Self::DIM);
        let mut scratch = FloatMatrix::identity(Self::DIM);
        for &l in w.letters() {
            acc.mul_into(&self.float[slot(l)], &mut scratch);
            std::mem::swap(&mut acc, &mut scratch);
        }
        Ok(acc)
    }
}

/// 5x5 matrix of integer-coordinate field elements with checked `i128`
/// arithmetic. All operations return `None` on overflow; callers fall back
/// to the big-rational [`ExactMatrix`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IntMat5 {
    m: [[IntField; 5]; 5],
}

impl IntMat5 {
    pub(crate) fn identity() -> Self {
        let mut m = [[IntField::ZERO; 5]; 5];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = IntField::ONE;
        }
        Self { m }
    }

    pub(crate) fn from_exact(x: &ExactMatrix) -> Option<Self> {
        if x.dim() != 5 {
            return None;
        }
        let mut m = [[IntField::ZERO; 5]; 5];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = IntField::from_field(&x[(i, j)])?;
            }
        }
        Some(Self { m })
    }

    pub(crate) fn to_exact(&self) -> ExactMatrix {
        let mut out = ExactMatrix::zero(5);
        for i in 0..5 {
            for j in 0..5 {
                out[(i, j)] = self.m[i][j].to_field();
            }
        }
        out
    }

    pub(crate) fn entry(&self, i: usize, j: usize) -> &IntField {
        &self.m[i][j]
    }

    pub(crate) fn mul(&self, other: &Self) -> Option<Self> {
        let mut out = [[IntField::ZERO; 5]; 5];
        for i in 0..5 {
            for k in 0..5 {
                let a = &self.m[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..5 {
                    let t = a.mul(&other.m[k][j])?;
                    out[i][j] = out[i][j].add(&t)?;
                }
            }
        }
        Some(Self { m: out })
    }

}
