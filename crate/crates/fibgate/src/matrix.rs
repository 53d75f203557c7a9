//! Dense square matrices over the exact field and over `Complex64`.
//!
//! Everything downstream works with small fixed sizes (2, 4, 5), so this is
//! deliberately plain: row-major `Vec` storage, no views, no BLAS. Shape
//! mismatches are programmer errors and panic.
//!
//! [`ExactMatrix`] is the ground truth: equality, unitarity and phase
//! comparisons on it are exact statements in the field. [`FloatMatrix`] is
//! the fast shadow used for screening and for numerics that leave the field
//! (eigenvalues, singular values); its comparisons all take or imply a
//! tolerance.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::field::FieldElement;

/// Square matrix of exact field elements, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    n: usize,
    data: Vec<FieldElement>,
}

/// Square matrix of `Complex64`, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ExactMatrix {
    pub fn zero(n: usize) -> Self {
        Self { n, data: vec![FieldElement::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m[(i, i)] = FieldElement::one();
        }
        m
    }

    /// Builds from rows; panics unless the shape is square.
    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "rows must form a square matrix");
        Self { n, data: rows.into_iter().flatten().collect() }
    }

    /// The permutation matrix sending basis vector `i` to `perm[i]`.
    pub fn from_permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut seen = vec![false; n];
        let mut m = Self::zero(n);
        for (i, &p) in perm.iter().enumerate() {
            assert!(p < n && !seen[p], "not a permutation");
            seen[p] = true;
            m[(p, i)] = FieldElement::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = a.mul(&other[(k, j)]);
                    out[(i, j)] = out[(i, j)].add(&t);
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self { n: self.n, data: self.data.iter().map(|x| x.mul(c)).collect() }
    }

    /// Kronecker product; `(A (x) B)[i*m+k][j*m+l] = A[i][j] B[k][l]`.
    pub fn kron(&self, other: &Self) -> Self {
        let (n, m) = (self.n, other.n);
        let mut out = Self::zero(n * m);
        for i in 0..n {
            for j in 0..n {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..m {
                    for l in 0..m {
                        out[(i * m + k, j * m + l)] = a.mul(&other[(k, l)]);
                    }
                }
            }
        }
        out
    }

    /// Block diagonal `self (+) other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (n, m) = (self.n, other.n);
        let mut out = Self::zero(n + m);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                out[(n + i, n + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    /// The rectangular-index restriction `self[rows x cols]` as a square
    /// matrix (so `rows.len() == cols.len()`).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        assert_eq!(rows.len(), cols.len(), "submatrix must be square");
        let mut out = Self::zero(rows.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out[(a, b)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.n, "dimension mismatch");
        (0..self.n)
            .map(|i| {
                let mut acc = FieldElement::zero();
                for j in 0..self.n {
                    acc = acc.add(&self[(i, j)].mul(&v[j]));
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> FieldElement {
        let mut acc = FieldElement::zero();
        for i in 0..self.n {
            acc = acc.add(&self[(i, i)]);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    /// Exact unitarity: `M M† = I` as field elements.
    pub fn is_unitary(&self) -> bool {
        self.mul(&self.dagger()).is_identity()
    }

    /// If `self = c * other` for a field scalar `c`, returns `c`.
    ///
    /// A unit-modulus requirement is *not* imposed here; callers comparing
    /// unitaries may check `c.abs_sq().is_one()` on the result.
    pub fn phase_ratio(&self, other: &Self) -> Option<FieldElement> {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let Some(k) = other.data.iter().position(|x| !x.is_zero()) else {
            // other = 0: equal iff self = 0; the phase is arbitrary.
            return self.data.iter().all(|x| x.is_zero()).then(FieldElement::one);
        };
        let c = self.data[k].mul(&other.data[k].inv().expect("nonzero entry"));
        self.data
            .iter()
            .zip(&other.data)
            .all(|(a, b)| *a == b.mul(&c))
            .then_some(c)
    }

    pub fn to_float(&self) -> FloatMatrix {
        FloatMatrix { n: self.n, data: self.data.iter().map(|x| x.to_complex()).collect() }
    }
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = FieldElement;
    fn index(&self, (i, j): (usize, usize)) -> &FieldElement {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut FieldElement {
        &mut self.data[i * self.n + j]
    }
}

impl fmt::Display for ExactMatrix {
    /// One row per line, entries in the compact coefficient form of
    /// [`FieldElement`]'s `Debug`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            f.write_str("[ ")?;
            for j in 0..self.n {
                if j > 0 {
                    f.write_str("  ")?;
                }
                write!(f, "{:?}", self[(i, j)])?;
            }
            f.write_str(" ]")?;
            if i + 1 < self.n {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

impl FloatMatrix {
    pub fn zero(n: usize) -> Self {
        Self { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "rows must form a square matrix");
        Self { n, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut seen = vec![false; n];
        let mut m = Self::zero(n);
        for (i, &p) in perm.iter().enumerate() {
            assert!(p < n && !seen[p], "not a permutation");
            seen[p] = true;
            m[(p, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        self.mul_into(other, &mut out);
        out
    }

    /// Multiply without allocating; `out` may not alias the inputs.
    pub fn mul_into(&self, other: &Self, out: &mut Self) {
        assert_eq!(self.n, other.n, "dimension mismatch");
        assert_eq!(self.n, out.n, "dimension mismatch");
        let n = self.n;
        for x in &mut out.data {
            *x = Complex64::new(0.0, 0.0);
        }
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
    }

    pub fn dagger(&self) -> Self {
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (n, m) = (self.n, other.n);
        let mut out = Self::zero(n * m);
        for i in 0..n {
            for j in 0..n {
                let a = self[(i, j)];
                for k in 0..m {
                    for l in 0..m {
                        out[(i * m + k, j * m + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let (n, m) = (self.n, other.n);
        let mut out = Self::zero(n + m);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = self[(i, j)];
            }
        }
        for i in 0..m {
            for j in 0..m {
                out[(n + i, n + j)] = other[(i, j)];
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        assert_eq!(rows.len(), cols.len(), "submatrix must be square");
        let mut out = Self::zero(rows.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out[(a, b)] = self[(i, j)];
            }
        }
        out
    }

    /// Writes `block` into the positions `rows x cols`.
    pub fn set_submatrix(&mut self, rows: &[usize], cols: &[usize], block: &Self) {
        assert_eq!(rows.len(), block.n, "dimension mismatch");
        assert_eq!(cols.len(), block.n, "dimension mismatch");
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                self[(i, j)] = block[(a, b)];
            }
        }
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.n, "dimension mismatch");
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `M M† - I`.
    pub fn unitarity_defect(&self) -> f64 {
        self.mul(&self.dagger()).max_abs_diff(&Self::identity(self.n))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }

    /// `min over unit c` of `max |self - c * other|`, up to the approximation
    /// of aligning the phase on the largest entry of `other`. Returns the
    /// distance and the aligning phase.
    pub fn distance_up_to_phase(&self, other: &Self) -> (f64, Complex64) {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let k = (0..other.data.len())
            .max_by(|&a, &b| {
                other.data[a]
                    .norm_sqr()
                    .partial_cmp(&other.data[b].norm_sqr())
                    .expect("finite entries")
            })
            .expect("nonempty matrix");
        let c = if other.data[k].norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            let r = self.data[k] / other.data[k];
            if r.norm() == 0.0 {
                Complex64::new(1.0, 0.0)
            } else {
                r / r.norm()
            }
        };
        (self.max_abs_diff(&other.scale(c)), c)
    }
}

impl Index<(usize, usize)> for FloatMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for FloatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

impl fmt::Display for FloatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            f.write_str("[ ")?;
            for j in 0..self.n {
                if j > 0 {
                    f.write_str("  ")?;
                }
                let z = self[(i, j)];
                write!(f, "{:+.6}{:+.6}i", z.re, z.im)?;
            }
            f.write_str(" ]")?;
            if i + 1 < self.n {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}
