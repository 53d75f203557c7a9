//! Integer-coefficient fast path for the field.
//!
//! Braid generator images (and their conjugate transposes) have integer
//! coordinates in the power basis, and products of such matrices stay
//! integral, so word evaluation never needs rationals. Coefficients are
//! held in i128 with checked arithmetic; `None` means overflow, and the
//! caller falls back to the arbitrary-precision path.

use super::{CycloElement, FieldElement};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use std::fmt::Write;

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct IntCyclo {
    pub c: [i128; 4],
}

impl IntCyclo {
    pub const ZERO: Self = Self { c: [0; 4] };
    pub const ONE: Self = Self { c: [1, 0, 0, 0] };
    pub const PHI_INV: Self = Self { c: [0, 0, 1, -1] };

    pub fn is_zero(&self) -> bool {
        self.c == [0; 4]
    }

    pub fn is_one(&self) -> bool {
        self.c == [1, 0, 0, 0]
    }

    pub fn add(&self, rhs: &Self) -> Option<Self> {
        let mut c = [0i128; 4];
        for i in 0..4 {
            c[i] = self.c[i].checked_add(rhs.c[i])?;
        }
        Some(Self { c })
    }

    pub fn mul(&self, rhs: &Self) -> Option<Self> {
        let mut p = [0i128; 7];
        for i in 0..4 {
            if self.c[i] == 0 {
                continue;
            }
            for j in 0..4 {
                p[i + j] = p[i + j].checked_add(self.c[i].checked_mul(rhs.c[j])?)?;
            }
        }
        Some(Self {
            c: [
                p[0].checked_sub(p[4])?.checked_sub(p[5])?,
                p[1].checked_add(p[4])?.checked_sub(p[6])?,
                p[2].checked_sub(p[4])?,
                p[3].checked_add(p[4])?,
            ],
        })
    }

    /// z -> z^9, same linear map as the big-rational version.
    pub fn conj(&self) -> Option<Self> {
        let [c0, c1, c2, c3] = self.c;
        Some(Self {
            c: [
                c0.checked_add(c1)?,
                c1.checked_neg()?,
                c1.checked_sub(c3)?,
                c1.checked_neg()?.checked_sub(c2)?,
            ],
        })
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct IntField {
    pub a: IntCyclo,
    pub b: IntCyclo,
}

impl IntField {
    pub const ZERO: Self = Self {
        a: IntCyclo::ZERO,
        b: IntCyclo::ZERO,
    };
    pub const ONE: Self = Self {
        a: IntCyclo::ONE,
        b: IntCyclo::ZERO,
    };

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Option<Self> {
        Some(Self {
            a: self.a.add(&rhs.a)?,
            b: self.b.add(&rhs.b)?,
        })
    }

    pub fn mul(&self, rhs: &Self) -> Option<Self> {
        let ac = self.a.mul(&rhs.a)?;
        let bd = self.b.mul(&rhs.b)?;
        let ad = self.a.mul(&rhs.b)?;
        let bc = self.b.mul(&rhs.a)?;
        Some(Self {
            a: ac.add(&bd.mul(&IntCyclo::PHI_INV)?)?,
            b: ad.add(&bc)?,
        })
    }

    pub fn conj(&self) -> Option<Self> {
        Some(Self {
            a: self.a.conj()?,
            b: self.b.conj()?,
        })
    }

    pub fn abs_sq(&self) -> Option<Self> {
        self.mul(&self.conj()?)
    }

    pub fn to_field(&self) -> FieldElement {
        let conv = |ic: &IntCyclo| {
            CycloElement::from_rationals([
                BigRational::from_integer(BigInt::from(ic.c[0])),
                BigRational::from_integer(BigInt::from(ic.c[1])),
                BigRational::from_integer(BigInt::from(ic.c[2])),
                BigRational::from_integer(BigInt::from(ic.c[3])),
            ])
        };
        FieldElement::new(conv(&self.a), conv(&self.b))
    }

    /// Back-conversion; `None` if any coordinate is not an i128 integer.
    pub fn from_field(x: &FieldElement) -> Option<Self> {
        let conv = |ce: &CycloElement| -> Option<IntCyclo> {
            let mut c = [0i128; 4];
            for (o, q) in c.iter_mut().zip(ce.coeffs()) {
                if !q.denom().is_one() {
                    return None;
                }
                *o = q.numer().to_i128()?;
            }
            Some(IntCyclo { c })
        };
        Some(Self {
            a: conv(x.cyclo_part())?,
            b: conv(x.s_part())?,
        })
    }

    /// Canonical text form, identical to `FieldElement`'s Debug output for
    /// integral values. Keys hashed from either path must agree.
    pub fn write_canonical(&self, out: &mut String) {
        let _ = write!(
            out,
            "{},{},{},{}|{},{},{},{}",
            self.a.c[0],
            self.a.c[1],
            self.a.c[2],
            self.a.c[3],
            self.b.c[0],
            self.b.c[1],
            self.b.c[2],
            self.b.c[3],
        );
    }
}
