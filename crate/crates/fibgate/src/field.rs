//! Exact arithmetic in the degree-8 number field Q(z, s), where
//! z = e^{i pi/5} is a primitive 10th root of unity and s = sqrt(1/phi)
//! with phi the golden ratio.
//!
//! Every matrix entry of the braid-group representations lives here, so
//! equality of gates is decidable: elements are kept in a normal form
//! (coefficients reduced mod Phi_10(x) = x^4 - x^3 + x^2 - x + 1, rationals
//! in lowest terms) and compared coefficientwise.
//!
//! Useful identities, all consequences of Phi_10(z) = 0:
//!   z^5 = -1,   phi = z + z^-1 = -z^3 + z^2 + 1,   1/phi = z^2 - z^3 = s^2.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

pub(crate) mod small;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed field element `{0}`")]
    Parse(String),
}

fn br(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// z^j in the power basis, for j in 0..10. Rows follow from z^4 = z^3 - z^2
/// + z - 1 and z^5 = -1.
const ZPOW: [[i64; 4]; 10] = [
    [1, 0, 0, 0],
    [0, 1, 0, 0],
    [0, 0, 1, 0],
    [0, 0, 0, 1],
    [-1, 1, -1, 1],
    [-1, 0, 0, 0],
    [0, -1, 0, 0],
    [0, 0, -1, 0],
    [0, 0, 0, -1],
    [1, -1, 1, -1],
];

/// Element of Q(z) in the power basis {1, z, z^2, z^3}.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloElement {
    c: [BigRational; 4],
}

impl CycloElement {
    pub fn zero() -> Self {
        Self::from_integers([0, 0, 0, 0])
    }

    pub fn one() -> Self {
        Self::from_integers([1, 0, 0, 0])
    }

    pub fn zeta() -> Self {
        Self::from_integers([0, 1, 0, 0])
    }

    /// z^k for any integer exponent.
    pub fn zeta_pow(k: i64) -> Self {
        Self::from_integers(ZPOW[k.rem_euclid(10) as usize])
    }

    /// 1/phi = z^2 - z^3.
    pub fn phi_inv() -> Self {
        Self::from_integers([0, 0, 1, -1])
    }

    /// phi = 1 + z^2 - z^3.
    pub fn phi() -> Self {
        Self::from_integers([1, 0, 1, -1])
    }

    pub fn from_integers(c: [i64; 4]) -> Self {
        Self {
            c: [br(c[0]), br(c[1]), br(c[2]), br(c[3])],
        }
    }

    pub fn from_rationals(c: [BigRational; 4]) -> Self {
        Self { c }
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self {
            c: [q, br(0), br(0), br(0)],
        }
    }

    pub fn coeffs(&self) -> &[BigRational; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Zero::is_zero)
    }

    pub fn neg(&self) -> Self {
        Self {
            c: [-&self.c[0], -&self.c[1], -&self.c[2], -&self.c[3]],
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self {
            c: [
                &self.c[0] + &rhs.c[0],
                &self.c[1] + &rhs.c[1],
                &self.c[2] + &rhs.c[2],
                &self.c[3] + &rhs.c[3],
            ],
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self {
            c: [
                &self.c[0] - &rhs.c[0],
                &self.c[1] - &rhs.c[1],
                &self.c[2] - &rhs.c[2],
                &self.c[3] - &rhs.c[3],
            ],
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        // Schoolbook product, degree <= 6, then reduce x^4, x^5, x^6.
        let mut p = vec![BigRational::zero(); 7];
        for i in 0..4 {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                if rhs.c[j].is_zero() {
                    continue;
                }
                p[i + j] += &self.c[i] * &rhs.c[j];
            }
        }
        Self {
            c: [
                &p[0] - &p[4] - &p[5],
                &p[1] + &p[4] - &p[6],
                &p[2] - &p[4],
                &p[3] + &p[4],
            ],
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self {
            c: [
                &self.c[0] * q,
                &self.c[1] * q,
                &self.c[2] * q,
                &self.c[3] * q,
            ],
        }
    }

    /// Galois automorphism z -> z^k; k must be coprime to 10.
    pub fn galois(&self, k: u32) -> Self {
        debug_assert!(matches!(k, 1 | 3 | 7 | 9));
        let mut out = [br(0), br(0), br(0), br(0)];
        for (i, ci) in self.c.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            let row = ZPOW[(k as usize * i) % 10];
            for (o, &r) in out.iter_mut().zip(row.iter()) {
                if r != 0 {
                    *o += ci * br(r);
                }
            }
        }
        Self { c: out }
    }

    /// Complex conjugation, z -> z^-1 = z^9.
    pub fn conj(&self) -> Self {
        self.galois(9)
    }

    /// Multiplicative inverse via the field norm down to Q.
    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let cof = self.galois(3).mul(&self.galois(7)).mul(&self.galois(9));
        let n = self.mul(&cof);
        // Norm lands in Q.
        debug_assert!(n.c[1..].iter().all(Zero::is_zero));
        Ok(cof.scale(&n.c[0].recip()))
    }

    pub fn to_complex(&self) -> Complex64 {
        let z = Complex64::from_polar(1.0, std::f64::consts::PI / 5.0);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut pow = Complex64::new(1.0, 0.0);
        for ci in &self.c {
            acc += pow * ci.to_f64().unwrap_or(f64::NAN);
            pow *= z;
        }
        acc
    }
}

fn fmt_poly(f: &mut fmt::Formatter<'_>, c: &[BigRational; 4]) -> fmt::Result {
    let mut first = true;
    for (i, ci) in c.iter().enumerate() {
        if ci.is_zero() {
            continue;
        }
        let mag = ci.abs();
        if first {
            if ci.is_negative() {
                write!(f, "-")?;
            }
            first = false;
        } else if ci.is_negative() {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        if !mag.is_one() || i == 0 {
            write!(f, "{mag}")?;
        }
        match i {
            0 => {}
            1 => write!(f, "z")?,
            _ => write!(f, "z^{i}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(f, &self.c)
    }
}

impl fmt::Debug for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.c[0], self.c[1], self.c[2], self.c[3])
    }
}

/// Element a + b*s of the full field, with a, b in Q(z) and s = sqrt(1/phi).
///
/// s is the positive real square root; complex conjugation fixes it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    a: CycloElement,
    b: CycloElement,
}

/// sqrt(1/phi) as f64, the off-diagonal of the F-matrix.
pub const SQRT_PHI_INV: f64 = 0.786_151_377_757_423_3;

/// 1/phi as f64.
pub const PHI_INV: f64 = 0.618_033_988_749_894_9;

impl FieldElement {
    pub fn new(a: CycloElement, b: CycloElement) -> Self {
        Self { a, b }
    }

    pub fn from_cyclo(a: CycloElement) -> Self {
        Self {
            a,
            b: CycloElement::zero(),
        }
    }

    pub fn from_integers(a: [i64; 4], b: [i64; 4]) -> Self {
        Self {
            a: CycloElement::from_integers(a),
            b: CycloElement::from_integers(b),
        }
    }

    pub fn zero() -> Self {
        Self::from_integers([0; 4], [0; 4])
    }

    pub fn one() -> Self {
        Self::from_integers([1, 0, 0, 0], [0; 4])
    }

    pub fn zeta() -> Self {
        Self::from_cyclo(CycloElement::zeta())
    }

    pub fn zeta_pow(k: i64) -> Self {
        Self::from_cyclo(CycloElement::zeta_pow(k))
    }

    /// s itself.
    pub fn s() -> Self {
        Self::from_integers([0; 4], [1, 0, 0, 0])
    }

    pub fn phi() -> Self {
        Self::from_cyclo(CycloElement::phi())
    }

    pub fn phi_inv() -> Self {
        Self::from_cyclo(CycloElement::phi_inv())
    }

    pub fn cyclo_part(&self) -> &CycloElement {
        &self.a
    }

    pub fn s_part(&self) -> &CycloElement {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn neg(&self) -> Self {
        Self {
            a: self.a.neg(),
            b: self.b.neg(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self {
            a: self.a.add(&rhs.a),
            b: self.b.add(&rhs.b),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self {
            a: self.a.sub(&rhs.a),
            b: self.b.sub(&rhs.b),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        // (a + bs)(c + ds) = (ac + bd/phi) + (ad + bc)s, using s^2 = 1/phi.
        let ac = self.a.mul(&rhs.a);
        let bd = self.b.mul(&rhs.b);
        let ad = self.a.mul(&rhs.b);
        let bc = self.b.mul(&rhs.a);
        Self {
            a: ac.add(&bd.mul(&CycloElement::phi_inv())),
            b: ad.add(&bc),
        }
    }

    /// Complex conjugation: conjugate both coordinates, fix s.
    pub fn conj(&self) -> Self {
        Self {
            a: self.a.conj(),
            b: self.b.conj(),
        }
    }

    /// |x|^2 = x * conj(x). Real, but in general not rational: it lives in
    /// the real subfield Q(sqrt 5, s).
    pub fn abs_sq(&self) -> Self {
        self.mul(&self.conj())
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        // (a + bs)(a - bs) = a^2 - b^2/phi lands in Q(z); invert there.
        let den = self
            .a
            .mul(&self.a)
            .sub(&self.b.mul(&self.b).mul(&CycloElement::phi_inv()));
        let den_inv = den.inv()?;
        Ok(Self {
            a: self.a.mul(&den_inv),
            b: self.b.mul(&den_inv).neg(),
        })
    }

    pub fn to_complex(&self) -> Complex64 {
        self.a.to_complex() + self.b.to_complex() * SQRT_PHI_INV
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "({})s", self.b),
            (false, false) => write!(f, "({}) + ({})s", self.a, self.b),
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}|{:?}", self.a, self.b)
    }
}

impl FromStr for FieldElement {
    type Err = FieldError;

    /// Parses the serialized form `a0,a1,a2,a3|b0,b1,b2,b3` with rational
    /// entries, the same shape `Debug` prints.
    fn from_str(text: &str) -> Result<Self, FieldError> {
        let bad = || FieldError::Parse(text.to_owned());
        let (a, b) = text.split_once('|').ok_or_else(bad)?;
        let parse_four = |part: &str| -> Result<CycloElement, FieldError> {
            let qs: Vec<BigRational> = part
                .split(',')
                .map(|t| BigRational::from_str(t.trim()).map_err(|_| bad()))
                .collect::<Result<_, _>>()?;
            let c: [BigRational; 4] = qs.try_into().map_err(|_| bad())?;
            Ok(CycloElement::from_rationals(c))
        };
        Ok(Self::new(parse_four(a)?, parse_four(b)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn c(v: [i64; 4]) -> CycloElement {
        CycloElement::from_integers(v)
    }

    #[test]
    fn zeta_powers_reduce() {
        let z = CycloElement::zeta();
        let mut p = CycloElement::one();
        for k in 0..10 {
            assert_eq!(p, CycloElement::zeta_pow(k), "z^{k}");
            p = p.mul(&z);
        }
        assert!(p.is_one(), "z^10 = 1");
        assert_eq!(CycloElement::zeta_pow(5), c([-1, 0, 0, 0]), "z^5 = -1");
        assert_eq!(CycloElement::zeta_pow(4), c([-1, 1, -1, 1]));
    }

    #[test]
    fn zeta_inverse_is_minus_zeta4() {
        let z = CycloElement::zeta();
        assert!(z.mul(&CycloElement::zeta_pow(4).neg()).is_one());
        assert_eq!(z.inv().unwrap(), c([1, -1, 1, -1]));
    }

    #[test]
    fn golden_ratio_identities() {
        let phi = CycloElement::phi();
        let phi_inv = CycloElement::phi_inv();
        assert!(phi.mul(&phi_inv).is_one());
        // 1/phi = phi - 1
        assert_eq!(phi.inv().unwrap(), phi.sub(&CycloElement::one()));
        // phi^2 = phi + 1
        assert_eq!(phi.mul(&phi), phi.add(&CycloElement::one()));
    }

    #[test]
    fn s_squares_to_phi_inv() {
        let s = FieldElement::s();
        assert_eq!(s.mul(&s), FieldElement::phi_inv());
    }

    #[test]
    fn conjugation_table() {
        assert_eq!(CycloElement::zeta().conj(), c([1, -1, 1, -1]));
        assert_eq!(FieldElement::s().conj(), FieldElement::s());
    }

    #[test]
    fn abs_sq_of_unit_times_s() {
        // x = e^{-3 i pi/5} s = -z^2 s has |x|^2 = 1/phi.
        let x = FieldElement::new(CycloElement::zero(), CycloElement::zeta_pow(7));
        assert_eq!(x.abs_sq(), FieldElement::phi_inv());
    }

    #[test]
    fn to_complex_reference_values() {
        assert!((FieldElement::phi_inv().to_complex().re - 0.618_033_988_749_894_9).abs() < 1e-14);
        assert!(FieldElement::phi_inv().to_complex().im.abs() < 1e-15);
        assert!((FieldElement::s().to_complex().re - 0.786_151_377_757_423_3).abs() < 1e-14);
        let z = FieldElement::zeta().to_complex();
        assert!((z.norm() - 1.0).abs() < 1e-14);
        assert!((z.re - (std::f64::consts::PI / 5.0).cos()).abs() < 1e-14);
    }

    #[test]
    fn inversion_errors_on_zero() {
        assert_eq!(FieldElement::zero().inv(), Err(FieldError::DivisionByZero));
        assert_eq!(CycloElement::zero().inv(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn debug_serialization_round_trips() {
        let x = FieldElement::phi_inv();
        assert_eq!(format!("{x:?}"), "0,0,1,-1|0,0,0,0");
        let y: FieldElement = "0,0,1,-1|0,0,0,0".parse().unwrap();
        assert_eq!(x, y);
        let with_fractions: FieldElement = "1/2,-3,0,2/7|0,1,0,0".parse().unwrap();
        assert_eq!(format!("{with_fractions:?}"), "1/2,-3,0,2/7|0,1,0,0");
        assert!("1,2,3|0,0,0,0".parse::<FieldElement>().is_err());
        assert!("1,2,3,x|0,0,0,0".parse::<FieldElement>().is_err());
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(FieldElement::phi_inv().to_string(), "z^2 - z^3");
        assert_eq!(FieldElement::s().to_string(), "(1)s");
        assert_eq!(FieldElement::zero().to_string(), "0");
        let x = FieldElement::from_integers([1, -1, 0, 0], [0, 0, 2, 0]);
        assert_eq!(x.to_string(), "(1 - z) + (2z^2)s");
    }

    fn rand_rational(rng: &mut StdRng) -> BigRational {
        let n = rng.gen_range(-9i64..=9);
        let d = rng.gen_range(1i64..=4);
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn rand_element(rng: &mut StdRng) -> FieldElement {
        let mut part = || {
            CycloElement::from_rationals([
                rand_rational(rng),
                rand_rational(rng),
                rand_rational(rng),
                rand_rational(rng),
            ])
        };
        let a = part();
        let b = part();
        FieldElement::new(a, b)
    }

    /// Field axioms plus the evaluation homomorphism, 10^4 random triples.
    #[test]
    fn field_axioms_randomized() {
        let mut rng = StdRng::seed_from_u64(0x0f1b);
        for round in 0..10_000 {
            let x = rand_element(&mut rng);
            let y = rand_element(&mut rng);
            let z = rand_element(&mut rng);

            assert_eq!(x.add(&y), y.add(&x));
            assert_eq!(x.mul(&y), y.mul(&x));
            assert_eq!(x.mul(&y.mul(&z)), x.mul(&y).mul(&z));
            assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
            assert!(x.add(&x.neg()).is_zero());
            assert_eq!(x.conj().conj(), x);
            assert_eq!(x.mul(&y).conj(), x.conj().mul(&y.conj()));
            assert_eq!(x.abs_sq(), x.mul(&x.conj()));
            assert_eq!(x.abs_sq().conj(), x.abs_sq(), "|x|^2 is real");

            let fx = x.to_complex();
            let fy = y.to_complex();
            assert!((x.mul(&y).to_complex() - fx * fy).norm() < 1e-9);
            assert!((x.add(&y).to_complex() - (fx + fy)).norm() < 1e-9);
            assert!((x.abs_sq().to_complex().re - fx.norm_sqr()).abs() < 1e-9);

            // Inverses on a subsample; they are the slow part.
            if round % 10 == 0 && !x.is_zero() {
                assert!(x.mul(&x.inv().unwrap()).is_one());
            }
        }
    }

    #[test]
    fn serialization_round_trip_randomized() {
        let mut rng = StdRng::seed_from_u64(0x51de);
        for _ in 0..500 {
            let x = rand_element(&mut rng);
            let text = format!("{x:?}");
            let back: FieldElement = text.parse().unwrap();
            assert_eq!(back, x);
        }
    }
}
