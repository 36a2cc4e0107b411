//! Exact coefficient arithmetic.
//!
//! [`GaussianRational`] is `a + b·i` with `a, b ∈ ℚ`. The ladder generators
//! carry a factor `1/√2`, so polynomial coefficients live one step further up,
//! in `ℚ(i)(√2)`: a [`Scalar`] is `u + v·√2` with `u, v` Gaussian rationals.
//! Every identity the toolkit checks has `v = 0` on both sides once expanded,
//! but intermediate ladder expressions need the surd.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational shorthand.
pub fn rat(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(rat(n, 1), BigRational::zero())
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::new(rat(numer, denom), BigRational::zero())
    }

    pub fn real(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    /// `(numer/denom)·i`
    pub fn imag_ratio(numer: i64, denom: i64) -> Self {
        Self::new(BigRational::zero(), rat(numer, denom))
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical text `a/b+c/d*i`; pure real or pure imaginary values drop the
/// vanishing part.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => write!(f, "{}*i", fmt_rational(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(
                    f,
                    "{}{}{}*i",
                    fmt_rational(&self.re),
                    sign,
                    fmt_rational(&self.im.abs())
                )
            }
        }
    }
}

/// Element `rational + surd·√2` of `ℚ(i)(√2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    pub rational: GaussianRational,
    pub surd: GaussianRational,
}

impl Scalar {
    pub fn new(rational: GaussianRational, surd: GaussianRational) -> Self {
        Self { rational, surd }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational::from_int(n).into()
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        GaussianRational::from_ratio(numer, denom).into()
    }

    pub fn imag_ratio(numer: i64, denom: i64) -> Self {
        GaussianRational::imag_ratio(numer, denom).into()
    }

    pub fn i() -> Self {
        GaussianRational::i().into()
    }

    /// `1/√2 = √2/2`
    pub fn inv_sqrt2() -> Self {
        Self::new(GaussianRational::zero(), GaussianRational::from_ratio(1, 2))
    }

    pub fn sqrt2() -> Self {
        Self::new(GaussianRational::zero(), GaussianRational::one())
    }

    /// Complex conjugation; √2 is real so only the Gaussian parts conjugate.
    pub fn conj(&self) -> Self {
        Self::new(self.rational.conj(), self.surd.conj())
    }

    /// Galois conjugate `√2 → −√2`.
    fn surd_conj(&self) -> Self {
        Self::new(self.rational.clone(), -self.surd.clone())
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // (u + v√2)(u − v√2) = u² − 2v², nonzero because √2 ∉ ℚ(i).
        let u = &self.rational;
        let v = &self.surd;
        let norm = &(u * u) - &(&GaussianRational::from_int(2) * &(v * v));
        let inv_norm = norm.inv()?;
        let c = self.surd_conj();
        Some(Self::new(&c.rational * &inv_norm, &c.surd * &inv_norm))
    }

    /// The Gaussian-rational value when the √2 part vanishes.
    pub fn as_gaussian(&self) -> Option<&GaussianRational> {
        self.surd.is_zero().then_some(&self.rational)
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        let (a, b) = self.rational.to_f64_pair();
        let (c, d) = self.surd.to_f64_pair();
        let s = std::f64::consts::SQRT_2;
        (a + s * c, b + s * d)
    }
}

impl From<GaussianRational> for Scalar {
    fn from(g: GaussianRational) -> Self {
        Self::new(g, GaussianRational::zero())
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        GaussianRational::real(r).into()
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.surd.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl Add for Scalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.rational + rhs.rational, self.surd + rhs.surd)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: Self) -> Scalar {
        Scalar::new(&self.rational + &rhs.rational, &self.surd + &rhs.surd)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.rational += &rhs.rational;
        self.surd += &rhs.surd;
    }
}

impl Sub for Scalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.rational - rhs.rational, self.surd - rhs.surd)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Self) -> Scalar {
        Scalar::new(&self.rational - &rhs.rational, &self.surd - &rhs.surd)
    }
}

impl Mul for Scalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Self) -> Scalar {
        let two = GaussianRational::from_int(2);
        let rational = &(&self.rational * &rhs.rational) + &(&two * &(&self.surd * &rhs.surd));
        let surd = &(&self.rational * &rhs.surd) + &(&self.surd * &rhs.rational);
        Scalar::new(rational, surd)
    }
}

impl Neg for Scalar {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.rational, -self.surd)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.surd.is_zero() {
            write!(f, "{}", self.rational)
        } else if self.rational.is_zero() {
            write!(f, "({})*sqrt2", self.surd)
        } else {
            write!(f, "({})+({})*sqrt2", self.rational, self.surd)
        }
    }
}
