//! Normal-ordered polynomials in the reduced position and momentum generators.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::{GaussianRational, Scalar};
use super::WeylError;
use crate::metric::Metric;

/// Which ordering of the defining commutator carries the `+iη` sign.
///
/// The one-dimensional tables use `[𝔵, 𝔭] = i`; the tensor tables use
/// `[𝔭_μ, 𝔵_ν] = iη_{μν}`. At `N = 1` Euclidean the two disagree by a sign,
/// so each table is checked under its own convention.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Convention {
    /// `[𝔵_μ, 𝔭_ν] = iη_{μν}` (σ = +1).
    PositionMomentum,
    /// `[𝔭_μ, 𝔵_ν] = iη_{μν}` (σ = −1).
    MomentumPosition,
}

impl Convention {
    pub fn sigma(self) -> i64 {
        match self {
            Convention::PositionMomentum => 1,
            Convention::MomentumPosition => -1,
        }
    }
}

/// The Weyl algebra a polynomial lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Algebra {
    pub metric: Metric,
    pub convention: Convention,
}

impl Algebra {
    pub fn new(metric: Metric, convention: Convention) -> Self {
        Self { metric, convention }
    }

    /// One-dimensional algebra with `[𝔵, 𝔭] = i`.
    pub fn one_dim() -> Self {
        Self::new(Metric::euclidean(1), Convention::PositionMomentum)
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }

    /// `κ_μ` in `𝔭_μ 𝔵_μ = 𝔵_μ 𝔭_μ + κ_μ`.
    pub fn contraction(&self, mu: usize) -> GaussianRational {
        let eta = self.metric.diag(mu);
        GaussianRational::imag_ratio(-self.convention.sigma() * eta, 1)
    }

    pub fn check_index(&self, index: usize) -> Result<(), WeylError> {
        if index < self.dim() {
            Ok(())
        } else {
            Err(WeylError::IndexOutOfRange {
                index,
                dim: self.dim(),
            })
        }
    }

    pub fn zero(&self) -> WeylPolynomial {
        WeylPolynomial::zero(*self)
    }

    pub fn constant(&self, c: Scalar) -> WeylPolynomial {
        WeylPolynomial::constant(*self, c)
    }

    pub fn one(&self) -> WeylPolynomial {
        self.constant(Scalar::one())
    }

    /// Reduced position generator 𝔵_μ.
    pub fn x(&self, mu: usize) -> WeylPolynomial {
        assert!(mu < self.dim(), "index {mu} out of range");
        let mut m = Monomial::unit(self.dim());
        m.x[mu] = 1;
        WeylPolynomial::from_term(*self, m, Scalar::one())
    }

    /// Reduced momentum generator 𝔭_μ.
    pub fn p(&self, mu: usize) -> WeylPolynomial {
        assert!(mu < self.dim(), "index {mu} out of range");
        let mut m = Monomial::unit(self.dim());
        m.p[mu] = 1;
        WeylPolynomial::from_term(*self, m, Scalar::one())
    }

    /// The central symbol 𝓑 (momentum dispersion), kept as an indeterminate.
    pub fn dispersion_symbol(&self) -> WeylPolynomial {
        let mut m = Monomial::unit(self.dim());
        m.dispersion = 1;
        WeylPolynomial::from_term(*self, m, Scalar::one())
    }

    /// η_{μν} as a scalar.
    pub fn eta(&self, mu: usize, nu: usize) -> Scalar {
        Scalar::from_int(self.metric.entry(mu, nu))
    }
}

/// `𝓑^d · Π_μ 𝔵_μ^{x_μ} · Π_μ 𝔭_μ^{p_μ}`, positions left of momenta.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub dispersion: u32,
    pub x: Vec<u32>,
    pub p: Vec<u32>,
}

impl Monomial {
    pub fn unit(dim: usize) -> Self {
        Self {
            dispersion: 0,
            x: vec![0; dim],
            p: vec![0; dim],
        }
    }

    pub fn is_unit(&self) -> bool {
        self.dispersion == 0 && self.x.iter().all(|&e| e == 0) && self.p.iter().all(|&e| e == 0)
    }

    /// Degree in the non-central generators.
    pub fn degree(&self) -> u32 {
        self.x.iter().sum::<u32>() + self.p.iter().sum::<u32>()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.x.cmp(&self.x))
            .then_with(|| other.p.cmp(&self.p))
            .then_with(|| self.dispersion.cmp(&other.dispersion))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        let mut push = |name: String, e: u32| match e {
            0 => {}
            1 => factors.push(name),
            _ => factors.push(format!("{name}^{e}")),
        };
        push("B".to_string(), self.dispersion);
        for (mu, &e) in self.x.iter().enumerate() {
            push(format!("x{mu}"), e);
        }
        for (mu, &e) in self.p.iter().enumerate() {
            push(format!("p{mu}"), e);
        }
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join("*"))
        }
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

fn gaussian_pow(base: &GaussianRational, e: u32) -> GaussianRational {
    (0..e).fold(GaussianRational::one(), |acc, _| &acc * base)
}

/// Product of two normal-ordered monomials, expanded back into normal order.
///
/// Distinct indices commute because η is diagonal, so the reordering factorises
/// per index: `𝔭^b 𝔵^c = Σ_k k!·C(b,k)·C(c,k)·κ^k 𝔵^{c−k} 𝔭^{b−k}`.
pub(crate) fn multiply_monomials(
    algebra: &Algebra,
    lhs: &Monomial,
    rhs: &Monomial,
) -> Vec<(Monomial, GaussianRational)> {
    let dim = algebra.dim();
    let mut acc = vec![(
        Monomial {
            dispersion: lhs.dispersion + rhs.dispersion,
            x: vec![0; dim],
            p: vec![0; dim],
        },
        GaussianRational::one(),
    )];
    for mu in 0..dim {
        let (b, c) = (lhs.p[mu], rhs.x[mu]);
        let kappa = algebra.contraction(mu);
        let mut next = Vec::with_capacity(acc.len() * (b.min(c) as usize + 1));
        for k in 0..=b.min(c) {
            let weight = binomial(b, k) * binomial(c, k) * factorial(k);
            let factor = &GaussianRational::real(BigRational::from_integer(weight))
                * &gaussian_pow(&kappa, k);
            for (mono, coeff) in &acc {
                let mut m = mono.clone();
                m.x[mu] = lhs.x[mu] + c - k;
                m.p[mu] = b - k + rhs.p[mu];
                next.push((m, coeff * &factor));
            }
        }
        acc = next;
    }
    acc
}

/// Exact element of the Weyl algebra in canonical normal order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylPolynomial {
    algebra: Algebra,
    terms: BTreeMap<Monomial, Scalar>,
}

impl WeylPolynomial {
    pub fn zero(algebra: Algebra) -> Self {
        Self {
            algebra,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(algebra: Algebra, c: Scalar) -> Self {
        Self::from_term(algebra, Monomial::unit(algebra.dim()), c)
    }

    pub fn from_term(algebra: Algebra, monomial: Monomial, coeff: Scalar) -> Self {
        let mut p = Self::zero(algebra);
        p.accumulate(monomial, &coeff);
        p
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, monomial: &Monomial) -> Scalar {
        self.terms
            .get(monomial)
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    fn accumulate(&mut self, monomial: Monomial, coeff: &Scalar) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(monomial);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn ensure_same(&self, other: &Self) -> Result<(), WeylError> {
        if self.algebra == other.algebra {
            Ok(())
        } else {
            Err(WeylError::ConventionMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, WeylError> {
        self.ensure_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.accumulate(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, WeylError> {
        self.checked_add(&other.scale(&-Scalar::one()))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, WeylError> {
        self.ensure_same(other)?;
        let mut out = Self::zero(self.algebra);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let cab = ca * cb;
                for (m, w) in multiply_monomials(&self.algebra, ma, mb) {
                    out.accumulate(m, &(&cab * &Scalar::from(w)));
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.algebra);
        for (m, v) in &self.terms {
            out.accumulate(m.clone(), &(v * c));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(self.algebra.one(), |acc, _| &acc * self)
    }

    /// Formal adjoint: conjugate coefficients and reverse every product.
    /// Generators and 𝓑 are self-adjoint.
    pub fn adjoint(&self) -> Self {
        let dim = self.dim();
        let mut out = Self::zero(self.algebra);
        for (m, c) in &self.terms {
            // (𝓑^d 𝔵^a 𝔭^b)† = 𝓑^d 𝔭^b 𝔵^a
            let momenta = Monomial {
                dispersion: m.dispersion,
                x: vec![0; dim],
                p: m.p.clone(),
            };
            let positions = Monomial {
                dispersion: 0,
                x: m.x.clone(),
                p: vec![0; dim],
            };
            let cc = c.conj();
            for (mono, w) in multiply_monomials(&self.algebra, &momenta, &positions) {
                out.accumulate(mono, &(&cc * &Scalar::from(w)));
            }
        }
        out
    }

    /// The same element written as a sum of words (for re-ordering checks).
    pub fn to_words(&self) -> WordPolynomial {
        let mut words = WordPolynomial::zero(self.algebra);
        for (m, c) in &self.terms {
            let mut word = vec![Generator::Dispersion; m.dispersion as usize];
            for (mu, &e) in m.x.iter().enumerate() {
                word.extend(std::iter::repeat(Generator::X(mu)).take(e as usize));
            }
            for (mu, &e) in m.p.iter().enumerate() {
                word.extend(std::iter::repeat(Generator::P(mu)).take(e as usize));
            }
            words.push(c.clone(), word);
        }
        words
    }

    /// Maximum coefficient modulus, evaluated in floating point.
    pub fn max_abs_coefficient(&self) -> f64 {
        self.terms
            .values()
            .map(|c| {
                let (re, im) = c.to_f64_pair();
                re.hypot(im)
            })
            .fold(0.0, f64::max)
    }
}

fn wrap_coefficient(c: &Scalar) -> String {
    let text = c.to_string();
    let body = text.strip_prefix('-').unwrap_or(&text);
    if body.contains(['+', '-']) || body.contains("sqrt2") && body.contains(')') {
        format!("({text})")
    } else {
        text
    }
}

/// Canonical text form: terms in monomial order joined by ` + `.
impl fmt::Display for WeylPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if m.is_unit() {
                    wrap_coefficient(c)
                } else if c.is_one() {
                    m.to_string()
                } else {
                    format!("{}*{}", wrap_coefficient(c), m)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<'a> Add<&'a WeylPolynomial> for &'a WeylPolynomial {
    type Output = WeylPolynomial;
    /// Panics when the operands live in different algebras; use
    /// [`WeylPolynomial::checked_add`] to get an error instead.
    fn add(self, rhs: Self) -> WeylPolynomial {
        self.checked_add(rhs).expect("algebra mismatch in add")
    }
}

impl<'a> Sub<&'a WeylPolynomial> for &'a WeylPolynomial {
    type Output = WeylPolynomial;
    fn sub(self, rhs: Self) -> WeylPolynomial {
        self.checked_sub(rhs).expect("algebra mismatch in sub")
    }
}

impl<'a> Mul<&'a WeylPolynomial> for &'a WeylPolynomial {
    type Output = WeylPolynomial;
    fn mul(self, rhs: Self) -> WeylPolynomial {
        self.checked_mul(rhs).expect("algebra mismatch in mul")
    }
}

impl Mul<&Scalar> for &WeylPolynomial {
    type Output = WeylPolynomial;
    fn mul(self, rhs: &Scalar) -> WeylPolynomial {
        self.scale(rhs)
    }
}

impl Neg for &WeylPolynomial {
    type Output = WeylPolynomial;
    fn neg(self) -> WeylPolynomial {
        self.scale(&-Scalar::one())
    }
}

impl Add for WeylPolynomial {
    type Output = WeylPolynomial;
    fn add(self, rhs: Self) -> WeylPolynomial {
        &self + &rhs
    }
}

impl Sub for WeylPolynomial {
    type Output = WeylPolynomial;
    fn sub(self, rhs: Self) -> WeylPolynomial {
        &self - &rhs
    }
}

impl Mul for WeylPolynomial {
    type Output = WeylPolynomial;
    fn mul(self, rhs: Self) -> WeylPolynomial {
        &self * &rhs
    }
}

/// `[a, b] = ab − ba`, normal ordered.
pub fn commutator(a: &WeylPolynomial, b: &WeylPolynomial) -> Result<WeylPolynomial, WeylError> {
    a.checked_mul(b)?.checked_sub(&b.checked_mul(a)?)
}

/// `[a, b]₊ = ab + ba`
pub fn anticommutator(a: &WeylPolynomial, b: &WeylPolynomial) -> Result<WeylPolynomial, WeylError> {
    a.checked_mul(b)?.checked_add(&b.checked_mul(a)?)
}

/// A single letter of an unordered word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    Dispersion,
    X(usize),
    P(usize),
}

impl Generator {
    fn rank(self, dim: usize) -> usize {
        match self {
            Generator::Dispersion => 0,
            Generator::X(mu) => 1 + mu,
            Generator::P(mu) => 1 + dim + mu,
        }
    }
}

/// Sum of arbitrary (not yet ordered) words in the generators.
#[derive(Clone, Debug, PartialEq)]
pub struct WordPolynomial {
    algebra: Algebra,
    terms: Vec<(Scalar, Vec<Generator>)>,
}

impl WordPolynomial {
    pub fn zero(algebra: Algebra) -> Self {
        Self {
            algebra,
            terms: Vec::new(),
        }
    }

    pub fn word(algebra: Algebra, word: Vec<Generator>) -> Self {
        let mut w = Self::zero(algebra);
        w.push(Scalar::one(), word);
        w
    }

    pub fn push(&mut self, coeff: Scalar, word: Vec<Generator>) {
        self.terms.push((coeff, word));
    }

    pub fn terms(&self) -> &[(Scalar, Vec<Generator>)] {
        &self.terms
    }
}

/// Rewrite every word into normal order by repeated adjacent swaps, emitting
/// the contraction term `κ_μ` each time a `𝔭_μ 𝔵_μ` pair is exchanged.
pub fn normal_order(words: &WordPolynomial) -> Result<WeylPolynomial, WeylError> {
    let algebra = words.algebra;
    let dim = algebra.dim();
    for (_, word) in &words.terms {
        for g in word {
            match *g {
                Generator::X(mu) | Generator::P(mu) => algebra.check_index(mu)?,
                Generator::Dispersion => {}
            }
        }
    }
    let mut out = WeylPolynomial::zero(algebra);
    let mut stack: Vec<(Scalar, Vec<Generator>)> = words.terms.clone();
    while let Some((coeff, mut word)) = stack.pop() {
        if coeff.is_zero() {
            continue;
        }
        let disorder = word
            .windows(2)
            .position(|w| w[0].rank(dim) > w[1].rank(dim));
        match disorder {
            None => {
                let mut m = Monomial::unit(dim);
                for g in &word {
                    match *g {
                        Generator::Dispersion => m.dispersion += 1,
                        Generator::X(mu) => m.x[mu] += 1,
                        Generator::P(mu) => m.p[mu] += 1,
                    }
                }
                out.accumulate(m, &coeff);
            }
            Some(i) => {
                if let (Generator::P(a), Generator::X(b)) = (word[i], word[i + 1]) {
                    if a == b {
                        let mut contracted = word.clone();
                        contracted.drain(i..i + 2);
                        let kappa = Scalar::from(algebra.contraction(a));
                        stack.push((&coeff * &kappa, contracted));
                    }
                }
                word.swap(i, i + 1);
                stack.push((coeff, word));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl_symbolic::field::GaussianRational;

    fn alg2() -> Algebra {
        Algebra::new(Metric::euclidean(2), Convention::MomentumPosition)
    }

    #[test]
    fn px_reorders_with_minus_i() {
        let a = Algebra::one_dim();
        let px = &a.p(0) * &a.x(0);
        let expected = &(&a.x(0) * &a.p(0)) - &a.constant(Scalar::i());
        assert_eq!(px, expected);
        let words = WordPolynomial::word(a, vec![Generator::P(0), Generator::X(0)]);
        assert_eq!(normal_order(&words).unwrap(), expected);
    }

    #[test]
    fn canonical_word_is_fixed() {
        let a = Algebra::one_dim();
        let xp = &a.x(0) * &a.p(0);
        assert_eq!(normal_order(&xp.to_words()).unwrap(), xp);
        assert_eq!(xp.len(), 1);
    }

    #[test]
    fn distinct_indices_commute() {
        let a = alg2();
        let lhs = &a.p(0) * &a.x(1);
        let rhs = &a.x(1) * &a.p(0);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.len(), 1);
    }

    #[test]
    fn tensor_convention_commutator() {
        let a = alg2();
        let c = commutator(&a.p(1), &a.x(1)).unwrap();
        assert_eq!(c, a.constant(Scalar::i()));
        let lor = Algebra::new(Metric::lorentzian(2), Convention::MomentumPosition);
        let c = commutator(&lor.p(1), &lor.x(1)).unwrap();
        assert_eq!(c, lor.constant(-Scalar::i()));
    }

    #[test]
    fn mismatched_algebras_error() {
        let a = Algebra::one_dim();
        let b = Algebra::new(Metric::euclidean(1), Convention::MomentumPosition);
        assert_eq!(
            commutator(&a.x(0), &b.p(0)),
            Err(WeylError::ConventionMismatch)
        );
    }

    #[test]
    fn out_of_range_word_is_rejected() {
        let a = Algebra::one_dim();
        let w = WordPolynomial::word(a, vec![Generator::X(3)]);
        assert!(matches!(
            normal_order(&w),
            Err(WeylError::IndexOutOfRange { index: 3, dim: 1 })
        ));
    }

    #[test]
    fn dispersion_symbol_is_central() {
        let a = Algebra::one_dim();
        let b = a.dispersion_symbol();
        assert!(commutator(&b, &a.p(0)).unwrap().is_zero());
        assert!(commutator(&b, &a.x(0)).unwrap().is_zero());
    }

    #[test]
    fn adjoint_of_px_is_xp() {
        let a = Algebra::one_dim();
        let px = &a.p(0) * &a.x(0);
        let xp = &a.x(0) * &a.p(0);
        assert_eq!(px.adjoint(), xp);
        let ix = a.x(0).scale(&Scalar::i());
        assert_eq!(ix.adjoint(), a.x(0).scale(&-Scalar::i()));
    }

    #[test]
    fn text_form() {
        let a = Algebra::one_dim();
        let px = &a.p(0) * &a.x(0);
        assert_eq!(px.to_string(), "-1*i + x0*p0");
        let q = (&a.x(0) * &a.x(0)).scale(&Scalar::from(GaussianRational::from_ratio(1, 4)));
        assert_eq!(q.to_string(), "1/4*x0^2");
        assert_eq!(a.zero().to_string(), "0");
    }
}
