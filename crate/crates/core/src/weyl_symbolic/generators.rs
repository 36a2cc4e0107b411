//! Constructors for the dispersion generators and ladder operators.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::Scalar;
use super::poly::{Algebra, WeylPolynomial};
use super::WeylError;

/// Label of a dispersion generator 𝖇⁺, 𝖇⁻ or 𝖇ˣ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GeneratorKind {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
    #[serde(rename = "x")]
    Cross,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 3] = [Self::Plus, Self::Minus, Self::Cross];

    pub fn symbol(self) -> &'static str {
        match self {
            Self::Plus => "+",
            Self::Minus => "-",
            Self::Cross => "x",
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// 𝖟̃⁻ lowers, 𝖟̃⁺ raises (in the one-dimensional convention).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LadderSign {
    Lowering,
    Raising,
}

fn quarter() -> Scalar {
    Scalar::from_ratio(1, 4)
}

/// 𝖇^k_{μν} in reduced generators:
/// `𝖇⁺ = ¼(𝔭_μ𝔭_ν + 𝔵_μ𝔵_ν)`, `𝖇⁻ = ¼(𝔭_μ𝔭_ν − 𝔵_μ𝔵_ν)`,
/// `𝖇ˣ = ¼(𝔭_μ𝔵_ν + 𝔵_ν𝔭_μ)`.
pub fn build_generator(
    algebra: &Algebra,
    kind: GeneratorKind,
    mu: usize,
    nu: usize,
) -> Result<WeylPolynomial, WeylError> {
    algebra.check_index(mu)?;
    algebra.check_index(nu)?;
    let (x, p) = (|i| algebra.x(i), |i| algebra.p(i));
    let body = match kind {
        GeneratorKind::Plus => &(&p(mu) * &p(nu)) + &(&x(mu) * &x(nu)),
        GeneratorKind::Minus => &(&p(mu) * &p(nu)) - &(&x(mu) * &x(nu)),
        GeneratorKind::Cross => &(&p(mu) * &x(nu)) + &(&x(nu) * &p(mu)),
    };
    Ok(body.scale(&quarter()))
}

/// `𝖟̃∓_μ = (𝔭_μ ∓ i𝔵_μ)/√2`
pub fn build_ladder(
    algebra: &Algebra,
    sign: LadderSign,
    mu: usize,
) -> Result<WeylPolynomial, WeylError> {
    algebra.check_index(mu)?;
    let ix = algebra.x(mu).scale(&Scalar::i());
    let body = match sign {
        LadderSign::Lowering => &algebra.p(mu) - &ix,
        LadderSign::Raising => &algebra.p(mu) + &ix,
    };
    Ok(body.scale(&Scalar::inv_sqrt2()))
}

/// One-dimensional operators written in the displaced (unreduced) frame,
/// where the algebra's `𝔵₀, 𝔭₀` stand for `x − X` and `p − P` and the central
/// symbol stands for 𝓑. Only `[x − X, p − P] = i` is used.
pub mod displaced {
    use super::*;

    /// 𝕵⁺, 𝕵⁻, 𝕵ˣ as functions of `x − X`, `p − P` and 𝓑.
    pub fn dispersion(algebra: &Algebra, kind: GeneratorKind) -> WeylPolynomial {
        let x = algebra.x(0);
        let p = algebra.p(0);
        let b = algebra.dispersion_symbol();
        let half = Scalar::from_ratio(1, 2);
        let four_b2_x2 = (&(&b * &b) * &(&x * &x)).scale(&Scalar::from_int(4));
        match kind {
            GeneratorKind::Plus => (&(&p * &p) + &four_b2_x2).scale(&half),
            GeneratorKind::Minus => (&(&p * &p) - &four_b2_x2).scale(&half),
            GeneratorKind::Cross => &b * &(&(&p * &x) + &(&x * &p)),
        }
    }

    /// `𝔷∓ = ((p − P) ∓ 2i𝓑(x − X))/√2`
    pub fn ladder(algebra: &Algebra, sign: LadderSign) -> WeylPolynomial {
        let two_i_b_x =
            (&algebra.dispersion_symbol() * &algebra.x(0)).scale(&Scalar::imag_ratio(2, 1));
        let body = match sign {
            LadderSign::Lowering => &algebra.p(0) - &two_i_b_x,
            LadderSign::Raising => &algebra.p(0) + &two_i_b_x,
        };
        body.scale(&Scalar::inv_sqrt2())
    }
}

/// 𝕵^k written in reduced generators, `𝕵^k = 4𝓑·𝖇^k`.
pub fn reduced_dispersion(
    algebra: &Algebra,
    kind: GeneratorKind,
    mu: usize,
    nu: usize,
) -> Result<WeylPolynomial, WeylError> {
    let b = build_generator(algebra, kind, mu, nu)?;
    Ok(&algebra.dispersion_symbol().scale(&Scalar::from_int(4)) * &b)
}

/// `Σ_k θ_k 𝖇^k` for the one-dimensional triple.
pub fn combination(algebra: &Algebra, coeffs: [&Scalar; 3]) -> Result<WeylPolynomial, WeylError> {
    let mut out = algebra.zero();
    for (kind, c) in GeneratorKind::ALL.into_iter().zip(coeffs) {
        out = &out + &build_generator(algebra, kind, 0, 0)?.scale(c);
    }
    Ok(out)
}
