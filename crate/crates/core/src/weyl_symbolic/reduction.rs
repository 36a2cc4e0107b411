//! Consistency of the multidimensional reduction matrices.
//!
//! The reduced coordinates are built from a symmetric dispersion tensor 𝓑 and
//! two mixing matrices 𝔞, 𝔟 subject to
//! `𝓑_{μα}𝔞^α_ν = ½𝔟_{μν}` and `𝔞_μ^λ𝔟_λ^ν = ½δ_μ^ν`, where `𝔟_{μν}` is
//! the index-lowered `η_{μρ}𝔟^ρ_ν`. The printed chain also writes
//! `½𝔟_{μν} = η_{μρ}𝔟^ρ_ν`, which contradicts the lowering unless `𝔟 = 0`;
//! that link is checked separately and reported, not folded into `holds`.

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::metric::Metric;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Constraint {
    /// `𝓑_{μα}𝔞^α_ν = ½η_{μρ}𝔟^ρ_ν`
    DispersionMixing,
    /// `𝔞_μ^λ𝔟_λ^ν = ½δ_μ^ν`
    Inverse,
    /// `𝓑_{μα}𝔞^α_ν = η_{μρ}𝔟^ρ_ν`, the last member of the printed chain
    LiteralChain,
    /// `𝓑_{μν} = 𝓑_{νμ}`
    Symmetry,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub constraint: Constraint,
    pub mu: usize,
    pub nu: usize,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReductionReport {
    pub holds: bool,
    /// Whether the printed chain holds with both equalities taken literally.
    pub literal_chain_holds: bool,
    pub violations: Vec<Violation>,
}

type Mat = [Vec<BigRational>];

fn product(a: &Mat, b: &Mat, n: usize) -> Vec<Vec<BigRational>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(BigRational::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// Checks the reduction constraints exactly. Matrices are indexed
/// `[row][column]` with the first printed index as the row.
pub fn validate_reduction(dispersion: &Mat, a: &Mat, b: &Mat, metric: Metric) -> ReductionReport {
    let n = metric.dim();
    let square = |m: &Mat| m.len() == n && m.iter().all(|r| r.len() == n);
    assert!(
        square(dispersion) && square(a) && square(b),
        "matrices must be {n}×{n}"
    );
    let half = BigRational::new(1.into(), 2.into());
    let eta = |i: usize, j: usize| BigRational::from_integer(metric.entry(i, j).into());

    let ba = product(dispersion, a, n);
    let ab = product(a, b, n);
    let lowered: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(BigRational::zero(), |acc, r| acc + eta(i, r) * &b[r][j]))
                .collect()
        })
        .collect();

    let mut violations = Vec::new();
    let mut literal = Vec::new();
    let push = |out: &mut Vec<Violation>, c, mu, nu, l: &BigRational, r: &BigRational| {
        if l != r {
            out.push(Violation {
                constraint: c,
                mu,
                nu,
                lhs: l.to_string(),
                rhs: r.to_string(),
            });
        }
    };
    for mu in 0..n {
        for nu in 0..n {
            push(
                &mut violations,
                Constraint::Symmetry,
                mu,
                nu,
                &dispersion[mu][nu],
                &dispersion[nu][mu],
            );
            push(
                &mut violations,
                Constraint::DispersionMixing,
                mu,
                nu,
                &ba[mu][nu],
                &(&half * &lowered[mu][nu]),
            );
            let delta = if mu == nu {
                half.clone()
            } else {
                BigRational::zero()
            };
            push(
                &mut violations,
                Constraint::Inverse,
                mu,
                nu,
                &ab[mu][nu],
                &delta,
            );
            push(
                &mut literal,
                Constraint::LiteralChain,
                mu,
                nu,
                &ba[mu][nu],
                &lowered[mu][nu],
            );
        }
    }
    // A vanishing 𝔟 is degenerate: the inverse constraint already fails.
    let holds = violations.is_empty();
    let literal_chain_holds = holds && literal.is_empty();
    violations.extend(literal);
    ReductionReport {
        holds,
        literal_chain_holds,
        violations,
    }
}

/// Diagonal solution `𝔞_μ = η_μ𝔟_μ/(2𝓑_μ)` with `𝔞_μ𝔟_μ = ½`, given `𝓑_μ`
/// and `𝔟_μ` chosen so that the product is rational.
pub fn diagonal_solution(
    dispersion: &[BigRational],
    b: &[BigRational],
    metric: Metric,
) -> (
    Vec<Vec<BigRational>>,
    Vec<Vec<BigRational>>,
    Vec<Vec<BigRational>>,
) {
    let n = metric.dim();
    let diag = |v: Vec<BigRational>| -> Vec<Vec<BigRational>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            v[i].clone()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect()
    };
    let two = BigRational::from_integer(2.into());
    let a: Vec<BigRational> = (0..n)
        .map(|m| {
            let eta = BigRational::from_integer(metric.diag(m).into());
            eta * &b[m] / (&two * &dispersion[m])
        })
        .collect();
    (diag(dispersion.to_vec()), diag(a), diag(b.to_vec()))
}
