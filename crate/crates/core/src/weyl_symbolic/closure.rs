//! Closure of the generator family and its structure constants.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use super::field::GaussianRational;
use super::generators::{build_generator, GeneratorKind};
use super::poly::{commutator, Algebra, WeylPolynomial};
use super::span::SpanBasis;
use super::WeylError;

/// One basis element 𝖇^kind_{μν}. `Plus` and `Minus` are symmetric in their
/// indices and listed once with `mu ≤ nu`; `Cross` appears for every pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BasisLabel {
    pub kind: GeneratorKind,
    pub mu: usize,
    pub nu: usize,
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b{}_{}{}", self.kind, self.mu, self.nu)
    }
}

/// Labels of the independent generators for dimension `dim`.
pub fn basis_labels(dim: usize) -> Vec<BasisLabel> {
    let mut labels = Vec::with_capacity(dim * (2 * dim + 1));
    for kind in [GeneratorKind::Plus, GeneratorKind::Minus] {
        for mu in 0..dim {
            for nu in mu..dim {
                labels.push(BasisLabel { kind, mu, nu });
            }
        }
    }
    for mu in 0..dim {
        for nu in 0..dim {
            labels.push(BasisLabel {
                kind: GeneratorKind::Cross,
                mu,
                nu,
            });
        }
    }
    labels
}

/// Span of the generator basis, ready for exact expansion.
pub fn generator_span(algebra: &Algebra) -> Result<(Vec<BasisLabel>, SpanBasis), WeylError> {
    let labels = basis_labels(algebra.dim());
    let elements = labels
        .iter()
        .map(|l| build_generator(algebra, l.kind, l.mu, l.nu))
        .collect::<Result<Vec<_>, _>>()?;
    let span = SpanBasis::new(labels.iter().map(|l| l.to_string()).collect(), elements)?;
    Ok((labels, span))
}

/// `[e_i, e_j] = Σ_k c^k_{ij} e_k`, stored sparsely per ordered pair.
#[derive(Clone, Debug)]
pub struct StructureConstants {
    pub algebra: Algebra,
    pub labels: Vec<BasisLabel>,
    brackets: Vec<Vec<Vec<(usize, GaussianRational)>>>,
}

impl StructureConstants {
    pub fn dimension(&self) -> usize {
        self.labels.len()
    }

    /// Nonzero `(k, c^k_{ij})` pairs.
    pub fn bracket(&self, i: usize, j: usize) -> &[(usize, GaussianRational)] {
        &self.brackets[i][j]
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> GaussianRational {
        self.brackets[i][j]
            .iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(GaussianRational::zero)
    }

    pub fn index_of(&self, label: BasisLabel) -> Option<usize> {
        self.labels.iter().position(|l| *l == label)
    }

    pub fn is_antisymmetric(&self) -> bool {
        let d = self.dimension();
        (0..d).all(|i| {
            (0..d).all(|j| {
                self.brackets[i][j].iter().all(|(k, c)| {
                    let other = self.constant(j, i, *k);
                    (&other + c).is_zero()
                }) && self.brackets[j][i].len() == self.brackets[i][j].len()
            })
        })
    }

    /// Coefficients of `[[e_i,e_j],e_l] + [[e_j,e_l],e_i] + [[e_l,e_i],e_j]`.
    pub fn jacobi_residual(&self, i: usize, j: usize, l: usize) -> Vec<GaussianRational> {
        let mut acc = vec![GaussianRational::zero(); self.dimension()];
        for (a, b, c) in [(i, j, l), (j, l, i), (l, i, j)] {
            for (k, ck) in &self.brackets[a][b] {
                for (m, cm) in &self.brackets[*k][c] {
                    acc[*m] += &(ck * cm);
                }
            }
        }
        acc
    }

    /// True when the Jacobi identity holds exactly for every triple.
    pub fn jacobi_holds(&self) -> bool {
        let d = self.dimension();
        (0..d).all(|i| {
            (i + 1..d).all(|j| {
                (j + 1..d).all(|l| self.jacobi_residual(i, j, l).iter().all(Zero::is_zero))
            })
        })
    }
}

/// Brackets every pair of basis generators, checks that each result lies in
/// their span, and returns the exact structure constants.
pub fn closure_and_constants(algebra: &Algebra) -> Result<StructureConstants, WeylError> {
    let (labels, span) = generator_span(algebra)?;
    let elements: &[WeylPolynomial] = span.elements();
    let d = labels.len();
    let mut brackets = vec![vec![Vec::new(); d]; d];
    for i in 0..d {
        for j in (i + 1)..d {
            let c = commutator(&elements[i], &elements[j])?;
            let e = span.expand(&c)?;
            if !e.in_span() {
                return Err(WeylError::ClosureFailure {
                    lhs: labels[i].to_string(),
                    rhs: labels[j].to_string(),
                    residual: e.residual.to_string(),
                });
            }
            let mut forward = Vec::new();
            let mut backward = Vec::new();
            for (k, coeff) in e.coefficients.into_iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                let g = coeff
                    .as_gaussian()
                    .cloned()
                    .ok_or_else(|| WeylError::ClosureFailure {
                        lhs: labels[i].to_string(),
                        rhs: labels[j].to_string(),
                        residual: format!("irrational structure constant {coeff}"),
                    })?;
                backward.push((k, -g.clone()));
                forward.push((k, g));
            }
            brackets[i][j] = forward;
            brackets[j][i] = backward;
        }
    }
    Ok(StructureConstants {
        algebra: *algebra,
        labels,
        brackets,
    })
}
