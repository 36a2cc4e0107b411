//! Transformation law of the generators under a linear canonical map.
//!
//! Given a rational (pseudo-)symplectic matrix `S = [[Π, Ξ], [Θ, Λ]]` acting
//! on row vectors, `(𝔭' 𝔵') = (𝔭 𝔵)·S`, each generator built from the primed
//! operators is expanded back over the unprimed generator basis.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::closure::{basis_labels, generator_span, BasisLabel};
use super::field::{GaussianRational, Scalar};
use super::generators::GeneratorKind;
use super::poly::{Algebra, WeylPolynomial};
use super::WeylError;
use crate::metric::Metric;

/// Exact `2N × 2N` rational matrix in block layout `[[Π, Ξ], [Θ, Λ]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalSymplectic {
    metric: Metric,
    entries: Vec<Vec<BigRational>>,
}

impl RationalSymplectic {
    /// Validates shape and the exact condition `Sᵗ J_η S = J_η`.
    pub fn new(metric: Metric, entries: Vec<Vec<BigRational>>) -> Result<Self, WeylError> {
        let n2 = 2 * metric.dim();
        if entries.len() != n2 {
            return Err(WeylError::DimensionMismatch {
                expected: n2,
                got: entries.len(),
            });
        }
        if let Some(row) = entries.iter().find(|r| r.len() != n2) {
            return Err(WeylError::DimensionMismatch {
                expected: n2,
                got: row.len(),
            });
        }
        let s = Self { metric, entries };
        let defect = s.symplectic_defect();
        if let Some((r, c, v)) = defect {
            return Err(WeylError::NotSymplectic(format!(
                "(SᵗJS − J)[{r}][{c}] = {v}"
            )));
        }
        Ok(s)
    }

    /// `N = 1` matrix `[[Π, Ξ], [Θ, Λ]]`.
    pub fn sl2(
        pi: BigRational,
        xi: BigRational,
        theta: BigRational,
        lambda: BigRational,
    ) -> Result<Self, WeylError> {
        Self::new(
            Metric::euclidean(1),
            vec![vec![pi, xi], vec![theta, lambda]],
        )
    }

    pub fn identity(metric: Metric) -> Self {
        let n2 = 2 * metric.dim();
        let entries = (0..n2)
            .map(|r| {
                (0..n2)
                    .map(|c| {
                        if r == c {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Self { metric, entries }
    }

    /// Nearby exact `SL(2)` element: Π, Ξ, Θ are rounded to the best rational
    /// approximants with denominator at most `max_denom`, and the remaining
    /// entry is solved from `ΠΛ − ΘΞ = 1` so the result is exactly unimodular.
    pub fn approximate_sl2(m: [[f64; 2]; 2], max_denom: i64) -> Result<Self, WeylError> {
        let [[pi, xi], [theta, lambda]] = m;
        if pi.abs() >= lambda.abs() {
            let (p, x, t) = (
                best_rational(pi, max_denom),
                best_rational(xi, max_denom),
                best_rational(theta, max_denom),
            );
            let l = (BigRational::one() + &t * &x) / &p;
            Self::sl2(p, x, t, l)
        } else {
            let (x, t, l) = (
                best_rational(xi, max_denom),
                best_rational(theta, max_denom),
                best_rational(lambda, max_denom),
            );
            let p = (BigRational::one() + &t * &x) / &l;
            Self::sl2(p, x, t, l)
        }
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn entry(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r][c]
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|v| v.to_f64().unwrap_or(f64::NAN)).collect())
            .collect()
    }

    /// Exact product `self · rhs`.
    pub fn compose(&self, rhs: &Self) -> Result<Self, WeylError> {
        if self.metric != rhs.metric {
            return Err(WeylError::ConventionMismatch);
        }
        let n2 = self.entries.len();
        let entries = (0..n2)
            .map(|r| {
                (0..n2)
                    .map(|c| {
                        (0..n2).fold(BigRational::zero(), |acc, k| {
                            acc + &self.entries[r][k] * &rhs.entries[k][c]
                        })
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            metric: self.metric,
            entries,
        })
    }

    fn symplectic_defect(&self) -> Option<(usize, usize, BigRational)> {
        let n = self.metric.dim();
        let n2 = 2 * n;
        let j = |r: usize, c: usize| -> BigRational {
            let v = if r < n && c >= n {
                self.metric.entry(r, c - n)
            } else if r >= n && c < n {
                -self.metric.entry(r - n, c)
            } else {
                0
            };
            BigRational::from_integer(BigInt::from(v))
        };
        // (JS)[k][c]
        let js: Vec<Vec<BigRational>> = (0..n2)
            .map(|k| {
                (0..n2)
                    .map(|c| {
                        (0..n2).fold(BigRational::zero(), |acc, l| {
                            acc + j(k, l) * &self.entries[l][c]
                        })
                    })
                    .collect()
            })
            .collect();
        for r in 0..n2 {
            for c in 0..n2 {
                let v = (0..n2).fold(BigRational::zero(), |acc, k| {
                    acc + &self.entries[k][r] * &js[k][c]
                }) - j(r, c);
                if !v.is_zero() {
                    return Some((r, c, v));
                }
            }
        }
        None
    }
}

/// Best rational approximation with bounded denominator (continued fractions).
pub fn best_rational(x: f64, max_denom: i64) -> BigRational {
    assert!(x.is_finite(), "cannot rationalize {x}");
    let (mut h0, mut h1): (i128, i128) = (0, 1);
    let (mut k0, mut k1): (i128, i128) = (1, 0);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_denom as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = r - a;
        if frac.abs() < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    BigRational::new(BigInt::from(h1), BigInt::from(k1))
}

/// Element `Σ_{μν} (θ₊^{μν}𝖇⁺_{μν} + θ₋^{μν}𝖇⁻_{μν} + θ×^{μν}𝖇ˣ_{μν})` with
/// θ₊, θ₋ symmetric and the sums running over all index pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement {
    pub metric: Metric,
    pub theta_plus: Vec<Vec<GaussianRational>>,
    pub theta_minus: Vec<Vec<GaussianRational>>,
    pub theta_cross: Vec<Vec<GaussianRational>>,
}

impl AlgebraElement {
    pub fn zero(metric: Metric) -> Self {
        let n = metric.dim();
        let z = vec![vec![GaussianRational::zero(); n]; n];
        Self {
            metric,
            theta_plus: z.clone(),
            theta_minus: z.clone(),
            theta_cross: z,
        }
    }

    /// From coordinates over [`basis_labels`]; an off-diagonal symmetric basis
    /// element contributes half its coordinate to each of θ^{μν} and θ^{νμ}.
    pub fn from_basis_coordinates(metric: Metric, coords: &[GaussianRational]) -> Self {
        let mut out = Self::zero(metric);
        let half = GaussianRational::from_ratio(1, 2);
        for (label, c) in basis_labels(metric.dim()).iter().zip(coords) {
            let BasisLabel { kind, mu, nu } = *label;
            match kind {
                GeneratorKind::Cross => out.theta_cross[mu][nu] = c.clone(),
                GeneratorKind::Plus | GeneratorKind::Minus => {
                    let target = if kind == GeneratorKind::Plus {
                        &mut out.theta_plus
                    } else {
                        &mut out.theta_minus
                    };
                    if mu == nu {
                        target[mu][mu] = c.clone();
                    } else {
                        let h = &half * c;
                        target[mu][nu] = h.clone();
                        target[nu][mu] = h;
                    }
                }
            }
        }
        out
    }

    pub fn to_basis_coordinates(&self) -> Vec<GaussianRational> {
        basis_labels(self.metric.dim())
            .iter()
            .map(|l| match l.kind {
                GeneratorKind::Cross => self.theta_cross[l.mu][l.nu].clone(),
                GeneratorKind::Plus | GeneratorKind::Minus => {
                    let m = if l.kind == GeneratorKind::Plus {
                        &self.theta_plus
                    } else {
                        &self.theta_minus
                    };
                    if l.mu == l.nu {
                        m[l.mu][l.mu].clone()
                    } else {
                        &m[l.mu][l.nu] + &m[l.nu][l.mu]
                    }
                }
            })
            .collect()
    }

    /// `(λ, μ, ν)` for `N = 1`.
    pub fn triple(&self) -> Option<[GaussianRational; 3]> {
        (self.metric.dim() == 1).then(|| {
            [
                self.theta_plus[0][0].clone(),
                self.theta_minus[0][0].clone(),
                self.theta_cross[0][0].clone(),
            ]
        })
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.metric.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                self.theta_plus[i][j] == self.theta_plus[j][i]
                    && self.theta_minus[i][j] == self.theta_minus[j][i]
            })
        })
    }
}

/// `(𝔭'_μ, 𝔵'_μ)` for `(𝔭' 𝔵') = (𝔭 𝔵)·S`.
pub fn primed_operators(
    algebra: &Algebra,
    s: &RationalSymplectic,
) -> (Vec<WeylPolynomial>, Vec<WeylPolynomial>) {
    let n = algebra.dim();
    let column = |c: usize| -> WeylPolynomial {
        let mut acc = algebra.zero();
        for nu in 0..n {
            let a = Scalar::from(s.entry(nu, c).clone());
            let b = Scalar::from(s.entry(n + nu, c).clone());
            acc = &acc + &(&algebra.p(nu).scale(&a) + &algebra.x(nu).scale(&b));
        }
        acc
    };
    let p = (0..n).map(column).collect();
    let x = (0..n).map(|mu| column(n + mu)).collect();
    (p, x)
}

fn generator_from(
    kind: GeneratorKind,
    p: &[WeylPolynomial],
    x: &[WeylPolynomial],
    mu: usize,
    nu: usize,
) -> WeylPolynomial {
    let body = match kind {
        GeneratorKind::Plus => &(&p[mu] * &p[nu]) + &(&x[mu] * &x[nu]),
        GeneratorKind::Minus => &(&p[mu] * &p[nu]) - &(&x[mu] * &x[nu]),
        GeneratorKind::Cross => &(&p[mu] * &x[nu]) + &(&x[nu] * &p[mu]),
    };
    body.scale(&Scalar::from_ratio(1, 4))
}

/// Substitutes the primed operators into 𝖇^kind_{μν}, normal-orders, and
/// expands the result exactly over the unprimed generator basis.
pub fn transform_generators(
    algebra: &Algebra,
    s: &RationalSymplectic,
    label: BasisLabel,
) -> Result<AlgebraElement, WeylError> {
    if s.metric() != algebra.metric {
        return Err(WeylError::ConventionMismatch);
    }
    algebra.check_index(label.mu)?;
    algebra.check_index(label.nu)?;
    let (p, x) = primed_operators(algebra, s);
    let image = generator_from(label.kind, &p, &x, label.mu, label.nu);
    let (_, span) = generator_span(algebra)?;
    let coords = span.solve(&image)?;
    let coords = coords
        .into_iter()
        .map(|c| {
            c.as_gaussian()
                .cloned()
                .ok_or_else(|| WeylError::SpanFailure {
                    residual: format!("irrational coefficient {c}"),
                })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AlgebraElement::from_basis_coordinates(
        algebra.metric,
        &coords,
    ))
}

/// Coefficient matrix `T` with `𝖇_i ↦ Σ_j T_{ij} 𝖇_j`, rows in basis order.
pub fn transformation_matrix(
    algebra: &Algebra,
    s: &RationalSymplectic,
) -> Result<Vec<Vec<GaussianRational>>, WeylError> {
    basis_labels(algebra.dim())
        .into_iter()
        .map(|l| transform_generators(algebra, s, l).map(|e| e.to_basis_coordinates()))
        .collect()
}

/// The printed one-dimensional transformation rows, as coefficient triples
/// `(𝖇⁺, 𝖇⁻, 𝖇ˣ)` evaluated at `(Π, Ξ, Θ, Λ)`.
pub fn printed_sl2_rows(pi: f64, xi: f64, theta: f64, lambda: f64) -> [[f64; 3]; 3] {
    [
        [
            0.5 * (pi * pi + theta * theta),
            0.5 * (xi * xi - lambda * lambda),
            pi * theta + xi * lambda,
        ],
        [
            0.5 * (pi * pi + theta * theta),
            -0.5 * (xi * xi - lambda * lambda),
            pi * theta - xi * lambda,
        ],
        [
            pi * xi + theta * lambda,
            pi * xi - theta * lambda,
            pi * lambda + theta * xi,
        ],
    ]
}

/// Closed form of the rows the substitution produces for `N = 1`.
pub fn derived_sl2_rows(pi: f64, xi: f64, theta: f64, lambda: f64) -> [[f64; 3]; 3] {
    [
        [
            0.5 * (pi * pi + xi * xi + theta * theta + lambda * lambda),
            0.5 * (pi * pi + xi * xi - theta * theta - lambda * lambda),
            pi * theta + xi * lambda,
        ],
        [
            0.5 * (pi * pi - xi * xi + theta * theta - lambda * lambda),
            0.5 * (pi * pi - xi * xi - theta * theta + lambda * lambda),
            pi * theta - xi * lambda,
        ],
        [
            pi * xi + theta * lambda,
            pi * xi - theta * lambda,
            pi * lambda + theta * xi,
        ],
    ]
}
