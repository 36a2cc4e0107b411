//! SL(2, ℝ) and pseudo-symplectic matrices, their Lie algebra and
//! exponential maps.
//!
//! Matrices act on row vectors of operators, `(𝔭' 𝔵') = (𝔭 𝔵)·S`, so the
//! composite "apply `S₁` then `S₂`" is `S₁·S₂`.

use nalgebra::{DMatrix, SVD};
use serde::{Deserialize, Serialize};

use crate::metric::Metric;

pub const CONSTRUCTION_TOL: f64 = 1e-12;
pub const EXPONENTIAL_TOL: f64 = 1e-10;
pub const COMPOSITION_TOL: f64 = 1e-9;

const SERIES_ORDER: usize = 16;
const SCALING_THRESHOLD: f64 = 0.5;
const SMALL_ARG: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GroupError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not traceless: trace {0}")]
    NotTraceless(f64),
    #[error("algebra constraint violated: {0}")]
    ConstraintViolation(String),
    #[error("metrics differ")]
    MetricMismatch,
    #[error("{0} must be symmetric")]
    NotSymmetric(&'static str),
}

/// Parameters `(θ₊, θ₋, θ×)`.
///
/// `Single` follows the one-dimensional convention `[𝔵, 𝔭] = i`; `Tensor`
/// follows the multidimensional convention `[𝔭_μ, 𝔵_ν] = iη_{μν}`. The two
/// differ by an overall sign of the algebra matrix when `N = 1`.
#[derive(Clone, Debug, PartialEq)]
pub enum ThetaAngles {
    Single {
        theta_plus: f64,
        theta_minus: f64,
        theta_cross: f64,
    },
    Tensor {
        theta_plus: DMatrix<f64>,
        theta_minus: DMatrix<f64>,
        theta_cross: DMatrix<f64>,
    },
}

impl ThetaAngles {
    pub fn single(theta_plus: f64, theta_minus: f64, theta_cross: f64) -> Self {
        Self::Single {
            theta_plus,
            theta_minus,
            theta_cross,
        }
    }

    pub fn tensor(
        theta_plus: DMatrix<f64>,
        theta_minus: DMatrix<f64>,
        theta_cross: DMatrix<f64>,
    ) -> Result<Self, GroupError> {
        let n = theta_plus.nrows();
        for m in [&theta_plus, &theta_minus, &theta_cross] {
            if m.nrows() != n || m.ncols() != n {
                return Err(GroupError::DimensionMismatch {
                    expected: n,
                    got: m.nrows().max(m.ncols()),
                });
            }
        }
        if theta_plus != theta_plus.transpose() {
            return Err(GroupError::NotSymmetric("theta_plus"));
        }
        if theta_minus != theta_minus.transpose() {
            return Err(GroupError::NotSymmetric("theta_minus"));
        }
        Ok(Self::Tensor {
            theta_plus,
            theta_minus,
            theta_cross,
        })
    }

    pub fn zero_tensor(n: usize) -> Self {
        let z = DMatrix::zeros(n, n);
        Self::Tensor {
            theta_plus: z.clone(),
            theta_minus: z.clone(),
            theta_cross: z,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Single { .. } => 1,
            Self::Tensor { theta_plus, .. } => theta_plus.nrows(),
        }
    }

    /// Largest absolute angle.
    pub fn max_abs(&self) -> f64 {
        match self {
            Self::Single {
                theta_plus,
                theta_minus,
                theta_cross,
            } => theta_plus
                .abs()
                .max(theta_minus.abs())
                .max(theta_cross.abs()),
            Self::Tensor {
                theta_plus,
                theta_minus,
                theta_cross,
            } => theta_plus
                .amax()
                .max(theta_minus.amax())
                .max(theta_cross.amax()),
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        match self {
            Self::Single {
                theta_plus,
                theta_minus,
                theta_cross,
            } => Self::single(s * theta_plus, s * theta_minus, s * theta_cross),
            Self::Tensor {
                theta_plus,
                theta_minus,
                theta_cross,
            } => Self::Tensor {
                theta_plus: theta_plus * s,
                theta_minus: theta_minus * s,
                theta_cross: theta_cross * s,
            },
        }
    }

    /// Sum of two parameter sets of the same variant and dimension.
    pub fn add(&self, other: &Self) -> Result<Self, GroupError> {
        match (self, other) {
            (
                Self::Single {
                    theta_plus: a,
                    theta_minus: b,
                    theta_cross: c,
                },
                Self::Single {
                    theta_plus: d,
                    theta_minus: e,
                    theta_cross: f,
                },
            ) => Ok(Self::single(a + d, b + e, c + f)),
            (
                Self::Tensor {
                    theta_plus: a,
                    theta_minus: b,
                    theta_cross: c,
                },
                Self::Tensor {
                    theta_plus: d,
                    theta_minus: e,
                    theta_cross: f,
                },
            ) if a.nrows() == d.nrows() => Ok(Self::Tensor {
                theta_plus: a + d,
                theta_minus: b + e,
                theta_cross: c + f,
            }),
            _ => Err(GroupError::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            }),
        }
    }
}

/// The JSON form `{dim, signature, theta_plus, theta_minus, theta_cross}`
/// with row-major nested arrays. `dim = 1` maps to [`ThetaAngles::Single`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnglesInput {
    pub dim: usize,
    pub signature: [usize; 2],
    pub theta_plus: Vec<Vec<f64>>,
    pub theta_minus: Vec<Vec<f64>>,
    pub theta_cross: Vec<Vec<f64>>,
}

impl AnglesInput {
    pub fn metric(&self) -> Result<Metric, GroupError> {
        let m = Metric::new(self.signature[0], self.signature[1]).map_err(|_| {
            GroupError::DimensionMismatch {
                expected: self.dim,
                got: 0,
            }
        })?;
        if m.dim() != self.dim {
            return Err(GroupError::DimensionMismatch {
                expected: self.dim,
                got: m.dim(),
            });
        }
        Ok(m)
    }

    pub fn angles(&self) -> Result<ThetaAngles, GroupError> {
        let n = self.dim;
        let mat = |rows: &Vec<Vec<f64>>| -> Result<DMatrix<f64>, GroupError> {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(GroupError::DimensionMismatch {
                    expected: n,
                    got: rows.len(),
                });
            }
            Ok(DMatrix::from_fn(n, n, |r, c| rows[r][c]))
        };
        let (p, m, x) = (
            mat(&self.theta_plus)?,
            mat(&self.theta_minus)?,
            mat(&self.theta_cross)?,
        );
        if n == 1 {
            Ok(ThetaAngles::single(p[(0, 0)], m[(0, 0)], x[(0, 0)]))
        } else {
            ThetaAngles::tensor(p, m, x)
        }
    }
}

/// Element `𝓜 = [[𝓜₁, 𝓜₃], [𝓜₂, 𝓜₄]]` of `𝔰𝔭(2N₊, 2N₋)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraMatrix {
    metric: Metric,
    matrix: DMatrix<f64>,
}

impl AlgebraMatrix {
    /// Validates `𝓜₂ᵗ = η𝓜₂η`, `𝓜₃ᵗ = η𝓜₃η`, `𝓜₄ = −η𝓜₁ᵗη` within
    /// [`CONSTRUCTION_TOL`].
    pub fn new(metric: Metric, matrix: DMatrix<f64>) -> Result<Self, GroupError> {
        let n2 = 2 * metric.dim();
        if matrix.nrows() != n2 || matrix.ncols() != n2 {
            return Err(GroupError::DimensionMismatch {
                expected: n2,
                got: matrix.nrows(),
            });
        }
        let m = Self { metric, matrix };
        let r = m.constraint_residual();
        if r > CONSTRUCTION_TOL {
            return Err(GroupError::ConstraintViolation(format!(
                "block residual {r}"
            )));
        }
        Ok(m)
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    fn block(&self, r: usize, c: usize) -> DMatrix<f64> {
        let n = self.dim();
        self.matrix.view((r * n, c * n), (n, n)).into_owned()
    }

    pub fn m1(&self) -> DMatrix<f64> {
        self.block(0, 0)
    }

    /// Lower-left block, the coefficient of `𝔵` in `𝔭'` at first order.
    pub fn m2(&self) -> DMatrix<f64> {
        self.block(1, 0)
    }

    /// Upper-right block.
    pub fn m3(&self) -> DMatrix<f64> {
        self.block(0, 1)
    }

    pub fn m4(&self) -> DMatrix<f64> {
        self.block(1, 1)
    }

    /// Largest entry of the three block-constraint residuals.
    pub fn constraint_residual(&self) -> f64 {
        let eta = self.metric.matrix();
        let (m1, m2, m3, m4) = (self.m1(), self.m2(), self.m3(), self.m4());
        let r2 = (m2.transpose() - &eta * &m2 * &eta).amax();
        let r3 = (m3.transpose() - &eta * &m3 * &eta).amax();
        let r4 = (m4 + &eta * m1.transpose() * &eta).amax();
        r2.max(r3).max(r4)
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace()
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            metric: self.metric,
            matrix: &self.matrix * s,
        }
    }

    /// Each block transposed in place.
    pub fn block_transpose(&self) -> Self {
        let n = self.dim();
        let mut out = self.matrix.clone();
        for (r, c) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let b = self.block(r, c).transpose();
            out.view_mut((r * n, c * n), (n, n)).copy_from(&b);
        }
        Self {
            metric: self.metric,
            matrix: out,
        }
    }
}

/// `𝓜` from the angles. `Single`: `½[[−θ×, θ₊+θ₋], [θ₋−θ₊, θ×]]`.
/// `Tensor`: `½[[ηθ×ᵗ, −η(θ₊+θ₋)], [η(θ₊−θ₋), −ηθ×]]`.
pub fn from_angles(angles: &ThetaAngles, metric: Metric) -> Result<AlgebraMatrix, GroupError> {
    if angles.dim() != metric.dim() {
        return Err(GroupError::DimensionMismatch {
            expected: metric.dim(),
            got: angles.dim(),
        });
    }
    match angles {
        ThetaAngles::Single {
            theta_plus: p,
            theta_minus: m,
            theta_cross: x,
        } => {
            let mat = DMatrix::from_row_slice(2, 2, &[-x, p + m, m - p, *x]) * 0.5;
            AlgebraMatrix::new(metric, mat)
        }
        ThetaAngles::Tensor {
            theta_plus: p,
            theta_minus: m,
            theta_cross: x,
        } => {
            let n = metric.dim();
            let eta = metric.matrix();
            let mut mat = DMatrix::zeros(2 * n, 2 * n);
            mat.view_mut((0, 0), (n, n))
                .copy_from(&(&eta * x.transpose() * 0.5));
            mat.view_mut((0, n), (n, n))
                .copy_from(&(&eta * (p + m) * -0.5));
            mat.view_mut((n, 0), (n, n))
                .copy_from(&(&eta * (p - m) * 0.5));
            mat.view_mut((n, n), (n, n)).copy_from(&(&eta * x * -0.5));
            AlgebraMatrix::new(metric, mat)
        }
    }
}

/// `2N × 2N` matrix `[[Π, Ξ], [Θ, Λ]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticMatrix {
    metric: Metric,
    matrix: DMatrix<f64>,
}

#[derive(Serialize)]
pub struct SymplecticBlocksJson {
    #[serde(rename = "Pi")]
    pub pi: Vec<Vec<f64>>,
    #[serde(rename = "Xi")]
    pub xi: Vec<Vec<f64>>,
    #[serde(rename = "Theta")]
    pub theta: Vec<Vec<f64>>,
    #[serde(rename = "Lambda")]
    pub lambda: Vec<Vec<f64>>,
}

impl SymplecticMatrix {
    /// Wraps a matrix without checking the invariant; see [`is_symplectic`].
    pub fn from_matrix(metric: Metric, matrix: DMatrix<f64>) -> Result<Self, GroupError> {
        let n2 = 2 * metric.dim();
        if matrix.nrows() != n2 || matrix.ncols() != n2 {
            return Err(GroupError::DimensionMismatch {
                expected: n2,
                got: matrix.nrows(),
            });
        }
        Ok(Self { metric, matrix })
    }

    /// Checked constructor: rejects matrices whose residual exceeds `tol`.
    pub fn new(metric: Metric, matrix: DMatrix<f64>, tol: f64) -> Result<Self, GroupError> {
        let s = Self::from_matrix(metric, matrix)?;
        let r = s.residual();
        if r >= tol {
            return Err(GroupError::ConstraintViolation(format!(
                "symplectic residual {r}"
            )));
        }
        Ok(s)
    }

    pub fn identity(metric: Metric) -> Self {
        let n2 = 2 * metric.dim();
        Self {
            metric,
            matrix: DMatrix::identity(n2, n2),
        }
    }

    /// `[[Π, Ξ], [Θ, Λ]]` for `N = 1`.
    pub fn sl2(pi: f64, xi: f64, theta: f64, lambda: f64) -> Self {
        Self {
            metric: Metric::euclidean(1),
            matrix: DMatrix::from_row_slice(2, 2, &[pi, xi, theta, lambda]),
        }
    }

    /// Rotation mixing 𝔭 and 𝔵 by angle `alpha`.
    pub fn rotation(alpha: f64) -> Self {
        let (s, c) = alpha.sin_cos();
        Self::sl2(c, s, -s, c)
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn dim(&self) -> usize {
        self.metric.dim()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    fn block(&self, r: usize, c: usize) -> DMatrix<f64> {
        let n = self.dim();
        self.matrix.view((r * n, c * n), (n, n)).into_owned()
    }

    pub fn pi(&self) -> DMatrix<f64> {
        self.block(0, 0)
    }

    pub fn xi(&self) -> DMatrix<f64> {
        self.block(0, 1)
    }

    pub fn theta(&self) -> DMatrix<f64> {
        self.block(1, 0)
    }

    pub fn lambda(&self) -> DMatrix<f64> {
        self.block(1, 1)
    }

    /// `‖Sᵗ J_η S − J_η‖_max`
    pub fn residual(&self) -> f64 {
        let j = self.metric.symplectic_form();
        (self.matrix.transpose() * &j * &self.matrix - j).amax()
    }

    /// `ΠΛ − ΘΞ` for `N = 1`.
    pub fn det(&self) -> f64 {
        self.matrix.determinant()
    }

    pub fn blocks_json(&self) -> SymplecticBlocksJson {
        let rows = |m: DMatrix<f64>| -> Vec<Vec<f64>> {
            (0..m.nrows())
                .map(|r| (0..m.ncols()).map(|c| m[(r, c)] + 0.0).collect())
                .collect()
        };
        SymplecticBlocksJson {
            pi: rows(self.pi()),
            xi: rows(self.xi()),
            theta: rows(self.theta()),
            lambda: rows(self.lambda()),
        }
    }
}

pub fn is_symplectic(s: &SymplecticMatrix, tol: f64) -> bool {
    assert!(tol > 0.0, "tolerance must be positive");
    s.residual() < tol
}

/// `S₁·S₂`: apply `S₁`, then `S₂`.
pub fn compose(
    s1: &SymplecticMatrix,
    s2: &SymplecticMatrix,
) -> Result<SymplecticMatrix, GroupError> {
    if s1.metric != s2.metric {
        return Err(GroupError::DimensionMismatch {
            expected: s1.dim(),
            got: s2.dim(),
        });
    }
    Ok(SymplecticMatrix {
        metric: s1.metric,
        matrix: &s1.matrix * &s2.matrix,
    })
}

/// `S⁻¹ = J_η⁻¹ Sᵗ J_η`, with `J_η⁻¹ = −J_η`.
pub fn invert(s: &SymplecticMatrix) -> SymplecticMatrix {
    let j = s.metric.symplectic_form();
    SymplecticMatrix {
        metric: s.metric,
        matrix: -(&j * s.matrix.transpose() * &j),
    }
}

fn sinc(x: f64) -> f64 {
    if x.abs() < SMALL_ARG {
        1.0 - x * x / 6.0 + x.powi(4) / 120.0
    } else {
        x.sin() / x
    }
}

fn sinhc(x: f64) -> f64 {
    if x.abs() < SMALL_ARG {
        1.0 + x * x / 6.0 + x.powi(4) / 120.0
    } else {
        x.sinh() / x
    }
}

/// Closed-form exponential of a traceless `2 × 2` matrix via
/// `𝓜² = −det(𝓜)·I`.
pub fn exp_sl2(m: &AlgebraMatrix) -> Result<SymplecticMatrix, GroupError> {
    if m.dim() != 1 {
        return Err(GroupError::DimensionMismatch {
            expected: 1,
            got: m.dim(),
        });
    }
    let tr = m.trace();
    if tr.abs() > CONSTRUCTION_TOL {
        return Err(GroupError::NotTraceless(tr));
    }
    let a = &m.matrix;
    let d = a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)];
    let (c, s) = if d.abs() < 1e-14 {
        (1.0, 1.0)
    } else if d > 0.0 {
        let w = d.sqrt();
        (w.cos(), sinc(w))
    } else {
        let w = (-d).sqrt();
        (w.cosh(), sinhc(w))
    };
    let matrix = DMatrix::identity(2, 2) * c + a * s;
    Ok(SymplecticMatrix {
        metric: m.metric,
        matrix,
    })
}

/// Matrix exponential by scaling and squaring with a degree-16 Taylor kernel.
pub fn expm(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let norm = (0..n)
        .map(|r| a.row(r).iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let mut squarings = 0u32;
    if norm > SCALING_THRESHOLD {
        squarings = (norm / SCALING_THRESHOLD).log2().ceil() as u32;
    }
    let scaled = a / 2f64.powi(squarings as i32);
    // Horner form of Σ_{k≤16} Aᵏ/k!
    let id = DMatrix::<f64>::identity(n, n);
    let mut acc = id.clone();
    for k in (1..=SERIES_ORDER).rev() {
        acc = &id + &scaled * acc / k as f64;
    }
    for _ in 0..squarings {
        acc = &acc * &acc;
    }
    acc
}

pub fn exp_sp(m: &AlgebraMatrix) -> Result<SymplecticMatrix, GroupError> {
    let r = m.constraint_residual();
    if r > CONSTRUCTION_TOL {
        return Err(GroupError::ConstraintViolation(format!(
            "block residual {r}"
        )));
    }
    Ok(SymplecticMatrix {
        metric: m.metric,
        matrix: expm(&m.matrix),
    })
}

/// First-order behaviour of `exp(h𝓜)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InfinitesimalReport {
    pub h: f64,
    /// `‖exp(h𝓜) − (I + h𝓜)‖_max`
    pub deviation_h: f64,
    /// Same at `h/2`.
    pub deviation_half: f64,
    /// `deviation_h / deviation_half`, ≈ 4 for a second-order remainder;
    /// `None` when both deviations vanish.
    pub ratio: Option<f64>,
    /// Largest entry of the first-order `Θ` block, `h·𝓜₂`.
    pub theta_block_first_order: f64,
    pub second_order: bool,
}

pub fn infinitesimal_check(
    angles: &ThetaAngles,
    metric: Metric,
    h: f64,
) -> Result<InfinitesimalReport, GroupError> {
    assert!(h > 0.0 && h <= 1e-3, "step must lie in (0, 1e-3]");
    let m = from_angles(angles, metric)?;
    let dev = |t: f64| {
        let a = m.matrix() * t;
        let n = a.nrows();
        (expm(&a) - (DMatrix::identity(n, n) + &a)).amax()
    };
    let (d1, d2) = (dev(h), dev(h / 2.0));
    let ratio = (d2 > 0.0).then(|| d1 / d2);
    let second_order = match ratio {
        Some(r) => (3.5..=4.5).contains(&r),
        None => d1 == 0.0,
    };
    Ok(InfinitesimalReport {
        h,
        deviation_h: d1,
        deviation_half: d2,
        ratio,
        theta_block_first_order: (m.m2() * h).amax(),
        second_order,
    })
}

/// Unit parameter sets spanning the angle space for dimension `n`:
/// symmetric units for θ₊, θ₋ and all units for θ×.
pub fn angle_basis(n: usize) -> Vec<ThetaAngles> {
    let z = DMatrix::<f64>::zeros(n, n);
    let sym_unit = |i: usize, j: usize| {
        let mut m = z.clone();
        m[(i, j)] = 1.0;
        m[(j, i)] = 1.0;
        m
    };
    let mut out = Vec::new();
    for slot in 0..2 {
        for i in 0..n {
            for j in i..n {
                let u = sym_unit(i, j);
                let (p, m) = if slot == 0 {
                    (u, z.clone())
                } else {
                    (z.clone(), u)
                };
                out.push(ThetaAngles::Tensor {
                    theta_plus: p,
                    theta_minus: m,
                    theta_cross: z.clone(),
                });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let mut x = z.clone();
            x[(i, j)] = 1.0;
            out.push(ThetaAngles::Tensor {
                theta_plus: z.clone(),
                theta_minus: z.clone(),
                theta_cross: x,
            });
        }
    }
    out
}

/// Numerical rank of the images of [`angle_basis`] under [`from_angles`].
pub fn parameter_rank(metric: Metric) -> usize {
    let basis = angle_basis(metric.dim());
    let cols: Vec<DMatrix<f64>> = basis
        .iter()
        .map(|a| from_angles(a, metric).expect("basis matches metric").matrix)
        .collect();
    let len = cols[0].len();
    let stacked = DMatrix::from_fn(len, cols.len(), |r, c| cols[c].as_slice()[r]);
    let svd = SVD::new(stacked, false, false);
    svd.singular_values.iter().filter(|s| **s > 1e-10).count()
}
