//! The unitary side of the correspondence: `U = exp(i(θ₊𝖇⁺ + θ₋𝖇⁻ + θ×𝖇ˣ))`
//! as a truncated matrix, and checks that conjugation by `U` realizes the
//! matrix action on `(𝔭, 𝔵)` and on the generators.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::fock_rep::{
    dispersion_matrices, generator_matrices, quadrature_matrices, FockError, TruncatedOperator,
};
use crate::metric::Metric;
use crate::symplectic_group::{
    angle_basis, exp_sl2, from_angles, AlgebraMatrix, GroupError, SymplecticMatrix, ThetaAngles,
};
use crate::weyl_symbolic::transform::{derived_sl2_rows, printed_sl2_rows};
use crate::weyl_symbolic::{
    build_generator, commutator, transform_generators, Algebra, BasisLabel, Convention,
    GeneratorKind, RationalSymplectic, Scalar, WeylError, WeylPolynomial,
};

pub const MIN_UNITARY_CUTOFF: usize = 16;
pub const MIN_VERIFY_CUTOFF: usize = 32;
pub const UNITARITY_TOL: f64 = 1e-12;
/// Denominator bound for the rational approximant fed to the symbolic law.
pub const RATIONAL_DENOMINATOR: i64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MetaplecticError {
    #[error(transparent)]
    Fock(#[from] FockError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Symbolic(#[from] WeylError),
    #[error("cutoff mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("the unitary representation is one-dimensional; got dimension {0}")]
    NotOneDimensional(usize),
    #[error("dispersion must be positive, got {0}")]
    NonPositiveDispersion(f64),
}

/// Which generators the angles multiply.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    /// `𝖇 = 𝕵/(4𝓑)`: the correspondence with the matrix group is
    /// independent of 𝓑.
    #[default]
    Reduced,
    /// Raw `𝕵`: equivalent to reduced angles scaled by `4𝓑`.
    Dispersion,
}

#[derive(Clone, Debug)]
pub struct UnitaryLCT {
    pub angles: ThetaAngles,
    pub b: f64,
    pub cutoff: usize,
    pub normalization: Normalization,
    pub u: TruncatedOperator,
}

fn single_angles(angles: &ThetaAngles) -> Result<(f64, f64, f64), MetaplecticError> {
    match angles {
        ThetaAngles::Single {
            theta_plus,
            theta_minus,
            theta_cross,
        } => Ok((*theta_plus, *theta_minus, *theta_cross)),
        other => Err(MetaplecticError::NotOneDimensional(other.dim())),
    }
}

fn hermitian_exp_i(g: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let eig = SymmetricEigen::new(g.clone());
    let v = &eig.eigenvectors;
    let phases = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| Complex64::new(0.0, l).exp()));
    v * phases * v.adjoint()
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

pub fn build_unitary(
    angles: &ThetaAngles,
    b: f64,
    cutoff: usize,
) -> Result<UnitaryLCT, MetaplecticError> {
    build_unitary_with(angles, b, cutoff, Normalization::Reduced)
}

pub fn build_unitary_with(
    angles: &ThetaAngles,
    b: f64,
    cutoff: usize,
    normalization: Normalization,
) -> Result<UnitaryLCT, MetaplecticError> {
    if cutoff < MIN_UNITARY_CUTOFF {
        return Err(FockError::CutoffTooSmall {
            cutoff,
            min: MIN_UNITARY_CUTOFF,
        }
        .into());
    }
    let (tp, tm, tx) = single_angles(angles)?;
    let (gp, gm, gx) = match normalization {
        Normalization::Reduced => {
            if !(b.is_finite() && b > 0.0) {
                return Err(FockError::InvalidDispersion(b).into());
            }
            generator_matrices(cutoff)?
        }
        Normalization::Dispersion => dispersion_matrices(b, cutoff)?,
    };
    let g = gp.matrix * Complex64::from(tp)
        + gm.matrix * Complex64::from(tm)
        + gx.matrix * Complex64::from(tx);
    let u = TruncatedOperator::new("U", hermitian_exp_i(&g));
    Ok(UnitaryLCT {
        angles: angles.clone(),
        b,
        cutoff,
        normalization,
        u,
    })
}

impl UnitaryLCT {
    /// `‖U†U − I‖_max`
    pub fn unitarity_residual(&self) -> f64 {
        let m = &self.u.matrix;
        let n = m.nrows();
        max_abs(&(m.adjoint() * m - DMatrix::identity(n, n)))
    }
}

/// `U·A·U†`
pub fn conjugate(
    u: &UnitaryLCT,
    a: &TruncatedOperator,
) -> Result<TruncatedOperator, MetaplecticError> {
    if a.cutoff() != u.cutoff {
        return Err(MetaplecticError::DimensionMismatch(u.cutoff, a.cutoff()));
    }
    let m = &u.u.matrix;
    Ok(TruncatedOperator::new(
        format!("U {} U†", a.label),
        m * &a.matrix * m.adjoint(),
    ))
}

fn block_residual(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>, block: usize) -> f64 {
    max_abs(&(a - b).view((0, 0), (block, block)).into_owned())
}

fn sl2_entries(s: &SymplecticMatrix) -> [[f64; 2]; 2] {
    let m = s.matrix();
    [[m[(0, 0)], m[(0, 1)]], [m[(1, 0)], m[(1, 1)]]]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HomomorphismReport {
    pub cutoff: usize,
    pub block: usize,
    /// `[[Π, Ξ], [Θ, Λ]]`
    pub symplectic: [[f64; 2]; 2],
    pub residual_p: f64,
    pub residual_x: f64,
    pub max_residual: f64,
    pub tol: f64,
    pub passed: bool,
}

/// Compares `U𝔭U†` with `Π𝔭 + Θ𝔵` and `U𝔵U†` with `Ξ𝔭 + Λ𝔵` on the leading
/// `cutoff/4` block.
pub fn verify_homomorphism(
    angles: &ThetaAngles,
    b: f64,
    cutoff: usize,
    tol: f64,
) -> Result<HomomorphismReport, MetaplecticError> {
    if cutoff < MIN_VERIFY_CUTOFF {
        return Err(FockError::CutoffTooSmall {
            cutoff,
            min: MIN_VERIFY_CUTOFF,
        }
        .into());
    }
    let u = build_unitary(angles, b, cutoff)?;
    let s = exp_sl2(&from_angles(angles, Metric::euclidean(1))?)?;
    let [[pi, xi], [theta, lambda]] = sl2_entries(&s);
    let (p, x) = quadrature_matrices(cutoff)?;
    let up = conjugate(&u, &p)?.matrix;
    let ux = conjugate(&u, &x)?.matrix;
    let c = Complex64::from;
    let expect_p = &p.matrix * c(pi) + &x.matrix * c(theta);
    let expect_x = &p.matrix * c(xi) + &x.matrix * c(lambda);
    let block = cutoff / 4;
    let residual_p = block_residual(&up, &expect_p, block);
    let residual_x = block_residual(&ux, &expect_x, block);
    let max_residual = residual_p.max(residual_x);
    Ok(HomomorphismReport {
        cutoff,
        block,
        symplectic: [[pi, xi], [theta, lambda]],
        residual_p,
        residual_x,
        max_residual,
        tol,
        passed: max_residual < tol,
    })
}

/// One row of the generator transformation law.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeneratorRow {
    pub generator: GeneratorKind,
    /// Coefficients over `(𝖇⁺, 𝖇⁻, 𝖇ˣ)` from exact substitution.
    pub engine: [f64; 3],
    pub derived: [f64; 3],
    pub printed: [f64; 3],
    /// `U𝖇U†` against the engine expansion on the leading block.
    pub numeric_residual: f64,
    pub printed_deviation: f64,
    pub derived_deviation: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BasisTransformationReport {
    pub cutoff: usize,
    pub block: usize,
    pub symplectic: [[f64; 2]; 2],
    pub rows: Vec<GeneratorRow>,
    pub max_residual: f64,
    pub tol: f64,
    pub passed: bool,
}

fn max_diff(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Checks `U𝖇^kU† = Σ_j T_{kj} 𝖇^j` with `T` from exact substitution at a
/// rational approximant of the group element. `passed` reflects the numeric
/// residual only; the printed rows are reported alongside.
pub fn verify_basis_transformation(
    angles: &ThetaAngles,
    b: f64,
    cutoff: usize,
    tol: f64,
) -> Result<BasisTransformationReport, MetaplecticError> {
    if cutoff < MIN_VERIFY_CUTOFF {
        return Err(FockError::CutoffTooSmall {
            cutoff,
            min: MIN_VERIFY_CUTOFF,
        }
        .into());
    }
    let u = build_unitary(angles, b, cutoff)?;
    let s = exp_sl2(&from_angles(angles, Metric::euclidean(1))?)?;
    let entries = sl2_entries(&s);
    let exact = RationalSymplectic::approximate_sl2(entries, RATIONAL_DENOMINATOR)?;
    let f = exact.to_f64();
    let (pi, xi, theta, lambda) = (f[0][0], f[0][1], f[1][0], f[1][1]);
    let printed = printed_sl2_rows(pi, xi, theta, lambda);
    let derived = derived_sl2_rows(pi, xi, theta, lambda);
    let (gp, gm, gx) = generator_matrices(cutoff)?;
    let gens = [&gp.matrix, &gm.matrix, &gx.matrix];
    let algebra = Algebra::one_dim();
    let block = cutoff / 4;
    let mut rows = Vec::with_capacity(3);
    for (k, kind) in GeneratorKind::ALL.into_iter().enumerate() {
        let element = transform_generators(&algebra, &exact, BasisLabel { kind, mu: 0, nu: 0 })?;
        let engine = element
            .triple()
            .expect("one-dimensional element")
            .map(|g| g.to_f64_pair().0);
        let conj = conjugate(&u, &TruncatedOperator::new("b", gens[k].clone()))?.matrix;
        let expansion = gens
            .iter()
            .zip(engine)
            .fold(DMatrix::zeros(cutoff, cutoff), |acc, (g, c)| {
                acc + *g * Complex64::from(c)
            });
        rows.push(GeneratorRow {
            generator: kind,
            engine,
            derived: derived[k],
            printed: printed[k],
            numeric_residual: block_residual(&conj, &expansion, block),
            printed_deviation: max_diff(&engine, &printed[k]),
            derived_deviation: max_diff(&engine, &derived[k]),
        });
    }
    let max_residual = rows.iter().map(|r| r.numeric_residual).fold(0.0, f64::max);
    Ok(BasisTransformationReport {
        cutoff,
        block,
        symplectic: entries,
        rows,
        max_residual,
        tol,
        passed: max_residual < tol,
    })
}

/// Moves generator coefficients from the frame with dispersion `b` to the
/// frame with `b_prime`. Only `𝕵`-normalized coefficients pick up the ratio.
pub fn rescale_frame(
    coeffs: [f64; 3],
    b: f64,
    b_prime: f64,
    normalization: Normalization,
) -> Result<[f64; 3], MetaplecticError> {
    for v in [b, b_prime] {
        if !(v.is_finite() && v > 0.0) {
            return Err(MetaplecticError::NonPositiveDispersion(v));
        }
    }
    Ok(match normalization {
        Normalization::Reduced => coeffs,
        Normalization::Dispersion => coeffs.map(|c| c * b_prime / b),
    })
}

/// Finite-difference derivative of a conjugated quadrature at zero angle,
/// compared with the printed first-order commutator.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FirstOrderCheck {
    pub generator: GeneratorKind,
    pub operator: &'static str,
    /// `[𝖇, A] = c·B` as printed, with `c = i·printed_coefficient`.
    pub printed_coefficient: f64,
    pub printed_target: &'static str,
    /// `‖d(UAU†)/dθ − i·[𝖇, A]_printed‖` on the leading block.
    pub residual_printed: f64,
    /// Same against the matrix commutator `i[𝖇, A]`.
    pub residual_commutator: f64,
    pub printed_holds: bool,
}

// (generator, operator, printed imaginary coefficient, target operator)
const PRINTED_FIRST_ORDER: [(GeneratorKind, &str, f64, &str); 6] = [
    (GeneratorKind::Plus, "p", 0.5, "x"),
    (GeneratorKind::Minus, "p", -0.5, "x"),
    (GeneratorKind::Cross, "p", 0.5, "p"),
    (GeneratorKind::Plus, "x", -0.5, "p"),
    (GeneratorKind::Minus, "x", -0.5, "p"),
    (GeneratorKind::Cross, "x", -0.5, "x"),
];

pub fn first_order_checks(
    cutoff: usize,
    step: f64,
    tol: f64,
) -> Result<Vec<FirstOrderCheck>, MetaplecticError> {
    let (p, x) = quadrature_matrices(cutoff)?;
    let (gp, gm, gx) = generator_matrices(cutoff)?;
    let block = cutoff / 4;
    let mut out = Vec::new();
    for (kind, op, coeff, target) in PRINTED_FIRST_ORDER {
        let unit = |t: f64| match kind {
            GeneratorKind::Plus => ThetaAngles::single(t, 0.0, 0.0),
            GeneratorKind::Minus => ThetaAngles::single(0.0, t, 0.0),
            GeneratorKind::Cross => ThetaAngles::single(0.0, 0.0, t),
        };
        let a = if op == "p" { &p } else { &x };
        let fwd = conjugate(&build_unitary(&unit(step), 1.0, cutoff)?, a)?.matrix;
        let bwd = conjugate(&build_unitary(&unit(-step), 1.0, cutoff)?, a)?.matrix;
        let derivative = (fwd - bwd) / Complex64::from(2.0 * step);
        let g = match kind {
            GeneratorKind::Plus => &gp.matrix,
            GeneratorKind::Minus => &gm.matrix,
            GeneratorKind::Cross => &gx.matrix,
        };
        let comm = (g * &a.matrix - &a.matrix * g) * Complex64::i();
        let t = if target == "p" { &p.matrix } else { &x.matrix };
        // i · (i c) · target = −c · target
        let printed = t * Complex64::from(-coeff);
        let residual_printed = block_residual(&derivative, &printed, block);
        out.push(FirstOrderCheck {
            generator: kind,
            operator: op,
            printed_coefficient: coeff,
            printed_target: target,
            residual_printed,
            residual_commutator: block_residual(&derivative, &comm, block),
            printed_holds: residual_printed < tol,
        });
    }
    Ok(out)
}

/// Outcome of comparing the first-order action of each multidimensional
/// generator, computed symbolically, with the algebra matrix built from the
/// same angles.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TensorActionReport {
    pub metric: [usize; 2],
    pub samples: usize,
    /// Largest entry of `𝓜_symbolic − 𝓜(angles)`.
    pub literal_deviation: f64,
    /// Same with every block of `𝓜(angles)` transposed.
    pub block_transposed_deviation: f64,
    pub literal_holds: bool,
    pub block_transposed_holds: bool,
}

fn angle_generator(algebra: &Algebra, angles: &ThetaAngles) -> Result<WeylPolynomial, WeylError> {
    let ThetaAngles::Tensor {
        theta_plus,
        theta_minus,
        theta_cross,
    } = angles
    else {
        unreachable!("tensor angles expected");
    };
    let n = algebra.dim();
    let mut g = algebra.zero();
    for (kind, theta) in [
        (GeneratorKind::Plus, theta_plus),
        (GeneratorKind::Minus, theta_minus),
        (GeneratorKind::Cross, theta_cross),
    ] {
        for mu in 0..n {
            for nu in 0..n {
                let c = theta[(mu, nu)];
                if c != 0.0 {
                    let gen = build_generator(algebra, kind, mu, nu)?;
                    g = &g + &gen.scale(&Scalar::from_int(c.to_i64().expect("unit angle")));
                }
            }
        }
    }
    Ok(g)
}

/// Linear coefficients `(on 𝔭_ν, on 𝔵_ν)` of a degree-one polynomial.
fn linear_coefficients(poly: &WeylPolynomial, n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut on_p = vec![0.0; n];
    let mut on_x = vec![0.0; n];
    for (m, c) in poly.terms() {
        assert_eq!(m.degree(), 1, "first-order action is linear");
        let (re, im) = c.to_f64_pair();
        assert_eq!(im, 0.0, "first-order action is real");
        if let Some(nu) = m.p.iter().position(|&e| e == 1) {
            on_p[nu] = re;
        } else if let Some(nu) = m.x.iter().position(|&e| e == 1) {
            on_x[nu] = re;
        }
    }
    (on_p, on_x)
}

/// Computes `i[G, 𝔭_ρ]` and `i[G, 𝔵_ρ]` exactly under `[𝔭_μ, 𝔵_ν] = iη_{μν}`
/// for each unit angle, assembles the first-order matrix in the row
/// convention, and compares it with the angle-built algebra matrix.
pub fn tensor_first_order_check(metric: Metric) -> Result<TensorActionReport, MetaplecticError> {
    let n = metric.dim();
    let algebra = Algebra::new(metric, Convention::MomentumPosition);
    let basis = angle_basis(n);
    let mut literal = 0.0f64;
    let mut transposed = 0.0f64;
    for angles in &basis {
        let g = angle_generator(&algebra, angles)?;
        let mut m = DMatrix::<f64>::zeros(2 * n, 2 * n);
        for rho in 0..n {
            for (col, op) in [(rho, algebra.p(rho)), (n + rho, algebra.x(rho))] {
                let action = commutator(&g, &op)?.scale(&Scalar::i());
                let (on_p, on_x) = linear_coefficients(&action, n);
                for nu in 0..n {
                    m[(nu, col)] = on_p[nu];
                    m[(n + nu, col)] = on_x[nu];
                }
            }
        }
        let built: AlgebraMatrix = from_angles(angles, metric)?;
        literal = literal.max((&m - built.matrix()).amax());
        transposed = transposed.max((&m - built.block_transpose().matrix()).amax());
    }
    Ok(TensorActionReport {
        metric: [metric.n_plus, metric.n_minus],
        samples: basis.len(),
        literal_deviation: literal,
        block_transposed_deviation: transposed,
        literal_holds: literal < 1e-12,
        block_transposed_holds: transposed < 1e-12,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_angles_give_identity() {
        let u = build_unitary(&ThetaAngles::single(0.0, 0.0, 0.0), 1.0, 16).unwrap();
        assert!(max_abs(&(u.u.matrix.clone() - DMatrix::identity(16, 16))) < 1e-15);
    }

    #[test]
    fn small_cutoff_rejected() {
        assert!(matches!(
            build_unitary(&ThetaAngles::single(0.1, 0.0, 0.0), 1.0, 8),
            Err(MetaplecticError::Fock(FockError::CutoffTooSmall { .. }))
        ));
    }

    #[test]
    fn rescale_round_trip() {
        let c = [1.0, -2.0, 0.5];
        let up = rescale_frame(c, 1.0, 2.0, Normalization::Dispersion).unwrap();
        assert_eq!(up, [2.0, -4.0, 1.0]);
        assert_eq!(
            rescale_frame(up, 2.0, 1.0, Normalization::Dispersion).unwrap(),
            c
        );
        assert_eq!(
            rescale_frame(c, 1.0, 3.0, Normalization::Reduced).unwrap(),
            c
        );
        assert!(rescale_frame(c, 0.0, 1.0, Normalization::Reduced).is_err());
    }
}
