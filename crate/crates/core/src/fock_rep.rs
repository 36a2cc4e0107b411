//! Truncated matrix representations in the basis `{|n, X, P, 𝒷⟩}`.
//!
//! Every operator here is built in the displaced basis itself, so `X` and `P`
//! never enter the matrix entries. Matrix elements are written from their
//! closed forms rather than by multiplying ladder matrices, which keeps
//! diagonals exact and Hermitian pairs bitwise conjugate.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FockError {
    #[error("cutoff {cutoff} is below the minimum {min}")]
    CutoffTooSmall { cutoff: usize, min: usize },
    #[error("dispersion B must be positive and finite, got {0}")]
    InvalidDispersion(f64),
}

fn check_cutoff(cutoff: usize, min: usize) -> Result<(), FockError> {
    if cutoff < min {
        Err(FockError::CutoffTooSmall { cutoff, min })
    } else {
        Ok(())
    }
}

fn check_b(b: f64) -> Result<(), FockError> {
    if b.is_finite() && b > 0.0 {
        Ok(())
    } else {
        Err(FockError::InvalidDispersion(b))
    }
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn re(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

/// A `cutoff × cutoff` complex matrix with a label.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedOperator {
    pub label: String,
    pub matrix: DMatrix<Complex64>,
}

#[derive(Serialize)]
struct OperatorJson<'a> {
    label: &'a str,
    cutoff: usize,
    entries: Vec<Vec<[f64; 2]>>,
}

impl TruncatedOperator {
    pub fn new(label: impl Into<String>, matrix: DMatrix<Complex64>) -> Self {
        assert!(matrix.is_square(), "truncated operators are square");
        Self {
            label: label.into(),
            matrix,
        }
    }

    fn from_fn(label: &str, cutoff: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        Self::new(label, DMatrix::from_fn(cutoff, cutoff, f))
    }

    pub fn cutoff(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[(row, col)]
    }

    /// Exact equality with the conjugate transpose.
    pub fn is_hermitian(&self) -> bool {
        self.matrix == self.matrix.adjoint()
    }

    /// True when every nonzero entry lies on a listed diagonal offset
    /// (`col − row`).
    pub fn is_banded(&self, offsets: &[isize]) -> bool {
        let n = self.cutoff();
        (0..n).all(|r| {
            (0..n).all(|c| {
                self.matrix[(r, c)] == ZERO || offsets.contains(&(c as isize - r as isize))
            })
        })
    }

    pub fn leading_block(&self, size: usize) -> DMatrix<Complex64> {
        self.matrix.view((0, 0), (size, size)).into_owned()
    }

    pub fn scaled(&self, label: &str, factor: Complex64) -> Self {
        Self::new(label, self.matrix.map(|v| v * factor))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let n = self.cutoff();
        let entries = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        let v = self.matrix[(r, c)];
                        // normalize negative zero for stable output
                        [v.re + 0.0, v.im + 0.0]
                    })
                    .collect()
            })
            .collect();
        serde_json::to_value(OperatorJson {
            label: &self.label,
            cutoff: n,
            entries,
        })
        .expect("plain data serializes")
    }
}

/// `(𝖟̃⁻, 𝖟̃⁺)` with `𝖟̃⁻|n⟩ = √n|n−1⟩`.
pub fn ladder_matrices(cutoff: usize) -> Result<(TruncatedOperator, TruncatedOperator), FockError> {
    check_cutoff(cutoff, 2)?;
    let zm = TruncatedOperator::from_fn("Zminus", cutoff, |r, c| {
        if c == r + 1 {
            re((c as f64).sqrt())
        } else {
            ZERO
        }
    });
    let zp = TruncatedOperator::new("Zplus", zm.matrix.adjoint());
    Ok((zm, zp))
}

/// Reduced momentum and position, `𝔭 = (𝖟̃⁻ + 𝖟̃⁺)/√2` and
/// `𝔵 = i(𝖟̃⁻ − 𝖟̃⁺)/√2`.
pub fn quadrature_matrices(
    cutoff: usize,
) -> Result<(TruncatedOperator, TruncatedOperator), FockError> {
    let (zm, zp) = ladder_matrices(cutoff)?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let p = TruncatedOperator::new("p", (&zm.matrix + &zp.matrix) * re(s));
    let x = TruncatedOperator::new("x", (&zm.matrix - &zp.matrix) * Complex64::new(0.0, s));
    Ok((p, x))
}

/// `(𝕵⁺, 𝕵⁻, 𝕵ˣ)` with `𝕵⁺ = 𝓑(𝖟̃⁻𝖟̃⁺ + 𝖟̃⁺𝖟̃⁻)`,
/// `𝕵⁻ = 𝓑((𝖟̃⁻)² + (𝖟̃⁺)²)`, `𝕵ˣ = i𝓑((𝖟̃⁻)² − (𝖟̃⁺)²)` as truncated
/// products. The last diagonal entry of `𝕵⁺` is `(cutoff−1)𝓑`, since the
/// raising step out of the top level is lost.
pub fn dispersion_matrices(
    b: f64,
    cutoff: usize,
) -> Result<(TruncatedOperator, TruncatedOperator, TruncatedOperator), FockError> {
    check_b(b)?;
    check_cutoff(cutoff, 4)?;
    let top = cutoff - 1;
    let jp = TruncatedOperator::from_fn("Jplus", cutoff, |r, c| {
        if r != c {
            ZERO
        } else {
            let up = if r < top { r + 1 } else { 0 };
            re((r + up) as f64 * b)
        }
    });
    let two_step = |n: usize| (((n + 1) * (n + 2)) as f64).sqrt() * b;
    let jm = TruncatedOperator::from_fn("Jminus", cutoff, |r, c| {
        if c == r + 2 {
            re(two_step(r))
        } else if r == c + 2 {
            re(two_step(c))
        } else {
            ZERO
        }
    });
    let jx = TruncatedOperator::from_fn("Jcross", cutoff, |r, c| {
        if c == r + 2 {
            Complex64::new(0.0, two_step(r))
        } else if r == c + 2 {
            Complex64::new(0.0, -two_step(c))
        } else {
            ZERO
        }
    });
    Ok((jp, jm, jx))
}

/// Reduced generators `𝖇^k = 𝕵^k/(4𝓑)`, independent of 𝓑.
pub fn generator_matrices(
    cutoff: usize,
) -> Result<(TruncatedOperator, TruncatedOperator, TruncatedOperator), FockError> {
    let (jp, jm, jx) = dispersion_matrices(0.25, cutoff)?;
    let rename = |t: TruncatedOperator, l: &str| TruncatedOperator::new(l, t.matrix);
    Ok((
        rename(jp, "bplus"),
        rename(jm, "bminus"),
        rename(jx, "bcross"),
    ))
}

/// `(Σ_p, Σ_x)` with `Σ_p = 𝕵⁺` and `Σ_x = (𝒜/𝓑)𝕵⁺`, `𝒜 = 1/(4𝓑)`.
pub fn sigma_operators(
    b: f64,
    cutoff: usize,
) -> Result<(TruncatedOperator, TruncatedOperator), FockError> {
    let (jp, _, _) = dispersion_matrices(b, cutoff)?;
    let a = 0.25 / b;
    // (2n+1)𝒜 is formed directly so the diagonal does not pick up the
    // rounding of 𝒜/𝓑.
    let top = cutoff - 1;
    let sx = TruncatedOperator::from_fn("SigmaX", cutoff, |r, c| {
        if r != c {
            ZERO
        } else {
            let up = if r < top { r + 1 } else { 0 };
            re((r + up) as f64 * a)
        }
    });
    Ok((TruncatedOperator::new("SigmaP", jp.matrix), sx))
}

fn commutator(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    a * b - b * a
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityResidual {
    pub identity: String,
    /// Max absolute residual on the leading `(cutoff−2)` block.
    pub block_residual: f64,
    /// Max absolute residual over the whole truncated matrix.
    pub full_residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommutatorReport {
    pub cutoff: usize,
    #[serde(rename = "B")]
    pub b: f64,
    pub identities: Vec<IdentityResidual>,
}

impl CommutatorReport {
    pub fn max_block_residual(&self) -> f64 {
        self.identities
            .iter()
            .map(|i| i.block_residual)
            .fold(0.0, f64::max)
    }
}

/// Checks the dispersion-generator brackets and the `𝕵⁺`-ladder brackets as
/// matrix identities, restricted to the leading `(cutoff−2)` block.
pub fn truncated_commutator_check(cutoff: usize, b: f64) -> Result<CommutatorReport, FockError> {
    check_cutoff(cutoff, 6)?;
    let (jp, jm, jx) = dispersion_matrices(b, cutoff)?;
    let (zm, zp) = ladder_matrices(cutoff)?;
    let (jp, jm, jx, zm, zp) = (&jp.matrix, &jm.matrix, &jx.matrix, &zm.matrix, &zp.matrix);
    let four_i_b = Complex64::new(0.0, 4.0 * b);
    let cases: Vec<(&str, DMatrix<Complex64>)> = vec![
        (
            "[Jplus,Jminus] = 4iB Jcross",
            commutator(jp, jm) - jx * four_i_b,
        ),
        (
            "[Jminus,Jcross] = -4iB Jplus",
            commutator(jm, jx) + jp * four_i_b,
        ),
        (
            "[Jcross,Jplus] = 4iB Jminus",
            commutator(jx, jp) - jm * four_i_b,
        ),
        (
            "[Jplus,Zminus] = -2B Zminus",
            commutator(jp, zm) + zm * re(2.0 * b),
        ),
        (
            "[Jplus,Zplus] = 2B Zplus",
            commutator(jp, zp) - zp * re(2.0 * b),
        ),
    ];
    let k = cutoff - 2;
    let identities = cases
        .into_iter()
        .map(|(name, r)| IdentityResidual {
            identity: name.to_string(),
            block_residual: max_abs(&r.view((0, 0), (k, k)).into_owned()),
            full_residual: max_abs(&r),
        })
        .collect();
    Ok(CommutatorReport {
        cutoff,
        b,
        identities,
    })
}
