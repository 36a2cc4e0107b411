use std::fmt;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

/// Diagonal pseudo-Euclidean metric η of signature `(n_plus, n_minus)`:
/// the first `n_plus` diagonal entries are `+1`, the rest `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Metric {
    pub n_plus: usize,
    pub n_minus: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("metric must have at least one dimension")]
pub struct EmptyMetric;

impl Metric {
    pub fn new(n_plus: usize, n_minus: usize) -> Result<Self, EmptyMetric> {
        if n_plus + n_minus == 0 {
            return Err(EmptyMetric);
        }
        Ok(Self { n_plus, n_minus })
    }

    pub fn euclidean(dim: usize) -> Self {
        assert!(dim > 0, "metric dimension must be positive");
        Self {
            n_plus: dim,
            n_minus: 0,
        }
    }

    /// Signature `(1, dim - 1)`; `dim = 4` is the Minkowski case.
    pub fn lorentzian(dim: usize) -> Self {
        assert!(dim > 0, "metric dimension must be positive");
        Self {
            n_plus: 1,
            n_minus: dim - 1,
        }
    }

    pub fn dim(&self) -> usize {
        self.n_plus + self.n_minus
    }

    /// Diagonal entry η_{μμ}.
    pub fn diag(&self, mu: usize) -> i64 {
        debug_assert!(mu < self.dim());
        if mu < self.n_plus {
            1
        } else {
            -1
        }
    }

    /// η_{μν}
    pub fn entry(&self, mu: usize, nu: usize) -> i64 {
        if mu == nu {
            self.diag(mu)
        } else {
            0
        }
    }

    pub fn matrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.dim(), self.dim(), |r, c| self.entry(r, c) as f64)
    }

    /// `J_η = [[0, η], [-η, 0]]`
    pub fn symplectic_form(&self) -> DMatrix<f64> {
        let n = self.dim();
        DMatrix::from_fn(2 * n, 2 * n, |r, c| {
            if r < n && c >= n {
                self.entry(r, c - n) as f64
            } else if r >= n && c < n {
                -(self.entry(r - n, c) as f64)
            } else {
                0.0
            }
        })
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n_plus, self.n_minus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minkowski_entries() {
        let m = Metric::lorentzian(4);
        assert_eq!(m.entry(0, 0), 1);
        assert_eq!(m.entry(3, 3), -1);
        assert_eq!(m.entry(1, 2), 0);
        assert!(Metric::new(0, 0).is_err());
    }

    #[test]
    fn symplectic_form_squares_to_minus_identity() {
        let j = Metric::new(1, 2).unwrap().symplectic_form();
        let jj = &j * &j;
        assert_eq!(jj, -DMatrix::<f64>::identity(6, 6));
    }
}
