//! Exact linear algebra over polynomial spans.

use num_traits::{One, Zero};

use super::field::Scalar;
use super::poly::{Monomial, WeylPolynomial};
use super::WeylError;

/// A finite family of polynomials, row-reduced once so that arbitrary targets
/// can be expanded over it exactly.
#[derive(Clone, Debug)]
pub struct SpanBasis {
    labels: Vec<String>,
    elements: Vec<WeylPolynomial>,
    // Fully reduced rows: (pivot monomial, reduced polynomial with unit pivot,
    // combination of the original elements producing it).
    rows: Vec<(Monomial, WeylPolynomial, Vec<Scalar>)>,
}

/// Outcome of expanding a target over a [`SpanBasis`].
#[derive(Clone, Debug, PartialEq)]
pub struct Expansion {
    pub coefficients: Vec<Scalar>,
    /// `target − Σ cᵢ eᵢ`; zero iff the target lies in the span.
    pub residual: WeylPolynomial,
}

impl Expansion {
    pub fn in_span(&self) -> bool {
        self.residual.is_zero()
    }
}

impl SpanBasis {
    /// Errors with `SpanFailure` if the elements are linearly dependent.
    pub fn new(labels: Vec<String>, elements: Vec<WeylPolynomial>) -> Result<Self, WeylError> {
        assert_eq!(labels.len(), elements.len());
        let n = elements.len();
        let mut rows: Vec<(Monomial, WeylPolynomial, Vec<Scalar>)> = Vec::new();
        for (i, e) in elements.iter().enumerate() {
            let mut poly = e.clone();
            let mut combo = vec![Scalar::zero(); n];
            combo[i] = Scalar::one();
            for (pivot, row, row_combo) in &rows {
                let c = poly.coefficient(pivot);
                if !c.is_zero() {
                    poly = poly.checked_sub(&row.scale(&c))?;
                    for (a, b) in combo.iter_mut().zip(row_combo) {
                        *a = &*a - &(&c * b);
                    }
                }
            }
            let Some((pivot, lead)) = poly
                .terms()
                .next_back()
                .map(|(m, c)| (m.clone(), c.clone()))
            else {
                return Err(WeylError::SpanFailure {
                    residual: format!("element {} is linearly dependent", labels[i]),
                });
            };
            let inv = lead.inv().expect("nonzero pivot");
            let poly = poly.scale(&inv);
            let combo: Vec<Scalar> = combo.iter().map(|c| c * &inv).collect();
            // Clear the new pivot from earlier rows to keep the form reduced.
            for (_, row, row_combo) in rows.iter_mut() {
                let c = row.coefficient(&pivot);
                if !c.is_zero() {
                    *row = row.checked_sub(&poly.scale(&c))?;
                    for (a, b) in row_combo.iter_mut().zip(&combo) {
                        *a = &*a - &(&c * b);
                    }
                }
            }
            rows.push((pivot, poly, combo));
        }
        Ok(Self {
            labels,
            elements,
            rows,
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn elements(&self) -> &[WeylPolynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn expand(&self, target: &WeylPolynomial) -> Result<Expansion, WeylError> {
        let mut coefficients = vec![Scalar::zero(); self.len()];
        let mut residual = target.clone();
        for (pivot, row, combo) in &self.rows {
            let c = target.coefficient(pivot);
            if c.is_zero() {
                continue;
            }
            residual = residual.checked_sub(&row.scale(&c))?;
            for (a, b) in coefficients.iter_mut().zip(combo) {
                *a = &*a + &(&c * b);
            }
        }
        Ok(Expansion {
            coefficients,
            residual,
        })
    }

    /// Expansion that must succeed; `SpanFailure` carries the residual.
    pub fn solve(&self, target: &WeylPolynomial) -> Result<Vec<Scalar>, WeylError> {
        let e = self.expand(target)?;
        if e.in_span() {
            Ok(e.coefficients)
        } else {
            Err(WeylError::SpanFailure {
                residual: e.residual.to_string(),
            })
        }
    }

    pub fn combine(&self, coefficients: &[Scalar]) -> WeylPolynomial {
        let algebra = self.elements[0].algebra();
        self.elements
            .iter()
            .zip(coefficients)
            .fold(algebra.zero(), |acc, (e, c)| &acc + &e.scale(c))
    }
}
