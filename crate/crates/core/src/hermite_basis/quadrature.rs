//! Gauss–Hermite rules and analytic inner products of the basis functions.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::{normalized_hermite_all, phi, phi_tilde, BasisParams};

/// Nodes and weights of the `n`-point rule for `∫ e^{−t²} f(t) dt`.
///
/// Nodes come from the symmetric Jacobi matrix, are polished by Newton steps
/// on the normalized recurrence, and weights are `1/(n·ĥ_{n−1}(t)²)`.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "rule needs at least one node");
    let mut jacobi = DMatrix::<f64>::zeros(n, n);
    for k in 1..n {
        let off = (k as f64 / 2.0).sqrt();
        jacobi[(k - 1, k)] = off;
        jacobi[(k, k - 1)] = off;
    }
    let mut nodes: Vec<f64> = SymmetricEigen::new(jacobi)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    nodes.sort_by(|a, b| a.total_cmp(b));
    let mut weights = Vec::with_capacity(n);
    for t in nodes.iter_mut() {
        for _ in 0..3 {
            let h = normalized_hermite_all(n, *t);
            // ĥ_n' = √(2n) ĥ_{n−1}
            let step = h[n] / ((2.0 * n as f64).sqrt() * h[n - 1]);
            *t -= step;
            if step.abs() < 1e-16 * t.abs().max(1.0) {
                break;
            }
        }
        let h = normalized_hermite_all(n - 1, *t);
        weights.push(1.0 / (n as f64 * h[n - 1] * h[n - 1]));
    }
    (nodes, weights)
}

/// `⟨phi(m)|phi(n)⟩` by an `nodes`-point rule after the substitution
/// `x = X + √(2𝒜)·t`, evaluating [`phi`] at the nodes.
pub fn inner_product_phi(m: usize, n: usize, params: &BasisParams, nodes: usize) -> Complex64 {
    let s = (2.0 * params.a()).sqrt();
    weighted_sum(nodes, s, |t| {
        let x = params.x() + s * t;
        phi(m, x, params).conj() * phi(n, x, params)
    })
}

/// `⟨phi_tilde(m)|phi_tilde(n)⟩`, substituting `p = P + √(2𝓑)·t`.
pub fn inner_product_phi_tilde(
    m: usize,
    n: usize,
    params: &BasisParams,
    nodes: usize,
) -> Complex64 {
    let s = (2.0 * params.b()).sqrt();
    weighted_sum(nodes, s, |t| {
        let p = params.p() + s * t;
        phi_tilde(m, p, params).conj() * phi_tilde(n, p, params)
    })
}

fn cached_rule(n: usize) -> Arc<(Vec<f64>, Vec<f64>)> {
    static RULES: OnceLock<Mutex<HashMap<usize, Arc<(Vec<f64>, Vec<f64>)>>>> = OnceLock::new();
    let mut map = RULES
        .get_or_init(Default::default)
        .lock()
        .unwrap_or_else(|e| e.into_inner());
    map.entry(n)
        .or_insert_with(|| Arc::new(gauss_hermite(n)))
        .clone()
}

// ∫ f(c + s·t) s dt with f carrying its own Gaussian factor e^{−t²}.
fn weighted_sum(nodes: usize, s: f64, f: impl Fn(f64) -> Complex64) -> Complex64 {
    let rule = cached_rule(nodes);
    let (t, w) = (&rule.0, &rule.1);
    t.iter()
        .zip(w)
        .map(|(&ti, &wi)| f(ti) * (wi * (ti * ti).exp() * s))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn small_rules() {
        let (t, w) = gauss_hermite(1);
        assert!(t[0].abs() < 1e-15);
        assert!((w[0] - PI.sqrt()).abs() < 1e-14);
        let (t, w) = gauss_hermite(2);
        assert!((t[1] - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((w[0] - PI.sqrt() / 2.0).abs() < 1e-14);
    }

    #[test]
    fn weights_sum_to_sqrt_pi() {
        for n in [5, 20, 64, 100] {
            let (_, w) = gauss_hermite(n);
            let s: f64 = w.iter().sum();
            assert!((s - PI.sqrt()).abs() < 1e-12, "n={n}: {s}");
        }
    }

    #[test]
    fn integrates_even_moment() {
        // ∫ t⁴ e^{−t²} = 3√π/4
        let (t, w) = gauss_hermite(10);
        let s: f64 = t.iter().zip(&w).map(|(t, w)| w * t.powi(4)).sum();
        assert!((s - 0.75 * PI.sqrt()).abs() < 1e-13);
    }
}
