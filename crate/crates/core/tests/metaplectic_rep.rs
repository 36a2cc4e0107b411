use lct_core::fock_rep::{generator_matrices, quadrature_matrices, TruncatedOperator};
use lct_core::metaplectic_rep::*;
use lct_core::metric::Metric;
use lct_core::symplectic_group::ThetaAngles;
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

#[test]
fn plus_angle_gives_diagonal_phases() {
    let t = 0.8;
    let u = build_unitary(&ThetaAngles::single(t, 0.0, 0.0), 1.0, 32).unwrap();
    let top = 31;
    for n in 0..32 {
        for m in 0..32 {
            let v = u.u.entry(n, m);
            if n != m {
                assert!(v.norm() < 1e-14);
            } else if n < top {
                // 𝖇⁺ has eigenvalues (2n+1)/4 below the truncation edge
                let expected = Complex64::new(0.0, t * (2 * n + 1) as f64 / 4.0).exp();
                assert!((v - expected).norm() < 1e-13, "n={n}: {v}");
            }
        }
    }
}

#[test]
fn unitary_at_cutoff_64() {
    for angles in [
        ThetaAngles::single(1.0, -0.6, 0.9),
        ThetaAngles::single(-0.3, 1.0, -1.0),
        ThetaAngles::single(0.0, 0.0, 1.0),
    ] {
        let u = build_unitary(&angles, 0.7, 64).unwrap();
        assert!(
            u.unitarity_residual() < UNITARITY_TOL,
            "{}",
            u.unitarity_residual()
        );
    }
}

#[test]
fn conjugation_preserves_spectrum() {
    let cutoff = 48;
    let u = build_unitary(&ThetaAngles::single(0.4, 0.3, -0.2), 1.0, cutoff).unwrap();
    let (gp, _, _) = generator_matrices(cutoff).unwrap();
    let c = conjugate(&u, &gp).unwrap();
    assert!(max_abs(&(&c.matrix - c.matrix.adjoint())) < 1e-12);
    let mut a: Vec<f64> = gp
        .matrix
        .clone()
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .collect();
    let mut b: Vec<f64> = c
        .matrix
        .clone()
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .collect();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    for (x, y) in a.iter().zip(&b) {
        assert!((x - y).abs() < 1e-10);
    }
}

#[test]
fn conjugation_by_identity_and_self_rotation() {
    let cutoff = 32;
    let (gp, gm, _) = generator_matrices(cutoff).unwrap();
    let id = build_unitary(&ThetaAngles::single(0.0, 0.0, 0.0), 1.0, cutoff).unwrap();
    assert!(max_abs(&(conjugate(&id, &gm).unwrap().matrix - &gm.matrix)) < 1e-14);
    let rot = build_unitary(&ThetaAngles::single(0.9, 0.0, 0.0), 1.0, cutoff).unwrap();
    let c = conjugate(&rot, &gp).unwrap();
    let half = cutoff / 2;
    let d = (&c.matrix - &gp.matrix)
        .view((0, 0), (half, half))
        .into_owned();
    assert!(max_abs(&d) < 1e-10);
}

#[test]
fn conjugation_rejects_mismatched_cutoff() {
    let u = build_unitary(&ThetaAngles::single(0.1, 0.0, 0.0), 1.0, 16).unwrap();
    let (p, _) = quadrature_matrices(20).unwrap();
    assert!(matches!(
        conjugate(&u, &p),
        Err(MetaplecticError::DimensionMismatch(16, 20))
    ));
}

#[test]
fn homomorphism_zero_angles() {
    let r = verify_homomorphism(&ThetaAngles::single(0.0, 0.0, 0.0), 1.0, 32, 1e-12).unwrap();
    assert!(r.max_residual < 1e-14, "{r:?}");
}

#[test]
fn homomorphism_plus_rotation() {
    let r = verify_homomorphism(&ThetaAngles::single(0.2, 0.0, 0.0), 1.0, 64, 1e-6).unwrap();
    // independent oracle: 𝔭 ↦ cos(0.1)𝔭 − sin(0.1)𝔵
    let (c, s) = (0.1f64.cos(), 0.1f64.sin());
    assert!((r.symplectic[0][0] - c).abs() < 1e-15);
    assert!((r.symplectic[1][0] + s).abs() < 1e-15);
    assert!(r.passed, "{r:?}");
}

#[test]
fn homomorphism_generic_angles() {
    for angles in [
        ThetaAngles::single(0.5, -0.3, 0.4),
        ThetaAngles::single(-0.5, 0.5, -0.5),
        ThetaAngles::single(0.1, 0.45, 0.0),
    ] {
        let r = verify_homomorphism(&angles, 1.0, 64, 1e-6).unwrap();
        assert!(r.passed, "{r:?}");
    }
}

#[test]
fn homomorphism_is_independent_of_dispersion() {
    let angles = ThetaAngles::single(0.3, 0.2, -0.4);
    let a = verify_homomorphism(&angles, 0.25, 64, 1e-6).unwrap();
    let b = verify_homomorphism(&angles, 3.0, 64, 1e-6).unwrap();
    assert_eq!(a.symplectic, b.symplectic);
    assert!((a.max_residual - b.max_residual).abs() < 1e-12);
}

#[test]
fn homomorphism_improves_with_cutoff() {
    // conjugation moves |n⟩ out to about n·σ_max(S)², so the cutoff/4 block
    // only converges while σ_max(S)² < 4
    let angles = ThetaAngles::single(0.5, -0.5, 0.5);
    let lo = verify_homomorphism(&angles, 1.0, 32, 1e-6).unwrap();
    let hi = verify_homomorphism(&angles, 1.0, 64, 1e-6).unwrap();
    assert!(
        hi.max_residual < lo.max_residual,
        "{} vs {}",
        hi.max_residual,
        lo.max_residual
    );
}

#[test]
fn dispersion_normalization_rescales_angles() {
    let b = 0.6;
    let raw = build_unitary_with(
        &ThetaAngles::single(0.1, 0.05, -0.1),
        b,
        32,
        Normalization::Dispersion,
    )
    .unwrap();
    let scaled = build_unitary(&ThetaAngles::single(0.4 * b, 0.2 * b, -0.4 * b), b, 32).unwrap();
    assert!(max_abs(&(raw.u.matrix - scaled.u.matrix)) < 1e-12);
}

#[test]
fn first_order_commutators() {
    for c in first_order_checks(32, 1e-4, 1e-5).unwrap() {
        assert!(c.residual_commutator < 1e-6, "{c:?}");
        assert!(c.printed_holds, "{c:?}");
    }
}

#[test]
fn cross_derivative_on_momentum() {
    let checks = first_order_checks(32, 1e-4, 1e-5).unwrap();
    let c = checks
        .iter()
        .find(|c| c.operator == "p" && c.printed_target == "p")
        .unwrap();
    assert!(c.residual_printed < 1e-5);
}

#[test]
fn basis_law_identity() {
    let r =
        verify_basis_transformation(&ThetaAngles::single(0.0, 0.0, 0.0), 1.0, 32, 1e-8).unwrap();
    assert_eq!(r.rows[0].engine, [1.0, 0.0, 0.0]);
    assert!(r.max_residual < 1e-14);
    // the printed first row does not reduce to the identity
    assert_eq!(r.rows[0].printed, [0.5, -0.5, 0.0]);
}

#[test]
fn basis_law_rotation_fixes_plus() {
    let r =
        verify_basis_transformation(&ThetaAngles::single(0.7, 0.0, 0.0), 1.0, 64, 1e-6).unwrap();
    let plus = &r.rows[0];
    assert!((plus.engine[0] - 1.0).abs() < 1e-8 && plus.engine[1].abs() < 1e-8);
    assert!(plus.numeric_residual < 1e-8, "{plus:?}");
}

#[test]
fn basis_law_generic_and_third_row() {
    let r =
        verify_basis_transformation(&ThetaAngles::single(0.4, -0.3, 0.25), 1.0, 64, 1e-6).unwrap();
    assert!(r.passed, "{r:?}");
    for row in &r.rows {
        assert!(row.derived_deviation < 1e-9, "{row:?}");
    }
    assert!(r.rows[2].printed_deviation < 1e-6);
}

#[test]
fn tensor_action_one_dimension() {
    // at N = 1 every block is a scalar, so both readings agree
    let r = tensor_first_order_check(Metric::euclidean(1)).unwrap();
    assert!(r.literal_holds && r.block_transposed_holds, "{r:?}");
}

#[test]
fn tensor_action_two_dimensions() {
    for metric in [Metric::euclidean(2), Metric::lorentzian(2)] {
        let r = tensor_first_order_check(metric).unwrap();
        assert!(r.block_transposed_holds, "{r:?}");
        assert!(!r.literal_holds, "{r:?}");
    }
}

fn unit(kind: usize, t: f64) -> ThetaAngles {
    match kind {
        0 => ThetaAngles::single(t, 0.0, 0.0),
        1 => ThetaAngles::single(0.0, t, 0.0),
        _ => ThetaAngles::single(0.0, 0.0, t),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn one_parameter_subgroup(kind in 0usize..3, a in -0.5f64..0.5, b in -0.5f64..0.5) {
        let ua = build_unitary(&unit(kind, a), 1.0, 32).unwrap();
        let ub = build_unitary(&unit(kind, b), 1.0, 32).unwrap();
        let uab = build_unitary(&unit(kind, a + b), 1.0, 32).unwrap();
        prop_assert!(max_abs(&(&ua.u.matrix * &ub.u.matrix - &uab.u.matrix)) < 1e-10);
    }

    #[test]
    fn unitarity(tp in -1.0f64..1.0, tm in -1.0f64..1.0, tx in -1.0f64..1.0) {
        let u = build_unitary(&ThetaAngles::single(tp, tm, tx), 1.0, 64).unwrap();
        prop_assert!(u.unitarity_residual() < UNITARITY_TOL);
    }

    #[test]
    fn conjugation_actions_compose(a in -0.4f64..0.4, b in -0.4f64..0.4) {
        // non-commuting directions: only the conjugation action is compared
        let cutoff = 64;
        let u1 = build_unitary(&ThetaAngles::single(a, 0.0, 0.0), 1.0, cutoff).unwrap();
        let u2 = build_unitary(&ThetaAngles::single(0.0, 0.0, b), 1.0, cutoff).unwrap();
        let (p, _) = quadrature_matrices(cutoff).unwrap();
        let inner = conjugate(&u2, &p).unwrap();
        let nested = conjugate(&u1, &inner).unwrap();
        let product = TruncatedOperator::new("U", &u1.u.matrix * &u2.u.matrix);
        let direct = &product.matrix * &p.matrix * product.matrix.adjoint();
        let block = cutoff / 4;
        let d = (&nested.matrix - &direct).view((0, 0), (block, block)).into_owned();
        prop_assert!(max_abs(&d) < 1e-10);
    }
}
