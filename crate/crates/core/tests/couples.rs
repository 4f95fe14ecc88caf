//! End-to-end checks of the public API against closed forms and replays.

use std::f64::consts::{LN_2, PI};

use twistlab::harness::{self, DerivedNorm};
use twistlab::{derived, BlockVector, Complex, InterpolationCouple, OrliczFunction, TrialConfig, Witness};

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

fn kp() -> InterpolationCouple {
    InterpolationCouple::kalton_peck(0.5).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

#[test]
fn interpolated_functions_have_their_exponents() {
    let c13 = InterpolationCouple::new(
        OrliczFunction::power(1.0).unwrap(),
        OrliczFunction::power(3.0).unwrap(),
        0.5,
    )
    .unwrap();
    assert!(rel(c13.phi_theta(4.0).unwrap(), 8.0) < 1e-12);
    assert!(rel(kp().phi_theta(3.0).unwrap(), 9.0) < 1e-12);
    assert_eq!(kp().phi_theta(0.0).unwrap(), 0.0);
    for s in [1e-6, 0.3, 2.0, 5e4] {
        let inv = c13.phi_theta_inverse(s).unwrap();
        assert!(rel(inv, s.powf(2.0 / 3.0)) < 1e-12, "{s}");
        assert!(rel(c13.phi_theta(inv).unwrap(), s) < 1e-9, "{s}");
    }
}

#[test]
fn k_constants_at_one_half() {
    let couple = kp();
    assert_eq!(couple.k_constant(1).unwrap(), 1.0);
    assert!(rel(couple.k_constant(2).unwrap(), PI) < 1e-12);
    assert!(rel(couple.k_constant(3).unwrap(), 6.0 * (PI / 2.0).powi(2)) < 1e-12);
}

#[test]
fn phi_theta_n_closed_forms() {
    let couple = kp();
    // (x₁, x₀) = (0, 1): |x₀|² + |x₁ − 2x₀ log|x₀||² = 1.
    assert!(rel(couple.phi_theta_n(&[c(0.0, 0.0), c(1.0, 0.0)]).unwrap(), 1.0) < 1e-12);
    // A zero prefix contributes nothing.
    let v = couple.phi_theta_n(&[c(1.5, -2.0), c(0.0, 0.0)]).unwrap();
    assert!(rel(v, 6.25) < 1e-12, "{v}");
    // Against the scalar closed form with a nonzero x₀.
    let (x1, x0) = (c(0.4, 0.1), c(2.0, 0.0));
    let expected = 4.0 + (x1 - x0 * (2.0 * 2f64.ln())).norm_sqr();
    assert!(rel(couple.phi_theta_n(&[x1, x0]).unwrap(), expected) < 1e-12);
}

#[test]
fn residuals_round_trip() {
    let couple = kp();
    let d = vec![c(0.3, -1.2), c(0.0, 0.0), c(-2.0, 0.5), c(1e-2, 3.0)];
    let x = couple.point_from_residuals(&d).unwrap();
    let back = couple.residuals(&x).unwrap();
    for (a, b) in d.iter().zip(&back) {
        assert!((a - b).norm() <= 1e-12 * (1.0 + a.norm()), "{a} vs {b}");
    }
    let phi: f64 = d.iter().map(|z| couple.phi_theta(z.norm()).unwrap()).sum();
    assert!(rel(couple.phi_theta_n(&x).unwrap(), phi) < 1e-12);
}

#[test]
fn g_jet_reproduces_its_input() {
    let couple = kp();
    let x = vec![c(0.7, 0.2), c(0.0, 0.0), c(-1.0, 3.0)];
    let g = couple.g_jet(&x, 4).unwrap();
    for (j, xj) in x.iter().rev().enumerate() {
        assert!((g.jet.coeff(j) - xj).norm() <= 1e-8 * xj.norm().max(1.0), "coefficient {j}");
    }
    // The family evaluates the same function as a long jet near θ.
    let family = couple.g_family(&x).unwrap();
    let long = couple.g_jet(&x, 24).unwrap().jet;
    let z = c(0.51, -0.005);
    let err = (family.eval(z) - long.eval(z)).norm() / long.eval(z).norm();
    assert!(err < 1e-9, "{err}");
    assert_eq!(family.eval(c(0.5, 0.0)), couple.g_eval(&x, c(0.5, 0.0)).unwrap());
}

#[test]
fn boundary_moduli_for_scalars() {
    let couple = kp();
    for t in [-5.0, 0.0, 2.5] {
        assert!(rel(couple.g_boundary_eval(&[c(2.0, 0.0)], 1, t).unwrap().norm(), 4.0) < 1e-12);
        assert!(rel(couple.g_boundary_eval(&[c(2.0, 0.0)], 0, t).unwrap().norm(), 1.0) < 1e-12);
        assert_eq!(couple.g_boundary_eval(&[c(0.0, 0.0)], 0, t).unwrap().norm(), 0.0);
    }
}

#[test]
fn omega_examples() {
    let couple = kp();
    let ones = BlockVector::new(1, vec![(0, vec![c(1.0, 0.0)]), (1, vec![c(1.0, 0.0)])]).unwrap();
    let omega = couple.omega_n(1, &ones).unwrap();
    for z in omega.values() {
        assert!((z - c(-LN_2, 0.0)).norm() < 1e-12, "{z}");
    }
    let e1 = BlockVector::single(1, vec![c(1.0, 0.0)]).unwrap();
    assert!(couple.omega_n(1, &e1).unwrap().values().all(|z| z.norm() < 1e-15));

    let lambda = c(-0.3, 2.0);
    let v = BlockVector::new(
        2,
        vec![(0, vec![c(0.2, 1.0), c(1.0, -1.0)]), (4, vec![c(0.0, 0.0), c(0.5, 0.5)])],
    )
    .unwrap();
    let base = couple.omega_n(2, &v).unwrap();
    let scaled = couple.omega_n(2, &v.scale(lambda)).unwrap();
    for (k, z) in &base {
        assert!((scaled[k] - lambda * z).norm() <= 1e-9 * (lambda * z).norm().max(1e-300));
    }
}

#[test]
fn derived_norms_agree_on_the_worked_example() {
    let couple = kp();
    let v = BlockVector::single(0, vec![c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
    let f = derived::fenchel_orlicz_norm(&couple, 2, &v).unwrap();
    let r = derived::rochberg_quasinorm(&couple, 2, &v).unwrap();
    assert!(rel(f, 1.0) < 1e-9, "{f}");
    assert!(rel(r, 1.0) < 1e-9, "{r}");
    assert_eq!(derived::fenchel_orlicz_norm(&couple, 2, &BlockVector::zero(2)).unwrap(), 0.0);
}

#[test]
fn rochberg_vanishes_on_the_twisted_diagonal() {
    let couple = kp();
    let x = BlockVector::new(1, vec![(0, vec![c(1.0, 0.5)]), (3, vec![c(-2.0, 0.0)])]).unwrap();
    let omega = couple.omega_n(1, &x).unwrap();
    let v = BlockVector::new(
        2,
        x.entries()
            .iter()
            .map(|e| (e.k, vec![omega[&e.k], e.block[0]]))
            .collect(),
    )
    .unwrap();
    let expected = couple.sequence_norm(&x.component(0)).unwrap();
    assert!(rel(derived::rochberg_quasinorm(&couple, 2, &v).unwrap(), expected) < 1e-9);
}

#[test]
fn quasiconvexity_witness_replays() {
    let couple = kp();
    let est = harness::estimate_quasiconvexity(&couple, &TrialConfig::new(7, 300, 2)).unwrap();
    let Witness::Points { points, params } = &est.witness else {
        panic!("unexpected witness {:?}", est.witness);
    };
    let replay = harness::quasiconvexity_ratio(&couple, &points[0], &points[1], params[0]).unwrap();
    assert_eq!(replay, Some(est.value));
    assert!(est.value >= 1.0 && est.value.is_finite());
}

#[test]
fn delta2_witness_replays() {
    let couple = kp();
    let est = harness::estimate_delta2_n(&couple, &TrialConfig::new(3, 300, 2)).unwrap();
    let Witness::Points { points, .. } = &est.witness else {
        panic!("unexpected witness {:?}", est.witness);
    };
    assert_eq!(harness::doubling_ratio_n(&couple, &points[0]).unwrap(), Some(est.value));
    let one = harness::estimate_delta2_n(&couple, &TrialConfig::new(3, 300, 1)).unwrap();
    assert!(rel(one.value, 4.0) < 1e-9, "{}", one.value);
}

#[test]
fn estimates_do_not_depend_on_the_magnitude_scale_for_power_couples() {
    let couple = kp();
    let base = TrialConfig::new(11, 400, 2);
    let scaled = TrialConfig::new(11, 400, 2).with_magnitudes(1e-1, 1e5);
    let a = harness::estimate_quasiconvexity(&couple, &base).unwrap().value;
    let b = harness::estimate_quasiconvexity(&couple, &scaled).unwrap().value;
    assert!(rel(a, b) < 1e-9, "{a} vs {b}");
}

#[test]
fn equivalence_at_order_one_is_trivial() {
    let couple = kp();
    let (lo, hi) = harness::estimate_equivalence_constants(&couple, &TrialConfig::new(1, 100, 1)).unwrap();
    assert!((lo.value - 1.0).abs() < 1e-9 && (hi.value - 1.0).abs() < 1e-9);
}

#[test]
fn coordinates_of_unit_vectors_are_bounded_at_order_one() {
    let couple = kp();
    let (f, r) = harness::check_coordinate_bound(&couple, &TrialConfig::new(5, 100, 1)).unwrap();
    assert!(f.value <= 1.0 + 1e-9 && r.value <= 1.0 + 1e-9);
    let v = BlockVector::single(2, vec![c(0.0, 3.0)]).unwrap();
    assert!(rel(DerivedNorm::Fenchel.eval(&couple, 1, &v).unwrap(), 3.0) < 1e-9);
}

#[test]
fn f32_smoke() {
    let couple = twistlab::interpolation::InterpolationCouple::<f32>::kalton_peck(0.5).unwrap();
    assert!((couple.phi_theta(3.0).unwrap() - 9.0).abs() < 1e-4);
    let x = [num_complex::Complex::new(0.5f32, -0.25), num_complex::Complex::new(2.0, 1.0)];
    assert!(harness::taylor_deviation(&couple, &x).unwrap() < 1e-4);
    let cfg = harness::TrialConfig::<f32>::new(1, 50, 2);
    assert!(harness::check_taylor_consistency(&couple, &cfg).unwrap().value < 1e-3);
}
