//! Invariants of the screening-curve mathematics, checked against
//! independent finite-difference and closed-form oracles written here.

use proptest::prelude::*;
use screening_curves::{
    auc, metrics_from_counts, numeric_threshold_oracle, ConcavityClass, ConfusionMatrix,
    ParadoxScenario, Prevalence, TestCharacteristics,
};

fn t(a: f64, b: f64) -> TestCharacteristics {
    TestCharacteristics::new(a, b).unwrap()
}

fn p(phi: f64) -> Prevalence {
    Prevalence::new(phi).unwrap()
}

fn central(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// (a, b) pairs with a > 0, b < 1 that stay clear of the identity line.
fn nonlinear() -> impl Strategy<Value = (f64, f64)> {
    (0.02..0.995f64, 0.02..0.995f64)
        .prop_filter("near identity line", |(a, b)| (a + b - 1.0).abs() > 0.02)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ppv_increases_and_npv_decreases(a in 0.01..0.99f64, b in 0.01..0.99f64) {
        let test = t(a, b);
        let mut prev_ppv = -1.0;
        let mut prev_npv = 2.0;
        for i in 1..500 {
            let phi = p(i as f64 / 500.0);
            let ppv = test.ppv(phi).unwrap();
            let npv = test.npv(phi).unwrap();
            prop_assert!(ppv > prev_ppv);
            prop_assert!(npv < prev_npv);
            prev_ppv = ppv;
            prev_npv = npv;
        }
    }

    #[test]
    fn ppv_boundary_limits(a in 0.05..1.0f64, b in 0.0..0.95f64) {
        let test = t(a, b);
        prop_assert!(test.ppv(p(1e-12)).unwrap().abs() < 1e-6);
        prop_assert!((test.ppv(p(1.0 - 1e-12)).unwrap() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn ppv_inverse_round_trip(a in 0.01..1.0f64, b in 0.0..0.99f64, phi in 0.001..0.999f64) {
        let test = t(a, b);
        let rho = test.ppv(p(phi)).unwrap();
        let back = test.prevalence_for_ppv(rho).unwrap().value();
        prop_assert!((back - phi).abs() < 1e-10, "{} vs {}", back, phi);
        let again = test.ppv(p(back)).unwrap();
        prop_assert!((again - rho).abs() <= 1e-12 * rho);
    }

    #[test]
    fn counts_reproduce_rates(tp in 0u64..500, fneg in 0u64..500, fp in 0u64..500, tn in 0u64..500) {
        prop_assume!(tp + fneg > 0 && fp + tn > 0);
        // Rebuild the matrix from its own rates at an exact population size.
        let m = ConfusionMatrix::new(tp, fp, fneg, tn).unwrap();
        let rates = metrics_from_counts(&m);
        let n = m.total() as f64;
        let diseased = rates.prevalence * n;
        let rebuilt = ConfusionMatrix::new(
            (rates.sensitivity * diseased).round() as u64,
            ((1.0 - rates.specificity) * (n - diseased)).round() as u64,
            ((1.0 - rates.sensitivity) * diseased).round() as u64,
            (rates.specificity * (n - diseased)).round() as u64,
        ).unwrap();
        prop_assert_eq!(rebuilt, m);
        prop_assert_eq!(metrics_from_counts(&rebuilt), rates);
    }

    #[test]
    fn identity_line_when_coefficient_is_one(a in 0.0..1.0f64, phi in 0.0..1.0f64) {
        let test = t(a, 1.0 - a);
        if test.sensitivity() > 0.0 || phi < 1.0 {
            prop_assert!((test.ppv(p(phi)).unwrap() - phi).abs() < 1e-14);
        }
    }

    #[test]
    fn npv_matches_synthetic_counts(a in 1u64..100, b in 1u64..100, d in 1u64..99) {
        // a% sensitivity, b% specificity, d% prevalence on N = 10 000.
        let diseased = d * 100;
        let healthy = 10_000 - diseased;
        let m = ConfusionMatrix::new(
            a * diseased / 100,
            (100 - b) * healthy / 100,
            (100 - a) * diseased / 100,
            b * healthy / 100,
        ).unwrap();
        let counted = metrics_from_counts(&m);
        let test = t(a as f64 / 100.0, b as f64 / 100.0);
        let phi = p(d as f64 / 100.0);
        if let Ok(npv) = counted.npv {
            prop_assert!((test.npv(phi).unwrap() - npv).abs() < 1e-12);
        }
        if let Ok(ppv) = counted.ppv {
            prop_assert!((test.ppv(phi).unwrap() - ppv).abs() < 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn first_derivative_matches_finite_difference(
        a in 0.05..1.0f64, b in 0.0..0.95f64, phi in 0.01..0.99f64
    ) {
        let test = t(a, b);
        let fd = central(|x| test.ppv(p(x)).unwrap(), phi, 1e-6);
        let exact = test.ppv_derivative(p(phi)).unwrap();
        prop_assert!((fd - exact).abs() <= 1e-4 * exact.abs());
    }

    #[test]
    fn second_derivative_matches_finite_difference(
        a in 0.05..1.0f64, b in 0.0..0.95f64, phi in 0.01..0.99f64
    ) {
        let test = t(a, b);
        let fd = central(|x| test.ppv_derivative(p(x)).unwrap(), phi, 1e-6);
        let exact = test.ppv_second_derivative(p(phi)).unwrap();
        prop_assert!((fd - exact).abs() <= 1e-4 * exact.abs(), "fd {} exact {}", fd, exact);
    }

    #[test]
    fn two_threshold_forms_agree(a in 0.001..1.0f64, b in 0.0..0.999f64) {
        prop_assume!((a + b - 1.0).abs() > 1e-6);
        let test = t(a, b);
        let simplified = test.prevalence_threshold().unwrap().unwrap();
        let unsimplified = test.prevalence_threshold_unsimplified().unwrap();
        prop_assert!((simplified - unsimplified).abs() < 1e-10);
    }

    #[test]
    fn oracle_finds_closed_form_threshold((a, b) in nonlinear()) {
        let test = t(a, b);
        let closed = test.prevalence_threshold().unwrap().unwrap();
        let oracle = numeric_threshold_oracle(&test).unwrap().unwrap();
        prop_assert!((closed - oracle).abs() < 1e-6, "closed {} oracle {}", closed, oracle);
    }

    #[test]
    fn threshold_ppv_consistent_with_bayes(a in 0.01..1.0f64, b in 0.0..0.999f64) {
        prop_assume!((a + b - 1.0).abs() > 1e-9);
        let test = t(a, b);
        let phi_e = test.prevalence_threshold().unwrap().unwrap();
        let rho_e = test.ppv_at_threshold().unwrap().unwrap();
        let bayes = test.ppv(p(phi_e)).unwrap();
        prop_assert!((rho_e - bayes).abs() <= 1e-12 * bayes);
        let unreduced = (a / (1.0 - b)).sqrt() * ((1.0 - b).sqrt() / (a.sqrt() + (1.0 - b).sqrt()));
        prop_assert!((rho_e - unreduced).abs() <= 1e-12 * unreduced);
    }

    #[test]
    fn threshold_decreases_in_both_parameters(
        a in 0.01..0.98f64, b in 0.01..0.98f64, da in 0.001..0.02f64
    ) {
        let threshold = |a: f64, b: f64| {
            let x = t(a, b);
            let (ra, rc) = (x.sensitivity().sqrt(), x.fall_out().sqrt());
            // evaluate the radical form directly so the identity line is no obstacle
            rc / (ra + rc)
        };
        prop_assert!(threshold(a + da, b) < threshold(a, b));
        prop_assert!(threshold(a, b + da) < threshold(a, b));
        if (a + b - 1.0).abs() > 1e-12 && (a + da + b - 1.0).abs() > 1e-12 {
            let lo = t(a, b).prevalence_threshold().unwrap().unwrap();
            let hi = t(a + da, b).prevalence_threshold().unwrap().unwrap();
            prop_assert!(hi < lo);
        }
    }

    #[test]
    fn auc_closed_matches_quadrature((a, b) in nonlinear()) {
        let r = auc(&t(a, b)).unwrap();
        prop_assert!(r.residual < 1e-9, "{:?}", r);
        prop_assert!((0.0..=1.0).contains(&r.auc_closed));
        prop_assert!((0.0..=1.0).contains(&r.auc_numeric));
    }

    #[test]
    fn antiderivative_differentiates_back((a, b) in nonlinear(), phi in 0.01..0.99f64) {
        let test = t(a, b);
        let fd = central(|x| test.ppv_antiderivative(p(x)).unwrap(), phi, 1e-6);
        let rho = test.ppv(p(phi)).unwrap();
        prop_assert!((fd - rho).abs() <= 1e-5 * rho);
    }

    #[test]
    fn geometric_decay(
        a in 0.0..1.0f64, b in 0.0..0.999f64, phi0 in 0.01..0.99f64,
        tau in 0.0..1.0f64, cov in 0.0..1.0f64, rounds in 1u32..60
    ) {
        let test = t(a, b);
        prop_assume!(a > 0.0);
        let s = ParadoxScenario::new(test, phi0, tau, cov, rounds).unwrap();
        let traj = s.run().unwrap();
        prop_assert_eq!(traj.series.len(), rounds as usize + 1);
        let rate = 1.0 - a * tau * cov;
        for (k, point) in traj.series.iter().enumerate() {
            prop_assert!((point.prevalence - phi0 * rate.powi(k as i32)).abs() < 1e-12);
        }
        for w in traj.series.windows(2) {
            prop_assert!(w[1].prevalence <= w[0].prevalence);
            prop_assert!(w[1].ppv <= w[0].ppv);
            if a * tau * cov > 0.0 && w[1].prevalence > 0.0 && w[0].prevalence - w[1].prevalence > 1e-300 {
                prop_assert!(w[1].ppv < w[0].ppv || w[1].ppv == 0.0);
            }
        }
        match (traj.threshold, traj.crossing_round) {
            (Some(phi_e), Some(k)) => {
                for point in &traj.series[..k as usize] {
                    prop_assert!(point.prevalence >= phi_e);
                }
                prop_assert!(traj.series[k as usize].prevalence < phi_e);
            }
            (Some(phi_e), None) => {
                prop_assert!(traj.series.iter().all(|pt| pt.prevalence >= phi_e));
            }
            (None, crossing) => prop_assert_eq!(crossing, None),
        }
    }
}

#[test]
fn no_inflection_on_dense_grid() {
    for (a, b) in [
        (0.95, 0.99),
        (0.2, 0.4),
        (0.6, 0.95),
        (0.1, 0.15),
        (0.5, 0.5),
    ] {
        let test = t(a, b);
        let expected = match test.classify().class {
            ConcavityClass::Concave => -1.0,
            ConcavityClass::Convex => 1.0,
            ConcavityClass::Linear => 0.0,
        };
        for i in 1..10_000 {
            let d2 = test.ppv_second_derivative(p(i as f64 / 10_000.0)).unwrap();
            let sign = if d2 == 0.0 { 0.0 } else { d2.signum() };
            assert_eq!(sign, expected, "a={a} b={b} i={i}");
        }
    }
}

#[test]
fn curvature_is_maximal_at_threshold() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    for _ in 0..20 {
        let (a, b) = (rng.gen_range(0.02..0.99), rng.gen_range(0.02..0.99));
        if (a + b - 1.0f64).abs() < 0.02 {
            continue;
        }
        let test = t(a, b);
        let phi_e = test.prevalence_threshold().unwrap().unwrap();
        let peak = test.curvature(p(phi_e)).unwrap();
        for i in 1..10_000 {
            let k = test.curvature(p(i as f64 / 10_000.0)).unwrap();
            assert!(
                k <= peak * (1.0 + 1e-12),
                "a={a} b={b} φ={}",
                i as f64 / 1e4
            );
        }
    }
}

#[test]
fn fundamental_theorem_sweep() {
    let mut previous = 0.0;
    for k in 1..=6 {
        let delta = 10f64.powi(-k);
        let r = auc(&t(1.0 - delta, 1.0 - delta)).unwrap();
        assert!(r.auc_closed > previous, "δ={delta}");
        assert!(r.residual < 1e-9, "δ={delta}: {r:?}");
        previous = r.auc_closed;
    }
    assert!(previous > 1.0 - 1e-4);
}

#[test]
fn auc_grows_with_coefficient_on_symmetric_family() {
    let mut previous = -1.0;
    for i in 1..=100 {
        let eps = 2.0 * i as f64 / 101.0;
        let r = auc(&t(eps / 2.0, eps / 2.0)).unwrap();
        assert!(r.auc_closed > previous, "ε={eps}");
        previous = r.auc_closed;
    }
}
