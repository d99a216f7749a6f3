mod common;

use common::{binary_payoffs, config};
use proptest::prelude::*;
use wishful::{optimal_policy, BinaryPayoffs, Favored, LemmaCase};

/// Direct evaluation of the wishful cutoff from its defining ratio.
fn mu_w_direct(p: &BinaryPayoffs, rho: f64) -> f64 {
    let num = (rho * p.u_low_0).exp() - (rho * p.u_low_1).exp();
    num / (num + (rho * p.u_high_1).exp() - (rho * p.u_high_0).exp())
}

fn close(a: f64, b: f64, rel: f64, abs: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()) + abs
}

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn cutoffs_match_direct_formula(p in binary_payoffs(), r in 0.01f64..2.0) {
        let rho = r / p.scale().max(1.0);
        prop_assert!(close(p.mu_w(rho), mu_w_direct(&p, rho), 1e-9, 1e-12));
        let mu_b = (p.u_low_0 - p.u_low_1) / (p.u_low_0 - p.u_low_1 + p.u_high_1 - p.u_high_0);
        prop_assert!((p.mu_b() - mu_b).abs() < 1e-14);
    }

    #[test]
    fn logistic_equation(p in binary_payoffs(), r in 0.05f64..3.0) {
        let rho = r / p.scale().max(1.0);
        let h = 1e-5;
        let fd = (p.mu_w(rho + h) - p.mu_w(rho - h)) / (2.0 * h);
        let mu = p.mu_w(rho);
        let rhs = p.alpha(rho) * mu * (1.0 - mu);
        prop_assert!(close(fd, rhs, 1e-4, 1e-9), "fd {fd} rhs {rhs}");
    }

    #[test]
    fn alpha_derivative_identity(p in binary_payoffs(), r in 0.05f64..3.0) {
        let rho = r / p.scale().max(1.0);
        let h = 1e-4 * rho;
        let fd = (p.alpha(rho + h) - p.alpha(rho - h)) / (2.0 * h);
        let exact = p.alpha_derivative(rho);
        prop_assert!(close(fd, exact, 1e-6, 1e-7), "fd {fd} exact {exact}");
    }

    #[test]
    fn small_rho_recovers_bayesian_cutoff(p in binary_payoffs()) {
        prop_assert!((p.mu_w(1e-6) - p.mu_b()).abs() < 1e-4);
        prop_assert!((p.alpha(1e-9) - (p.var0() - p.var1()) / 2.0).abs() < 1e-6);
    }

    #[test]
    fn large_rho_limits(p in binary_payoffs()) {
        let gaps = [p.u_low_0 - p.u_low_1, p.u_high_1 - p.u_high_0];
        let smallest = gaps[0].min(gaps[1]).min(if p.u_max() != 0.0 { p.u_max().abs() } else { f64::INFINITY });
        let mu = p.mu_w(50.0 / smallest);
        if p.u_max() > 0.0 {
            prop_assert!((mu - 1.0).abs() < 1e-6);
        } else {
            prop_assert!(mu.abs() < 1e-6);
        }
    }

    #[test]
    fn tied_extremes_tend_to_one_half(a in -5.0f64..5.0, d0 in 0.1f64..5.0, d1 in 0.1f64..5.0, h0 in -5.0f64..5.0) {
        // u̲₀ = ū₁ = a
        let p = BinaryPayoffs::new(a, h0.min(a - d1), a - d0, a).unwrap();
        let d = (a - p.u_low_1).min(p.u_high_1 - p.u_high_0);
        prop_assert!((p.mu_w(50.0 / d) - 0.5).abs() < 1e-6);
    }

    #[test]
    fn translation_invariance(p in binary_payoffs(), shift in -10.0f64..10.0, r in 0.05f64..3.0) {
        let rho = r / p.scale().max(1.0);
        let q = p.translated(shift);
        prop_assert!((p.mu_b() - q.mu_b()).abs() < 1e-10);
        prop_assert!((p.mu_w(rho) - q.mu_w(rho)).abs() < 1e-10);
        let (a, b) = (p.classify_favored(rho).unwrap(), q.classify_favored(rho).unwrap());
        if (a.mu_w - a.mu_b).abs() > 1e-9 {
            prop_assert_eq!(a.favored, b.favored);
        }
    }

    #[test]
    fn scaling_is_rho_rescaling(p in binary_payoffs(), lambda in 0.1f64..5.0, r in 0.05f64..3.0) {
        let rho = r / p.scale().max(1.0);
        prop_assert!((p.scaled(lambda).mu_w(rho) - p.mu_w(lambda * rho)).abs() < 1e-10);
    }

    #[test]
    fn favored_iff_weakly_better_policy(p in binary_payoffs(), r in 0.05f64..3.0) {
        let rho = r / p.scale().max(1.0);
        let report = p.classify_favored(rho).unwrap();
        prop_assume!(report.favored != Favored::Equal);
        prop_assume!(report.mu_b > 0.02 || report.mu_w > 0.02);
        let weakly_better = (1..=99).all(|i| {
            let mu0 = i as f64 / 100.0;
            let vw = optimal_policy(mu0, report.mu_w).unwrap().value;
            let vb = optimal_policy(mu0, report.mu_b).unwrap().value;
            vw >= vb
        });
        prop_assert_eq!(report.favored == Favored::Favored, weakly_better);
    }

    #[test]
    fn crossing_point_separates_regimes(p in binary_payoffs()) {
        let case = p.lemma_case();
        let rho_bar = p.rho_bar().unwrap();
        match case {
            Some(LemmaCase::CaseI) => {
                prop_assert!(rho_bar.is_none());
                for r in [0.01, 0.3, 1.0, 3.0] {
                    prop_assert_ne!(p.classify_favored(r / p.scale()).unwrap().favored, Favored::NotFavored);
                }
            }
            Some(LemmaCase::CaseII) | Some(LemmaCase::CaseIII) => {
                let rb = rho_bar.unwrap();
                prop_assert!((p.mu_w(rb) - p.mu_b()).abs() < 1e-8);
                let (below, above) = (p.classify_favored(rb * 0.5).unwrap(), p.classify_favored(rb * 2.0).unwrap());
                if case == Some(LemmaCase::CaseII) {
                    prop_assert_eq!(below.favored, Favored::NotFavored);
                    prop_assert_eq!(above.favored, Favored::Favored);
                } else {
                    prop_assert_eq!(below.favored, Favored::Favored);
                    prop_assert_eq!(above.favored, Favored::NotFavored);
                }
            }
            None => {}
        }
    }
}
