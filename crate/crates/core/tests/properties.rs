use etaint_core::eta::{eta_power, eta_series_direct, trunc_terms_needed};
use etaint_core::specfun::{digamma, erf, erfc, hurwitz_zeta, log_gamma};
use etaint_core::{closed_forms, eta, eta_cubed, EtaPower};
use proptest::prelude::*;

proptest! {
    #[test]
    fn erf_complement(x in -6.0f64..6.0) {
        let s = erf(x).unwrap() + erfc(x).unwrap();
        prop_assert!((s - 1.0).abs() < 4e-16, "x={x} sum={s}");
    }

    #[test]
    fn erf_odd(x in 0.0f64..8.0) {
        prop_assert_eq!(erf(-x).unwrap(), -erf(x).unwrap());
    }

    #[test]
    fn digamma_recurrence(x in 0.05f64..50.0) {
        let lhs = digamma(x + 1.0).unwrap();
        let rhs = digamma(x).unwrap() + 1.0 / x;
        prop_assert!((lhs - rhs).abs() <= 1e-13 * (1.0 + rhs.abs()), "x={x}");
    }

    #[test]
    fn log_gamma_recurrence(x in 0.05f64..50.0) {
        let lhs = log_gamma(x + 1.0).unwrap();
        let rhs = log_gamma(x).unwrap() + x.ln();
        prop_assert!((lhs - rhs).abs() <= 2e-14 * (1.0 + rhs.abs()), "x={x}");
    }

    #[test]
    fn hurwitz_duplication(s in -3.0f64..6.0, a in 0.02f64..0.5) {
        prop_assume!((s - 1.0).abs() > 1e-3);
        let lhs = hurwitz_zeta(s, a).unwrap() + hurwitz_zeta(s, a + 0.5).unwrap();
        let rhs = 2f64.powf(s) * hurwitz_zeta(s, 2.0 * a).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs()), "s={s} a={a}: {lhs} vs {rhs}");
    }

    #[test]
    fn eta_positive_and_bounded(x in 0.02f64..40.0) {
        let v = eta(x, 1e-15).unwrap();
        prop_assert!(v.value > 0.0);
        prop_assert!(v.value <= (-std::f64::consts::PI * x / 12.0).exp() * (1.0 + 1e-14));
        prop_assert!(v.trunc_bound <= 1e-15);
        prop_assert!(v.terms_used >= 1);
        let c = eta_cubed(x, 1e-15).unwrap();
        prop_assert!(c.value > 0.0);
    }

    #[test]
    fn modular_functional_equation(x in 0.3f64..3.0) {
        for power in [EtaPower::One, EtaPower::Three] {
            let n = f64::from(power.exponent());
            let lhs = eta_series_direct(x, power, 1e-16).unwrap().value;
            let rhs = x.powf(-n / 2.0) * eta_series_direct(1.0 / x, power, 1e-16).unwrap().value;
            prop_assert!((lhs - rhs).abs() < 1e-14, "x={x} n={n}");
        }
    }

    #[test]
    fn truncation_bound_is_honest(x in 0.05f64..20.0, k in 2i32..14) {
        let tol = 10f64.powi(-k);
        for power in [EtaPower::One, EtaPower::Three] {
            let coarse = eta_power(x, power, tol).unwrap();
            let fine = eta_power(x, power, tol / 2.0).unwrap();
            prop_assert!((coarse.value - fine.value).abs() <= coarse.trunc_bound + 1e-16);
            prop_assert!(coarse.trunc_bound <= tol);
        }
    }

    #[test]
    fn terms_monotone_in_nome(x in 1.0f64..20.0, k in 1i32..15) {
        let tol = 10f64.powi(-k);
        for power in [EtaPower::One, EtaPower::Three] {
            prop_assert!(trunc_terms_needed(2.0 * x, power, tol) <= trunc_terms_needed(x, power, tol));
        }
    }

    #[test]
    fn laplace_eta3_completely_monotone_spot(y in 0.0f64..10.0) {
        let h = 1e-3;
        let f = |y: f64| closed_forms::laplace_eta3(y).unwrap();
        prop_assert!(f(y + h) < f(y));
        // second difference of a completely monotone function is nonnegative
        prop_assert!(f(y + 2.0 * h) - 2.0 * f(y + h) + f(y) > -1e-15);
    }
}

#[test]
fn eta_is_deterministic() {
    for x in [0.1, 0.77, 1.0, 3.3] {
        assert_eq!(eta(x, 1e-14).unwrap(), eta(x, 1e-14).unwrap());
    }
}
