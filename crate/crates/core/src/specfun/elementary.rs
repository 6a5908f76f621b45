//! Overflow- and cancellation-safe ratios of hyperbolic and circular
//! functions that recur in the closed forms and integrands.

use num_traits::Float;

/// Below this argument the power series are used.
const SERIES_MAX: f64 = 1.5;

/// `(sinh u − sin u) / (cosh u + cos u)` for `u ≥ 0`.
pub fn sinh_minus_sin_ratio(u: f64) -> f64 {
    let u = u.abs();
    if u < SERIES_MAX {
        // numerator 2 Σ u^{4j+3}/(4j+3)!, denominator 2 Σ u^{4j}/(4j)!
        let (num, den) = paired_series(u, 3);
        num / den
    } else {
        let e1 = (-u).exp();
        let e2 = e1 * e1;
        (1.0 - e2 - 2.0 * e1 * u.sin()) / (1.0 + e2 + 2.0 * e1 * u.cos())
    }
}

/// `(sinh u + sin u) / (cosh u + cos u)` for `u ≥ 0`.
pub fn sinh_plus_sin_ratio(u: f64) -> f64 {
    let u = u.abs();
    if u < SERIES_MAX {
        let (num, den) = paired_series(u, 1);
        num / den
    } else {
        let e1 = (-u).exp();
        let e2 = e1 * e1;
        (1.0 - e2 + 2.0 * e1 * u.sin()) / (1.0 + e2 + 2.0 * e1 * u.cos())
    }
}

/// `sinh(a) / cosh(b)` for `a, b ≥ 0`, finite even when both overflow.
pub fn sinh_over_cosh(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        return 0.0;
    }
    (a - b).exp() * (-(-2.0 * a).exp_m1()) / (1.0 + (-2.0 * b).exp())
}

// Returns (Σ u^{4j+r}/(4j+r)!, Σ u^{4j}/(4j)!) to full precision.
fn paired_series(u: f64, r: u32) -> (f64, f64) {
    let u4 = u.powi(4);
    let mut num_term = u.powi(r as i32) / factorial(r);
    let mut den_term = 1.0;
    let mut num = num_term;
    let mut den = den_term;
    let mut j = 0.0;
    let rf = f64::from(r);
    while num_term > 1e-18 * num || den_term > 1e-18 * den {
        let k = 4.0 * j;
        num_term *= u4 / ((k + rf + 1.0) * (k + rf + 2.0) * (k + rf + 3.0) * (k + rf + 4.0));
        den_term *= u4 / ((k + 1.0) * (k + 2.0) * (k + 3.0) * (k + 4.0));
        num += num_term;
        den += den_term;
        j += 1.0;
    }
    (num, den)
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn direct_minus(u: f64) -> f64 {
        (u.sinh() - u.sin()) / (u.cosh() + u.cos())
    }

    fn direct_plus(u: f64) -> f64 {
        (u.sinh() + u.sin()) / (u.cosh() + u.cos())
    }

    #[test]
    fn series_and_direct_agree_near_switch() {
        for u in [0.9, 1.2, 1.49, 1.5, 1.6, 3.0, 10.0] {
            assert!(
                (sinh_minus_sin_ratio(u) - direct_minus(u)).abs() < 1e-14,
                "u={u}"
            );
            assert!(
                (sinh_plus_sin_ratio(u) - direct_plus(u)).abs() < 1e-14,
                "u={u}"
            );
        }
    }

    #[test]
    fn small_argument_leading_terms() {
        let u = 1e-3;
        assert!((sinh_minus_sin_ratio(u) - u.powi(3) / 6.0).abs() < 1e-22);
        assert!((sinh_plus_sin_ratio(u) - u).abs() < 1e-15);
        assert_eq!(sinh_minus_sin_ratio(0.0), 0.0);
    }

    #[test]
    fn large_arguments_tend_to_one() {
        assert_eq!(sinh_minus_sin_ratio(1000.0), 1.0);
        assert_eq!(sinh_plus_sin_ratio(1000.0), 1.0);
        let r = sinh_over_cosh(900.0, 1000.0);
        assert!(r > 0.0 && r < 1e-40);
        assert!((sinh_over_cosh(1.0, 2.0) - 1f64.sinh() / 2f64.cosh()).abs() < 1e-16);
    }
}
