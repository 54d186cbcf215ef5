use std::f64::consts::PI;

use proptest::prelude::*;
use series_forge::combinatorics::{q_value, stirling_first};
use series_forge::expansions::{arcsin_power_coeffs, arcsinh_power_coeffs};
use series_forge::logsine::{logsine_arcsin_form, logsine_quadrature, LogsineRequest};
use series_forge::series::{arcsin_series, arcsinh_series};
use series_forge::Rational;

#[test]
fn quadrature_routes_agree_on_grid() {
    let tol = 1e-12;
    for j in 1..=5u32 {
        for k in 0..j {
            for theta in [PI / 6.0, PI / 3.0, PI / 2.0, 2.0 * PI / 3.0, PI] {
                let req = LogsineRequest::new(j, k, theta).unwrap().with_tolerance(tol);
                let q = logsine_quadrature(&req).unwrap().value;
                let a = logsine_arcsin_form(&req).unwrap().value;
                assert!((q - a).abs() <= 2.0 * tol, "j={j} k={k} θ={theta}: {q} vs {a}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn q_with_k_zero_is_one(m in 1usize..12, a in -5i64..5) {
        prop_assume!(m as i64 != a);
        prop_assert_eq!(q_value(m, 0, &Rational::from(a)).unwrap(), Rational::one());
    }

    #[test]
    fn q_at_alpha_m_plus_k_is_single_stirling(m in 1usize..8, k in 1usize..8) {
        // α = m + k − 2 makes every power ((m+k−α)/2)^ℓ equal to 1
        let alpha = Rational::from((m + k) as i64 - 2);
        let direct: Rational = (0..=k)
            .map(|l| {
                let b = series_forge::exact::binomial((m + l - 1) as u64, (m - 1) as u64);
                Rational::from(b) * Rational::from(stirling_first(m + k - 1, m + l - 1).unwrap())
            })
            .fold(Rational::zero(), |a, b| a + b);
        prop_assert_eq!(q_value(m, k, &alpha).unwrap(), direct);
    }

    #[test]
    fn arcsin_and_arcsinh_differ_by_alternation(m in 1u32..6, order in 4usize..20) {
        let a = arcsin_power_coeffs(m, order).unwrap();
        let h = arcsinh_power_coeffs(m, order).unwrap();
        for i in 0..=order {
            let sign = if i % 4 == 2 { -Rational::one() } else { Rational::one() };
            prop_assert_eq!(a.coeff(i), sign * h.coeff(i));
        }
    }

    #[test]
    fn arcsin_odd_part_only(order in 3usize..30) {
        let s = arcsin_series(order);
        let h = arcsinh_series(order);
        for i in (0..=order).step_by(2) {
            prop_assert!(s.coeff(i).is_zero() && h.coeff(i).is_zero());
        }
    }
}
