//! Generalized logsine `Ls_j^{(k)}(θ) = −∫_0^θ x^k ln^{j−k−1}|2 sin(x/2)| dx`
//! in double precision, by three routes: direct quadrature, quadrature of
//! the arcsin form, and the `Q(k+1,2q;2)` series. Also the `(π/3)^m`
//! partial sums.

use std::f64::consts::{LN_2, PI};

use serde::Serialize;

use crate::combinatorics::{q_value_with, StirlingTable};
use crate::error::{Error, Result};
use crate::exact::{binomial, Rational};
use crate::expansions::arcsin_power_over_sqrt_coeffs;
use crate::series::factorial_q;

/// Width of the interval next to 0 that is integrated in closed form.
const NEAR_ZERO: f64 = 1e-3;
const MAX_DEPTH: u32 = 40;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogsineRequest {
    pub j: u32,
    pub k: u32,
    pub theta: f64,
    /// Number of `q ≥ 1` terms used by the series route.
    pub series_terms: usize,
    pub quad_tolerance: f64,
}

impl LogsineRequest {
    pub fn new(j: u32, k: u32, theta: f64) -> Result<Self> {
        let req = LogsineRequest { j, k, theta, series_terms: 40, quad_tolerance: 1e-12 };
        req.validate()?;
        Ok(req)
    }

    pub fn with_terms(mut self, terms: usize) -> Self {
        self.series_terms = terms;
        self
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.quad_tolerance = tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.j < self.k + 1 {
            return Err(Error::Domain(format!("need j ≥ k + 1, got j={}, k={}", self.j, self.k)));
        }
        if !(self.theta > 0.0 && self.theta <= PI) {
            return Err(Error::Domain(format!("theta must lie in (0, π], got {}", self.theta)));
        }
        if self.quad_tolerance.is_nan() || self.quad_tolerance <= 0.0 {
            return Err(Error::Domain(format!("tolerance must be positive, got {}", self.quad_tolerance)));
        }
        Ok(())
    }

    /// Power of the logarithm, `j − k − 1`.
    fn log_power(&self) -> u32 {
        self.j - self.k - 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Quad,
    Arcsin,
    Series,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Quad => "quad",
            Method::Arcsin => "arcsin",
            Method::Series => "series",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LogsineValue {
    pub method: Method,
    pub value: f64,
    pub est_error: f64,
    /// Set by the series route when convergence is expected to be slow.
    pub slow: bool,
}

/// Direct quadrature of the defining integral.
pub fn logsine_quadrature(req: &LogsineRequest) -> Result<LogsineValue> {
    req.validate()?;
    let (k, m) = (req.k, req.log_power());
    let cut = NEAR_ZERO.min(req.theta);
    // ln(2 sin(x/2)) = ln x + r(x) with r(x) = −x²/24 − x⁴/2880 + O(x⁶);
    // expanding (ln x + r)^m to second order in r leaves an O(x^{k+6}) error.
    let mf = m as f64;
    let mut near = x_pow_ln_integral(k, m, cut);
    if m >= 1 {
        near -= mf / 24.0 * x_pow_ln_integral(k + 2, m - 1, cut);
        near -= mf / 2880.0 * x_pow_ln_integral(k + 4, m - 1, cut);
    }
    if m >= 2 {
        near += mf * (mf - 1.0) / 2.0 / 576.0 * x_pow_ln_integral(k + 4, m - 2, cut);
    }
    let mut value = near;
    let mut err = 0.0;
    if req.theta > cut {
        let f = |x: f64| x.powi(k as i32) * (2.0 * (x / 2.0).sin()).ln().powi(m as i32);
        let q = adaptive_gk(&f, cut, req.theta, req.quad_tolerance)?;
        value += q.value;
        err += q.error;
    }
    Ok(LogsineValue { method: Method::Quad, value: -value, est_error: err, slow: false })
}

/// Quadrature of `−2^{k+1} ∫_0^{sin(θ/2)} (arcsin x)^k/√(1−x²) ln^{j−k−1}(2x) dx`.
pub fn logsine_arcsin_form(req: &LogsineRequest) -> Result<LogsineValue> {
    req.validate()?;
    let (k, m) = (req.k, req.log_power());
    let s = (req.theta / 2.0).sin();
    let cut = NEAR_ZERO.min(s);
    // (arcsin x)^k/√(1−x²) = x^k (c_0 + c_1 x² + c_2 x⁴ + c_3 x⁶ + …), and
    // ln^m(2x) expands binomially in ln x.
    let c = arcsin_power_over_sqrt_coeffs(k, k as usize + 6)?;
    let mut near = 0.0;
    for i in 0..=m {
        let w = binom_f64(m, i) * LN_2.powi((m - i) as i32);
        for p in 0..=3u32 {
            let cp = c.coeff(k as usize + 2 * p as usize).to_f64();
            near += w * cp * x_pow_ln_integral(k + 2 * p, i, cut);
        }
    }
    let mut value = near;
    let mut err = 0.0;
    let tol = req.quad_tolerance / 2f64.powi(k as i32 + 2);
    let g = |x: f64, asin: f64| asin.powi(k as i32) * (2.0 * x).ln().powi(m as i32);
    let split = 0.5f64.min(s);
    if split > cut {
        let f = |x: f64| g(x, x.asin()) / (1.0 - x * x).sqrt();
        let q = adaptive_gk(&f, cut, split, tol)?;
        value += q.value;
        err += q.error;
    }
    if s > split {
        // x = 1 − w²: dx/√(1−x²) = −2 dw/√(2−w²), arcsin x = π/2 − 2 asin(w/√2)
        let f = |w: f64| {
            let x = 1.0 - w * w;
            let asin = PI / 2.0 - 2.0 * (w / std::f64::consts::SQRT_2).asin();
            g(x, asin) * 2.0 / (2.0 - w * w).sqrt()
        };
        let q = adaptive_gk(&f, (1.0 - s).max(0.0).sqrt(), (1.0 - split).sqrt(), tol)?;
        value += q.value;
        err += q.error;
    }
    let scale = 2f64.powi(k as i32 + 1);
    Ok(LogsineValue { method: Method::Arcsin, value: -scale * value, est_error: scale * err, slow: false })
}

/// Series route: `−2^{k+1} Σ_{q≥0} c_q ∫_0^{s} x^{k+2q} ln^{j−k−1}(2x) dx` with
/// `s = sin(θ/2)` and `c_q = (−1)^q Q(k+1,2q;2)/binom(k+2q,k) · 4^q/(2q)!`.
///
/// Each integral is evaluated in the grouped form
/// `Σ_ℓ binom(J,ℓ) (ln 2)^{J−ℓ} s^{n+1} Σ_{p≤ℓ} (−1)^p ⟨ℓ⟩_p (ln s)^{ℓ−p}/(n+1)^{p+1}`,
/// which only raises `ln s` to nonnegative powers and so stays finite at `θ = π`.
pub fn logsine_series(req: &LogsineRequest) -> Result<LogsineValue> {
    req.validate()?;
    if req.k < 1 {
        return Err(Error::Domain("the series route needs k ≥ 1".into()));
    }
    let k = req.k as usize;
    let j_pow = req.log_power();
    let s = (req.theta / 2.0).sin();
    let coeffs = series_coefficients(k, req.series_terms)?;
    let mut total = 0.0;
    let mut magnitudes = Vec::with_capacity(coeffs.len());
    for (q, c) in coeffs.iter().enumerate() {
        let term = c * grouped_integral(k + 2 * q, j_pow, s);
        magnitudes.push(term.abs());
        total += term;
    }
    let last = magnitudes.last().copied().unwrap_or(0.0);
    let est = if s < 1.0 { last * s * s / (1.0 - s * s) } else { last * coeffs.len() as f64 };
    let tail = &magnitudes[magnitudes.len().saturating_sub(4)..];
    let not_decreasing = tail.len() >= 2 && tail.windows(2).any(|w| w[1] >= w[0] && w[1] > 0.0);
    let slow = req.theta > 2.0 * PI / 3.0 || not_decreasing;
    let scale = 2f64.powi(k as i32 + 1);
    Ok(LogsineValue { method: Method::Series, value: -scale * total, est_error: scale * est, slow })
}

/// `c_q` for `q = 0..=terms`, exact then converted.
fn series_coefficients(k: usize, terms: usize) -> Result<Vec<f64>> {
    let table = StirlingTable::shared(k + 2 * terms + 1);
    let two = Rational::from(2);
    let mut out = vec![1.0];
    for q in 1..=terms {
        let c = Rational::sign_pow(q as i64) * q_value_with(&table, k + 1, 2 * q, &two)?
            / Rational::from(binomial((k + 2 * q) as u64, k as u64))
            * Rational::from(4).powu(q as u32)
            / factorial_q(2 * q);
        out.push(c.to_f64());
    }
    Ok(out)
}

/// `∫_0^s x^n ln^J(2x) dx` in the grouped nonnegative-power form.
fn grouped_integral(n: usize, j_pow: u32, s: f64) -> f64 {
    let l_s = s.ln();
    let n1 = (n + 1) as f64;
    let mut total = 0.0;
    for l in 0..=j_pow {
        let mut inner = 0.0;
        let mut falling = 1.0;
        for p in 0..=l {
            // terms with p > ℓ would carry ⟨ℓ⟩_p = 0 and are never formed
            inner += if p % 2 == 0 { 1.0 } else { -1.0 } * falling * l_s.powi((l - p) as i32) / n1.powi(p as i32 + 1);
            falling *= (l - p) as f64;
        }
        total += binom_f64(j_pow, l) * LN_2.powi((j_pow - l) as i32) * inner;
    }
    total * s.powi(n as i32 + 1)
}

fn binom_f64(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `∫_0^a x^n (ln x)^m dx = a^{n+1} Σ_{p=0}^{m} (−1)^p ⟨m⟩_p (ln a)^{m−p}/(n+1)^{p+1}`.
pub fn x_pow_ln_integral(n: u32, m: u32, a: f64) -> f64 {
    if a <= 0.0 {
        return 0.0;
    }
    let la = a.ln();
    let n1 = (n + 1) as f64;
    let mut sum = 0.0;
    let mut falling = 1.0;
    for p in 0..=m {
        let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * falling * la.powi((m - p) as i32) / n1.powi(p as i32 + 1);
        falling *= (m - p) as f64;
    }
    a.powi(n as i32 + 1) * sum
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

/// 15-point Kronrod estimate and its embedded 7-point Gauss estimate.
fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let pair = f(c - dx) + f(c + dx);
        kron += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    (kron * h, gauss * h)
}

/// Adaptive Gauss–Kronrod by bisection. Subintervals are accepted once
/// `|K15 − G7|` drops below their share of `tol` (or reaches roundoff);
/// bisection stops at depth 40.
pub fn adaptive_gk(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<Quadrature> {
    let mut capped = false;
    let (value, error) = bisect(f, a, b, tol, 0, &mut capped);
    if capped && error > tol {
        return Err(Error::Quadrature { achieved: error, requested: tol });
    }
    Ok(Quadrature { value, error })
}

fn bisect(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32, capped: &mut bool) -> (f64, f64) {
    let (k, g) = gk15(f, a, b);
    let err = (k - g).abs();
    let roundoff = 50.0 * f64::EPSILON * k.abs();
    if err <= tol || err <= roundoff {
        return (k, err);
    }
    if depth >= MAX_DEPTH {
        *capped = true;
        return (k, err);
    }
    let mid = 0.5 * (a + b);
    let (v1, e1) = bisect(f, a, mid, tol / 2.0, depth + 1, capped);
    let (v2, e2) = bisect(f, mid, b, tol / 2.0, depth + 1, capped);
    (v1 + v2, e1 + e2)
}

/// Partial sums of `(π/3)^m = 1 + m! Σ_{k≥1} (−1)^k Q(m,2k;2)/(m+2k)!`.
/// Entry `i` holds `1 + Σ_{k=1}^{i}`, so the first entry is exactly 1.
pub fn pi_power_partial_sums(m: u32, terms: usize) -> Result<Vec<f64>> {
    if m < 1 {
        return Err(Error::Domain("m must be ≥ 1".into()));
    }
    let m = m as usize;
    let table = StirlingTable::shared(m + 2 * terms);
    let two = Rational::from(2);
    let mf = factorial_q(m);
    let mut acc = Rational::one();
    let mut out = Vec::with_capacity(terms);
    for k in 0..terms {
        if k >= 1 {
            acc += Rational::sign_pow(k as i64) * &mf * q_value_with(&table, m, 2 * k, &two)? / factorial_q(m + 2 * k);
        }
        out.push(acc.to_f64());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const ZETA3: f64 = 1.202_056_903_159_594_2;

    /// Clausen function `Cl_2(θ) = Σ sin(nθ)/n²`, equal to `Ls_2(θ)`.
    fn clausen(theta: f64, terms: usize) -> f64 {
        (1..=terms).map(|n| (n as f64 * theta).sin() / (n * n) as f64).sum()
    }

    fn req(j: u32, k: u32, theta: f64) -> LogsineRequest {
        LogsineRequest::new(j, k, theta).unwrap()
    }

    #[test]
    fn validation() {
        assert!(LogsineRequest::new(1, 1, 1.0).is_err());
        assert!(LogsineRequest::new(2, 0, 0.0).is_err());
        assert!(LogsineRequest::new(2, 0, 3.5).is_err());
        assert!(logsine_series(&req(3, 0, 1.0)).is_err());
    }

    #[test]
    fn ls2_at_pi_vanishes() {
        let r = req(2, 0, PI);
        assert!(logsine_quadrature(&r).unwrap().value.abs() < 1e-10);
        assert!(logsine_arcsin_form(&r).unwrap().value.abs() < 1e-9);
    }

    #[test]
    fn ls2_matches_clausen() {
        let theta = PI / 3.0;
        let v = logsine_quadrature(&req(2, 0, theta)).unwrap().value;
        assert!((v - 1.014_941_606_4).abs() < 1e-8, "{v}");
        assert!((v - clausen(theta, 200_000)).abs() < 1e-8);
        for theta in [0.3, 1.0, 2.0, 2.9] {
            let q = logsine_quadrature(&req(2, 0, theta)).unwrap().value;
            let a = logsine_arcsin_form(&req(2, 0, theta)).unwrap().value;
            let c = clausen(theta, 400_000);
            assert!((q - c).abs() < 1e-8 && (a - c).abs() < 1e-8, "θ={theta}: {q} {a} {c}");
        }
    }

    #[test]
    fn known_values_at_pi() {
        let ls3 = logsine_quadrature(&req(3, 0, PI)).unwrap().value;
        assert!((ls3 + PI.powi(3) / 12.0).abs() < 1e-10, "{ls3}");
        let ls4 = logsine_quadrature(&req(4, 0, PI)).unwrap().value;
        assert!((ls4 - 1.5 * PI * ZETA3).abs() < 1e-10, "{ls4}");
        let a4 = logsine_arcsin_form(&req(4, 0, PI)).unwrap().value;
        assert!((a4 - 1.5 * PI * ZETA3).abs() < 1e-9, "{a4}");
    }

    #[test]
    fn small_theta_tends_to_zero() {
        for k in 1..=3 {
            let v = logsine_quadrature(&req(k + 2, k, 1e-6)).unwrap().value;
            assert!(v.abs() < 1e-9, "{v}");
        }
    }

    #[test]
    fn pure_power_case_is_exact() {
        for k in 0..=3u32 {
            let theta: f64 = 1.3;
            let exact = -theta.powi(k as i32 + 1) / (k + 1) as f64;
            let q = logsine_quadrature(&req(k + 1, k, theta)).unwrap().value;
            let a = logsine_arcsin_form(&req(k + 1, k, theta)).unwrap().value;
            assert!((q - exact).abs() < 1e-12 && (a - exact).abs() < 1e-10, "k={k}: {q} {a} {exact}");
        }
    }

    #[test]
    fn routes_agree() {
        let r = req(3, 1, PI / 2.0);
        let q = logsine_quadrature(&r).unwrap().value;
        let a = logsine_arcsin_form(&r).unwrap().value;
        assert!((q - a).abs() < 1e-9, "{q} {a}");
        for (j, k, theta) in [(3, 1, PI / 3.0), (2, 1, PI / 2.0)] {
            let r = req(j, k, theta);
            let s = logsine_series(&r).unwrap();
            let q = logsine_quadrature(&r).unwrap().value;
            assert!((s.value - q).abs() < 1e-8, "({j},{k},{theta}): {} {q}", s.value);
            assert!(!s.slow);
        }
    }

    #[test]
    fn series_at_pi_is_finite_and_flagged() {
        let s = logsine_series(&req(3, 1, PI)).unwrap();
        assert!(s.value.is_finite());
        assert!(s.slow);
    }

    #[test]
    fn closed_form_power_log_integral() {
        // ∫_0^1 x^n ln^m x dx = (−1)^m m!/(n+1)^{m+1}
        assert!((x_pow_ln_integral(2, 3, 1.0) + 6.0 / 81.0).abs() < 1e-15);
        let f = |x: f64| x * x * x.ln().powi(2);
        let q = adaptive_gk(&f, 0.25, 0.75, 1e-14).unwrap().value;
        let exact = x_pow_ln_integral(2, 2, 0.75) - x_pow_ln_integral(2, 2, 0.25);
        assert!((q - exact).abs() < 1e-13);
    }

    #[test]
    fn grouped_integral_needs_no_terms_beyond_l() {
        // at s = 1 only the p = ℓ terms survive
        let direct: f64 = (0..=2u32)
            .map(|l| {
                let falling: f64 = (0..l).map(|i| (l - i) as f64).product();
                binom_f64(2, l) * LN_2.powi(2 - l as i32) * if l % 2 == 0 { 1.0 } else { -1.0 } * falling / 4f64.powi(l as i32 + 1)
            })
            .sum();
        assert!((grouped_integral(3, 2, 1.0) - direct).abs() < 1e-15);
    }

    #[test]
    fn quadrature_reports_non_convergence() {
        let f = |x: f64| if x < 0.3 { 0.0 } else { 1.0 / (x - 0.3).sqrt().max(1e-300) };
        let e = adaptive_gk(&f, 0.0, 1.0, 1e-300);
        assert!(matches!(e, Err(Error::Quadrature { .. })));
    }

    #[test]
    fn pi_sums() {
        let one = pi_power_partial_sums(1, 30).unwrap();
        assert_eq!(one[0], 1.0);
        assert!((one[29] - PI / 3.0).abs() < 1e-10);
        let two = pi_power_partial_sums(2, 30).unwrap();
        assert!((two[29] - 1.096_622_711_2).abs() < 1e-9);
        assert_eq!(pi_power_partial_sums(1, 1).unwrap(), vec![1.0]);
    }
}
