//! Closed-form Maclaurin coefficients for powers of inverse (hyperbolic)
//! sine, tangent and cosine, each paired with an oracle built from the base
//! series by ring operations.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;

use crate::combinatorics::{q_value_with, StirlingTable};
use crate::error::{Error, Result};
use crate::exact::{binomial, extended_binomial, Coeff, PiPoly, Rational};
use crate::series::{
    arcsin_series, arcsinh_series, arctan_series, arctanh_series, factorial_q,
    inv_sqrt_one_minus_t2, inv_sqrt_one_plus_t2, sqrt_one_plus_t2, Series,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExpansionFamily {
    ArcsinPow,
    ArcsinPowOverSqrt,
    ArcsinhPow,
    ArcsinhPowOverSqrt,
    ExpArcsinh,
    GammaArcsinh,
    ArctanPow,
    ArctanhPow,
    ArccosPow,
}

impl ExpansionFamily {
    pub const ALL: [ExpansionFamily; 9] = [
        ExpansionFamily::ArcsinPow,
        ExpansionFamily::ArcsinPowOverSqrt,
        ExpansionFamily::ArcsinhPow,
        ExpansionFamily::ArcsinhPowOverSqrt,
        ExpansionFamily::ExpArcsinh,
        ExpansionFamily::GammaArcsinh,
        ExpansionFamily::ArctanPow,
        ExpansionFamily::ArctanhPow,
        ExpansionFamily::ArccosPow,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExpansionFamily::ArcsinPow => "arcsin-pow",
            ExpansionFamily::ArcsinPowOverSqrt => "arcsin-pow-over-sqrt",
            ExpansionFamily::ArcsinhPow => "arcsinh-pow",
            ExpansionFamily::ArcsinhPowOverSqrt => "arcsinh-pow-over-sqrt",
            ExpansionFamily::ExpArcsinh => "exp-arcsinh",
            ExpansionFamily::GammaArcsinh => "gamma-arcsinh",
            ExpansionFamily::ArctanPow => "arctan-pow",
            ExpansionFamily::ArctanhPow => "arctanh-pow",
            ExpansionFamily::ArccosPow => "arccos-pow",
        }
    }

    /// Human-readable form of the expanded function.
    pub fn describe(self) -> &'static str {
        match self {
            ExpansionFamily::ArcsinPow => "(arcsin t / t)^m",
            ExpansionFamily::ArcsinPowOverSqrt => "(arcsin t)^m / sqrt(1 - t^2)",
            ExpansionFamily::ArcsinhPow => "(arcsinh t / t)^m",
            ExpansionFamily::ArcsinhPowOverSqrt => "(arcsinh t)^m / sqrt(1 + t^2)",
            ExpansionFamily::ExpArcsinh => "exp(arcsinh t)",
            ExpansionFamily::GammaArcsinh => "Gamma(m, arcsinh t)",
            ExpansionFamily::ArctanPow => "(arctan t)^n",
            ExpansionFamily::ArctanhPow => "(arctanh t)^n",
            ExpansionFamily::ArccosPow => "(arccos t)^m",
        }
    }

    /// Smallest admissible parameter.
    pub fn min_param(self) -> u32 {
        match self {
            ExpansionFamily::ArcsinPowOverSqrt | ExpansionFamily::ArcsinhPowOverSqrt => 0,
            ExpansionFamily::ExpArcsinh => 0,
            ExpansionFamily::GammaArcsinh => 2,
            _ => 1,
        }
    }

    /// Whether the family takes a parameter at all.
    pub fn has_param(self) -> bool {
        self != ExpansionFamily::ExpArcsinh
    }
}

impl fmt::Display for ExpansionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExpansionFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExpansionFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown expansion family {s:?}")))
    }
}

/// A request for the Maclaurin series of one family member to a given
/// truncation order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpansionSpec {
    pub family: ExpansionFamily,
    pub param: u32,
    pub order: usize,
}

/// Series over `ℚ` for every family except arccos, which lives in `ℚ[π]`.
#[derive(Clone, Debug, PartialEq)]
pub enum ExpansionSeries {
    Rational(Series<Rational>),
    Pi(Series<PiPoly>),
}

impl ExpansionSeries {
    pub fn order(&self) -> usize {
        match self {
            ExpansionSeries::Rational(s) => s.order(),
            ExpansionSeries::Pi(s) => s.order(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            ExpansionSeries::Rational(s) => s.to_json(),
            ExpansionSeries::Pi(s) => s.to_json(),
        }
    }

    pub fn to_csv(&self) -> String {
        match self {
            ExpansionSeries::Rational(s) => s.to_csv(),
            ExpansionSeries::Pi(s) => s.to_csv(),
        }
    }

    /// `(index, coefficient)` strings for every stored coefficient.
    pub fn rows(&self) -> Vec<(usize, String)> {
        fn rows<C: Coeff>(s: &Series<C>) -> Vec<(usize, String)> {
            s.coeffs().iter().enumerate().map(|(i, c)| (i, c.to_string())).collect()
        }
        match self {
            ExpansionSeries::Rational(s) => rows(s),
            ExpansionSeries::Pi(s) => rows(s),
        }
    }

    /// First index where the two series differ, with both coefficients.
    pub fn first_mismatch(&self, other: &Self) -> Option<Mismatch> {
        fn find<C: Coeff>(a: &Series<C>, b: &Series<C>) -> Option<Mismatch> {
            let upto = a.order().max(b.order());
            a.first_mismatch(b, upto).map(|i| Mismatch {
                index: i,
                theorem: a.coeff(i).to_string(),
                oracle: b.coeff(i).to_string(),
            })
        }
        match (self, other) {
            (ExpansionSeries::Rational(a), ExpansionSeries::Rational(b)) => find(a, b),
            (ExpansionSeries::Pi(a), ExpansionSeries::Pi(b)) => find(a, b),
            _ => Some(Mismatch { index: 0, theorem: "ring Q".into(), oracle: "ring Q[pi]".into() }),
        }
    }
}

impl fmt::Display for ExpansionSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpansionSeries::Rational(s) => s.fmt(f),
            ExpansionSeries::Pi(s) => s.fmt(f),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub index: usize,
    pub theorem: String,
    pub oracle: String,
}

/// Outcome of comparing closed-form coefficients with the oracle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub family: String,
    pub param: u32,
    pub order: usize,
    pub pass: bool,
    pub first_mismatch: Option<Mismatch>,
}

impl ExpansionSpec {
    pub fn new(family: ExpansionFamily, param: u32, order: usize) -> Result<Self> {
        let spec = ExpansionSpec { family, param, order };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let min = self.family.min_param();
        if self.family.has_param() && self.param < min {
            return Err(Error::Domain(format!("{} needs parameter ≥ {min}, got {}", self.family, self.param)));
        }
        if self.family == ExpansionFamily::ExpArcsinh && self.order < 2 {
            return Err(Error::Domain(format!("{} needs order ≥ 2", self.family)));
        }
        if self.family.has_param() && self.order < self.param as usize {
            return Err(Error::Domain(format!(
                "order {} is below the parameter {}",
                self.order, self.param
            )));
        }
        Ok(())
    }

    /// Coefficients from the closed-form expansion.
    pub fn theorem_series(&self) -> Result<ExpansionSeries> {
        self.validate()?;
        let (m, n) = (self.param, self.order);
        use ExpansionFamily::*;
        Ok(ExpansionSeries::Rational(match self.family {
            ArcsinPow => arcsin_power_coeffs(m, n)?,
            ArcsinPowOverSqrt => arcsin_power_over_sqrt_coeffs(m, n)?,
            ArcsinhPow => arcsinh_power_coeffs(m, n)?,
            ArcsinhPowOverSqrt => arcsinh_power_over_sqrt_coeffs(m, n)?,
            ExpArcsinh => exp_arcsinh_coeffs(n)?,
            GammaArcsinh => gamma_arcsinh_coeffs(m, n)?,
            ArctanPow => arctan_power_coeffs(m, n)?,
            ArctanhPow => arctanh_power_coeffs(m, n)?,
            ArccosPow => return Ok(ExpansionSeries::Pi(arccos_power_coeffs(m, n)?)),
        }))
    }

    /// The same series built from the base expansions by ring operations.
    pub fn oracle_series(&self) -> Result<ExpansionSeries> {
        self.validate()?;
        let (m, n) = (self.param, self.order);
        use ExpansionFamily::*;
        Ok(ExpansionSeries::Rational(match self.family {
            ArcsinPow => arcsin_series(n + m as usize).pow(m).shift_down(m as usize)?,
            ArcsinPowOverSqrt => arcsin_series(n).pow(m).mul(&inv_sqrt_one_minus_t2(n)),
            ArcsinhPow => arcsinh_series(n + m as usize).pow(m).shift_down(m as usize)?,
            ArcsinhPowOverSqrt => arcsinh_series(n).pow(m).mul(&inv_sqrt_one_plus_t2(n)),
            ExpArcsinh => Series::variable(n).add(&sqrt_one_plus_t2(n)),
            GammaArcsinh => gamma_oracle(m, n)?,
            ArctanPow => arctan_series(n).pow(m),
            ArctanhPow => arctanh_series(n).pow(m),
            ArccosPow => {
                let half_pi = Series::constant(PiPoly::half_pi(), n);
                return Ok(ExpansionSeries::Pi(half_pi.sub(&arcsin_series(n).lift()).pow(m)));
            }
        }))
    }

    pub fn verify(&self) -> Result<OracleReport> {
        let theorem = self.theorem_series()?;
        let oracle = self.oracle_series()?;
        let first_mismatch = theorem.first_mismatch(&oracle);
        Ok(OracleReport {
            family: self.family.name().to_string(),
            param: self.param,
            order: self.order,
            pass: first_mismatch.is_none(),
            first_mismatch,
        })
    }
}

fn table_for(n: usize) -> std::sync::Arc<StirlingTable> {
    StirlingTable::shared(n)
}

/// `4^k/(2k)!`, the common factor of `(2t)^{2k}/(2k)!`.
fn four_pow_over_fact(k: usize) -> Rational {
    Rational::from(4).powu(k as u32) / factorial_q(2 * k)
}

/// Shared body of the four arcsin/arcsinh families:
/// `t^shift [1 + Σ_k σ^k Q(q_m, 2k; 2)/binom(m+2k, m) (2t)^{2k}/(2k)!]`.
fn arc_family(m: u32, q_m: usize, shift: usize, alternating: bool, order: usize) -> Result<Series<Rational>> {
    let table = table_for(q_m + order);
    let two = Rational::from(2);
    let mut coeffs = vec![Rational::zero(); order + 1];
    if shift <= order {
        coeffs[shift] = Rational::one();
    }
    let m = m as usize;
    for k in 1.. {
        let idx = shift + 2 * k;
        if idx > order {
            break;
        }
        let q = q_value_with(&table, q_m, 2 * k, &two)?;
        let sign = if alternating { Rational::sign_pow(k as i64) } else { Rational::one() };
        coeffs[idx] = sign * q / Rational::from(binomial((m + 2 * k) as u64, m as u64)) * four_pow_over_fact(k);
    }
    Ok(Series::new(coeffs))
}

/// `(arcsin t/t)^m = 1 + Σ_{k≥1} (−1)^k Q(m,2k;2)/binom(m+2k,m) (2t)^{2k}/(2k)!`.
pub fn arcsin_power_coeffs(m: u32, order: usize) -> Result<Series<Rational>> {
    require_at_least(m, 1)?;
    arc_family(m, m as usize, 0, true, order)
}

/// `(arcsin t)^m/√(1−t²) = t^m [1 + Σ (−1)^k Q(m+1,2k;2)/binom(m+2k,m) (2t)^{2k}/(2k)!]`.
pub fn arcsin_power_over_sqrt_coeffs(m: u32, order: usize) -> Result<Series<Rational>> {
    arc_family(m, m as usize + 1, m as usize, true, order)
}

/// `(arcsinh t/t)^m = 1 + Σ Q(m,2k;2)/binom(m+2k,m) (2t)^{2k}/(2k)!`.
pub fn arcsinh_power_coeffs(m: u32, order: usize) -> Result<Series<Rational>> {
    require_at_least(m, 1)?;
    arc_family(m, m as usize, 0, false, order)
}

/// `(arcsinh t)^m/√(1+t²) = t^m [1 + Σ Q(m+1,2k;2)/binom(m+2k,m) (2t)^{2k}/(2k)!]`.
pub fn arcsinh_power_over_sqrt_coeffs(m: u32, order: usize) -> Result<Series<Rational>> {
    arc_family(m, m as usize + 1, m as usize, false, order)
}

/// `e^{arcsinh t} = 1 + t − t² Σ_{k≥0} binom((2k−1)/2, 2k+1) (2t)^{2k}/(k+1)`.
pub fn exp_arcsinh_coeffs(order: usize) -> Result<Series<Rational>> {
    if order < 2 {
        return Err(Error::Domain("exp(arcsinh t) needs order ≥ 2".into()));
    }
    Ok(Series::from_fn(order, |i| match i {
        0 | 1 => Rational::one(),
        _ if i % 2 == 1 => Rational::zero(),
        _ => {
            let k = (i - 2) / 2;
            let b = extended_binomial(&Rational::frac(2 * k as i64 - 1, 2), 2 * k as u32 + 1);
            -(b * Rational::from(4).powu(k as u32) / Rational::from(k + 1))
        }
    }))
}

/// Adds `scale · Q(a, k−b; 3) (2t)^{k+1}/(k+1)!` for `k ≥ k0` into `coeffs`.
fn add_q3_tail(coeffs: &mut [Rational], scale: &Rational, a: usize, b: usize, k0: usize) -> Result<()> {
    let order = coeffs.len() - 1;
    let table = table_for(a + order);
    let three = Rational::from(3);
    for k in k0..order {
        let q = q_value_with(&table, a, k - b, &three)?;
        let c = Rational::from(2).powu(k as u32 + 1) / factorial_q(k + 1);
        coeffs[k + 1] += scale * q * c;
    }
    Ok(())
}

/// `Γ(m, arcsinh t)` for `m ≥ 2`:
///
/// * `m = 2`: `1 − t²/2 + t³/3 − ¼ Σ_{k≥3} Q(2,k−1;3) (2t)^{k+1}/(k+1)!`
/// * `m = 3`: `2 − t³/3 − ¼ Σ_{k≥3} Q(3,k−2;3) (2t)^{k+1}/(k+1)!`
/// * `m = M+1`, `M ≥ 3`: `M! − M!/2^{M+1} Σ_{k≥M} Q(M+1,k−M;3) (2t)^{k+1}/(k+1)!`
pub fn gamma_arcsinh_coeffs(m: u32, order: usize) -> Result<Series<Rational>> {
    gamma_arcsinh_with_scale(m, order, &Rational::frac(1, 4))
}

/// As [`gamma_arcsinh_coeffs`], with the `m = 3` tail scale exposed so the
/// alternative `1/8` reading can be shown to fail.
fn gamma_arcsinh_with_scale(m: u32, order: usize, m3_scale: &Rational) -> Result<Series<Rational>> {
    require_at_least(m, 2)?;
    let mut c = vec![Rational::zero(); order + 1];
    match m {
        2 => {
            set(&mut c, 0, Rational::one());
            set(&mut c, 2, Rational::frac(-1, 2));
            set(&mut c, 3, Rational::frac(1, 3));
            add_q3_tail(&mut c, &Rational::frac(-1, 4), 2, 1, 3)?;
        }
        3 => {
            set(&mut c, 0, Rational::from(2));
            set(&mut c, 3, Rational::frac(-1, 3));
            add_q3_tail(&mut c, &-m3_scale, 3, 2, 3)?;
        }
        _ => {
            let big_m = m as usize - 1;
            let fact = factorial_q(big_m);
            c[0] = fact.clone();
            let scale = -(fact / Rational::from(2).powu(big_m as u32 + 1));
            add_q3_tail(&mut c, &scale, big_m + 1, big_m, big_m)?;
        }
    }
    Ok(Series::new(c))
}

fn set(c: &mut [Rational], i: usize, v: Rational) {
    if let Some(slot) = c.get_mut(i) {
        *slot = v;
    }
}

/// `Γ(m, x) = (m−1)! e^{−x} Σ_{j<m} x^j/j!` composed with `arcsinh t`.
fn gamma_oracle(m: u32, order: usize) -> Result<Series<Rational>> {
    let exp_neg = Series::from_fn(order, |i| Rational::sign_pow(i as i64) / factorial_q(i));
    let partial = Series::from_fn(order, |j| if j < m as usize { Rational::one() / factorial_q(j) } else { Rational::zero() });
    let outer = exp_neg.mul(&partial).scale(&factorial_q(m as usize - 1));
    outer.compose(&arcsinh_series(order))
}

/// Which of the three `arcsinh` series identities to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArcsinhIdentity {
    /// `Σ (−1)^ℓ (ℓ+1) A^{ℓ+2}/(ℓ+2)! = t²/2 − t³/3 + ¼ Σ_{k≥3} Q(2,k−1;3) (2t)^{k+1}/(k+1)!`
    First,
    /// `Σ (−1)^ℓ (ℓ+1)(ℓ+2) A^{ℓ+3}/(ℓ+3)! = t³/3 + ¼ Σ_{k≥3} Q(3,k−2;3) (2t)^{k+1}/(k+1)!`
    Second,
    /// `Σ (−1)^ℓ binom(ℓ+m, m) A^{ℓ+m+1}/(ℓ+m+1)! = 2^{−(m+1)} Σ_{k≥m} Q(m+1,k−m;3) (2t)^{k+1}/(k+1)!`, `m ≥ 3`
    General(u32),
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck {
    pub holds: bool,
    pub lhs: Series<Rational>,
    pub rhs: Series<Rational>,
    pub first_mismatch: Option<usize>,
}

/// Checks one `arcsinh` identity as a truncated formal identity to `order`.
/// Powers `A^j` with `j > order` vanish in the truncation, so the left sum
/// is finite.
pub fn arcsinh_identity_check(which: ArcsinhIdentity, order: usize) -> Result<IdentityCheck> {
    arcsinh_identity_with_scale(which, order, &Rational::frac(1, 4))
}

fn arcsinh_identity_with_scale(which: ArcsinhIdentity, order: usize, second_scale: &Rational) -> Result<IdentityCheck> {
    let (shift, weight): (usize, Box<dyn Fn(u64) -> Rational>) = match which {
        ArcsinhIdentity::First => (2, Box::new(|l| Rational::from(l + 1))),
        ArcsinhIdentity::Second => (3, Box::new(|l| Rational::from((l + 1) * (l + 2)))),
        ArcsinhIdentity::General(m) => {
            require_at_least(m, 3)?;
            let m = m as u64;
            (m as usize + 1, Box::new(move |l| Rational::from(binomial(l + m, m))))
        }
    };
    let a = arcsinh_series(order);
    let mut lhs = Series::zero(order);
    let mut power = a.pow(shift as u32);
    for l in 0.. {
        let j = l + shift;
        if j > order {
            break;
        }
        let c = Rational::sign_pow(l as i64) * weight(l as u64) / factorial_q(j);
        lhs = lhs.add(&power.scale(&c));
        power = power.mul(&a);
    }
    let mut rhs = vec![Rational::zero(); order + 1];
    match which {
        ArcsinhIdentity::First => {
            set(&mut rhs, 2, Rational::frac(1, 2));
            set(&mut rhs, 3, Rational::frac(-1, 3));
            add_q3_tail(&mut rhs, &Rational::frac(1, 4), 2, 1, 3)?;
        }
        ArcsinhIdentity::Second => {
            set(&mut rhs, 3, Rational::frac(1, 3));
            add_q3_tail(&mut rhs, second_scale, 3, 2, 3)?;
        }
        ArcsinhIdentity::General(m) => {
            let m = m as usize;
            let scale = Rational::one() / Rational::from(2).powu(m as u32 + 1);
            add_q3_tail(&mut rhs, &scale, m + 1, m, m)?;
        }
    }
    let rhs = Series::new(rhs);
    let first_mismatch = lhs.first_mismatch(&rhs, order);
    Ok(IdentityCheck { holds: first_mismatch.is_none(), lhs, rhs, first_mismatch })
}

/// `N_n(k)` for `k = 0..=k_max`: the nested sum
/// `Σ_{ℓ_{n−1}=0}^{k} 1/(2ℓ_{n−1}+n−1) ⋯ Σ_{ℓ_1=0}^{ℓ_2} 1/(2ℓ_1+1)`,
/// with `N_1 ≡ 1`. Evaluated level by level with prefix sums.
pub fn nested_harmonic(n: u32, k_max: usize) -> Vec<Rational> {
    assert!(n >= 1, "nested sum needs n ≥ 1");
    let mut level = vec![Rational::one(); k_max + 1];
    for j in 2..=n as usize {
        let mut acc = Rational::zero();
        level = level
            .iter()
            .enumerate()
            .map(|(l, v)| {
                acc += v / Rational::from(2 * l + j - 1);
                acc.clone()
            })
            .collect();
    }
    level
}

fn atan_family(n: u32, order: usize, alternating: bool) -> Result<Series<Rational>> {
    require_at_least(n, 1)?;
    let n_us = n as usize;
    let k_max = order.saturating_sub(n_us) / 2;
    let nested = nested_harmonic(n, k_max);
    let fact = factorial_q(n_us);
    let mut coeffs = vec![Rational::zero(); order + 1];
    for (k, v) in nested.iter().enumerate() {
        let idx = 2 * k + n_us;
        if idx > order {
            break;
        }
        let sign = if alternating { Rational::sign_pow(k as i64) } else { Rational::one() };
        coeffs[idx] = sign * &fact * v / Rational::from(idx);
    }
    Ok(Series::new(coeffs))
}

/// `(arctan t)^n = n! Σ_k (−1)^k N_n(k) t^{2k+n}/(2k+n)`.
pub fn arctan_power_coeffs(n: u32, order: usize) -> Result<Series<Rational>> {
    atan_family(n, order, true)
}

/// `(arctanh t)^n = n! Σ_k N_n(k) t^{2k+n}/(2k+n)`.
pub fn arctanh_power_coeffs(n: u32, order: usize) -> Result<Series<Rational>> {
    atan_family(n, order, false)
}

/// `(arccos t)^m` in `ℚ[π][[t]]`:
/// `(π/2)^m + Σ_{q=1}^{m} (−1)^q binom(m,q) (π/2)^{m−q} t^q
///  + Σ_{p≥3} [Σ_{q+2k=p; q,k≥1} (−4)^k (−1)^q q! binom(m,q) (π/2)^{m−q} Q(q,2k;2)] t^p/p!`.
pub fn arccos_power_coeffs(m: u32, order: usize) -> Result<Series<PiPoly>> {
    require_at_least(m, 1)?;
    let m_us = m as usize;
    let half_pi_pows: Vec<PiPoly> = (0..=m).map(|j| PiPoly::half_pi().powu(j)).collect();
    let table = table_for(m_us + order);
    let two = Rational::from(2);
    let mut coeffs = vec![PiPoly::zero(); order + 1];
    coeffs[0] = half_pi_pows[m_us].clone();
    for q in 1..=m_us.min(order) {
        let c = Rational::sign_pow(q as i64) * Rational::from(binomial(m as u64, q as u64));
        coeffs[q] = coeffs[q].add(&half_pi_pows[m_us - q].scale(&c));
    }
    for p in 3..=order {
        let mut acc = PiPoly::zero();
        for k in 1..=(p - 1) / 2 {
            let q = p - 2 * k;
            if q > m_us {
                continue;
            }
            let c = Rational::from(-4).powu(k as u32)
                * Rational::sign_pow(q as i64)
                * factorial_q(q)
                * Rational::from(binomial(m as u64, q as u64))
                * q_value_with(&table, q, 2 * k, &two)?;
            acc = acc.add(&half_pi_pows[m_us - q].scale(&c));
        }
        coeffs[p] = coeffs[p].add(&acc.scale(&(Rational::one() / factorial_q(p))));
    }
    Ok(Series::new(coeffs))
}

fn require_at_least(v: u32, min: u32) -> Result<()> {
    if v < min {
        return Err(Error::Domain(format!("parameter must be ≥ {min}, got {v}")));
    }
    Ok(())
}
