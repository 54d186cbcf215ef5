//! Exhaustive exact checks of standalone combinatorial identities over
//! bounded parameter ranges.
//!
//! Each identity is registered under a stable string id. A run produces one
//! [`IdentityReport`] per id; a failing report carries the first
//! counterexample found.

use std::sync::Arc;

use rand::{rngs::StdRng, Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{
    bell_args, bell_falling_factorial, bell_falling_factorial_lambda, bell_partial, bell_special_value,
    bell_x_one_zero, lambda_args, q_value_with, stirling_second, StirlingTable,
};
use crate::error::{Error, Result};
use crate::exact::{binomial, extended_binomial, factorial, falling_factorial, integer_binomial, Rational};
use crate::expansions::nested_harmonic;

/// Every registered identity id, in report order.
pub const IDENTITY_IDS: [&str; 13] = [
    "q-vanishing",
    "q2-square",
    "q13",
    "bell-arctan",
    "bell-arctanh",
    "bell-x-1-0",
    "stirling-diagonals",
    "falling-factorial-bell",
    "quaintance",
    "sprugnoli",
    "bell-scaling",
    "bell-closed-form",
    "stirling-second",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub params: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity_id: String,
    pub swept_range: String,
    pub status: Status,
    pub cases_checked: usize,
    pub first_counterexample: Option<Counterexample>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Upper bounds for every sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepBounds {
    /// `k, m ≤ q_max` for the Q identities.
    pub q_max: usize,
    /// `n + k ≤ diagonal_sum` for the Stirling diagonal recurrences.
    pub diagonal_sum: usize,
    /// `|z| ≤ quaintance_z`, `k ≤ quaintance_k`.
    pub quaintance_z: i64,
    pub quaintance_k: usize,
    pub sprugnoli_n: usize,
    pub bell_x_n: usize,
    pub bell_scaling_instances: usize,
    pub bell_scaling_n: usize,
    pub falling_n: usize,
    /// `2k + n ≤ bell_arctan_total`.
    pub bell_arctan_total: usize,
    /// `2n ≤ bell_closed_max`.
    pub bell_closed_max: usize,
    pub stirling_second_n: usize,
    pub seed: u64,
}

impl Default for SweepBounds {
    fn default() -> Self {
        SweepBounds {
            q_max: 30,
            diagonal_sum: 25,
            quaintance_z: 5,
            quaintance_k: 12,
            sprugnoli_n: 20,
            bell_x_n: 12,
            bell_scaling_instances: 50,
            bell_scaling_n: 10,
            falling_n: 10,
            bell_arctan_total: 14,
            bell_closed_max: 16,
            stirling_second_n: 20,
            seed: 0x5eed,
        }
    }
}

impl SweepBounds {
    /// Overrides one bound by name, as used by `--bound key=value`.
    pub fn set(&mut self, key: &str, value: u64) -> Result<()> {
        let v = value as usize;
        match key {
            "q_max" => self.q_max = v,
            "diagonal_sum" => self.diagonal_sum = v,
            "quaintance_z" => self.quaintance_z = value as i64,
            "quaintance_k" => self.quaintance_k = v,
            "sprugnoli_n" => self.sprugnoli_n = v,
            "bell_x_n" => self.bell_x_n = v,
            "bell_scaling_instances" => self.bell_scaling_instances = v,
            "bell_scaling_n" => self.bell_scaling_n = v,
            "falling_n" => self.falling_n = v,
            "bell_arctan_total" => self.bell_arctan_total = v,
            "bell_closed_max" => self.bell_closed_max = v,
            "stirling_second_n" => self.stirling_second_n = v,
            "seed" => self.seed = value,
            _ => return Err(Error::Parse(format!("unknown bound {key:?}"))),
        }
        Ok(())
    }
}

/// Inputs shared by every checker. The defaults are the real Stirling table
/// and no perturbation; tests swap in a corrupted table or a nonzero offset
/// added to every left-hand side to confirm that failures are caught.
#[derive(Clone, Debug)]
pub struct SweepContext {
    pub table: Arc<StirlingTable>,
    pub lhs_offset: Option<Rational>,
}

impl Default for SweepContext {
    fn default() -> Self {
        SweepContext { table: StirlingTable::shared(128), lhs_offset: None }
    }
}

/// Which identities to run and with which bounds.
#[derive(Clone, Debug, Default)]
pub struct SweepPlan {
    pub ids: Vec<String>,
    pub bounds: SweepBounds,
}

impl SweepPlan {
    pub fn all() -> Self {
        SweepPlan { ids: IDENTITY_IDS.iter().map(|s| s.to_string()).collect(), bounds: SweepBounds::default() }
    }
}

/// Runs the plan's identities in parallel; reports come back in plan order.
pub fn run_all(plan: &SweepPlan, ctx: &SweepContext) -> Result<Vec<IdentityReport>> {
    plan.ids.par_iter().map(|id| run_identity(id, &plan.bounds, ctx)).collect()
}

pub fn run_identity(id: &str, b: &SweepBounds, ctx: &SweepContext) -> Result<IdentityReport> {
    let mut sweep = Sweep::new(id, ctx);
    match id {
        "q-vanishing" => q_vanishing(&mut sweep, b)?,
        "q2-square" => q2_square(&mut sweep, b)?,
        "q13" => q13(&mut sweep, b)?,
        "bell-arctan" => bell_arctan(&mut sweep, b, true)?,
        "bell-arctanh" => bell_arctan(&mut sweep, b, false)?,
        "bell-x-1-0" => bell_x_1_0(&mut sweep, b)?,
        "stirling-diagonals" => stirling_diagonals(&mut sweep, b)?,
        "falling-factorial-bell" => falling_factorial_bell(&mut sweep, b)?,
        "quaintance" => quaintance(&mut sweep, b)?,
        "sprugnoli" => sprugnoli(&mut sweep, b),
        "bell-scaling" => bell_scaling(&mut sweep, b)?,
        "bell-closed-form" => bell_closed_form(&mut sweep, b)?,
        "stirling-second" => stirling_second_gf(&mut sweep, b)?,
        _ => return Err(Error::Parse(format!("unknown identity id {id:?}"))),
    }
    Ok(sweep.finish())
}

struct Sweep<'a> {
    id: &'a str,
    ctx: &'a SweepContext,
    range: String,
    checked: usize,
    first: Option<Counterexample>,
}

impl<'a> Sweep<'a> {
    fn new(id: &'a str, ctx: &'a SweepContext) -> Self {
        Sweep { id, ctx, range: String::new(), checked: 0, first: None }
    }

    fn done(&self) -> bool {
        self.first.is_some()
    }

    fn check(&mut self, params: impl FnOnce() -> String, lhs: Rational, rhs: Rational) {
        if self.done() {
            return;
        }
        let lhs = match &self.ctx.lhs_offset {
            Some(off) => lhs + off,
            None => lhs,
        };
        self.checked += 1;
        if lhs != rhs {
            self.first = Some(Counterexample { params: params(), lhs: lhs.to_string(), rhs: rhs.to_string() });
        }
    }

    fn table(&self) -> &StirlingTable {
        &self.ctx.table
    }

    fn finish(self) -> IdentityReport {
        IdentityReport {
            identity_id: self.id.to_string(),
            swept_range: self.range,
            status: if self.first.is_some() { Status::Fail } else { Status::Pass },
            cases_checked: self.checked,
            first_counterexample: self.first,
        }
    }
}

/// `Q(1,2k+1;2) = 0` and `Q(m+1,2k−1;2) = 0`.
fn q_vanishing(sw: &mut Sweep, b: &SweepBounds) -> Result<()> {
    sw.range = format!("1 ≤ k, m ≤ {}", b.q_max);
    let two = Rational::from(2);
    for k in 1..=b.q_max {
        let v = q_value_with(sw.table(), 1, 2 * k + 1, &two)?;
        sw.check(|| format!("Q(1,{};2), k={k}", 2 * k + 1), v, Rational::zero());
    }
    for m in 1..=b.q_max {
        for k in 1..=b.q_max {
            let v = q_value_with(sw.table(), m + 1, 2 * k - 1, &two)?;
            sw.check(|| format!("Q({},{};2), m={m}, k={k}", m + 1, 2 * k - 1), v, Rational::zero());
        }
    }
    Ok(())
}

/// `Q(2,2k;2) = (−1)^k (k!)²`.
fn q2_square(sw: &mut Sweep, b: &SweepBounds) -> Result<()> {
    sw.range = format!("1 ≤ k ≤ {}", b.q_max);
    let two = Rational::from(2);
    for k in 1..=b.q_max {
        let f = Rational::from(factorial(k as u32));
        let rhs = Rational::sign_pow(k as i64) * &f * &f;
        sw.check(|| format!("k={k}"), q_value_with(sw.table(), 2, 2 * k, &two)?, rhs);
    }
    Ok(())
}

/// `Q(1,2k+1;3) = (2k+1)! binom((2k−1)/2, 2k+1)` and `Q(1,2k+2;3) = 0`.
fn q13(sw: &mut Sweep, b: &SweepBounds) -> Result<()> {
    sw.range = format!("0 ≤ k ≤ {} (odd), 1 ≤ k ≤ {} (even)", b.q_max, b.q_max);
    let three = Rational::from(3);
    for k in 0..=b.q_max {
        let rhs = Rational::from(factorial(2 * k as u32 + 1))
            * extended_binomial(&Rational::frac(2 * k as i64 - 1, 2), 2 * k as u32 + 1);
        sw.check(|| format!("Q(1,{};3), k={k}", 2 * k + 1), q_value_with(sw.table(), 1, 2 * k + 1, &three)?, rhs);
    }
    for k in 1..=b.q_max {
        let v = q_value_with(sw.table(), 1, 2 * k + 2, &three)?;
        sw.check(|| format!("Q(1,{};3), k={k}", 2 * k + 2), v, Rational::zero());
    }
    Ok(())
}

/// Arguments `x_i = σ^{(i−1)/2} (i−1)!` for odd `i` and 0 for even `i`,
/// where `σ = −1` for arctan and `+1` for arctanh.
pub fn arctan_bell_args(len: usize, alternating: bool) -> Vec<Rational> {
    (1..=len)
        .map(|i| {
            if i % 2 == 0 {
                Rational::zero()
            } else {
                let sign = if alternating { Rational::sign_pow((i as i64 - 1) / 2) } else { Rational::one() };
                sign * Rational::from(factorial(i as u32 - 1))
            }
        })
        .collect()
}

/// `𝕓_{2k+n,n}(x) = σ^k (2k+n−1)! N_n(k)` and `𝕓_{2k+n−1,n}(x) = 0`.
fn bell_arctan(sw: &mut Sweep, b: &SweepBounds, alternating: bool) -> Result<()> {
    sw.range = format!("n ≥ 1, k ≥ 0, 2k + n ≤ {}", b.bell_arctan_total);
    let xs = arctan_bell_args(b.bell_arctan_total + 1, alternating);
    for n in 1..=b.bell_arctan_total {
        let nested = nested_harmonic(n as u32, b.bell_arctan_total / 2);
        for k in 0..=(b.bell_arctan_total - n) / 2 {
            let top = 2 * k + n;
            let sign = if alternating { Rational::sign_pow(k as i64) } else { Rational::one() };
            let rhs = sign * Rational::from(factorial(top as u32 - 1)) * &nested[k];
            sw.check(|| format!("b_{{{top},{n}}}"), bell_partial(top, n, &xs)?, rhs);
            if k >= 1 {
                let odd = bell_partial(top - 1, n, &xs)?;
                sw.check(|| format!("b_{{{},{n}}}", top - 1), odd, Rational::zero());
            }
        }
    }
    Ok(())
}

const X_TEST_SET: [(i64, i64); 5] = [(-2, 1), (1, 3), (5, 1), (7, 2), (-3, 4)];

/// `𝕓_{n,k}(x,1,0,…,0) = 2^{k−n} (n!/k!) binom(k,n−k) x^{2k−n}`.
fn bell_x_1_0(sw: &mut Sweep, b: &SweepBounds) -> Result<()> {
    sw.range = format!("0 ≤ k ≤ n ≤ {}, x ∈ {{-2, 1/3, 5, 7/2, -3/4}}", b.bell_x_n);
    for &(p, q) in &X_TEST_SET {
        let x = Rational::frac(p, q);
        for n in 0..=b.bell_x_n {
            let mut xs = vec![Rational::zero(); n + 1];
            xs[0] = x.clone();
            if n >= 1 {
                xs[1] = Rational::one();
            }
            for k in 0..=n {
                let lhs = bell_partial(n, k, &xs)?;
                sw.check(|| format!("n={n}, k={k}, x={x}"), lhs, bell_x_one_zero(n, k, &x)?);
            }
        }
    }
    Ok(())
}

/// Both diagonal recurrences for `s(n,k)`.
fn stirling_diagonals(sw: &mut Sweep, b: &SweepBounds) -> Result<()> {
    sw.range = format!("n + k ≤ {} (first), n ≥ 1 (second)", b.diagonal_sum);
    let need = 2 * b.diagonal_sum;
    if sw.table().max_n() < need {
        return Err(Error::OutOfRange(format!("diagonal sweep needs a Stirling table of size {need}")));
    }
    let s = |n: i64, k: i64| sw.ctx.table.s(n, k);
    let ratio = |n: usize, m: usize| s((n + m) as i64, m as i64) / Rational::from(binomial((n + m) as u64, m as u64));
    for n in 0..=b.diagonal_sum {
        for k in 0..=b.diagonal_sum - n {
            let lhs = ratio(n, k);
            let mut rhs = Rational::zero();
            for l in 0..=n {
                let inner: Rational = (0..=l)
                    .map(|m| Rational::sign_pow(m as i64) * Rational::from(binomial(l as u64, m as u64)) * ratio(n, m))
                    .sum();
                rhs += Rational::sign_pow(l as i64) * falling_factorial(&Rational::from(k), l as u32)
                    / Rational::from(factorial(l as u32))
                    * inner;
            }
            sw.check(|| format!("first recurrence, n={n}, k={k}"), lhs, rhs);
        }
    }
    for n in 1..=b.diagonal_sum {
        for k in 0..=b.diagonal_sum - n {
            let (ni, ki) = (n as i64, k as i64);
            let lhs = s(ni, ki);
            let mut form_a = Rational::zero();
            for m in 1..=ni {
                for l in (ki - m)..ki {
                    form_a += Rational::sign_pow(m + l)
                        * integer_binomial(ni, l)
                        * integer_binomial(l, ki - m)
                        * s(ni - l, ki - l);
                }
            }
            let form_a = Rational::sign_pow(ki) * form_a;
            let form_b = Rational::sign_pow(ni - ki)
                * (0..ki)
                    .map(|l| {
                        Rational::sign_pow(l)
                            * integer_binomial(ni, l)
                            * integer_binomial(l - 1, ki - ni - 1)
                            * s(ni - l, ki - l)
                    })
                    .sum::<Rational>();
            sw.check(|| format!("second recurrence (sum over m), n={n}, k={k}"), lhs.clone(), form_a);
            sw.check(|| format!("second recurrence (single sum), n={n}, k={k}"), lhs, form_b);
        }
    }
    Ok(())
}

const ALPHA_SET: [(i64, i64); 6] = [(1, 1), (1, 2), (-1, 2), (3, 1), (2, 3), (-5, 4)];
const LAMBDA_SET: [(i64, i64); 5] = [(0, 1), (1, 1), (1, 3), (-2, 1), (3, 4)];

/// Both falling-factorial Bell closed forms, including `λ = 0 ⇒ S(n,k)`.
fn falling_factorial_bell(sw: &mut Sweep, b: &SweepBounds) -> Result<()> {
    sw.range = format!("1 ≤ k ≤ n ≤ {}, α ∈ {{1, 1/2, -1/2, 3, 2/3, -5/4}}, λ ∈ {{0, 1, 1/3, -2, 3/4}}", b.falling_n);
    for &(p, q) in &ALPHA_SET {
        let alpha = Rational::frac(p, q);
        let xs: Vec<Rational> = (1..=b.falling_n).map(|i| falling_factorial(&alpha, i as u32)).collect();
        for n in 1..=b.falling_n {
            for k in 1..=n {
                let lhs = bell_partial(n, k, &xs)?;
                sw.check(|| format!("alpha={alpha}, n={n}, k={k}"), lhs, bell_falling_factorial(n, k, &alpha));
            }
        }
    }
    for &(p, q) in &LAMBDA_SET {
        let lambda = Rational::frac(p, q);
        let xs = lambda_args(b.falling_n, &lambda);
        for n in 1..=b.falling_n {
            for k in 1..=n {
                let lhs = bell_partial(n, k, &xs)?;
                let rhs = bell_falling_factorial_lambda(n, k, &lambda)?;
                sw.check(|| format!("lambda={lambda}, n={n}, k={k}"), lhs, rhs);
            }
        }
    }
    Ok(())
}

/// `k! binom(z,k) = Σ_ℓ s(k,ℓ) z^ℓ`.
fn quaintance(sw: &mut Sweep, b: &SweepBounds) -> Result<()> {
    sw.range = format!("|z| ≤ {}, 0 ≤ k ≤ {}", b.quaintance_z, b.quaintance_k);
    for z in -b.quaintance_z..=b.quaintance_z {
        let zq = Rational::from(z);
        for k in 0..=b.quaintance_k {
            let lhs = Rational::from(factorial(k as u32)) * extended_binomial(&zq, k as u32);
            let rhs: Rational = (0..=k).map(|l| sw.table().s(k as i64, l as i64) * zq.powu(l as u32)).sum();
            sw.check(|| format!("z={z}, k={k}"), lhs, rhs);
        }
    }
    Ok(())
}

const SPRUGNOLI_SET: [(i64, i64); 7] = [(1, 2), (-1, 2), (2, 3), (7, 3), (-9, 5), (4, 1), (11, 7)];

/// `Σ_{k=0}^{n} (−1)^k binom(x,k) = (−1)^n binom(x−1,n) = ∏_{k=1}^{n} (1 − x/k)`.
fn sprugnoli(sw: &mut Sweep, b: &SweepBounds) {
    sw.range = format!("0 ≤ n ≤ {}, x ∈ {{1/2, -1/2, 2/3, 7/3, -9/5, 4, 11/7}}", b.sprugnoli_n);
    for &(p, q) in &SPRUGNOLI_SET {
        let x = Rational::frac(p, q);
        let mut sum = Rational::zero();
        let mut product = Rational::one();
        for n in 0..=b.sprugnoli_n {
            sum += Rational::sign_pow(n as i64) * extended_binomial(&x, n as u32);
            if n >= 1 {
                product = product * (Rational::one() - &x / Rational::from(n));
            }
            let middle = Rational::sign_pow(n as i64) * extended_binomial(&(&x - Rational::one()), n as u32);
            sw.check(|| format!("x={x}, n={n} (sum vs binomial)"), sum.clone(), middle.clone());
            sw.check(|| format!("x={x}, n={n} (binomial vs product)"), middle, product.clone());
        }
    }
}

/// `𝕓_{n,k}(ab x_1, ab² x_2, …) = a^k b^n 𝕓_{n,k}(x_1, …)` on seeded random
/// instances.
fn bell_scaling(sw: &mut Sweep, b: &SweepBounds) -> Result<()> {
    sw.range = format!("{} random instances, n ≤ {}, seed {}", b.bell_scaling_instances, b.bell_scaling_n, b.seed);
    let mut rng = StdRng::seed_from_u64(b.seed);
    let small = |rng: &mut StdRng| Rational::frac(rng.gen_range(-7..=7), rng.gen_range(1..=5));
    for inst in 0..b.bell_scaling_instances {
        let n = rng.gen_range(0..=b.bell_scaling_n);
        let k = rng.gen_range(0..=n);
        let a = small(&mut rng);
        let bb = small(&mut rng);
        let xs: Vec<Rational> = (0..=n).map(|_| small(&mut rng)).collect();
        let scaled: Vec<Rational> = xs.iter().enumerate().map(|(i, x)| &a * bb.powu(i as u32 + 1) * x).collect();
        let lhs = bell_partial(n, k, &scaled)?;
        let rhs = a.powu(k as u32) * bb.powu(n as u32) * bell_partial(n, k, &xs)?;
        sw.check(|| format!("instance {inst}: n={n}, k={k}, a={a}, b={bb}"), lhs, rhs);
    }
    Ok(())
}

/// Closed form of `𝕓_{2n,k}(0, 1/3, 0, 9/5, …)` against the partition sum.
fn bell_closed_form(sw: &mut Sweep, b: &SweepBounds) -> Result<()> {
    sw.range = format!("1 ≤ k ≤ 2n ≤ {}", b.bell_closed_max);
    for n in 1..=b.bell_closed_max / 2 {
        for k in 1..=2 * n {
            let args = bell_args(n, k)?;
            let lhs = bell_partial(2 * n, k, &args.args)?;
            sw.check(|| format!("n={n}, k={k}"), lhs, bell_special_value(n, k)?);
        }
    }
    Ok(())
}

/// The alternating-sum `S(n,k)` against the recurrence
/// `S(n+1,k) = k S(n,k) + S(n,k−1)`.
fn stirling_second_gf(sw: &mut Sweep, b: &SweepBounds) -> Result<()> {
    sw.range = format!("0 ≤ k ≤ n ≤ {}", b.stirling_second_n);
    let mut row = vec![Rational::one()];
    for n in 0..=b.stirling_second_n {
        for (k, expected) in row.iter().enumerate() {
            sw.check(|| format!("S({n},{k})"), Rational::from(stirling_second(n, k)?), expected.clone());
        }
        let next = (0..=n + 1)
            .map(|k| {
                let stay = row.get(k).map(|v| v * Rational::from(k)).unwrap_or_else(Rational::zero);
                let grow = if k == 0 { Rational::zero() } else { row[k - 1].clone() };
                stay + grow
            })
            .collect();
        row = next;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_bounds() -> SweepBounds {
        SweepBounds {
            q_max: 8,
            diagonal_sum: 12,
            quaintance_z: 3,
            quaintance_k: 8,
            sprugnoli_n: 10,
            bell_x_n: 8,
            bell_scaling_instances: 10,
            bell_scaling_n: 7,
            falling_n: 7,
            bell_arctan_total: 10,
            bell_closed_max: 10,
            stirling_second_n: 10,
            seed: 3,
        }
    }

    fn run(id: &str, ctx: &SweepContext) -> IdentityReport {
        run_identity(id, &small_bounds(), ctx).unwrap()
    }

    #[test]
    fn every_identity_passes_at_small_bounds() {
        let ctx = SweepContext::default();
        for id in IDENTITY_IDS {
            let r = run(id, &ctx);
            assert!(r.passed(), "{r:?}");
            assert!(r.cases_checked > 0, "{id}");
            assert!(r.first_counterexample.is_none());
        }
    }

    #[test]
    fn every_identity_fails_under_perturbation() {
        let ctx = SweepContext { lhs_offset: Some(Rational::frac(1, 1000)), ..SweepContext::default() };
        for id in IDENTITY_IDS {
            let r = run(id, &ctx);
            assert_eq!(r.status, Status::Fail, "{id}");
            assert!(r.first_counterexample.is_some(), "{id}");
        }
    }

    #[test]
    fn corrupted_table_is_caught() {
        let good = StirlingTable::new(128);
        let bad = SweepContext { table: Arc::new(good.with_entry(5, 3, Rational::from(-36)).unwrap()), lhs_offset: None };
        for id in ["q-vanishing", "stirling-diagonals", "quaintance"] {
            let r = run(id, &bad);
            assert_eq!(r.status, Status::Fail, "{id}");
            let ce = r.first_counterexample.unwrap();
            assert_ne!(ce.lhs, ce.rhs);
        }
    }

    #[test]
    fn examples_from_the_checkers() {
        let two = Rational::from(2);
        let t = StirlingTable::new(20);
        assert_eq!(q_value_with(&t, 1, 3, &two).unwrap(), Rational::zero());
        assert_eq!(q_value_with(&t, 3, 1, &two).unwrap(), Rational::zero());
        assert_eq!(q_value_with(&t, 1, 2, &two).unwrap(), Rational::frac(-1, 4));
        assert_eq!(q_value_with(&t, 2, 4, &two).unwrap(), Rational::from(4));
        assert_eq!(q_value_with(&t, 2, 6, &two).unwrap(), Rational::from(-36));
        let three = Rational::from(3);
        assert_eq!(q_value_with(&t, 1, 3, &three).unwrap(), Rational::frac(3, 8));
        assert_eq!(q_value_with(&t, 1, 4, &three).unwrap(), Rational::zero());
        assert_eq!(q_value_with(&t, 1, 1, &three).unwrap(), Rational::frac(-1, 2));
        let xs = arctan_bell_args(4, true);
        assert_eq!(bell_partial(3, 1, &xs).unwrap(), Rational::from(-2));
        assert_eq!(bell_partial(2, 1, &xs).unwrap(), Rational::zero());
        assert_eq!(bell_partial(4, 2, &xs).unwrap(), Rational::from(-8));
        // arctanh n=2, k=1: 3! · (1 + 1/3) = 8
        let ys = arctan_bell_args(4, false);
        assert_eq!(bell_partial(4, 2, &ys).unwrap(), Rational::from(8));
    }

    /// Without the `(2k+n−1)!` factor the arctan identity already fails at
    /// `𝕓_{3,1}`.
    #[test]
    fn arctan_identity_needs_factorial_factor() {
        let xs = arctan_bell_args(4, true);
        let lhs = bell_partial(3, 1, &xs).unwrap();
        let without = -nested_harmonic(1, 1)[1].clone();
        assert_ne!(lhs, without);
    }

    #[test]
    fn empty_plan_gives_empty_list() {
        let plan = SweepPlan { ids: vec![], bounds: SweepBounds::default() };
        assert!(run_all(&plan, &SweepContext::default()).unwrap().is_empty());
    }

    #[test]
    fn unknown_id_is_rejected() {
        assert!(run_identity("nope", &small_bounds(), &SweepContext::default()).is_err());
        assert!(SweepBounds::default().set("nope", 3).is_err());
    }

    #[test]
    fn run_all_preserves_plan_order() {
        let ids: Vec<String> = ["sprugnoli", "q13", "q2-square"].iter().map(|s| s.to_string()).collect();
        let plan = SweepPlan { ids: ids.clone(), bounds: small_bounds() };
        let out = run_all(&plan, &SweepContext::default()).unwrap();
        let got: Vec<String> = out.iter().map(|r| r.identity_id.clone()).collect();
        assert_eq!(got, ids);
    }

    #[test]
    fn report_serializes_with_lowercase_status() {
        let r = run("q2-square", &SweepContext::default());
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["status"], "pass");
        assert_eq!(v["identity_id"], "q2-square");
    }
}
