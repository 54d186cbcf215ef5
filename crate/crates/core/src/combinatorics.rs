//! Stirling numbers, the Stirling sum `Q(m,k;α)` and partial Bell
//! polynomials.

use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, double_factorial, extended_binomial, factorial, Coeff, Rational};

/// Default number of rows kept in the shared Stirling table.
pub const DEFAULT_MAX_N: usize = 64;

/// Triangular table of signed first-kind Stirling numbers `s(n,k)`,
/// `0 ≤ k ≤ n ≤ max_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct StirlingTable {
    rows: Vec<Vec<Rational>>,
}

impl StirlingTable {
    /// Builds rows `0..=max_n` from `s(n+1,k) = s(n,k-1) - n·s(n,k)`.
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![Rational::one()]);
        for n in 0..max_n {
            let prev = &rows[n];
            let nq = Rational::from(n);
            let row = (0..=n + 1)
                .map(|k| {
                    let left = if k == 0 { Rational::zero() } else { prev[k - 1].clone() };
                    let right = prev.get(k).map(|v| &nq * v).unwrap_or_else(Rational::zero);
                    left - right
                })
                .collect();
            rows.push(row);
        }
        StirlingTable { rows }
    }

    /// The process-wide table, grown (by swapping in a larger immutable
    /// table) whenever `min_n` exceeds the current size.
    pub fn shared(min_n: usize) -> Arc<StirlingTable> {
        static SHARED: OnceLock<RwLock<Arc<StirlingTable>>> = OnceLock::new();
        let lock = SHARED.get_or_init(|| RwLock::new(Arc::new(StirlingTable::new(DEFAULT_MAX_N))));
        {
            let current = lock.read().unwrap_or_else(|e| e.into_inner());
            if current.max_n() >= min_n {
                return Arc::clone(&current);
            }
        }
        let mut current = lock.write().unwrap_or_else(|e| e.into_inner());
        if current.max_n() < min_n {
            let target = min_n.max(2 * current.max_n());
            *current = Arc::new(StirlingTable::new(target));
        }
        Arc::clone(&current)
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `s(n,k)`, rejecting indices outside `0 ≤ k ≤ n ≤ max_n`.
    pub fn get(&self, n: usize, k: usize) -> Result<&Rational> {
        if n > self.max_n() {
            return Err(Error::OutOfRange(format!("s({n},{k}) exceeds table size {}", self.max_n())));
        }
        self.rows[n]
            .get(k)
            .ok_or_else(|| Error::OutOfRange(format!("s({n},{k}) requires k ≤ n")))
    }

    /// `s(n,k)` with the convention that it vanishes outside `0 ≤ k ≤ n`.
    ///
    /// # Panics
    /// If `n > max_n`.
    pub fn s(&self, n: i64, k: i64) -> Rational {
        if n < 0 || k < 0 || k > n {
            return Rational::zero();
        }
        assert!(n as usize <= self.max_n(), "s({n},{k}) exceeds table size {}", self.max_n());
        self.rows[n as usize][k as usize].clone()
    }

    /// Copy of the table with a single entry replaced; used to build
    /// negative controls for the identity sweeps.
    pub fn with_entry(&self, n: usize, k: usize, value: Rational) -> Result<Self> {
        self.get(n, k)?;
        let mut t = self.clone();
        t.rows[n][k] = value;
        Ok(t)
    }
}

/// Signed first-kind Stirling number `s(n,k)`.
pub fn stirling_first(n: usize, k: usize) -> Result<BigInt> {
    if k > n {
        return Err(Error::OutOfRange(format!("s({n},{k}) requires k ≤ n")));
    }
    Ok(StirlingTable::shared(n).get(n, k)?.numer().clone())
}

/// Second-kind Stirling number by `(−1)^k/k! Σ_ℓ (−1)^ℓ binom(k,ℓ) ℓ^n`.
pub fn stirling_second(n: usize, k: usize) -> Result<BigInt> {
    if k > n {
        return Err(Error::OutOfRange(format!("S({n},{k}) requires k ≤ n")));
    }
    if n == k {
        return Ok(BigInt::one());
    }
    let mut acc = BigInt::zero();
    for l in 0..=k {
        let term = binomial(k as u64, l as u64) * BigInt::from(l).pow(n as u32);
        if (k - l).is_multiple_of(2) {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc / factorial(k as u32))
}

/// `Q(m,k;α) = Σ_{ℓ=0}^{k} binom(m+ℓ−1, m−1) s(m+k−1, m+ℓ−1) ((m+k−α)/2)^ℓ`.
///
/// `k = 0` gives 1. The case `m + k = α` is rejected.
pub fn q_value(m: usize, k: usize, alpha: &Rational) -> Result<Rational> {
    let table = StirlingTable::shared(m + k);
    q_value_with(&table, m, k, alpha)
}

pub fn q_value_with(table: &StirlingTable, m: usize, k: usize, alpha: &Rational) -> Result<Rational> {
    if m == 0 {
        return Err(Error::Domain("Q(m,k;α) requires m ≥ 1".into()));
    }
    let h = (Rational::from(m + k) - alpha) / Rational::from(2);
    if h.is_zero() {
        return Err(Error::Domain(format!("Q({m},{k};{alpha}) is undefined when m + k = α")));
    }
    let n = m + k - 1;
    let mut acc = Rational::zero();
    let mut h_pow = Rational::one();
    for l in 0..=k {
        let s = table.get(n, m + l - 1)?;
        if !s.is_zero() {
            acc += Rational::from(binomial((m + l - 1) as u64, (m - 1) as u64)) * s * &h_pow;
        }
        h_pow *= &h;
    }
    Ok(acc)
}

/// Partial Bell polynomial `𝕓_{n,k}(x_1, …, x_{n−k+1})` by the partition
/// sum `n!/∏(ℓ_i! (i!)^{ℓ_i}) ∏ x_i^{ℓ_i}` over `Σ ℓ_i = k`, `Σ i ℓ_i = n`.
pub fn bell_partial<C: Coeff>(n: usize, k: usize, xs: &[C]) -> Result<C> {
    if k > n {
        return Err(Error::OutOfRange(format!("𝕓_{{{n},{k}}} requires k ≤ n")));
    }
    if k == 0 {
        return Ok(if n == 0 { C::one() } else { C::zero() });
    }
    let needed = n - k + 1;
    if xs.len() < needed {
        return Err(Error::InsufficientArguments { needed, got: xs.len() });
    }
    let fact: Vec<Rational> = (0..=n).map(|i| Rational::from(factorial(i as u32))).collect();
    let mut acc = C::zero();
    let mut mult = vec![0usize; needed + 1];
    enumerate_parts(n, k, needed, &mut mult, &mut |mult| {
        let mut weight = fact[n].clone();
        let mut term = C::one();
        for (i, &l) in mult.iter().enumerate().skip(1) {
            if l == 0 {
                continue;
            }
            weight = weight / (&fact[l] * &fact[i].powu(l as u32));
            term = term.mul(&xs[i - 1].powu(l as u32));
        }
        if !term.is_zero() {
            acc = acc.add(&term.scale(&weight));
        }
    });
    Ok(acc)
}

/// Visits every multiplicity vector `mult[1..=max_part]` with exactly
/// `parts` parts summing to `total`, choosing part sizes from the largest
/// down.
fn enumerate_parts(total: usize, parts: usize, max_part: usize, mult: &mut [usize], visit: &mut impl FnMut(&[usize])) {
    if parts == 0 {
        if total == 0 {
            visit(mult);
        }
        return;
    }
    if max_part == 0 || total < parts || total > parts * max_part {
        return;
    }
    let largest = max_part.min(total - (parts - 1));
    for size in (1..=largest).rev() {
        // remaining parts are at most `size`; try every multiplicity of `size`
        let max_count = (total / size).min(parts);
        for count in (1..=max_count).rev() {
            let rest_total = total - count * size;
            let rest_parts = parts - count;
            mult[size] = count;
            enumerate_parts(rest_total, rest_parts, size - 1, mult, visit);
            mult[size] = 0;
        }
    }
}

/// Argument vector `(0, 1/3, 0, 9/5, 0, 225/7, …)` of length `2n − k + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct BellArgs {
    pub n: usize,
    pub k: usize,
    pub args: Vec<Rational>,
}

/// Entry `i` (1-based) of the arcsin-derived argument sequence: the value
/// `arcsin^{(i+1)}(0)/(i+1)`, which is 0 for odd `i` and
/// `[(i−1)!!]²/(i+1)` for even `i`.
pub fn bell_arg_entry(i: usize) -> Rational {
    if i % 2 == 1 {
        return Rational::zero();
    }
    let df = Rational::from(double_factorial(i as i64 - 1).expect("i ≥ 0"));
    &df * &df / Rational::from(i + 1)
}

pub fn bell_args(n: usize, k: usize) -> Result<BellArgs> {
    check_special_range(n, k)?;
    let args = (1..=2 * n - k + 1).map(bell_arg_entry).collect();
    Ok(BellArgs { n, k, args })
}

/// Closed form of `𝕓_{2n,k}(0, 1/3, 0, 9/5, …)`:
/// `(−1)^{n+k} (4n)!!/(2n+k)! Σ_{q=1}^{k} (−1)^q binom(2n+k, k−q) Q(q,2n;2)`.
pub fn bell_special_value(n: usize, k: usize) -> Result<Rational> {
    check_special_range(n, k)?;
    let two = Rational::from(2);
    let table = StirlingTable::shared(2 * n + k);
    let mut sum = Rational::zero();
    for q in 1..=k {
        let term = Rational::from(binomial((2 * n + k) as u64, (k - q) as u64))
            * q_value_with(&table, q, 2 * n, &two)?;
        sum += Rational::sign_pow(q as i64) * term;
    }
    let scale = Rational::from(double_factorial(4 * n as i64)?) / Rational::from(factorial((2 * n + k) as u32));
    Ok(Rational::sign_pow((n + k) as i64) * scale * sum)
}

fn check_special_range(n: usize, k: usize) -> Result<()> {
    if k < 1 || k > 2 * n {
        return Err(Error::OutOfRange(format!("requires 1 ≤ k ≤ 2n, got n={n}, k={k}")));
    }
    Ok(())
}

/// `𝕓_{n,k}(x,1,0,…,0) = 2^{k−n} (n!/k!) binom(k, n−k) x^{2k−n}`.
pub fn bell_x_one_zero(n: usize, k: usize, x: &Rational) -> Result<Rational> {
    if k > n {
        return Err(Error::OutOfRange(format!("requires k ≤ n, got n={n}, k={k}")));
    }
    if 2 * k < n {
        return Ok(Rational::zero());
    }
    let c = Rational::from(factorial(n as u32)) / Rational::from(factorial(k as u32))
        * Rational::from(binomial(k as u64, (n - k) as u64))
        / Rational::from(2).powu((n - k) as u32);
    Ok(c * x.powu((2 * k - n) as u32))
}

/// `𝕓_{n,k}(⟨α⟩_1, ⟨α⟩_2, …) = (−1)^k n!/k! Σ_ℓ (−1)^ℓ binom(k,ℓ) binom(αℓ, n)`.
pub fn bell_falling_factorial(n: usize, k: usize, alpha: &Rational) -> Rational {
    let sum: Rational = (0..=k)
        .map(|l| {
            Rational::sign_pow(l as i64)
                * Rational::from(binomial(k as u64, l as u64))
                * extended_binomial(&(alpha * Rational::from(l)), n as u32)
        })
        .sum();
    Rational::sign_pow(k as i64) * Rational::from(factorial(n as u32)) / Rational::from(factorial(k as u32)) * sum
}

/// `𝕓_{n,k}(1, 1−λ, (1−λ)(1−2λ), …)`: for `λ ≠ 0`,
/// `(−1)^k λ^n n!/k! Σ_ℓ (−1)^ℓ binom(k,ℓ) binom(ℓ/λ, n)`; for `λ = 0`,
/// `S(n,k)`.
pub fn bell_falling_factorial_lambda(n: usize, k: usize, lambda: &Rational) -> Result<Rational> {
    if k > n {
        return Err(Error::OutOfRange(format!("requires k ≤ n, got n={n}, k={k}")));
    }
    let Some(inv) = lambda.recip() else {
        return Ok(Rational::from(stirling_second(n, k)?));
    };
    let sum: Rational = (0..=k)
        .map(|l| {
            Rational::sign_pow(l as i64)
                * Rational::from(binomial(k as u64, l as u64))
                * extended_binomial(&(&inv * Rational::from(l)), n as u32)
        })
        .sum();
    Ok(Rational::sign_pow(k as i64) * lambda.powu(n as u32) * Rational::from(factorial(n as u32))
        / Rational::from(factorial(k as u32))
        * sum)
}

/// Arguments `x_i = ∏_{j=1}^{i−1} (1 − jλ)` for the λ-variant above.
pub fn lambda_args(len: usize, lambda: &Rational) -> Vec<Rational> {
    let mut out = Vec::with_capacity(len);
    let mut acc = Rational::one();
    for i in 1..=len {
        out.push(acc.clone());
        acc = acc * (Rational::one() - lambda * Rational::from(i));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{falling_factorial, PiPoly};
    use crate::series::{ln_one_plus_series, Series};
    use proptest::prelude::*;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn stirling_examples() {
        assert_eq!(stirling_first(3, 3).unwrap(), BigInt::from(1));
        assert_eq!(stirling_first(2, 1).unwrap(), BigInt::from(-1));
        assert_eq!(stirling_first(4, 2).unwrap(), BigInt::from(11));
        assert!(stirling_first(2, 3).is_err());
        assert_eq!(stirling_second(4, 4).unwrap(), BigInt::from(1));
        assert_eq!(stirling_second(4, 2).unwrap(), BigInt::from(7));
        assert_eq!(stirling_second(3, 1).unwrap(), BigInt::from(1));
        assert_eq!(stirling_second(5, 0).unwrap(), BigInt::from(0));
        assert!(stirling_second(1, 2).is_err());
    }

    #[test]
    fn table_boundary_values_and_recurrence() {
        let t = StirlingTable::new(40);
        assert_eq!(t.s(0, 0), Rational::one());
        for n in 1..=40i64 {
            assert_eq!(t.s(n, n), Rational::one());
            assert_eq!(t.s(n, 0), Rational::zero());
        }
        for n in 0..40i64 {
            for k in 1..=n + 1 {
                assert_eq!(t.s(n + 1, k), t.s(n, k - 1) - Rational::from(n) * t.s(n, k));
            }
        }
        assert!(t.get(41, 0).is_err());
        assert!(t.get(3, 4).is_err());
    }

    #[test]
    fn table_matches_log_generating_function() {
        let order = 18;
        let t = StirlingTable::new(order);
        let ln = ln_one_plus_series(order);
        for k in 0..=8u32 {
            let gf = ln.pow(k).scale(&(Rational::one() / Rational::from(factorial(k))));
            for n in 0..=order {
                let c = gf.coeff(n) * Rational::from(factorial(n as u32));
                assert_eq!(c, t.s(n as i64, k as i64), "s({n},{k})");
            }
        }
    }

    #[test]
    fn shared_table_grows() {
        let big = StirlingTable::shared(120);
        assert!(big.max_n() >= 120);
        assert!(StirlingTable::shared(10).max_n() >= 120);
        assert_eq!(big.s(120, 120), Rational::one());
    }

    #[test]
    fn q_value_examples() {
        let two = Rational::from(2);
        assert_eq!(q_value(1, 2, &two).unwrap(), q("-1/4"));
        assert_eq!(q_value(1, 3, &two).unwrap(), Rational::zero());
        assert_eq!(q_value(2, 2, &two).unwrap(), q("-1"));
        assert!(q_value(3, 0, &Rational::from(3)).is_err());
        assert_eq!(q_value(4, 0, &Rational::from(3)).unwrap(), Rational::one());
        assert!(q_value(1, 1, &two).is_err());
        assert!(q_value(0, 3, &two).is_err());
    }

    #[test]
    fn q_value_detects_corrupted_table() {
        let t = StirlingTable::new(10);
        let bad = t.with_entry(2, 1, Rational::from(5)).unwrap();
        let two = Rational::from(2);
        assert_ne!(q_value_with(&bad, 1, 2, &two).unwrap(), q_value_with(&t, 1, 2, &two).unwrap());
    }

    #[test]
    fn bell_partial_examples() {
        assert_eq!(bell_partial(2, 1, &[Rational::zero(), q("1/3")]).unwrap(), q("1/3"));
        let xs = vec![PiPoly::new(vec![Rational::zero(), Rational::one()]), PiPoly::constant(Rational::one()), PiPoly::constant(Rational::zero())];
        assert_eq!(
            bell_partial(3, 2, &xs).unwrap(),
            PiPoly::new(vec![Rational::zero(), Rational::from(3)])
        );
        assert_eq!(bell_partial(3, 3, &[Rational::from(2)]).unwrap(), Rational::from(8));
        assert_eq!(bell_partial::<Rational>(0, 0, &[]).unwrap(), Rational::one());
        assert_eq!(bell_partial(4, 0, &vec![Rational::one(); 5]).unwrap(), Rational::zero());
        assert_eq!(
            bell_partial(5, 2, &vec![Rational::one(); 3]),
            Err(Error::InsufficientArguments { needed: 4, got: 3 })
        );
        // all-ones arguments give S(n,k)
        for n in 0..=10usize {
            for k in 0..=n {
                let v = bell_partial(n, k, &vec![Rational::one(); n + 1]).unwrap();
                assert_eq!(v, Rational::from(stirling_second(n, k).unwrap()));
            }
        }
    }

    #[test]
    fn bell_special_examples() {
        assert_eq!(bell_special_value(1, 1).unwrap(), q("1/3"));
        assert_eq!(bell_special_value(1, 2).unwrap(), Rational::zero());
        assert_eq!(bell_special_value(2, 1).unwrap(), q("9/5"));
        assert!(bell_special_value(1, 3).is_err());
        assert!(bell_special_value(2, 0).is_err());
        let a = bell_args(3, 2).unwrap().args;
        assert_eq!(a, vec![Rational::zero(), q("1/3"), Rational::zero(), q("9/5"), Rational::zero()]);
        assert_eq!(bell_args(1, 2).unwrap().args, vec![Rational::zero()]);
        assert_eq!(bell_arg_entry(6), q("225/7"));
    }

    #[test]
    fn bell_args_final_entry_pattern() {
        for n in 1..=8usize {
            for k in 1..=2 * n {
                let args = bell_args(n, k).unwrap().args;
                let last = args.last().unwrap().clone();
                let df = Rational::from(double_factorial((2 * n - k) as i64).unwrap());
                let parity = if k % 2 == 1 { Rational::one() } else { Rational::zero() };
                let expected = parity * &df * &df / Rational::from(2 * n - k + 2);
                assert_eq!(last, expected, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn bell_args_are_arcsin_derivatives() {
        let arcsin = crate::series::arcsin_series(20);
        for i in 1..=18usize {
            let deriv = arcsin.coeff(i + 1) * Rational::from(factorial(i as u32 + 1));
            assert_eq!(bell_arg_entry(i), deriv / Rational::from(i + 1));
        }
    }

    #[test]
    fn bell_closed_form_matches_definition_small() {
        for n in 1..=5usize {
            for k in 1..=2 * n {
                let args = bell_args(n, k).unwrap();
                assert_eq!(bell_special_value(n, k).unwrap(), bell_partial(2 * n, k, &args.args).unwrap());
            }
        }
    }

    #[test]
    fn bell_generating_function() {
        let mut rng = StdRng::seed_from_u64(7);
        let order = 12;
        let xs: Vec<Rational> = (0..order).map(|_| Rational::frac(rng.gen_range(-5..=5), rng.gen_range(1..=4))).collect();
        let base = Series::from_fn(order, |m| {
            if m == 0 {
                Rational::zero()
            } else {
                &xs[m - 1] / Rational::from(factorial(m as u32))
            }
        });
        for k in 0..=5u32 {
            let gf = base.pow(k).scale(&(Rational::one() / Rational::from(factorial(k))));
            for n in k as usize..=order {
                let expected = gf.coeff(n) * Rational::from(factorial(n as u32));
                assert_eq!(bell_partial(n, k as usize, &xs).unwrap(), expected, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn bell_x_one_zero_examples() {
        assert_eq!(bell_x_one_zero(3, 2, &Rational::from(5)).unwrap(), Rational::from(15));
        assert_eq!(bell_x_one_zero(4, 2, &Rational::one()).unwrap(), Rational::from(3));
        assert_eq!(bell_x_one_zero(2, 2, &q("2/7")).unwrap(), q("4/49"));
        assert_eq!(bell_x_one_zero(5, 2, &Rational::one()).unwrap(), Rational::zero());
    }

    #[test]
    fn falling_factorial_bell_examples() {
        for n in 1..=6 {
            let xs: Vec<Rational> = (1..=n).map(|i| falling_factorial(&Rational::one(), i as u32)).collect();
            assert_eq!(bell_partial(n, n, &xs).unwrap(), Rational::one());
        }
        let half = q("1/2");
        let xs: Vec<Rational> = (1..=3).map(|i| falling_factorial(&half, i)).collect();
        assert_eq!(bell_partial(4, 2, &xs).unwrap(), bell_falling_factorial(4, 2, &half));
        for n in 0..=8 {
            for k in 0..=n {
                assert_eq!(
                    bell_falling_factorial_lambda(n, k, &Rational::zero()).unwrap(),
                    Rational::from(stirling_second(n, k).unwrap())
                );
            }
        }
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::frac(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn comtet_index_shift(n in 0usize..=8, k in 0usize..=4, xs in proptest::collection::vec(small_rational(), 10)) {
            prop_assume!(k <= n);
            // x_2/2, x_3/3, … on the left; 0, x_2, x_3, … on the right
            let lhs_args: Vec<Rational> = (0..=n).map(|i| &xs[i] / Rational::from(i + 2)).collect();
            let mut rhs_args = vec![Rational::zero()];
            rhs_args.extend(xs.iter().take(n + 1).cloned());
            let lhs = bell_partial(n, k, &lhs_args).unwrap();
            let rhs = bell_partial(n + k, k, &rhs_args).unwrap() * Rational::from(factorial(n as u32))
                / Rational::from(factorial((n + k) as u32));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn bell_scaling(n in 0usize..=9, k in 0usize..=9, a in small_rational(), b in small_rational(),
                        xs in proptest::collection::vec(small_rational(), 10)) {
            prop_assume!(k <= n);
            let scaled: Vec<Rational> = xs.iter().enumerate()
                .map(|(i, x)| &a * b.powu(i as u32 + 1) * x).collect();
            let lhs = bell_partial(n, k, &scaled).unwrap();
            let rhs = a.powu(k as u32) * b.powu(n as u32) * bell_partial(n, k, &xs).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn falling_factorial_forms(n in 1usize..=8, k in 1usize..=8, alpha in small_rational()) {
            prop_assume!(k <= n);
            let xs: Vec<Rational> = (1..=n).map(|i| falling_factorial(&alpha, i as u32)).collect();
            prop_assert_eq!(bell_partial(n, k, &xs).unwrap(), bell_falling_factorial(n, k, &alpha));
            let ys = lambda_args(n, &alpha);
            prop_assert_eq!(bell_partial(n, k, &ys).unwrap(), bell_falling_factorial_lambda(n, k, &alpha).unwrap());
        }
    }
}
