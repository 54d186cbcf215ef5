//! Truncated formal power series `c_0 + c_1 t + … + c_N t^N` over an exact
//! coefficient ring.
//!
//! Every series carries its truncation order `N` explicitly. Binary
//! operations produce the minimum of the operand orders, so a result never
//! claims more exact terms than were actually computed.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{double_factorial, extended_binomial, factorial, Coeff, PiPoly, Rational};

#[derive(Clone, PartialEq)]
pub struct Series<C: Coeff> {
    coeffs: Vec<C>,
}

impl<C: Coeff> Series<C> {
    /// Series whose order is `coeffs.len() - 1`. An empty vector is the zero
    /// series of order 0.
    pub fn new(mut coeffs: Vec<C>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(C::zero());
        }
        Series { coeffs }
    }

    /// Pads with zeros or truncates so the result has exactly `order`.
    pub fn with_order(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero());
        Series { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> C) -> Self {
        Series { coeffs: (0..=order).map(f).collect() }
    }

    pub fn zero(order: usize) -> Self {
        Self::with_order(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(C::one(), order)
    }

    pub fn constant(c: C, order: usize) -> Self {
        Self::with_order(vec![c], order)
    }

    /// `c·t^power` truncated at `order`.
    pub fn monomial(c: C, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    /// The identity series `t`.
    pub fn variable(order: usize) -> Self {
        Self::monomial(C::one(), 1, order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    /// Coefficient of `t^i`, zero beyond the stored order.
    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::with_order(self.coeffs[..=order.min(self.order())].to_vec(), order.min(self.order()))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        Self::from_fn(n, |i| self.coeffs[i].add(&rhs.coeffs[i]))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        Self::from_fn(n, |i| self.coeffs[i].sub(&rhs.coeffs[i]))
    }

    pub fn neg(&self) -> Self {
        Series { coeffs: self.coeffs.iter().map(Coeff::neg).collect() }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Series { coeffs: self.coeffs.iter().map(|c| c.scale(r)).collect() }
    }

    pub fn scale_by(&self, c: &C) -> Self {
        Series { coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect() }
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let mut out = vec![C::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Series { coeffs: out }
    }

    /// Repeated squaring; `pow(s, 0)` is the unit series.
    pub fn pow(&self, m: u32) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        let mut e = m;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// `outer(inner(t))` by Horner's scheme. The inner constant term must
    /// vanish; the result order is the smaller of the two orders.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstantTerm);
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = Self::zero(n);
        for c in self.coeffs[..=n].iter().rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] = acc.coeffs[0].add(c);
        }
        Ok(acc)
    }

    /// Term-by-term antiderivative with zero constant; order grows by one.
    pub fn integrate(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(C::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push(c.scale(&Rational::frac(1, i as i64 + 1)));
        }
        Series { coeffs: out }
    }

    /// Term-by-term derivative; order drops by one (an order-0 series maps
    /// to the zero series of order 0).
    pub fn differentiate(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self::from_fn(self.order() - 1, |i| self.coeffs[i + 1].scale(&Rational::from(i + 1)))
    }

    /// `exp(s)` for a series with zero constant term, as `Σ s^k/k!`.
    pub fn exp_of(&self) -> Result<Self> {
        exp_series::<C>(self.order()).compose(self)
    }

    /// Divides by `t^m`, requiring the first `m` coefficients to vanish.
    pub fn shift_down(&self, m: usize) -> Result<Self> {
        if m > self.order() {
            return Err(Error::OutOfRange(format!(
                "cannot divide a series of order {} by t^{m}",
                self.order()
            )));
        }
        if let Some(i) = self.coeffs[..m].iter().position(|c| !c.is_zero()) {
            return Err(Error::Domain(format!("coefficient of t^{i} is nonzero; not divisible by t^{m}")));
        }
        Ok(Series { coeffs: self.coeffs[m..].to_vec() })
    }

    /// Multiplies by `t^m`; the order grows by `m`.
    pub fn shift_up(&self, m: usize) -> Self {
        let mut coeffs = vec![C::zero(); m];
        coeffs.extend(self.coeffs.iter().cloned());
        Series { coeffs }
    }

    /// First index `≤ upto` where the two series differ.
    pub fn first_mismatch(&self, other: &Self, upto: usize) -> Option<usize> {
        (0..=upto).find(|&i| self.coeff(i) != other.coeff(i))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order(),
            "ring": C::RING,
            "coeffs": self.coeffs.iter().map(Coeff::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let ring = v.get("ring").and_then(Value::as_str).unwrap_or_default();
        if ring != C::RING {
            return Err(Error::Parse(format!("expected ring {:?}, found {ring:?}", C::RING)));
        }
        let order = v
            .get("order")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("missing order".into()))? as usize;
        let coeffs = v
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing coeffs".into()))?;
        if coeffs.len() != order + 1 {
            return Err(Error::Parse(format!(
                "order {order} needs {} coefficients, found {}",
                order + 1,
                coeffs.len()
            )));
        }
        Ok(Series { coeffs: coeffs.iter().map(C::from_json).collect::<Result<_>>()? })
    }

    /// `index,coefficient` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,coefficient\n");
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push_str(&format!("{i},{c}\n"));
        }
        out
    }
}

impl<C: Coeff> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

impl<C: Coeff> fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Series<Rational> {
    /// Multiplicative inverse by the standard recurrence
    /// `b_0 = 1/a_0`, `b_n = -(1/a_0) Σ_{i=1}^{n} a_i b_{n-i}`.
    #[cfg(test)]
    pub(crate) fn reciprocal(&self) -> Result<Self> {
        let a0 = self.coeffs[0]
            .recip()
            .ok_or_else(|| Error::Domain("reciprocal of a series with zero constant term".into()))?;
        let mut b: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        b.push(a0.clone());
        for n in 1..=self.order() {
            let s: Rational = (1..=n).map(|i| &self.coeffs[i] * &b[n - i]).sum();
            b.push(-(s * &a0));
        }
        Ok(Series { coeffs: b })
    }

    /// Horner evaluation in double precision.
    pub fn eval_f64(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c.to_f64())
    }

    /// Embeds the series into `Q[π][[t]]`.
    pub fn lift(&self) -> Series<PiPoly> {
        Series { coeffs: self.coeffs.iter().cloned().map(PiPoly::constant).collect() }
    }
}

/// `exp(t) = Σ t^k/k!`.
pub fn exp_series<C: Coeff>(order: usize) -> Series<C> {
    Series::from_fn(order, |k| C::from_rational(Rational::one() / Rational::from(factorial(k as u32))))
}

/// `ln(1+t) = Σ_{k≥1} (-1)^{k+1} t^k/k`.
pub fn ln_one_plus_series(order: usize) -> Series<Rational> {
    Series::from_fn(order, |k| {
        if k == 0 {
            Rational::zero()
        } else {
            Rational::sign_pow(k as i64 + 1) / Rational::from(k)
        }
    })
}

/// `arcsin t = Σ [(2ℓ-1)!!]² t^{2ℓ+1}/(2ℓ+1)!`.
pub fn arcsin_series(order: usize) -> Series<Rational> {
    odd_series(order, |l| {
        let df = Rational::from(double_factorial(2 * l as i64 - 1).expect("ℓ ≥ 0"));
        &df * &df / Rational::from(factorial(2 * l as u32 + 1))
    })
}

/// `arcsinh t = Σ (-1)^ℓ [(2ℓ-1)!!]² t^{2ℓ+1}/(2ℓ+1)!`.
pub fn arcsinh_series(order: usize) -> Series<Rational> {
    let base = arcsin_series(order);
    Series::from_fn(order, |i| {
        // t^{2ℓ+1} carries (-1)^ℓ
        let c = base.coeff(i);
        if i % 4 == 3 {
            -c
        } else {
            c
        }
    })
}

/// `arctan t = Σ (-1)^k t^{2k+1}/(2k+1)`.
pub fn arctan_series(order: usize) -> Series<Rational> {
    odd_series(order, |k| Rational::sign_pow(k as i64) / Rational::from(2 * k + 1))
}

/// `arctanh t = Σ t^{2k+1}/(2k+1)`.
pub fn arctanh_series(order: usize) -> Series<Rational> {
    odd_series(order, |k| Rational::frac(1, 2 * k as i64 + 1))
}

/// `(1-t²)^{-1/2} = Σ (-1)^ℓ binom(-1/2, ℓ) t^{2ℓ}`.
pub fn inv_sqrt_one_minus_t2(order: usize) -> Series<Rational> {
    let minus_half = Rational::frac(-1, 2);
    even_series(order, |l| Rational::sign_pow(l as i64) * extended_binomial(&minus_half, l as u32))
}

/// `(1+t²)^{-1/2} = Σ binom(-1/2, ℓ) t^{2ℓ}`.
pub fn inv_sqrt_one_plus_t2(order: usize) -> Series<Rational> {
    let minus_half = Rational::frac(-1, 2);
    even_series(order, |l| extended_binomial(&minus_half, l as u32))
}

/// `(1+t²)^{1/2} = Σ binom(1/2, ℓ) t^{2ℓ}`.
pub fn sqrt_one_plus_t2(order: usize) -> Series<Rational> {
    let half = Rational::frac(1, 2);
    even_series(order, |l| extended_binomial(&half, l as u32))
}

/// `1/(1-t²) = Σ t^{2ℓ}`.
pub fn geometric_even_series(order: usize) -> Series<Rational> {
    even_series(order, |_| Rational::one())
}

fn odd_series(order: usize, mut f: impl FnMut(usize) -> Rational) -> Series<Rational> {
    Series::from_fn(order, |i| if i % 2 == 1 { f((i - 1) / 2) } else { Rational::zero() })
}

fn even_series(order: usize, mut f: impl FnMut(usize) -> Rational) -> Series<Rational> {
    Series::from_fn(order, |i| if i % 2 == 0 { f(i / 2) } else { Rational::zero() })
}

/// `n!` as a rational, a frequent normalizer.
pub(crate) fn factorial_q(n: usize) -> Rational {
    Rational::from(factorial(n as u32))
}
