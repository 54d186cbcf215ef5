//! Exact scalars: big rationals, polynomials in the formal symbol π, and the
//! factorial family (factorials, double factorials, falling factorials,
//! binomial coefficients with a rational upper argument).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always stored reduced with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `numer/denom`. Fails on a zero denominator.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    /// `numer/denom` for small literals; panics on a zero denominator.
    pub fn frac(numer: i64, denom: i64) -> Self {
        Self::new(numer, denom).expect("nonzero denominator")
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    /// Integer power; `0^0 = 1`, negative powers of zero are a domain error.
    pub fn pow(&self, exp: i32) -> Result<Self> {
        if exp < 0 && self.is_zero() {
            return Err(Error::Domain("negative power of zero".into()));
        }
        Ok(Rational(num_traits::Pow::pow(&self.0, exp)))
    }

    /// Nonnegative integer power, `0^0 = 1`.
    pub fn powu(&self, exp: u32) -> Self {
        Rational(num_traits::Pow::pow(&self.0, exp))
    }

    /// Nearest double; exact numerator/denominator ratio even when both
    /// overflow `f64` individually.
    pub fn to_f64(&self) -> f64 {
        if let Some(v) = self.0.to_f64() {
            if v.is_finite() {
                return v;
            }
        }
        // fall back to a scaled division for very large components
        let n = self.numer();
        let d = self.denom();
        let shift = n.bits().max(d.bits()).saturating_sub(900) as i32;
        let ns: BigInt = n >> shift as usize;
        let ds: BigInt = d >> shift as usize;
        ns.to_f64().unwrap_or(f64::NAN) / ds.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    /// `(-1)^n` as a rational.
    pub fn sign_pow(n: i64) -> Self {
        if n.is_even() {
            Self::one()
        } else {
            -Self::one()
        }
    }
}

impl From<BigRational> for Rational {
    fn from(value: BigRational) -> Self {
        Rational(value)
    }
}

impl From<BigInt> for Rational {
    fn from(value: BigInt) -> Self {
        Rational::integer(value)
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::integer(value)
    }
}

impl From<i32> for Rational {
    fn from(value: i32) -> Self {
        Rational::integer(value)
    }
}

impl From<u32> for Rational {
    fn from(value: u32) -> Self {
        Rational::integer(value)
    }
}

impl From<u64> for Rational {
    fn from(value: u64) -> Self {
        Rational::integer(value)
    }
}

impl From<usize> for Rational {
    fn from(value: usize) -> Self {
        Rational::integer(value)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse = |p: &str| {
            p.trim()
                .parse::<BigInt>()
                .map_err(|e| Error::Parse(format!("{s:?}: {e}")))
        };
        match s.split_once('/') {
            Some((n, d)) => Rational::new(parse(n)?, parse(d)?),
            None => Ok(Rational::integer(parse(s)?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! rational_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);
// Division by zero panics, as for the underlying big rationals.
rational_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl std::iter::Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

/// A commutative ring containing ℚ, usable as a series coefficient or a
/// Bell polynomial argument.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Short ring tag used in serialized output.
    const RING: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(r: Rational) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, r: &Rational) -> Self;

    /// Converts to JSON using the ring's canonical serialization.
    fn to_json(&self) -> serde_json::Value;
    fn from_json(v: &serde_json::Value) -> Result<Self>;

    fn powu(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }
}

impl Coeff for Rational {
    const RING: &'static str = "Q";

    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }
    fn from_json(v: &serde_json::Value) -> Result<Self> {
        v.as_str()
            .ok_or_else(|| Error::Parse(format!("expected rational string, got {v}")))?
            .parse()
    }
    fn powu(&self, exp: u32) -> Self {
        Rational::powu(self, exp)
    }
}

/// Polynomial in the formal symbol π with rational coefficients.
/// `coeffs[i]` multiplies `π^i`; trailing zeros are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PiPoly {
    coeffs: Vec<Rational>,
}

impl PiPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        PiPoly { coeffs }
    }

    pub fn constant(r: Rational) -> Self {
        Self::new(vec![r])
    }

    /// π/2.
    pub fn half_pi() -> Self {
        Self::new(vec![Rational::zero(), Rational::frac(1, 2)])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> Rational {
        self.coeffs.get(power).cloned().unwrap_or_default()
    }

    /// Degree in π; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval_f64(&self, pi: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * pi + c.to_f64())
    }
}

impl fmt::Display for PiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
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
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*pi")?,
                _ => write!(f, "({c})*pi^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for PiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PiPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        Ok(PiPoly::new(Vec::<Rational>::deserialize(deserializer)?))
    }
}

impl Coeff for PiPoly {
    const RING: &'static str = "Q[pi]";

    fn zero() -> Self {
        PiPoly::default()
    }
    fn one() -> Self {
        PiPoly::constant(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn from_rational(r: Rational) -> Self {
        PiPoly::constant(r)
    }
    fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PiPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
    fn sub(&self, rhs: &Self) -> Self {
        Coeff::add(self, &Coeff::neg(rhs))
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return PiPoly::default();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PiPoly::new(out)
    }
    fn neg(&self) -> Self {
        PiPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
    fn scale(&self, r: &Rational) -> Self {
        PiPoly::new(self.coeffs.iter().map(|c| c * r).collect())
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.coeffs.iter().map(Coeff::to_json).collect())
    }
    fn from_json(v: &serde_json::Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse(format!("expected array of rational strings, got {v}")))?;
        Ok(PiPoly::new(
            arr.iter().map(Rational::from_json).collect::<Result<_>>()?,
        ))
    }
}

/// `n!`.
pub fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `n!!` for `n ≥ -1`, with `(-1)!! = 0!! = 1`.
pub fn double_factorial(n: i64) -> Result<BigInt> {
    if n < -1 {
        return Err(Error::Domain(format!("double factorial of {n}")));
    }
    let mut acc = BigInt::one();
    let mut i = n;
    while i > 1 {
        acc *= i;
        i -= 2;
    }
    Ok(acc)
}

/// Classical binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Falling factorial `z(z-1)…(z-k+1)`, equal to 1 for `k = 0`.
pub fn falling_factorial(z: &Rational, k: u32) -> Rational {
    (0..k).map(|l| z - Rational::from(l)).product()
}

/// `binom(z, w) = ⟨z⟩_w / w!` for rational `z` and nonnegative integer `w`.
pub fn extended_binomial(z: &Rational, w: u32) -> Rational {
    falling_factorial(z, w) / Rational::from(factorial(w))
}

/// Binomial coefficient over all integer arguments, following the
/// piecewise convention that extends `Γ(z+1)/(Γ(w+1)Γ(z-w+1))` to negative
/// integers: zero when only `w` or `z-w` is negative, `⟨z⟩_w/w!` for
/// negative `z`, and `⟨z⟩_{z-w}/(z-w)!` when `z` and `w` are both negative.
pub fn integer_binomial(z: i64, w: i64) -> Rational {
    let z_r = Rational::from(z);
    match (z < 0, w < 0) {
        (false, _) if w < 0 || z - w < 0 => Rational::zero(),
        (false, _) => Rational::from(binomial(z as u64, w as u64)),
        (true, false) => extended_binomial(&z_r, w as u32),
        (true, true) if z - w >= 0 => extended_binomial(&z_r, (z - w) as u32),
        (true, true) => Rational::zero(),
    }
}
