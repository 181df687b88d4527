//! Exact scalars, factorial-type combinatorics and the total order on ℤ^ℓ.
//!
//! Every scalar in the kernel is a [`Rational`] (an arbitrary-precision
//! fraction kept in lowest terms). Index vectors are short, so they live in
//! inline small vectors.
//!
//! The convention `0^0 = 1` is applied in exactly one place, [`powdiv`], and
//! every formula that needs the limit reading of a vanishing scalar goes
//! through it.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;

/// Inline storage for index vectors; ℓ ≤ 4 covers every signature used in practice.
pub type IdxVec<T> = SmallVec<[T; 4]>;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p"` or `"p/q"` with `q > 0`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidRational(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = match den {
        Some(d) => {
            if d.starts_with('-') || d.starts_with('+') {
                return Err(bad());
            }
            let d = BigInt::from_str(d).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            d
        }
        None => BigInt::one(),
    };
    Ok(Rational::new(num, den))
}

/// Canonical text form: `"p"` when the denominator is one, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Serde adapter storing a rational as its canonical string.
pub mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let raw = RationalRepr::deserialize(d)?;
        raw.into_rational().map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for sequences of rationals.
pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = v.iter().map(format_rational).collect();
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        let raw = Vec::<RationalRepr>::deserialize(d)?;
        raw.into_iter()
            .map(|r| r.into_rational().map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Input form of a rational in config files: a string, or a bare JSON integer.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum RationalRepr {
    Text(String),
    Int(i64),
}

impl RationalRepr {
    pub fn into_rational(self) -> Result<Rational> {
        match self {
            RationalRepr::Text(s) => parse_rational(&s),
            RationalRepr::Int(n) => Ok(int(n)),
        }
    }
}

impl From<&Rational> for RationalRepr {
    fn from(r: &Rational) -> Self {
        RationalRepr::Text(format_rational(r))
    }
}

/// `n!` as an exact rational.
pub fn factorial(n: u32) -> Rational {
    Rational::from_integer(factorial_int(n))
}

fn factorial_int(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `a (a-1) ⋯ (a-m+1)`, equal to one when `m = 0`.
pub fn falling_factorial(a: &Rational, m: u32) -> Rational {
    let mut acc = Rational::one();
    let mut term = a.clone();
    for _ in 0..m {
        acc *= &term;
        term -= Rational::one();
    }
    acc
}

/// Generalized binomial coefficient `[a]_m / m!` for any rational upper argument.
pub fn gen_binomial(a: &Rational, m: u32) -> Rational {
    falling_factorial(a, m) / factorial(m)
}

/// Stirling numbers of the second kind `S(n, k)`, `0 ≤ k ≤ n`, so that
/// `x^n = Σ_k S(n, k) [x]_k`.
pub fn stirling2_row(n: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for m in 1..=n as usize {
        let mut next = vec![BigInt::zero(); m + 1];
        for (k, s) in row.iter().enumerate() {
            next[k] += s * BigInt::from(k);
            next[k + 1] += s;
        }
        row = next;
    }
    row
}

/// Integer-upper-argument convenience wrapper around [`gen_binomial`].
pub fn binomial_i(a: i64, m: u32) -> Rational {
    gen_binomial(&int(a), m)
}

/// `x^k / k!` with `0^0 = 1` and `1/k! = 0` for `k ≤ -1`.
pub fn powdiv(x: &Rational, k: i64) -> Rational {
    if k < 0 {
        return Rational::zero();
    }
    let k = k as u32;
    pow(x, k) / factorial(k)
}

/// `x^k` with `0^0 = 1`.
pub fn pow(x: &Rational, k: u32) -> Rational {
    if k == 0 {
        return Rational::one();
    }
    if x.is_zero() {
        return Rational::zero();
    }
    num_traits::pow::pow(x.clone(), k as usize)
}

/// Multi-index of derivation exponents, `μ ∈ ℤ₊^ℓ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DerivIndex(pub IdxVec<u32>);

/// General integer vector in `ℤ^ℓ`, ordered by [`compare_order`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntVector(pub IdxVec<i64>);

impl DerivIndex {
    pub fn new(entries: impl IntoIterator<Item = u32>) -> Self {
        DerivIndex(entries.into_iter().collect())
    }

    pub fn zero(len: usize) -> Self {
        DerivIndex(smallvec::smallvec![0; len])
    }

    /// The unit vector `1_[p]` (0-based `p`).
    pub fn unit(len: usize, p: usize) -> Self {
        let mut d = Self::zero(len);
        d.0[p] = 1;
        d
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn level(&self) -> i64 {
        self.0.iter().map(|&x| x as i64).sum()
    }

    pub fn to_int_vector(&self) -> IntVector {
        IntVector(self.0.iter().map(|&x| x as i64).collect())
    }

    pub fn add(&self, other: &DerivIndex) -> DerivIndex {
        DerivIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other`, or `None` when some coordinate would go negative.
    pub fn checked_sub(&self, other: &DerivIndex) -> Option<DerivIndex> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<IdxVec<u32>>>()
            .map(DerivIndex)
    }

    /// All `λ` with `0 ≤ λ ≤ self` componentwise, in lexicographic order.
    pub fn sub_indices(&self) -> Vec<DerivIndex> {
        let mut out = vec![DerivIndex::zero(self.len())];
        for (p, &bound) in self.0.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * (bound as usize + 1));
            for base in &out {
                for k in 0..=bound {
                    let mut d = base.clone();
                    d.0[p] = k;
                    next.push(d);
                }
            }
            out = next;
        }
        out
    }
}

impl IntVector {
    pub fn new(entries: impl IntoIterator<Item = i64>) -> Self {
        IntVector(entries.into_iter().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for DerivIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, self.0.iter())
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, self.0.iter())
    }
}

pub(crate) fn write_list<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    items: impl Iterator<Item = T>,
) -> fmt::Result {
    write!(f, "(")?;
    for (k, x) in items.enumerate() {
        if k > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

/// `∏_p C(μ_p, λ_p)`; zero as soon as some `λ_p > μ_p`.
pub fn multi_binomial(mu: &DerivIndex, lam: &DerivIndex) -> Result<BigUint> {
    if mu.len() != lam.len() {
        return Err(Error::LengthMismatch {
            left: mu.len(),
            right: lam.len(),
        });
    }
    let mut acc = BigUint::one();
    for (&m, &l) in mu.0.iter().zip(&lam.0) {
        if l > m {
            return Ok(BigUint::zero());
        }
        acc *= binomial_uint(m, l);
    }
    Ok(acc)
}

fn binomial_uint(n: u32, k: u32) -> BigUint {
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for j in 0..k {
        acc *= BigUint::from(n - j);
        acc /= BigUint::from(j + 1);
    }
    acc
}

/// Entry sum `|v|`.
pub fn level(v: &IntVector) -> i64 {
    v.0.iter().sum()
}

/// Total order on `ℤ^ℓ`: lower level first; on equal level, the vector with
/// the smaller entry at the first differing coordinate is smaller.
pub fn compare_order(u: &IntVector, v: &IntVector) -> Result<Ordering> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    Ok(order_slices(&u.0, &v.0))
}

pub(crate) fn order_slices(u: &[i64], v: &[i64]) -> Ordering {
    let lu: i64 = u.iter().sum();
    let lv: i64 = v.iter().sum();
    lu.cmp(&lv).then_with(|| u.cmp(v))
}

pub(crate) fn order_deriv(u: &DerivIndex, v: &DerivIndex) -> Ordering {
    u.level().cmp(&v.level()).then_with(|| u.0.cmp(&v.0))
}

/// `(-1)^n` as a rational.
pub fn sign_pow(n: u32) -> Rational {
    if n % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// True when `r` is an integer.
pub fn is_integral(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Converts an integral rational to `i64`.
pub fn to_i64(r: &Rational) -> Option<i64> {
    use num_traits::ToPrimitive;
    if !is_integral(r) {
        return None;
    }
    r.numer().to_i64()
}

/// `|r|` for sorting and diagnostics.
pub fn abs(r: &Rational) -> Rational {
    r.abs()
}
