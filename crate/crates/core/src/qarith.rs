//! Exact arithmetic over Q: rationals, primality, places and the normalized
//! absolute values `‖·‖_v`.
//!
//! Every absolute value is returned as an exact positive rational. Over Q the
//! local degree `n_v` is 1 at every place, so `‖x‖_∞ = |x|` and
//! `‖x‖_p = p^{-v_p(x)}`, and the product of `‖x‖_v` over all places is 1.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Trial division bound used both for primality and factorization.
const TRIAL_LIMIT: u64 = 1 << 20;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"a"`, `"-a"`, `"a/b"` or `"-a/b"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::Parse {
        pos: 0,
        msg: format!("invalid rational literal `{text}`"),
    };
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, d),
        None => (body, "1"),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) || !digits(den) {
        return Err(bad());
    }
    let n = BigInt::from_str(num).map_err(|_| bad())?;
    let d = BigInt::from_str(den).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Domain(format!("zero denominator in `{text}`")));
    }
    let r = Rational::new(n, d);
    Ok(if neg { -r } else { r })
}

/// Prints `p/q`, or `p` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Natural log of a positive big integer; exact bits are shifted away first so
/// values far beyond `f64::MAX` still work.
pub fn ln_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        n.to_f64().map(f64::ln).unwrap_or(f64::INFINITY)
    } else {
        let shift = bits - 64;
        let top = (n >> shift).to_f64().unwrap_or(f64::INFINITY);
        top.ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// Natural log of a positive rational.
pub fn ln_rational(r: &Rational) -> f64 {
    debug_assert!(r.is_positive());
    ln_biguint(r.numer().magnitude()) - ln_biguint(r.denom().magnitude())
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let s = if r.is_negative() { -1.0 } else { 1.0 };
        s * ln_rational(&r.abs()).exp()
    })
}

/// Exact rational value of a finite float.
pub fn rational_from_f64(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or_else(|| Error::Domain(format!("non-finite real {x}")))
}

/// Integer power with a possibly negative exponent.
pub fn rational_pow(base: &Rational, exp: i64) -> Rational {
    if exp >= 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow(base.recip(), (-exp) as usize)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test: trial division below 2^20, strong
/// pseudoprime test to the first twelve prime bases above (exact for u64).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    if n < TRIAL_LIMIT {
        let mut d = 41;
        while d * d <= n {
            if n.is_multiple_of(d) {
                return false;
            }
            d += 2;
        }
        return true;
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'base: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| ((mul_mod(x, x, n) as u128 + c as u128) % n as u128) as u64;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn factor_u64(n: u64, out: &mut BTreeMap<u64, u32>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    let d = pollard_brent(n);
    factor_u64(d, out);
    factor_u64(n / d, out);
}

/// Prime factorization of a positive integer. Factors above 2^64 are not
/// supported.
pub fn factorize(n: &BigUint) -> Result<BTreeMap<u64, u32>> {
    let mut out = BTreeMap::new();
    if n.is_zero() {
        return Err(Error::Domain("cannot factor zero".into()));
    }
    let mut m = n.clone();
    let mut p = 2u64;
    while p < TRIAL_LIMIT {
        if let Some(small) = m.to_u64() {
            factor_u64(small, &mut out);
            return Ok(out);
        }
        let bp = BigUint::from(p);
        while (&m % &bp).is_zero() {
            m /= &bp;
            *out.entry(p).or_insert(0) += 1;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    match m.to_u64() {
        Some(small) => {
            factor_u64(small, &mut out);
            Ok(out)
        }
        None => Err(Error::Domain(format!(
            "integer {n} has a cofactor beyond 64 bits after trial division"
        ))),
    }
}

/// p-adic valuation of a nonzero rational.
pub fn valuation(x: &Rational, p: u64) -> i64 {
    fn v(n: &BigInt, p: &BigInt) -> i64 {
        let mut n = n.clone();
        let mut k = 0;
        while (&n % p).is_zero() {
            n /= p;
            k += 1;
        }
        k
    }
    let bp = BigInt::from(p);
    v(x.numer(), &bp) - v(x.denom(), &bp)
}

/// A place of Q: the archimedean place or a rational prime.
///
/// The derived order puts `Infinity` first and sorts primes ascending.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Infinity,
    Prime(u64),
}

impl Place {
    pub fn prime(p: u64) -> Result<Place> {
        if is_prime(p) {
            Ok(Place::Prime(p))
        } else {
            Err(Error::Domain(format!("{p} is not prime")))
        }
    }

    pub fn is_archimedean(&self) -> bool {
        matches!(self, Place::Infinity)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Place> {
        let t = s.trim();
        if t == "inf" {
            return Ok(Place::Infinity);
        }
        let p: u64 = t.parse().map_err(|_| Error::Parse {
            pos: 0,
            msg: format!("invalid place `{s}` (expected `inf` or a prime)"),
        })?;
        Place::prime(p)
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Place, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A nonempty, sorted, duplicate-free set of places.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlaceSet(Vec<Place>);

impl PlaceSet {
    pub fn new(places: impl IntoIterator<Item = Place>) -> Result<PlaceSet> {
        let mut v: Vec<Place> = places.into_iter().collect();
        v.sort();
        v.dedup();
        if v.is_empty() {
            return Err(Error::Precondition("place set must be nonempty".into()));
        }
        Ok(PlaceSet(v))
    }

    pub fn infinity() -> PlaceSet {
        PlaceSet(vec![Place::Infinity])
    }

    pub fn places(&self) -> &[Place] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: &Place) -> bool {
        self.0.binary_search(v).is_ok()
    }

    pub fn union(&self, other: &PlaceSet) -> PlaceSet {
        PlaceSet::new(self.0.iter().chain(other.0.iter()).copied()).expect("nonempty")
    }

    pub fn iter(&self) -> impl Iterator<Item = &Place> {
        self.0.iter()
    }
}

fn require_nonzero(x: &Rational) -> Result<()> {
    if x.is_zero() {
        Err(Error::Domain("absolute value of 0 is excluded".into()))
    } else {
        Ok(())
    }
}

/// The normalized absolute value `‖x‖_v` as an exact rational.
pub fn normalized_abs(x: &Rational, v: Place) -> Result<Rational> {
    require_nonzero(x)?;
    Ok(match v {
        Place::Infinity => x.abs(),
        Place::Prime(p) => rational_pow(&int(p as i64), -valuation(x, p)),
    })
}

/// Primes dividing the numerator or denominator of `x`.
pub fn prime_support(x: &Rational) -> Result<Vec<u64>> {
    require_nonzero(x)?;
    let mut primes: Vec<u64> = factorize(x.numer().magnitude())?.into_keys().collect();
    primes.extend(factorize(x.denom().magnitude())?.into_keys());
    primes.sort_unstable();
    primes.dedup();
    Ok(primes)
}

/// Places where `‖x‖_v ≠ 1`, together with `∞`.
pub fn support(x: &Rational) -> Result<PlaceSet> {
    let primes = prime_support(x)?;
    PlaceSet::new(std::iter::once(Place::Infinity).chain(primes.into_iter().map(Place::Prime)))
}

/// Joint support of several nonzero rationals (always contains `∞`).
pub fn joint_support<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> Result<PlaceSet> {
    let mut places = vec![Place::Infinity];
    for x in xs {
        places.extend(prime_support(x)?.into_iter().map(Place::Prime));
    }
    PlaceSet::new(places)
}

/// Product of `‖x‖_v` over the support of `x`; the product formula makes this 1.
pub fn product_over_places(x: &Rational) -> Result<Rational> {
    let s = support(x)?;
    let mut acc = Rational::one();
    for v in s.iter() {
        acc *= normalized_abs(x, *v)?;
    }
    Ok(acc)
}

/// A logarithmic quantity `log(mult)` stored through its exact positive
/// multiplicative value. Adding two of them multiplies the values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactLog {
    mult: Rational,
}

impl ExactLog {
    pub fn new(mult: Rational) -> Result<ExactLog> {
        if mult.is_positive() {
            Ok(ExactLog { mult })
        } else {
            Err(Error::Domain(format!(
                "multiplicative value must be positive, got {}",
                format_rational(&mult)
            )))
        }
    }

    pub fn zero() -> ExactLog {
        ExactLog {
            mult: Rational::one(),
        }
    }

    pub fn mult(&self) -> &Rational {
        &self.mult
    }

    pub fn into_mult(self) -> Rational {
        self.mult
    }

    /// The logarithm in double precision, for display and float paths only.
    pub fn ln(&self) -> f64 {
        ln_rational(&self.mult)
    }

    /// `k · log(mult)` as an exact log.
    pub fn scale(&self, k: i64) -> ExactLog {
        ExactLog {
            mult: rational_pow(&self.mult, k),
        }
    }

    pub fn neg(&self) -> ExactLog {
        ExactLog {
            mult: self.mult.recip(),
        }
    }
}

// adding logarithms multiplies the stored values
impl Add for ExactLog {
    type Output = ExactLog;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: ExactLog) -> ExactLog {
        ExactLog {
            mult: self.mult * rhs.mult,
        }
    }
}

impl AddAssign for ExactLog {
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: ExactLog) {
        self.mult *= rhs.mult;
    }
}

impl PartialOrd for ExactLog {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactLog {
    fn cmp(&self, other: &Self) -> Ordering {
        self.mult.cmp(&other.mult)
    }
}

impl fmt::Display for ExactLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "log({})", format_rational(&self.mult))
    }
}

impl Serialize for ExactLog {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ExactLog", 2)?;
        st.serialize_field("mult", &format_rational(&self.mult))?;
        st.serialize_field("log", &self.ln())?;
        st.end()
    }
}

/// Serde helper for fields holding a `Rational`, written as `"p/q"`.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Int(i64),
        }
        match Raw::deserialize(d)? {
            Raw::Text(t) => parse_rational(&t).map_err(serde::de::Error::custom),
            Raw::Int(i) => Ok(int(i)),
        }
    }
}

/// Serde helper for `Vec<Rational>` fields.
pub mod serde_rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        raw.iter()
            .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
            .collect()
    }
}
