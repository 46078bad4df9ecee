//! Reals with an explicit rounding direction.
//!
//! A [`DirectedReal`] is a dyadic `mantissa * 2^exponent` tagged with the
//! direction it was rounded in. Every operation is computed exactly on the
//! operands and then rounded once in the result's direction, so a `Down`
//! value never exceeds the true quantity it stands for and an `Up` value is
//! never below it. Operations refuse operand directions that would break
//! this (adding a lower bound to an upper bound, say).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Default working precision in significant decimal digits.
pub const DEFAULT_DIGITS: u32 = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Rounding {
    /// Toward negative infinity: the value is a lower bound.
    Down,
    /// Toward positive infinity: the value is an upper bound.
    Up,
}

impl Rounding {
    pub fn flip(self) -> Self {
        match self {
            Rounding::Down => Rounding::Up,
            Rounding::Up => Rounding::Down,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DirectedError {
    #[error("{op}: operand directions {left:?} and {right:?} cannot give a sound bound")]
    DirectionMismatch { op: &'static str, left: Rounding, right: Rounding },
    #[error("{op}: {reason}")]
    Domain { op: &'static str, reason: String },
    #[error("cannot parse {0:?} as a decimal number")]
    Parse(String),
}

fn domain(op: &'static str, reason: impl Into<String>) -> DirectedError {
    DirectedError::Domain { op, reason: reason.into() }
}

/// Bits of mantissa for `digits` decimal digits plus guard bits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + 16
}

#[derive(Clone, Debug)]
pub struct DirectedReal {
    mantissa: BigInt,
    exponent: i64,
    rounding: Rounding,
    precision: u32,
}

fn pow2(n: u64) -> BigInt {
    BigInt::one() << n
}

fn div_directed(num: &BigInt, den: &BigInt, dir: Rounding) -> BigInt {
    let (q, r) = num.div_mod_floor(den);
    if dir == Rounding::Up && !r.is_zero() {
        q + 1
    } else {
        q
    }
}

/// `m * 2^e` rounded to at most `prec` mantissa bits.
fn round_dyadic(m: BigInt, e: i64, dir: Rounding, prec: u32) -> (BigInt, i64) {
    let bits = m.bits();
    if bits <= u64::from(prec) {
        return (m, e);
    }
    let s = bits - u64::from(prec);
    (div_directed(&m, &pow2(s), dir), e + s as i64)
}

/// `num / den` (den > 0) as a dyadic with about `prec` bits.
fn round_ratio(num: &BigInt, den: &BigInt, dir: Rounding, prec: u32) -> (BigInt, i64) {
    debug_assert!(den.is_positive());
    if num.is_zero() {
        return (BigInt::zero(), 0);
    }
    let e = num.bits() as i64 - den.bits() as i64 - i64::from(prec) - 1;
    let m = if e <= 0 {
        div_directed(&(num << (-e) as u64), den, dir)
    } else {
        div_directed(num, &(den << e as u64), dir)
    };
    round_dyadic(m, e, dir, prec)
}

impl DirectedReal {
    fn build(m: BigInt, e: i64, rounding: Rounding, precision: u32) -> Self {
        let (mut mantissa, mut exponent) = round_dyadic(m, e, rounding, precision);
        if mantissa.is_zero() {
            exponent = 0;
        } else {
            let tz = mantissa.trailing_zeros().unwrap_or(0);
            mantissa >>= tz;
            exponent += tz as i64;
        }
        Self { mantissa, exponent, rounding, precision }
    }

    pub fn from_rational(q: &BigRational, rounding: Rounding, digits: u32) -> Self {
        let precision = bits_for_digits(digits);
        let (m, e) = round_ratio(q.numer(), q.denom(), rounding, precision);
        Self::build(m, e, rounding, precision)
    }

    pub fn from_integer(n: impl Into<BigInt>, rounding: Rounding, digits: u32) -> Self {
        Self::from_rational(&BigRational::from_integer(n.into()), rounding, digits)
    }

    /// Parses plain decimals such as `"7.7"`, `"-0.4458"` or `"1000000"`.
    pub fn parse(s: &str, rounding: Rounding, digits: u32) -> Result<Self, DirectedError> {
        Ok(Self::from_rational(&parse_decimal(s)?, rounding, digits))
    }

    pub fn rounding(&self) -> Rounding {
        self.rounding
    }

    /// Mantissa bits.
    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn exact(&self) -> BigRational {
        if self.exponent >= 0 {
            BigRational::from_integer(&self.mantissa << self.exponent as u64)
        } else {
            BigRational::new(self.mantissa.clone(), pow2((-self.exponent) as u64))
        }
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.mantissa.bits() as i64;
        let shift = (bits - 60).max(0);
        let top = &self.mantissa >> shift as u64;
        let top: f64 = top.to_string().parse().expect("integer string");
        top * 2f64.powi((self.exponent + shift) as i32)
    }

    /// Decimal with `places` digits after the point, rounded in this value's
    /// direction so the printed number is still a valid bound.
    pub fn to_decimal(&self, places: u32) -> String {
        let q = self.exact() * BigRational::from_integer(BigInt::from(10).pow(places));
        let n = div_directed(q.numer(), q.denom(), self.rounding);
        format_scaled(&n, places)
    }

    fn with(&self, m: BigInt, e: i64, rounding: Rounding, other: &Self) -> Self {
        Self::build(m, e, rounding, self.precision.max(other.precision))
    }

    fn require(&self, op: &'static str, other: &Self, same: bool) -> Result<(), DirectedError> {
        let ok = (self.rounding == other.rounding) == same;
        if ok {
            Ok(())
        } else {
            Err(DirectedError::DirectionMismatch { op, left: self.rounding, right: other.rounding })
        }
    }

    /// Same direction required.
    pub fn add(&self, other: &Self) -> Result<Self, DirectedError> {
        self.require("add", other, true)?;
        let e = self.exponent.min(other.exponent);
        let m = (&self.mantissa << (self.exponent - e) as u64) + (&other.mantissa << (other.exponent - e) as u64);
        Ok(self.with(m, e, self.rounding, other))
    }

    /// `other` must carry the opposite direction: lower minus upper is a lower bound.
    pub fn sub(&self, other: &Self) -> Result<Self, DirectedError> {
        self.require("sub", other, false)?;
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            mantissa: -&self.mantissa,
            exponent: self.exponent,
            rounding: self.rounding.flip(),
            precision: self.precision,
        }
    }

    /// Same direction, both operands nonnegative.
    pub fn mul(&self, other: &Self) -> Result<Self, DirectedError> {
        self.require("mul", other, true)?;
        if self.is_negative() || other.is_negative() {
            return Err(domain("mul", "directed product needs nonnegative operands"));
        }
        Ok(self.with(&self.mantissa * &other.mantissa, self.exponent + other.exponent, self.rounding, other))
    }

    /// Nonnegative dividend, positive divisor of the opposite direction.
    pub fn div(&self, other: &Self) -> Result<Self, DirectedError> {
        self.require("div", other, false)?;
        if self.is_negative() {
            return Err(domain("div", "directed quotient needs a nonnegative dividend"));
        }
        if !other.mantissa.is_positive() {
            return Err(domain("div", "divisor must be positive"));
        }
        let prec = self.precision.max(other.precision);
        let (m, e) = round_ratio(&self.mantissa, &other.mantissa, self.rounding, prec);
        Ok(Self::build(m, e + self.exponent - other.exponent, self.rounding, prec))
    }

    /// `1/self` for positive `self`; the direction flips.
    pub fn recip(&self) -> Result<Self, DirectedError> {
        if !self.mantissa.is_positive() {
            return Err(domain("recip", "argument must be positive"));
        }
        let dir = self.rounding.flip();
        let (m, e) = round_ratio(&BigInt::one(), &self.mantissa, dir, self.precision);
        Ok(Self::build(m, e - self.exponent, dir, self.precision))
    }

    pub fn sqrt(&self) -> Result<Self, DirectedError> {
        if self.is_negative() {
            return Err(domain("sqrt", "argument must be nonnegative"));
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let want = 2 * u64::from(self.precision) + 2;
        let mut s = want.saturating_sub(self.mantissa.bits()) as i64;
        if (self.exponent - s) % 2 != 0 {
            s += 1;
        }
        let a = &self.mantissa << s as u64;
        let mut r = a.sqrt();
        if self.rounding == Rounding::Up && &r * &r != a {
            r += 1;
        }
        Ok(Self::build(r, (self.exponent - s) / 2, self.rounding, self.precision))
    }

    pub fn ln(&self) -> Result<Self, DirectedError> {
        if !self.mantissa.is_positive() {
            return Err(domain("ln", "argument must be positive"));
        }
        let w = self.precision + 32;
        let (num, den) = if self.exponent >= 0 {
            (&self.mantissa << self.exponent as u64, BigInt::one())
        } else {
            (self.mantissa.clone(), pow2((-self.exponent) as u64))
        };
        let (lo, hi) = ln_enclosure(&num, &den, w);
        let m = if self.rounding == Rounding::Down { lo } else { hi };
        Ok(Self::build(m, -i64::from(w), self.rounding, self.precision))
    }

    /// Same value, other direction tag. Only sound when the value is exact,
    /// which is checked.
    fn retag_exact(&self, q: &BigRational) -> Option<Self> {
        (self.exact() == *q).then(|| Self { rounding: self.rounding.flip(), ..self.clone() })
    }
}

impl PartialEq for DirectedReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl PartialOrd for DirectedReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

impl DirectedReal {
    /// Exact comparison of the represented values, ignoring direction tags.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        let e = self.exponent.min(other.exponent);
        (&self.mantissa << (self.exponent - e) as u64).cmp(&(&other.mantissa << (other.exponent - e) as u64))
    }
}

impl fmt::Display for DirectedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let places = f.precision().unwrap_or(6) as u32;
        f.write_str(&self.to_decimal(places))
    }
}

impl Serialize for DirectedReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_decimal(20))
    }
}

fn format_scaled(n: &BigInt, places: u32) -> String {
    let sign = if n.is_negative() { "-" } else { "" };
    let digits = n.abs().to_string();
    if places == 0 {
        return format!("{sign}{digits}");
    }
    let p = places as usize;
    let padded = format!("{digits:0>width$}", width = p + 1);
    let (int, frac) = padded.split_at(padded.len() - p);
    format!("{sign}{int}.{frac}")
}

pub fn parse_decimal(s: &str) -> Result<BigRational, DirectedError> {
    let bad = || DirectedError::Parse(s.to_string());
    let t = s.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() || !(int.chars().chain(frac.chars())).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int}{frac}0").parse().map_err(|_| bad())?;
    let q = BigRational::new(digits, BigInt::from(10).pow(frac.len() as u32 + 1));
    Ok(if neg { -q } else { q })
}

/// Bounds on `atanh(a/b)`, `|a/b| <= 1/3`, as integers scaled by `2^w`.
fn atanh_enclosure(a: &BigInt, b: &BigInt, w: u32) -> (BigInt, BigInt) {
    debug_assert!(b.is_positive() && a.abs() * 3 <= *b);
    let scale = pow2(u64::from(w));
    let (a2, b2) = (a * a, b * b);
    let (mut num, mut den) = (a.clone(), b.clone());
    let (mut lo, mut hi) = (BigInt::zero(), BigInt::zero());
    let mut j = 1u32;
    // Terms z^j / j for odd j until |z|^j < 2^-w. The remaining tail is then
    // below |z|^j / (1 - z^2) <= (9/8) 2^-w, absorbed by the +-2 below.
    while !num.is_zero() && num.abs() * &scale >= den {
        let d = &den * j;
        let t = &num * &scale;
        lo += div_directed(&t, &d, Rounding::Down);
        hi += div_directed(&t, &d, Rounding::Up);
        num *= &a2;
        den *= &b2;
        j += 2;
    }
    (lo - 2, hi + 2)
}

/// Bounds on `ln(num/den)` scaled by `2^w`; `num, den > 0`.
fn ln_enclosure(num: &BigInt, den: &BigInt, w: u32) -> (BigInt, BigInt) {
    debug_assert!(num.sign() == Sign::Plus && den.is_positive());
    // Reduce to y = num / (den 2^k) in [3/4, 3/2).
    let mut k = num.bits() as i64 - den.bits() as i64;
    let shifted = |k: i64| -> (BigInt, BigInt) {
        if k >= 0 {
            (num.clone(), den << k as u64)
        } else {
            (num << (-k) as u64, den.clone())
        }
    };
    let (mut p, mut q) = shifted(k);
    if &p * 4 < &q * 3 {
        k -= 1;
        (p, q) = shifted(k);
    } else if &p * 2 >= &q * 3 {
        k += 1;
        (p, q) = shifted(k);
    }
    let (zlo, zhi) = atanh_enclosure(&(&p - &q), &(&p + &q), w);
    let (mut lo, mut hi) = (zlo * 2, zhi * 2);
    if k != 0 {
        let (l2lo, l2hi) = atanh_enclosure(&BigInt::one(), &BigInt::from(3), w);
        let (l2lo, l2hi) = (l2lo * 2, l2hi * 2);
        if k > 0 {
            lo += l2lo * k;
            hi += l2hi * k;
        } else {
            lo += l2hi * k;
            hi += l2lo * k;
        }
    }
    (lo, hi)
}

/// A closed interval `[lo, hi]` whose endpoints are rounded outward.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Interval {
    pub lo: DirectedReal,
    pub hi: DirectedReal,
}

impl Interval {
    pub fn from_rational(q: &BigRational, digits: u32) -> Self {
        Self {
            lo: DirectedReal::from_rational(q, Rounding::Down, digits),
            hi: DirectedReal::from_rational(q, Rounding::Up, digits),
        }
    }

    pub fn from_integer(n: impl Into<BigInt>, digits: u32) -> Self {
        Self::from_rational(&BigRational::from_integer(n.into()), digits)
    }

    pub fn parse(s: &str, digits: u32) -> Result<Self, DirectedError> {
        Ok(Self::from_rational(&parse_decimal(s)?, digits))
    }

    pub fn width(&self) -> BigRational {
        self.hi.exact() - self.lo.exact()
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        self.lo.exact() <= *q && *q <= self.hi.exact()
    }

    pub fn midpoint_f64(&self) -> f64 {
        (self.lo.to_f64() + self.hi.to_f64()) / 2.0
    }

    pub fn is_positive(&self) -> bool {
        self.lo.mantissa.is_positive()
    }

    fn nonneg(&self, op: &'static str) -> Result<(), DirectedError> {
        if self.lo.is_negative() {
            Err(domain(op, "interval must be nonnegative"))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { lo: self.lo.add(&o.lo).expect("Down+Down"), hi: self.hi.add(&o.hi).expect("Up+Up") }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { lo: self.lo.sub(&o.hi).expect("Down-Up"), hi: self.hi.sub(&o.lo).expect("Up-Down") }
    }

    pub fn neg(&self) -> Self {
        Self { lo: self.hi.neg(), hi: self.lo.neg() }
    }

    /// Product of nonnegative intervals.
    pub fn mul(&self, o: &Self) -> Result<Self, DirectedError> {
        self.nonneg("mul")?;
        o.nonneg("mul")?;
        Ok(Self { lo: self.lo.mul(&o.lo)?, hi: self.hi.mul(&o.hi)? })
    }

    /// Product of an any-sign interval with a nonnegative one.
    pub fn mul_nonneg(&self, p: &Self) -> Result<Self, DirectedError> {
        p.nonneg("mul_nonneg")?;
        if !self.lo.is_negative() {
            return self.mul(p);
        }
        if !self.hi.is_negative() {
            // straddles zero: [lo * p.hi, hi * p.hi]
            let lo = self.lo.neg().mul(&p.hi)?.neg();
            let hi = self.hi.mul(&p.hi)?;
            return Ok(Self { lo, hi });
        }
        Ok(self.neg().mul(p)?.neg())
    }

    /// The dyadic `v` itself as a zero-width interval. Used for quantities
    /// that are chosen rather than approximated, such as a parameter set to
    /// a computed upper bound.
    pub fn point(v: &DirectedReal) -> Self {
        let twin = v.retag_exact(&v.exact()).expect("a dyadic is its own exact value");
        match v.rounding {
            Rounding::Down => Self { lo: v.clone(), hi: twin },
            Rounding::Up => Self { lo: twin, hi: v.clone() },
        }
    }

    /// Encloses `max(a, b)` for `a` in `self`, `b` in `other`.
    pub fn max(&self, other: &Self) -> Self {
        let pick = |a: &DirectedReal, b: &DirectedReal| if a >= b { a.clone() } else { b.clone() };
        Self { lo: pick(&self.lo, &other.lo), hi: pick(&self.hi, &other.hi) }
    }

    pub fn square(&self) -> Result<Self, DirectedError> {
        self.mul(self)
    }

    /// Any-sign dividend over a positive divisor.
    pub fn div(&self, o: &Self) -> Result<Self, DirectedError> {
        if !o.is_positive() {
            return Err(domain("div", "divisor interval must be positive"));
        }
        // x/d is increasing in x; for fixed x >= 0 it falls as d grows, for x < 0 it rises.
        let end = |x: &DirectedReal, lower: bool| -> Result<DirectedReal, DirectedError> {
            let d = |neg_side: bool| if lower != neg_side { &o.hi } else { &o.lo };
            if x.is_negative() {
                Ok(x.neg().div(d(true))?.neg())
            } else {
                x.div(d(false))
            }
        };
        Ok(Self { lo: end(&self.lo, true)?, hi: end(&self.hi, false)? })
    }

    pub fn recip(&self) -> Result<Self, DirectedError> {
        if !self.is_positive() {
            return Err(domain("recip", "interval must be positive"));
        }
        Ok(Self { lo: self.hi.recip()?, hi: self.lo.recip()? })
    }

    pub fn sqrt(&self) -> Result<Self, DirectedError> {
        self.nonneg("sqrt")?;
        Ok(Self { lo: self.lo.sqrt()?, hi: self.hi.sqrt()? })
    }

    pub fn ln(&self) -> Result<Self, DirectedError> {
        if !self.is_positive() {
            return Err(domain("ln", "interval must be positive"));
        }
        Ok(Self { lo: self.lo.ln()?, hi: self.hi.ln()? })
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let places = f.precision().unwrap_or(6);
        write!(f, "[{:.*}, {:.*}]", places, self.lo, places, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> BigRational {
        parse_decimal(s).unwrap()
    }

    fn dr(s: &str, r: Rounding) -> DirectedReal {
        DirectedReal::parse(s, r, DEFAULT_DIGITS).unwrap()
    }

    // ln 2, ln 7.7, sqrt 2 to 70 digits (mpmath, 100-digit working precision)
    const LN2: &str = "0.6931471805599453094172321214581765680755001343602552541206800094933936";
    const LN7_7: &str = "2.0412203288596381651493048667239448218576900948905053876446299581005809";
    const SQRT2: &str = "1.4142135623730950488016887242096980785696718753769480731766797379907325";

    fn encloses(x: &Interval, truth: &str) {
        let t = q(truth);
        // the literal itself is rounded at 70 digits
        let slack = BigRational::new(1.into(), BigInt::from(10).pow(69));
        assert!(x.lo.exact() <= &t + &slack, "lo {} above {truth}", x.lo);
        assert!(x.hi.exact() >= &t - &slack, "hi {} below {truth}", x.hi);
        assert!(x.width() < BigRational::new(1.into(), BigInt::from(10).pow(58)));
    }

    #[test]
    fn elementary_oracles() {
        encloses(&Interval::from_integer(2, DEFAULT_DIGITS).ln().unwrap(), LN2);
        encloses(&Interval::parse("7.7", DEFAULT_DIGITS).unwrap().ln().unwrap(), LN7_7);
        encloses(&Interval::from_integer(2, DEFAULT_DIGITS).sqrt().unwrap(), SQRT2);
        let tiny = Interval::parse("0.001", DEFAULT_DIGITS).unwrap().ln().unwrap();
        assert!(tiny.lo.to_f64() < -6.907 && tiny.hi.to_f64() > -6.908);
    }

    #[test]
    fn direction_contract() {
        let a = dr("1.5", Rounding::Down);
        let b = dr("2.5", Rounding::Up);
        assert!(matches!(a.add(&b), Err(DirectedError::DirectionMismatch { .. })));
        assert!(a.sub(&b).is_ok());
        assert!(matches!(a.sub(&a), Err(DirectedError::DirectionMismatch { .. })));
        assert!(a.mul(&b).is_err());
        assert_eq!(a.div(&b).unwrap().rounding(), Rounding::Down);
        assert_eq!(b.recip().unwrap().rounding(), Rounding::Down);
        assert!(a.neg().mul(&a.neg()).is_err());
        assert!(dr("-1", Rounding::Down).ln().is_err());
        assert!(dr("-1", Rounding::Down).sqrt().is_err());
    }

    #[test]
    fn decimal_output_respects_direction() {
        let third = BigRational::new(1.into(), 3.into());
        assert_eq!(DirectedReal::from_rational(&third, Rounding::Down, 30).to_decimal(4), "0.3333");
        assert_eq!(DirectedReal::from_rational(&third, Rounding::Up, 30).to_decimal(4), "0.3334");
        assert_eq!(DirectedReal::from_rational(&-third.clone(), Rounding::Down, 30).to_decimal(4), "-0.3334");
        // -0.05 is not dyadic; its upper bound lies just above it
        assert_eq!(dr("-0.05", Rounding::Up).to_decimal(3), "-0.049");
        assert_eq!(dr("-0.05", Rounding::Down).to_decimal(3), "-0.051");
        assert_eq!(dr("-0.5", Rounding::Down).to_decimal(3), "-0.500");
        assert_eq!(dr("12", Rounding::Up).to_decimal(0), "12");
        assert!(parse_decimal("1.2.3").is_err());
        assert!(parse_decimal("").is_err());
        assert_eq!(parse_decimal("-.5").unwrap(), BigRational::new((-1).into(), 2.into()));
    }

    #[test]
    fn mixed_sign_division() {
        let x = Interval { lo: dr("-3", Rounding::Down), hi: dr("5", Rounding::Up) };
        let d = Interval { lo: dr("2", Rounding::Down), hi: dr("4", Rounding::Up) };
        let r = x.div(&d).unwrap();
        assert_eq!(r.lo.exact(), q("-1.5"));
        assert_eq!(r.hi.exact(), q("2.5"));
        let neg = Interval { lo: dr("-6", Rounding::Down), hi: dr("-2", Rounding::Up) };
        let r = neg.div(&d).unwrap();
        assert_eq!(r.lo.exact(), q("-3"));
        assert_eq!(r.hi.exact(), q("-0.5"));
    }

    fn small_rational() -> impl Strategy<Value = BigRational> {
        (1i64..10_000_000, 1i64..10_000_000).prop_map(|(a, b)| BigRational::new(a.into(), b.into()))
    }

    proptest! {
        #[test]
        fn arithmetic_encloses_exact(a in small_rational(), b in small_rational(), digits in 20u32..80) {
            let (x, y) = (Interval::from_rational(&a, digits), Interval::from_rational(&b, digits));
            prop_assert!(x.add(&y).contains(&(&a + &b)));
            prop_assert!(x.sub(&y).contains(&(&a - &b)));
            prop_assert!(x.mul(&y).unwrap().contains(&(&a * &b)));
            prop_assert!(x.div(&y).unwrap().contains(&(&a / &b)));
            prop_assert!(x.recip().unwrap().contains(&(BigRational::one() / &a)));
            prop_assert!(x.sub(&y).mul_nonneg(&y).unwrap().contains(&((&a - &b) * &b)));
        }

        #[test]
        fn sqrt_squares_back(a in small_rational()) {
            let r = Interval::from_rational(&a, 40).sqrt().unwrap();
            prop_assert!(r.lo.exact() * r.lo.exact() <= a);
            prop_assert!(r.hi.exact() * r.hi.exact() >= a);
        }

        #[test]
        fn ln_is_additive(a in small_rational(), b in small_rational()) {
            let (x, y) = (Interval::from_rational(&a, 40), Interval::from_rational(&b, 40));
            let sum = x.ln().unwrap().add(&y.ln().unwrap());
            let prod = Interval::from_rational(&(&a * &b), 40).ln().unwrap();
            // both enclose ln(ab), so they overlap
            prop_assert!(sum.lo <= prod.hi && prod.lo <= sum.hi);
            prop_assert!((sum.midpoint_f64() - (a_f(&a) * a_f(&b)).ln()).abs() < 1e-9);
        }

        #[test]
        fn higher_precision_nests(a in small_rational()) {
            let lo = Interval::from_rational(&a, 30).ln().unwrap();
            let hi = Interval::from_rational(&a, 60).ln().unwrap();
            prop_assert!(lo.lo <= hi.hi && hi.lo <= lo.hi);
            prop_assert!(hi.width() <= lo.width());
        }
    }

    fn a_f(a: &BigRational) -> f64 {
        a.numer().to_string().parse::<f64>().unwrap() / a.denom().to_string().parse::<f64>().unwrap()
    }
}
