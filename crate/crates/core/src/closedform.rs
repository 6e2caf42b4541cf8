//! Exact values: finite sums of rational coefficients over named irrational
//! constants, with controlled floating-point evaluation.
//!
//! The algebra is a free module over [`IrrationalTag`]; distinct tags never
//! combine, so `√8` must be entered as `2·√2` (see [`ExactValue::sqrt`]).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::num::Scalar;

/// Arbitrary-precision rational; always normalized (gcd 1, positive denominator).
pub type Rational = BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn integer(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Exact rational value of a finite float (binary expansion, no rounding).
pub fn rational_from_f64(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or_else(|| Error::param("value", "finite", x))
}

/// `"num/den"`, always with an explicit denominator.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse {
        what: "rational",
        input: s.to_string(),
    };
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Exact rational from a plain decimal literal such as `0.75` or `-12.5e-1`.
pub fn parse_decimal(s: &str) -> Result<Rational> {
    let bad = || Error::Parse {
        what: "decimal",
        input: s.to_string(),
    };
    let s = s.trim();
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int_part}{frac_part}0").parse().map_err(|_| bad())?;
    let scale = exp - frac_part.len() as i32 - 1;
    let ten = BigInt::from(10);
    let mut q = Rational::from_integer(digits);
    if scale >= 0 {
        q *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        q /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if neg { -q } else { q })
}

/// Square root of a non-negative rational when it is itself rational.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rational::new(n, d))
}

fn is_perfect_square(k: u64) -> bool {
    let r = k.sqrt();
    r * r == k
}

/// Named constant a coefficient multiplies.
#[derive(Debug, Clone, Copy)]
pub enum IrrationalTag {
    One,
    Pi,
    /// `√k` for a positive non-square integer `k`.
    SqrtInt(u64),
    /// `1 / cos(omega / 2^level)`.
    SecHalving { omega: f64, level: u32 },
    /// `ln x`.
    LogArg(f64),
}

impl IrrationalTag {
    pub fn sqrt(k: u64) -> Result<Self> {
        if k == 0 || is_perfect_square(k) {
            return Err(Error::InvalidTag(format!("sqrt:{k} has a square radicand")));
        }
        Ok(IrrationalTag::SqrtInt(k))
    }

    pub fn sec_halving(omega: f64, level: u32) -> Result<Self> {
        if !(omega > 0.0 && omega < std::f64::consts::FRAC_PI_2) {
            return Err(Error::InvalidTag(format!("sec:{omega}:{level} needs 0 < omega < pi/2")));
        }
        Ok(IrrationalTag::SecHalving { omega, level })
    }

    pub fn log(x: f64) -> Result<Self> {
        if !(x.is_finite() && x > 0.0) {
            return Err(Error::InvalidTag(format!("log:{x} needs a positive argument")));
        }
        Ok(IrrationalTag::LogArg(x))
    }

    fn rank(&self) -> u8 {
        match self {
            IrrationalTag::One => 0,
            IrrationalTag::Pi => 1,
            IrrationalTag::SqrtInt(_) => 2,
            IrrationalTag::SecHalving { .. } => 3,
            IrrationalTag::LogArg(_) => 4,
        }
    }

    /// Value of the constant in the requested precision.
    pub fn value<T: Scalar>(&self) -> T {
        match *self {
            IrrationalTag::One => T::one(),
            IrrationalTag::Pi => T::PI(),
            IrrationalTag::SqrtInt(k) => T::lit(k as f64).sqrt(),
            IrrationalTag::SecHalving { omega, level } => {
                let halvings = T::two().powi(level.min(i32::MAX as u32) as i32);
                T::one() / (T::lit(omega) / halvings).cos()
            }
            IrrationalTag::LogArg(x) => T::lit(x).ln(),
        }
    }
}

impl PartialEq for IrrationalTag {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for IrrationalTag {}

impl PartialOrd for IrrationalTag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Float payloads compare by bit pattern so equal tags are bit-identical.
impl Ord for IrrationalTag {
    fn cmp(&self, other: &Self) -> Ordering {
        use IrrationalTag::*;
        match (self, other) {
            (SqrtInt(a), SqrtInt(b)) => a.cmp(b),
            (SecHalving { omega: a, level: la }, SecHalving { omega: b, level: lb }) => {
                a.total_cmp(b).then(la.cmp(lb))
            }
            (LogArg(a), LogArg(b)) => a.total_cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl Hash for IrrationalTag {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rank().hash(state);
        match *self {
            IrrationalTag::SqrtInt(k) => k.hash(state),
            IrrationalTag::SecHalving { omega, level } => {
                omega.to_bits().hash(state);
                level.hash(state);
            }
            IrrationalTag::LogArg(x) => x.to_bits().hash(state),
            IrrationalTag::One | IrrationalTag::Pi => {}
        }
    }
}

impl fmt::Display for IrrationalTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrrationalTag::One => f.write_str("one"),
            IrrationalTag::Pi => f.write_str("pi"),
            IrrationalTag::SqrtInt(k) => write!(f, "sqrt:{k}"),
            IrrationalTag::SecHalving { omega, level } => write!(f, "sec:{omega}:{level}"),
            IrrationalTag::LogArg(x) => write!(f, "log:{x}"),
        }
    }
}

impl FromStr for IrrationalTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidTag(s.to_string());
        match s {
            "one" => return Ok(IrrationalTag::One),
            "pi" => return Ok(IrrationalTag::Pi),
            _ => {}
        }
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "sqrt" => IrrationalTag::sqrt(rest.parse().map_err(|_| bad())?),
            "sec" => {
                let (omega, level) = rest.rsplit_once(':').ok_or_else(bad)?;
                IrrationalTag::sec_halving(
                    omega.parse().map_err(|_| bad())?,
                    level.parse().map_err(|_| bad())?,
                )
            }
            "log" => IrrationalTag::log(rest.parse().map_err(|_| bad())?),
            _ => Err(bad()),
        }
    }
}

/// Exact symbolic value `Σ coeff · constant`. The empty map is zero.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ExactValue {
    terms: BTreeMap<IrrationalTag, Rational>,
}

impl ExactValue {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(tag: IrrationalTag, coeff: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(tag, coeff);
        }
        ExactValue { terms }
    }

    pub fn rational(q: Rational) -> Self {
        Self::term(IrrationalTag::One, q)
    }

    pub fn pi(coeff: Rational) -> Self {
        Self::term(IrrationalTag::Pi, coeff)
    }

    /// `coeff · √k`, with square factors pulled out of `k` so that the stored
    /// radicand is square-free.
    pub fn sqrt(k: u64, coeff: Rational) -> Self {
        if k == 0 {
            return Self::zero();
        }
        let mut radicand = k;
        let mut outside = 1u64;
        let mut p = 2u64;
        while p * p <= radicand {
            while radicand % (p * p) == 0 {
                radicand /= p * p;
                outside *= p;
            }
            p += 1;
        }
        let coeff = coeff * Rational::from_integer(BigInt::from(outside));
        if radicand == 1 {
            Self::rational(coeff)
        } else {
            Self::term(IrrationalTag::SqrtInt(radicand), coeff)
        }
    }

    /// Build from raw `(tag, coeff)` pairs, summing repeated tags.
    pub fn from_terms<I: IntoIterator<Item = (IrrationalTag, Rational)>>(terms: I) -> Self {
        terms
            .into_iter()
            .fold(Self::zero(), |acc, (tag, q)| ExactValue::add(&acc, &Self::term(tag, q)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IrrationalTag, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, tag: &IrrationalTag) -> Option<&Rational> {
        self.terms.get(tag)
    }

    /// The coefficient when the value is a plain rational (or zero).
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&IrrationalTag::One).cloned(),
            _ => None,
        }
    }

    pub fn add(&self, other: &ExactValue) -> ExactValue {
        let mut terms = self.terms.clone();
        for (tag, q) in &other.terms {
            let sum = terms.get(tag).map_or_else(|| q.clone(), |p| p + q);
            if sum.is_zero() {
                terms.remove(tag);
            } else {
                terms.insert(*tag, sum);
            }
        }
        ExactValue { terms }
    }

    pub fn scale(&self, q: &Rational) -> ExactValue {
        if q.is_zero() {
            return ExactValue::zero();
        }
        ExactValue {
            terms: self.terms.iter().map(|(t, c)| (*t, c * q)).collect(),
        }
    }

    /// Structural equality after normalization.
    pub fn exact_eq(&self, other: &ExactValue) -> bool {
        self == other
    }

    /// Sum of `coeff × constant` in tag order.
    pub fn eval<T: Scalar>(&self) -> T {
        self.terms.iter().fold(T::zero(), |acc, (tag, q)| {
            let coeff = T::lit(q.to_f64().unwrap_or(f64::NAN));
            match tag {
                IrrationalTag::One => acc + coeff,
                _ => acc + coeff * tag.value::<T>(),
            }
        })
    }

    pub fn eval_float(&self) -> f64 {
        self.eval::<f64>()
    }
}

impl Add for &ExactValue {
    type Output = ExactValue;
    fn add(self, rhs: &ExactValue) -> ExactValue {
        ExactValue::add(self, rhs)
    }
}

impl Neg for &ExactValue {
    type Output = ExactValue;
    fn neg(self) -> ExactValue {
        self.scale(&-Rational::one())
    }
}

impl Sub for &ExactValue {
    type Output = ExactValue;
    fn sub(self, rhs: &ExactValue) -> ExactValue {
        self.add(&-rhs)
    }
}

impl Mul<&Rational> for &ExactValue {
    type Output = ExactValue;
    fn mul(self, rhs: &Rational) -> ExactValue {
        self.scale(rhs)
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (tag, q)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match tag {
                IrrationalTag::One => write!(f, "{q}")?,
                IrrationalTag::Pi => write!(f, "π·{q}")?,
                IrrationalTag::SqrtInt(k) => write!(f, "√{k}·{q}")?,
                IrrationalTag::SecHalving { omega, level } => {
                    write!(f, "sec({omega}/2^{level})·{q}")?
                }
                IrrationalTag::LogArg(x) => write!(f, "ln({x})·{q}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    tag: String,
    coeff: String,
}

impl Serialize for ExactValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (tag, q) in &self.terms {
            seq.serialize_element(&TermRepr {
                tag: tag.to_string(),
                coeff: format_rational(q),
            })?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for ExactValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<TermRepr>::deserialize(deserializer)?;
        let mut terms = BTreeMap::new();
        for t in raw {
            let tag: IrrationalTag = t.tag.parse().map_err(de::Error::custom)?;
            let q = parse_rational(&t.coeff).map_err(de::Error::custom)?;
            if q.is_zero() {
                continue;
            }
            if terms.insert(tag, q).is_some() {
                return Err(de::Error::custom(format!("duplicate tag {tag}")));
            }
        }
        Ok(ExactValue { terms })
    }
}

/// A closed form that is either exact or, when no tagged representation
/// exists, a plain float flagged as inexact.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClosedForm {
    Exact(ExactValue),
    Approx { approx: f64 },
}

impl ClosedForm {
    pub fn eval_float(&self) -> f64 {
        match self {
            ClosedForm::Exact(v) => v.eval_float(),
            ClosedForm::Approx { approx } => *approx,
        }
    }

    pub fn as_exact(&self) -> Option<&ExactValue> {
        match self {
            ClosedForm::Exact(v) => Some(v),
            ClosedForm::Approx { .. } => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ClosedForm::Exact(_))
    }
}

impl From<ExactValue> for ClosedForm {
    fn from(v: ExactValue) -> Self {
        ClosedForm::Exact(v)
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedForm::Exact(v) => v.fmt(f),
            ClosedForm::Approx { approx } => write!(f, "≈{approx}"),
        }
    }
}
