//! Exact half-integer arithmetic for spin and link quantum numbers.
//!
//! Every spin-like quantity (S, m_z, link eigenvalues, Gauss charges) is
//! stored as twice its value so that parity and range checks stay exact.
//! Conversion to `f64` happens only when a number leaves the library.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A number in ½ℤ, stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HalfInt(i32);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);

    pub const fn from_twice(twice: i32) -> Self {
        HalfInt(twice)
    }

    pub const fn from_int(value: i32) -> Self {
        HalfInt(2 * value)
    }

    pub const fn twice(self) -> i32 {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        f64::from(self.0) * 0.5
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub const fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    /// Product of two half-integers as a float (exact for the small values used here).
    pub fn mul_f64(self, other: HalfInt) -> f64 {
        f64::from(self.0) * f64::from(other.0) * 0.25
    }
}

impl std::ops::Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl std::ops::Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl std::ops::Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    /// Accepts `"3/2"`, `"-1/2"`, `"1"`, and decimal forms such as `"1.5"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::Parse(format!("`{s}` is not an integer or half-integer"));
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num: i32 = num.trim().parse().map_err(|_| bad())?;
            let den: i32 = den.trim().parse().map_err(|_| bad())?;
            return match den {
                1 => Ok(HalfInt(2 * num)),
                2 => Ok(HalfInt(num)),
                _ => Err(bad()),
            };
        }
        if let Ok(int) = s.parse::<i32>() {
            return Ok(HalfInt(2 * int));
        }
        let x: f64 = s.parse().map_err(|_| bad())?;
        let twice = 2.0 * x;
        if twice.is_finite() && twice == twice.round() && twice.abs() < f64::from(i32::MAX) {
            Ok(HalfInt(twice as i32))
        } else {
            Err(bad())
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Int(i64),
            Float(f64),
        }
        let text = match Repr::deserialize(deserializer)? {
            Repr::Text(s) => s,
            Repr::Int(i) => i.to_string(),
            Repr::Float(x) => x.to_string(),
        };
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Link spin S ≥ 1/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "HalfInt", into = "HalfInt")]
pub struct SpinValue {
    twice_s: u32,
}

impl SpinValue {
    pub fn new(twice_s: u32) -> Result<Self, Error> {
        if twice_s == 0 {
            return Err(Error::InvalidSpin("spin must be at least 1/2".into()));
        }
        if twice_s > 40 {
            return Err(Error::InvalidSpin(format!(
                "spin {} is beyond the supported range (S ≤ 20)",
                HalfInt::from_twice(twice_s as i32)
            )));
        }
        Ok(SpinValue { twice_s })
    }

    pub fn twice_s(self) -> u32 {
        self.twice_s
    }

    pub fn s(self) -> HalfInt {
        HalfInt::from_twice(self.twice_s as i32)
    }

    /// Dimension 2S+1 of one link Hilbert space.
    pub fn local_dim(self) -> usize {
        self.twice_s as usize + 1
    }

    pub fn is_half_integer(self) -> bool {
        self.twice_s % 2 == 1
    }

    /// S(S+1).
    pub fn casimir(self) -> f64 {
        let s = self.s().to_f64();
        s * (s + 1.0)
    }

    /// Whether `m` is a valid ŝ^z eigenvalue: |m| ≤ S with the parity of S.
    pub fn admits(self, m: HalfInt) -> bool {
        m.twice().unsigned_abs() <= self.twice_s
            && (m.twice() - self.twice_s as i32).rem_euclid(2) == 0
    }

    /// All ŝ^z eigenvalues S, S−1, …, −S (descending).
    pub fn mz_values(self) -> Vec<HalfInt> {
        let s = self.twice_s as i32;
        (0..=self.twice_s as i32)
            .map(|k| HalfInt::from_twice(s - 2 * k))
            .collect()
    }
}

impl TryFrom<HalfInt> for SpinValue {
    type Error = Error;
    fn try_from(value: HalfInt) -> Result<Self, Error> {
        if value.twice() <= 0 {
            return Err(Error::InvalidSpin(format!("spin must be positive, got {value}")));
        }
        SpinValue::new(value.twice() as u32)
    }
}

impl From<SpinValue> for HalfInt {
    fn from(spin: SpinValue) -> HalfInt {
        spin.s()
    }
}

impl FromStr for SpinValue {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let value: HalfInt = s.parse()?;
        SpinValue::try_from(value)
    }
}

impl fmt::Display for SpinValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.s().fmt(f)
    }
}

impl PartialOrd for SpinValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SpinValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.twice_s.cmp(&other.twice_s)
    }
}
