use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer power series `c_0 + c_1 t + ... + c_N t^N + O(t^{N+1})`.
///
/// The truncation degree is part of the value; binary operations clamp to
/// the smaller of the two operands.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PowerSeries {
    coeffs: Vec<BigInt>,
}

impl PowerSeries {
    pub fn zero(trunc: usize) -> Self {
        PowerSeries {
            coeffs: vec![BigInt::zero(); trunc + 1],
        }
    }

    pub fn one(trunc: usize) -> Self {
        Self::monomial(0, 1, trunc)
    }

    /// `c t^d`, or zero when `d > trunc`.
    pub fn monomial(d: usize, c: i64, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        if d <= trunc {
            s.coeffs[d] = BigInt::from(c);
        }
        s
    }

    /// Pads with zeros or drops terms so that the result has truncation `trunc`.
    pub fn from_coeffs<I, T>(coeffs: I, trunc: usize) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut v: Vec<BigInt> = coeffs.into_iter().take(trunc + 1).map(Into::into).collect();
        v.resize(trunc + 1, BigInt::zero());
        PowerSeries { coeffs: v }
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, d: usize) -> &BigInt {
        &self.coeffs[d]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, d: usize, c: BigInt) {
        self.coeffs[d] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Coefficients as `i64`, if they all fit.
    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }

    pub fn truncate(&self, trunc: usize) -> Self {
        let t = trunc.min(self.trunc());
        PowerSeries {
            coeffs: self.coeffs[..=t].to_vec(),
        }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.trunc().min(other.trunc());
        let mut out = vec![BigInt::zero(); n + 1];
        for (i, a) in self.coeffs.iter().take(n + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        PowerSeries { coeffs: out }
    }

    pub fn add(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.trunc().min(other.trunc());
        PowerSeries {
            coeffs: (0..=n).map(|d| &self.coeffs[d] + &other.coeffs[d]).collect(),
        }
    }

    pub fn sub(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.trunc().min(other.trunc());
        PowerSeries {
            coeffs: (0..=n).map(|d| &self.coeffs[d] - &other.coeffs[d]).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `t^k`, keeping the truncation.
    pub fn shift_up(&self, k: usize) -> PowerSeries {
        let n = self.trunc();
        let mut out = vec![BigInt::zero(); n + 1];
        for d in k..=n {
            out[d] = self.coeffs[d - k].clone();
        }
        PowerSeries { coeffs: out }
    }

    /// Divides by `t^k`; the truncation drops by `k`.
    pub fn shift_down(&self, k: usize) -> Result<PowerSeries> {
        if k > self.trunc() {
            return Err(Error::Truncation {
                needed: k,
                available: self.trunc(),
            });
        }
        if let Some(d) = (0..k).find(|&d| !self.coeffs[d].is_zero()) {
            return Err(Error::Validation(format!(
                "cannot divide by t^{k}: coefficient of t^{d} is {}",
                self.coeffs[d]
            )));
        }
        Ok(PowerSeries {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// Exact inverse; requires constant term `±1`.
    pub fn reciprocal(&self) -> Result<PowerSeries> {
        let c0 = &self.coeffs[0];
        if !(c0.is_one() || (-c0).is_one()) {
            return Err(Error::NonInvertible(c0.to_string()));
        }
        let n = self.trunc();
        let mut inv = vec![BigInt::zero(); n + 1];
        inv[0] = c0.clone();
        for d in 1..=n {
            let mut acc = BigInt::zero();
            for i in 1..=d {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &inv[d - i];
                }
            }
            // c0 is a unit equal to its own inverse
            inv[d] = -(acc * c0);
        }
        Ok(PowerSeries { coeffs: inv })
    }

    /// `1 / (1 - t^d)` truncated at `trunc`.
    pub fn geometric(d: usize, trunc: usize) -> PowerSeries {
        let mut s = Self::zero(trunc);
        if d == 0 {
            return s;
        }
        for k in (0..=trunc).step_by(d) {
            s.coeffs[k] = BigInt::one();
        }
        s
    }

    pub fn first_mismatch(&self, other: &PowerSeries) -> Option<usize> {
        let n = self.trunc().min(other.trunc());
        (0..=n).find(|&d| self.coeffs[d] != other.coeffs[d])
    }

    pub fn has_negative(&self) -> bool {
        self.coeffs.iter().any(Signed::is_negative)
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        PowerSeries::add(self, rhs)
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        PowerSeries::sub(self, rhs)
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        PowerSeries::mul(self, rhs)
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match d {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if d == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{d}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.trunc() + 1)
    }
}

pub(crate) fn bigint_to_json(c: &BigInt) -> serde_json::Number {
    serde_json::Number::from_str(&c.to_string()).expect("integer literal is a JSON number")
}

pub(crate) fn bigint_from_json(n: &serde_json::Number) -> Option<BigInt> {
    n.to_string().parse().ok()
}

/// `{"trunc": N, "coeffs": [c_0, ..., c_N]}` with exact integers.
impl Serialize for PowerSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let nums: Vec<serde_json::Number> = self.coeffs.iter().map(bigint_to_json).collect();
        let mut st = serializer.serialize_struct("PowerSeries", 2)?;
        st.serialize_field("trunc", &self.trunc())?;
        st.serialize_field("coeffs", &nums)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for PowerSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            trunc: usize,
            coeffs: Vec<serde_json::Number>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.coeffs.len() != raw.trunc + 1 {
            return Err(de::Error::custom(format!(
                "series with trunc {} needs {} coefficients, got {}",
                raw.trunc,
                raw.trunc + 1,
                raw.coeffs.len()
            )));
        }
        let coeffs = raw
            .coeffs
            .iter()
            .map(|n| bigint_from_json(n).ok_or_else(|| de::Error::custom(format!("{n} is not an integer"))))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(PowerSeries { coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(v: &[i64], n: usize) -> PowerSeries {
        PowerSeries::from_coeffs(v.iter().copied(), n)
    }

    #[test]
    fn geometric_reciprocal() {
        let one_minus_t2 = s(&[1, 0, -1], 10);
        let inv = one_minus_t2.reciprocal().unwrap();
        assert_eq!(inv, PowerSeries::geometric(2, 10));
    }

    #[test]
    fn two_three_reciprocal_counts_solutions() {
        // 2a + 3b = d, counted by brute force
        let n = 12;
        let brute: Vec<i64> = (0..=n as i64)
            .map(|d| {
                (0..=d / 2)
                    .filter(|a| (d - 2 * a) % 3 == 0)
                    .count() as i64
            })
            .collect();
        assert_eq!(brute, vec![1, 0, 1, 1, 1, 1, 2, 1, 2, 2, 2, 2, 3]);
        let den = s(&[1, 0, -1], n).mul(&s(&[1, 0, 0, -1], n));
        assert_eq!(den.reciprocal().unwrap().to_i64_vec().unwrap(), brute);
    }

    #[test]
    fn non_invertible() {
        assert!(matches!(s(&[2, 1], 4).reciprocal(), Err(Error::NonInvertible(_))));
        assert!(s(&[-1, 1], 4).reciprocal().is_ok());
    }

    #[test]
    fn truncation_clamps_to_min() {
        let a = PowerSeries::geometric(1, 5);
        let b = PowerSeries::geometric(1, 9);
        assert_eq!(a.mul(&b).trunc(), 5);
        assert_eq!(a.add(&b).trunc(), 5);
    }

    #[test]
    fn shifts() {
        let a = s(&[0, 0, 1, 2], 5);
        assert_eq!(a.shift_down(2).unwrap(), s(&[1, 2], 3));
        assert!(a.shift_down(3).is_err());
        assert_eq!(s(&[1, 2], 3).shift_up(2), s(&[0, 0, 1, 2], 3));
    }

    #[test]
    fn json_form() {
        let a = s(&[1, 0, -3], 2);
        let j = serde_json::to_string(&a).unwrap();
        assert_eq!(j, r#"{"trunc":2,"coeffs":[1,0,-3]}"#);
        let big = PowerSeries::from_coeffs([BigInt::from(3u8).pow(60)], 0);
        let back: PowerSeries = serde_json::from_str(&serde_json::to_string(&big).unwrap()).unwrap();
        assert_eq!(back, big);
        assert!(serde_json::from_str::<PowerSeries>(r#"{"trunc":3,"coeffs":[1]}"#).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(s(&[1, 0, -1, 2], 3).to_string(), "1 - t^2 + 2t^3 + O(t^4)");
        assert_eq!(PowerSeries::zero(1).to_string(), "0 + O(t^2)");
    }

    proptest! {
        #[test]
        fn reciprocal_is_two_sided_inverse(
            tail in proptest::collection::vec(-5i64..=5, 0..12),
            sign in prop_oneof![Just(1i64), Just(-1i64)],
        ) {
            let n = 12;
            let mut v = vec![sign];
            v.extend(tail);
            let f = s(&v, n);
            let g = f.reciprocal().unwrap();
            prop_assert_eq!(f.mul(&g), PowerSeries::one(n));
            prop_assert_eq!(g.mul(&f), PowerSeries::one(n));
        }
    }
}
