use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::primes::is_prime;
use crate::error::{Error, Result};

/// Coefficient ring for homology.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientRing {
    Integers,
    Rationals,
    PrimeField(u64),
    /// `Z` with the listed primes inverted.
    LocalizedIntegers(BTreeSet<u64>),
}

/// The two field kinds over which dimensions are counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl CoefficientRing {
    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Validation(format!("F_{p}: {p} is not prime")));
        }
        Ok(CoefficientRing::PrimeField(p))
    }

    pub fn localized<I: IntoIterator<Item = u64>>(primes: I) -> Result<Self> {
        let set: BTreeSet<u64> = primes.into_iter().collect();
        if let Some(bad) = set.iter().find(|p| !is_prime(**p)) {
            return Err(Error::Validation(format!("cannot invert {bad}: not prime")));
        }
        Ok(CoefficientRing::LocalizedIntegers(set))
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            CoefficientRing::PrimeField(p) => Self::prime_field(*p).map(|_| ()),
            CoefficientRing::LocalizedIntegers(s) => Self::localized(s.iter().copied()).map(|_| ()),
            _ => Ok(()),
        }
    }

    /// The field this ring is, if it is one.
    pub fn as_field(&self) -> Option<Field> {
        match self {
            CoefficientRing::Rationals => Some(Field::Rationals),
            CoefficientRing::PrimeField(p) => Some(Field::Prime(*p)),
            _ => None,
        }
    }

    pub fn require_field(&self) -> Result<Field> {
        self.as_field()
            .ok_or_else(|| Error::UnsupportedCoefficient(format!("{self} is not a field")))
    }
}

impl From<Field> for CoefficientRing {
    fn from(f: Field) -> Self {
        match f {
            Field::Rationals => CoefficientRing::Rationals,
            Field::Prime(p) => CoefficientRing::PrimeField(p),
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientRing::Integers => write!(f, "z"),
            CoefficientRing::Rationals => write!(f, "q"),
            CoefficientRing::PrimeField(p) => write!(f, "fp:{p}"),
            CoefficientRing::LocalizedIntegers(s) => {
                let list: Vec<String> = s.iter().map(u64::to_string).collect();
                write!(f, "zloc:{}", list.join(","))
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        CoefficientRing::from(*self).fmt(f)
    }
}

/// Accepts `q`, `z`, `fp:<p>` and `zloc:<p1>,<p2>,...`.
impl FromStr for CoefficientRing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "q" | "Q" => return Ok(CoefficientRing::Rationals),
            "z" | "Z" => return Ok(CoefficientRing::Integers),
            _ => {}
        }
        if let Some(p) = s.strip_prefix("fp:") {
            let p: u64 = p
                .parse()
                .map_err(|_| Error::Parse(format!("bad prime in field `{s}`")))?;
            return CoefficientRing::prime_field(p);
        }
        if let Some(list) = s.strip_prefix("zloc:") {
            let primes = list
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| {
                    t.trim()
                        .parse::<u64>()
                        .map_err(|_| Error::Parse(format!("bad prime `{t}` in `{s}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            return CoefficientRing::localized(primes);
        }
        Err(Error::Parse(format!(
            "unknown coefficient ring `{s}` (expected q, z, fp:<p> or zloc:<p,...>)"
        )))
    }
}
