use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graded::primes::factorize;

/// A set of primes that may be every prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeSet {
    All,
    Listed(BTreeSet<u64>),
}

impl PrimeSet {
    pub fn contains(&self, p: u64) -> bool {
        match self {
            PrimeSet::All => true,
            PrimeSet::Listed(s) => s.contains(&p),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, PrimeSet::Listed(s) if s.is_empty())
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeSet::All => write!(f, "all primes"),
            PrimeSet::Listed(s) => {
                let parts: Vec<String> = s.iter().map(u64::to_string).collect();
                write!(f, "{{{}}}", parts.join(","))
            }
        }
    }
}

/// Pairs `(p, r)` meaning exponential growth of `Z/p^r` summands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TorsionClaims {
    /// Every prime and every `r >= 1`.
    AllPrimePowers,
    Listed(BTreeSet<(u64, u32)>),
}

impl TorsionClaims {
    pub fn contains(&self, p: u64, r: u32) -> bool {
        match self {
            TorsionClaims::AllPrimePowers => r >= 1,
            TorsionClaims::Listed(s) => s.contains(&(p, r)),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, TorsionClaims::Listed(s) if s.is_empty())
    }
}

impl fmt::Display for TorsionClaims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorsionClaims::AllPrimePowers => write!(f, "Z/p^r for all primes p and all r >= 1"),
            TorsionClaims::Listed(s) if s.is_empty() => write!(f, "none"),
            TorsionClaims::Listed(s) => {
                let parts: Vec<String> = s.iter().map(|(p, r)| format!("Z/{p}^{r}")).collect();
                write!(f, "{}", parts.join(", "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InertnessVerdict {
    pub k: i64,
    pub inert: bool,
    /// Primes at which the top-cell attachment is not locally inert.
    pub non_inert_primes: PrimeSet,
    pub notes: Vec<String>,
}

/// Claims about the capped complex `X` and the cokernel of
/// `π_*(X^{(n-1)}) → π_*(X)`. A `false` or absent claim means "not
/// asserted", never "refuted".
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperbolicityVerdict {
    pub k: i64,
    pub rational_hyperbolic: bool,
    pub torsion_claims: TorsionClaims,
    /// Exponential growth of `Q` summands in the cokernel.
    pub cokernel_rational: bool,
    pub cokernel_claims: TorsionClaims,
}

/// Inert exactly when `k = ±1`; otherwise not locally inert at any prime
/// dividing `k` (every prime when `k = 0`).
pub fn inertness_verdict(k: i64) -> InertnessVerdict {
    let mut notes = Vec::new();
    let non_inert_primes = match k.unsigned_abs() {
        0 => {
            notes.push("k = 0: the top cell splits off, X ≃ S^m ∨ S^{n-m} ∨ C ∨ S^n".to_string());
            PrimeSet::All
        }
        a => PrimeSet::Listed(factorize(a).into_iter().map(|(p, _)| p).collect()),
    };
    InertnessVerdict {
        k,
        inert: k.unsigned_abs() == 1,
        non_inert_primes,
        notes,
    }
}

/// The case table for nonzero `k`, transcribed bullet by bullet.
fn torsion_table(k: u64) -> BTreeSet<(u64, u32)> {
    let mut out = BTreeSet::new();
    for (p, e) in factorize(k) {
        match (p, e) {
            (2, 1) => out.extend([(2, 1), (2, 2), (2, 3)]),
            // 4 | k: each 2^r | k, r >= 1, gives Z/2^r and Z/2^{r+1}.
            // Odd p: each p^r | k gives Z/p^r and Z/p^{r+1}.
            (p, e) => {
                for r in 1..=e {
                    out.insert((p, r));
                    out.insert((p, r + 1));
                }
            }
        }
    }
    out
}

pub fn hyperbolicity_verdict(k: i64) -> HyperbolicityVerdict {
    if k == 0 {
        return HyperbolicityVerdict {
            k,
            rational_hyperbolic: true,
            torsion_claims: TorsionClaims::AllPrimePowers,
            cokernel_rational: true,
            cokernel_claims: TorsionClaims::AllPrimePowers,
        };
    }
    let table = torsion_table(k.unsigned_abs());
    HyperbolicityVerdict {
        k,
        rational_hyperbolic: false,
        torsion_claims: TorsionClaims::Listed(table.clone()),
        cokernel_rational: false,
        cokernel_claims: TorsionClaims::Listed(table),
    }
}
