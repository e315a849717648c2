use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// All primes `p` with `2p < bound`.
pub fn primes_with_double_below(bound: i64) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    let mut p = 2u64;
    while 2 * (p as i64) < bound {
        if is_prime(p) {
            out.insert(p);
        }
        p += 1;
    }
    out
}

/// A prime power `p^r` with `r >= 1`; the order of a cyclic torsion summand.
///
/// Ordered by `(prime, exponent)`, which is also the canonical order of
/// Moore-space summands produced by prime splitting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PrimePower {
    prime: u64,
    exp: u32,
}

impl PrimePower {
    pub fn new(prime: u64, exp: u32) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::Validation(format!("{prime} is not prime")));
        }
        if exp == 0 {
            return Err(Error::Validation(format!("prime power {prime}^0 is trivial")));
        }
        prime
            .checked_pow(exp)
            .ok_or_else(|| Error::Validation(format!("{prime}^{exp} overflows u64")))?;
        Ok(PrimePower { prime, exp })
    }

    /// Interprets `q` as a prime power; fails if `q` has two distinct prime factors.
    pub fn from_order(q: u64) -> Result<Self> {
        match factorize(q).as_slice() {
            [(p, e)] => Ok(PrimePower { prime: *p, exp: *e }),
            _ => Err(Error::Validation(format!("{q} is not a prime power > 1"))),
        }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn exp(&self) -> u32 {
        self.exp
    }

    pub fn value(&self) -> u64 {
        self.prime.pow(self.exp)
    }

    /// `Z/p^r ⊗ Z/q^s` and `Tor(Z/p^r, Z/q^s)`: cyclic of order gcd.
    pub fn gcd(&self, other: &PrimePower) -> Option<PrimePower> {
        (self.prime == other.prime).then(|| PrimePower {
            prime: self.prime,
            exp: self.exp.min(other.exp),
        })
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Splits an order `|k| >= 2` into its prime-power factors.
pub fn prime_power_factors(k: u64) -> Vec<PrimePower> {
    factorize(k)
        .into_iter()
        .map(|(prime, exp)| PrimePower { prime, exp })
        .collect()
}
