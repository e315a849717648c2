//! Exact scalar arithmetic for elimination, plus sorted sparse vectors.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub(crate) trait Arith: Sync {
    type E: Clone + Send + Sync;

    fn from_int(&self, n: &BigInt) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    /// `a` must be nonzero.
    fn inv(&self, a: &Self::E) -> Self::E;
}

/// `F_p` with residues in `[0, p)`.
pub(crate) struct Modp(pub u64);

impl Arith for Modp {
    type E = u64;

    fn from_int(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.0);
        ((n % &p + &p) % &p).to_u64().expect("residue fits")
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.0 as u128) as u64
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.0 as u128) as u64
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    fn inv(&self, a: &u64) -> u64 {
        // Fermat: a^(p-2)
        let (mut base, mut e, mut acc) = (*a, self.0 - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

pub(crate) struct Rationals;

impl Arith for Rationals {
    type E = BigRational;

    fn from_int(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        if a.is_one() {
            return b.clone();
        }
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
}

/// Sparse vector: `(column, nonzero value)` sorted by column.
pub(crate) type SVec<E> = Vec<(u32, E)>;

/// `v + a w`.
pub(crate) fn axpy<A: Arith>(f: &A, v: &SVec<A::E>, a: &A::E, w: &SVec<A::E>) -> SVec<A::E> {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < w.len() {
        let take_v = j == w.len() || (i < v.len() && v[i].0 < w[j].0);
        let take_w = i == v.len() || (j < w.len() && w[j].0 < v[i].0);
        if take_v {
            out.push(v[i].clone());
            i += 1;
        } else if take_w {
            out.push((w[j].0, f.mul(a, &w[j].1)));
            j += 1;
        } else {
            let x = f.add(&v[i].1, &f.mul(a, &w[j].1));
            if !f.is_zero(&x) {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Collects unsorted `(column, value)` pairs, summing duplicates.
pub(crate) fn collect<A: Arith>(f: &A, mut items: Vec<(u32, A::E)>) -> SVec<A::E> {
    items.sort_by_key(|(c, _)| *c);
    let mut out: SVec<A::E> = Vec::with_capacity(items.len());
    for (c, x) in items {
        match out.last_mut() {
            Some((last, acc)) if *last == c => *acc = f.add(acc, &x),
            _ => out.push((c, x)),
        }
    }
    out.retain(|(_, x)| !f.is_zero(x));
    out
}
