use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::coeff::{CoefficientRing, Field};
use super::primes::{prime_power_factors, PrimePower};
use super::series::PowerSeries;
use crate::error::{Error, Result};

/// One degree of a graded group: `Z^free ⊕ ⊕ (Z/q)^{m_q}` over prime powers `q`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct DegreeGroup {
    pub free: BigUint,
    pub torsion: BTreeMap<PrimePower, BigUint>,
}

impl DegreeGroup {
    pub fn is_zero(&self) -> bool {
        self.free.is_zero() && self.torsion.is_empty()
    }

    pub fn free(r: u64) -> Self {
        DegreeGroup {
            free: BigUint::from(r),
            torsion: BTreeMap::new(),
        }
    }

    fn add_torsion(&mut self, q: PrimePower, mult: BigUint) {
        if !mult.is_zero() {
            *self.torsion.entry(q).or_default() += mult;
        }
    }

    fn absorb(&mut self, other: &DegreeGroup) {
        self.free += &other.free;
        for (q, m) in &other.torsion {
            self.add_torsion(*q, m.clone());
        }
    }

    /// Number of cyclic summands of `p`-power order.
    pub fn p_torsion_count(&self, p: u64) -> BigUint {
        self.torsion
            .iter()
            .filter(|(q, _)| q.prime() == p)
            .map(|(_, m)| m.clone())
            .sum()
    }

    /// `A ⊗ B` for finitely generated abelian groups.
    fn tensor(a: &DegreeGroup, b: &DegreeGroup) -> DegreeGroup {
        let mut out = DegreeGroup {
            free: &a.free * &b.free,
            torsion: BTreeMap::new(),
        };
        for (q, m) in &b.torsion {
            out.add_torsion(*q, &a.free * m);
        }
        for (q, m) in &a.torsion {
            out.add_torsion(*q, &b.free * m);
        }
        Self::torsion_pairs(a, b, &mut out);
        out
    }

    /// `Tor(A, B)`: only the torsion parts pair.
    fn tor(a: &DegreeGroup, b: &DegreeGroup) -> DegreeGroup {
        let mut out = DegreeGroup::default();
        Self::torsion_pairs(a, b, &mut out);
        out
    }

    fn torsion_pairs(a: &DegreeGroup, b: &DegreeGroup, out: &mut DegreeGroup) {
        for (qa, ma) in &a.torsion {
            for (qb, mb) in &b.torsion {
                if let Some(g) = qa.gcd(qb) {
                    out.add_torsion(g, ma * mb);
                }
            }
        }
    }
}

/// Truncated graded finitely generated abelian group.
///
/// Degrees above `trunc` are unknown, not zero. Absent degrees at or below
/// `trunc` are the zero group. Torsion is stored as prime-power cyclic
/// summands with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedGroup {
    trunc: usize,
    entries: BTreeMap<usize, DegreeGroup>,
}

impl GradedGroup {
    pub fn zero(trunc: usize) -> Self {
        GradedGroup {
            trunc,
            entries: BTreeMap::new(),
        }
    }

    /// Homology of a point: `Z` in degree 0.
    pub fn point(trunc: usize) -> Self {
        let mut g = Self::zero(trunc);
        g.add_free(0, 1u32);
        g
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn get(&self, d: usize) -> Option<&DegreeGroup> {
        self.entries.get(&d)
    }

    pub fn free_rank(&self, d: usize) -> BigUint {
        self.entries.get(&d).map(|g| g.free.clone()).unwrap_or_default()
    }

    /// Nonzero degrees in ascending order.
    pub fn degrees(&self) -> impl Iterator<Item = (usize, &DegreeGroup)> {
        self.entries.iter().map(|(d, g)| (*d, g))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    fn entry(&mut self, d: usize) -> Option<&mut DegreeGroup> {
        (d <= self.trunc).then(|| self.entries.entry(d).or_default())
    }

    fn tidy(&mut self) {
        self.entries.retain(|_, g| !g.is_zero());
    }

    /// Adds `Z^r` in degree `d`; ignored above the truncation.
    pub fn add_free(&mut self, d: usize, r: impl Into<BigUint>) {
        let r = r.into();
        if let Some(g) = self.entry(d) {
            g.free += r;
        }
        self.tidy();
    }

    /// Adds `mult` copies of `Z/q` in degree `d`.
    pub fn add_torsion(&mut self, d: usize, q: PrimePower, mult: impl Into<BigUint>) {
        let mult = mult.into();
        if let Some(g) = self.entry(d) {
            g.add_torsion(q, mult);
        }
        self.tidy();
    }

    /// Adds `Z/order`, split into prime powers. Orders 0 and 1 are rejected.
    pub fn add_cyclic(&mut self, d: usize, order: u64) -> Result<()> {
        if order < 2 {
            return Err(Error::Validation(format!("Z/{order} is not a finite nontrivial cyclic group")));
        }
        for q in prime_power_factors(order) {
            self.add_torsion(d, q, 1u32);
        }
        Ok(())
    }

    pub fn truncate(&self, trunc: usize) -> Self {
        let trunc = trunc.min(self.trunc);
        GradedGroup {
            trunc,
            entries: self.entries.range(..=trunc).map(|(d, g)| (*d, g.clone())).collect(),
        }
    }

    /// Degreewise `⊕`; truncation is the minimum.
    pub fn direct_sum(&self, other: &GradedGroup) -> GradedGroup {
        let trunc = self.trunc.min(other.trunc);
        let mut out = self.truncate(trunc);
        for (d, g) in other.entries.range(..=trunc) {
            out.entries.entry(*d).or_default().absorb(g);
        }
        out.tidy();
        out
    }

    /// Künneth formula over `Z`:
    /// `(G ⊗ H)_n = ⊕_{i+j=n} G_i ⊗ H_j ⊕ ⊕_{i+j=n-1} Tor(G_i, H_j)`.
    pub fn kunneth_product(&self, other: &GradedGroup, n: usize) -> Result<GradedGroup> {
        for g in [self, other] {
            if g.trunc < n {
                return Err(Error::Truncation {
                    needed: n,
                    available: g.trunc,
                });
            }
        }
        let mut out = GradedGroup::zero(n);
        for (i, gi) in self.entries.range(..=n) {
            for (j, hj) in other.entries.range(..=n - i) {
                let d = i + j;
                out.entries.entry(d).or_default().absorb(&DegreeGroup::tensor(gi, hj));
                if d < n {
                    out.entries.entry(d + 1).or_default().absorb(&DegreeGroup::tor(gi, hj));
                }
            }
        }
        out.tidy();
        Ok(out)
    }

    /// Inverts the primes in `primes`: their torsion disappears.
    pub fn localize(&self, primes: &BTreeSet<u64>) -> GradedGroup {
        let mut out = self.clone();
        for g in out.entries.values_mut() {
            g.torsion.retain(|q, _| !primes.contains(&q.prime()));
        }
        out.tidy();
        out
    }

    /// Poincaré series of homology with field coefficients, by universal
    /// coefficients: over `F_p` every `p`-primary cyclic summand in degree
    /// `d` contributes to degrees `d` and `d + 1`.
    pub fn poincare_series(&self, ring: &CoefficientRing, n: usize) -> Result<PowerSeries> {
        let field = ring.as_field().ok_or_else(|| {
            Error::UnsupportedCoefficient(format!("Poincaré series needs a field, got {ring}"))
        })?;
        if self.trunc < n {
            return Err(Error::Truncation {
                needed: n,
                available: self.trunc,
            });
        }
        let mut s = PowerSeries::zero(n);
        for (d, g) in self.entries.range(..=n) {
            let mut c = BigInt::from(g.free.clone()) + s.coeff(*d);
            if let Field::Prime(p) = field {
                let tp = BigInt::from(g.p_torsion_count(p));
                c += &tp;
                if *d < n {
                    let next = s.coeff(d + 1) + &tp;
                    s.set_coeff(d + 1, next);
                }
            }
            s.set_coeff(*d, c);
        }
        Ok(s)
    }

    /// Free graded group with ranks given by a nonnegative series.
    pub fn from_ranks(series: &PowerSeries) -> Result<GradedGroup> {
        let mut g = GradedGroup::zero(series.trunc());
        for (d, c) in series.coeffs().iter().enumerate() {
            let r = c
                .to_biguint()
                .ok_or_else(|| Error::Validation(format!("negative rank {c} in degree {d}")))?;
            g.add_free(d, r);
        }
        Ok(g)
    }

    /// Shifts every degree up by `k` (suspension of reduced homology).
    pub fn shift(&self, k: usize) -> GradedGroup {
        GradedGroup {
            trunc: self.trunc,
            entries: self
                .entries
                .iter()
                .filter(|(d, _)| **d + k <= self.trunc)
                .map(|(d, g)| (d + k, g.clone()))
                .collect(),
        }
    }

    /// Reduced homology of a connected space: removes one `Z` from degree 0.
    pub fn reduced(&self) -> Result<GradedGroup> {
        let mut out = self.clone();
        match out.entries.get_mut(&0) {
            Some(g) if !g.free.is_zero() => g.free -= BigUint::one(),
            _ => return Err(Error::Validation("no unit class in degree 0".into())),
        }
        out.tidy();
        Ok(out)
    }

    /// Adds back the unit class in degree 0.
    pub fn unreduced(&self) -> GradedGroup {
        self.direct_sum(&GradedGroup::point(self.trunc))
    }
}

fn fmt_degree(g: &DegreeGroup) -> String {
    const REPEAT_LIMIT: u32 = 16;
    let mut parts = Vec::new();
    if !g.free.is_zero() {
        if g.free.is_one() {
            parts.push("Z".to_string());
        } else {
            parts.push(format!("Z^{}", g.free));
        }
    }
    for (q, m) in &g.torsion {
        match u32::try_from(m) {
            Ok(k) if k <= REPEAT_LIMIT => parts.extend((0..k).map(|_| format!("Z/{q}"))),
            _ => parts.push(format!("(Z/{q})^{m}")),
        }
    }
    parts.join(" + ")
}

/// Canonical text: one line per nonzero degree, `d: Z^r + Z/q1 + Z/q2 ...`.
impl fmt::Display for GradedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, g) in &self.entries {
            if !first {
                writeln!(f)?;
            }
            first = false;
            write!(f, "{d}: {}", fmt_degree(g))?;
        }
        Ok(())
    }
}

impl GradedGroup {
    /// Parses the canonical text form; `trunc` must be supplied separately.
    pub fn parse(text: &str, trunc: usize) -> Result<GradedGroup> {
        let mut g = GradedGroup::zero(trunc);
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (d, rest) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("missing `:` in `{line}`")))?;
            let d: usize = d
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad degree in `{line}`")))?;
            if d > trunc {
                return Err(Error::Validation(format!("degree {d} above truncation {trunc}")));
            }
            for term in rest.split('+').map(str::trim).filter(|t| !t.is_empty()) {
                parse_term(&mut g, d, term)?;
            }
        }
        Ok(g)
    }
}

fn parse_term(g: &mut GradedGroup, d: usize, term: &str) -> Result<()> {
    let bad = || Error::Parse(format!("bad group term `{term}`"));
    if term == "Z" {
        g.add_free(d, 1u32);
    } else if let Some(r) = term.strip_prefix("Z^") {
        g.add_free(d, BigUint::from_str(r).map_err(|_| bad())?);
    } else if let Some(q) = term.strip_prefix("Z/") {
        let q: u64 = q.parse().map_err(|_| bad())?;
        g.add_torsion(d, PrimePower::from_order(q)?, 1u32);
    } else if let Some(inner) = term.strip_prefix("(Z/") {
        let (q, m) = inner.split_once(")^").ok_or_else(bad)?;
        let q: u64 = q.parse().map_err(|_| bad())?;
        let m = BigUint::from_str(m).map_err(|_| bad())?;
        g.add_torsion(d, PrimePower::from_order(q)?, m);
    } else {
        return Err(bad());
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct TorsionJson {
    order: u64,
    count: serde_json::Number,
}

#[derive(Serialize, Deserialize)]
struct DegreeJson {
    degree: usize,
    free: serde_json::Number,
    torsion: Vec<TorsionJson>,
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    trunc: usize,
    degrees: Vec<DegreeJson>,
    text: String,
}

fn num(x: &BigUint) -> serde_json::Number {
    serde_json::Number::from_str(&x.to_string()).expect("integer literal")
}

impl Serialize for GradedGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GroupJson {
            trunc: self.trunc,
            degrees: self
                .entries
                .iter()
                .map(|(d, g)| DegreeJson {
                    degree: *d,
                    free: num(&g.free),
                    torsion: g
                        .torsion
                        .iter()
                        .map(|(q, m)| TorsionJson {
                            order: q.value(),
                            count: num(m),
                        })
                        .collect(),
                })
                .collect(),
            text: self.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = GroupJson::deserialize(d)?;
        let big = |n: &serde_json::Number| {
            BigUint::from_str(&n.to_string()).map_err(|_| D::Error::custom(format!("bad count {n}")))
        };
        let mut g = GradedGroup::zero(raw.trunc);
        for e in &raw.degrees {
            g.add_free(e.degree, big(&e.free)?);
            for t in &e.torsion {
                let q = PrimePower::from_order(t.order).map_err(D::Error::custom)?;
                g.add_torsion(e.degree, q, big(&t.count)?);
            }
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere(n: usize, trunc: usize) -> GradedGroup {
        let mut g = GradedGroup::point(trunc);
        g.add_free(n, 1u32);
        g
    }

    fn moore(n: usize, k: u64, trunc: usize) -> GradedGroup {
        let mut g = GradedGroup::point(trunc);
        g.add_cyclic(n - 1, k).unwrap();
        g
    }

    #[test]
    fn wedge_of_spheres_reduced_sum() {
        let a = sphere(2, 10).reduced().unwrap();
        let b = sphere(3, 10).reduced().unwrap();
        let w = a.direct_sum(&b);
        assert_eq!(w.to_string(), "2: Z\n3: Z");
        let unreduced = sphere(2, 10).direct_sum(&sphere(3, 10));
        assert_eq!(unreduced.free_rank(0), BigUint::from(2u32));
    }

    #[test]
    fn sum_with_zero_and_torsion_union() {
        let g = sphere(4, 8);
        assert_eq!(g.direct_sum(&GradedGroup::zero(8)), g);
        let mut a = GradedGroup::zero(5);
        a.add_cyclic(2, 2).unwrap();
        let mut b = GradedGroup::zero(5);
        b.add_cyclic(2, 4).unwrap();
        assert_eq!(a.direct_sum(&b).to_string(), "2: Z/2 + Z/4");
    }

    #[test]
    fn kunneth_spheres() {
        let p = sphere(3, 10).kunneth_product(&sphere(4, 10), 10).unwrap();
        assert_eq!(p.to_string(), "0: Z\n3: Z\n4: Z\n7: Z");
    }

    #[test]
    fn kunneth_moore_tor_class() {
        let p = moore(3, 2, 8).kunneth_product(&moore(3, 2, 8), 8).unwrap();
        assert_eq!(p.to_string(), "0: Z\n2: Z/2 + Z/2\n4: Z/2\n5: Z/2");
    }

    #[test]
    fn kunneth_unit_and_mixed_primes() {
        let g = moore(5, 12, 9);
        assert_eq!(g.kunneth_product(&GradedGroup::point(9), 9).unwrap(), g);
        // Z/4 ⊗ Z/6 = Z/2, Tor the same
        let mut a = GradedGroup::zero(6);
        a.add_cyclic(1, 4).unwrap();
        let mut b = GradedGroup::zero(6);
        b.add_cyclic(2, 6).unwrap();
        assert_eq!(a.kunneth_product(&b, 6).unwrap().to_string(), "3: Z/2\n4: Z/2");
    }

    #[test]
    fn kunneth_truncation_error() {
        let a = sphere(2, 4);
        assert!(matches!(
            a.kunneth_product(&sphere(2, 8), 6),
            Err(Error::Truncation { needed: 6, available: 4 })
        ));
    }

    #[test]
    fn localization() {
        let mut g = GradedGroup::zero(4);
        g.add_free(2, 1u32);
        g.add_cyclic(2, 2).unwrap();
        g.add_cyclic(2, 9).unwrap();
        assert_eq!(g.localize(&[2].into()).to_string(), "2: Z + Z/9");
        assert_eq!(g.localize(&BTreeSet::new()), g);
        let mut h = GradedGroup::zero(4);
        h.add_cyclic(4, 8).unwrap();
        h.add_cyclic(4, 3).unwrap();
        assert!(h.localize(&[2, 3].into()).is_zero());
    }

    #[test]
    fn universal_coefficients() {
        let q = CoefficientRing::Rationals;
        assert_eq!(
            sphere(3, 6).poincare_series(&q, 6).unwrap().to_i64_vec().unwrap(),
            vec![1, 0, 0, 1, 0, 0, 0]
        );
        let p4 = moore(4, 3, 6);
        assert_eq!(
            p4.poincare_series(&CoefficientRing::PrimeField(3), 6).unwrap().to_i64_vec().unwrap(),
            vec![1, 0, 0, 1, 1, 0, 0]
        );
        assert_eq!(
            p4.poincare_series(&CoefficientRing::PrimeField(2), 6).unwrap().to_i64_vec().unwrap(),
            vec![1, 0, 0, 0, 0, 0, 0]
        );
        assert!(matches!(
            p4.poincare_series(&CoefficientRing::Integers, 6),
            Err(Error::UnsupportedCoefficient(_))
        ));
    }

    #[test]
    fn text_round_trip() {
        let mut g = GradedGroup::point(30);
        g.add_free(3, 5u32);
        g.add_cyclic(3, 12).unwrap();
        g.add_torsion(7, PrimePower::new(5, 1).unwrap(), 40u32);
        let text = g.to_string();
        assert_eq!(text, "0: Z\n3: Z^5 + Z/4 + Z/3\n7: (Z/5)^40");
        assert_eq!(GradedGroup::parse(&text, 30).unwrap(), g);
        let back: GradedGroup = serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
        assert_eq!(back, g);
    }
}
