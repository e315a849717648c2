//! Explicit wedge decomposition of `A ⋊ Ω(S^m × S^{m'})` for a wedge `A` of
//! spheres and Moore spaces, truncated by degree.
//!
//! `Ω(S^m × S^{m'}) ≃ ΩS^m × ΩS^{m'}`, and the James splitting of
//! `ΣΩS^q` turns the half-smash into
//! `A ∨ (A ∧ ⋁_{j≥1} (S^{j(m-1)} ∨ S^{j(m'-1)})) ∨ (A ∧ ⋁_{i,j≥1} S^{i(m-1)+j(m'-1)})`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::primes::prime_power_factors;
use crate::graded::{PowerSeries, PrimePower};
use crate::space::{normalize, SpaceExpr};

/// A wedge summand in the split table; Moore summands always have
/// prime-power order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Summand {
    Sphere(u32),
    Moore(u32, PrimePower),
}

impl Summand {
    /// Top cell dimension; the table is keyed by it.
    pub fn top(&self) -> u32 {
        match *self {
            Summand::Sphere(d) | Summand::Moore(d, _) => d,
        }
    }

    /// Lowest degree carrying reduced homology.
    pub fn bottom(&self) -> u32 {
        match *self {
            Summand::Sphere(d) => d,
            Summand::Moore(d, _) => d - 1,
        }
    }

    fn shift(&self, s: u32) -> Summand {
        match *self {
            Summand::Sphere(d) => Summand::Sphere(d + s),
            Summand::Moore(d, q) => Summand::Moore(d + s, q),
        }
    }

    pub fn to_expr(&self) -> SpaceExpr {
        match *self {
            Summand::Sphere(d) => SpaceExpr::Sphere(d),
            Summand::Moore(d, q) => SpaceExpr::MooreGroup(d, vec![q]),
        }
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Summand::Sphere(d) => write!(f, "S^{d}"),
            Summand::Moore(d, q) => write!(f, "P^{d}({q})"),
        }
    }
}

/// One `(degree, summand, multiplicity)` row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandRow {
    pub degree: u32,
    pub summand: String,
    pub multiplicity: u64,
}

/// Summands of the split half-smash with bottom cell `<= trunc`, keyed by
/// top dimension. A Moore summand `P^{trunc+1}(q)` is kept since its bottom
/// class lies in degree `trunc`; every omitted summand is `trunc`-connected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummandTable {
    trunc: usize,
    rows: BTreeMap<u32, BTreeMap<Summand, u64>>,
}

impl SummandTable {
    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> impl Iterator<Item = (u32, Summand, u64)> + '_ {
        self.rows
            .iter()
            .flat_map(|(d, row)| row.iter().map(move |(s, m)| (*d, *s, *m)))
    }

    /// Multiplicity of `s` in the table.
    pub fn multiplicity(&self, s: Summand) -> u64 {
        self.rows.get(&s.top()).and_then(|r| r.get(&s)).copied().unwrap_or(0)
    }

    fn insert(&mut self, s: Summand, mult: u64) {
        *self.rows.entry(s.top()).or_default().entry(s).or_default() += mult;
    }

    pub fn to_rows(&self) -> Vec<SummandRow> {
        self.rows()
            .map(|(degree, s, multiplicity)| SummandRow {
                degree,
                summand: s.to_string(),
                multiplicity,
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("degree,summand,multiplicity\n");
        for r in self.to_rows() {
            out.push_str(&format!("{},{},{}\n", r.degree, r.summand, r.multiplicity));
        }
        out
    }

    /// The table as an explicit wedge, each summand repeated by multiplicity.
    pub fn to_expr(&self) -> SpaceExpr {
        let parts: Vec<SpaceExpr> = self
            .rows()
            .flat_map(|(_, s, m)| std::iter::repeat(s.to_expr()).take(m as usize))
            .collect();
        match parts.len() {
            0 => SpaceExpr::Point,
            1 => parts.into_iter().next().expect("one part"),
            _ => SpaceExpr::Wedge(parts),
        }
    }
}

impl Serialize for SummandTable {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Doc {
            trunc: usize,
            rows: Vec<SummandRow>,
        }
        Doc {
            trunc: self.trunc,
            rows: self.to_rows(),
        }
        .serialize(serializer)
    }
}

/// Decomposes `A` into sphere and prime-power Moore summands.
fn base_summands(a: &SpaceExpr) -> Result<Vec<Summand>> {
    a.validate()?;
    let normal = normalize(a);
    let mut out = Vec::new();
    for part in normal.wedge_summands() {
        match part {
            SpaceExpr::Sphere(d) => out.push(Summand::Sphere(*d)),
            SpaceExpr::Moore(d, k) => match k.unsigned_abs() {
                0 => out.extend([Summand::Sphere(d - 1), Summand::Sphere(*d)]),
                1 => {}
                k => out.extend(prime_power_factors(k).into_iter().map(|q| Summand::Moore(*d, q))),
            },
            SpaceExpr::MooreGroup(d, qs) => out.extend(qs.iter().map(|q| Summand::Moore(*d, *q))),
            other => {
                return Err(Error::Unsupported(format!(
                    "James splitting needs a wedge of spheres and Moore spaces, found {other} in {a}"
                )))
            }
        }
    }
    Ok(out)
}

/// Splits `A ⋊ Ω(S^m × S^{nm})` into spheres and prime-power Moore spaces.
pub fn james_split_half_smash(a: &SpaceExpr, m: u32, nm: u32, trunc: usize) -> Result<SummandTable> {
    if m < 2 || nm < 2 {
        return Err(Error::Validation(format!("need m, nm >= 2, got m = {m}, nm = {nm}")));
    }
    let summands = base_summands(a)?;
    let (x, y) = (m - 1, nm - 1);
    let n = u32::try_from(trunc).map_err(|_| Error::Resource(format!("truncation {trunc} too large")))?;

    // Shift multiplicities: 1 at 0, one per j >= 1 in each single family,
    // one per (i, j) >= (1, 1) in the mixed family.
    let mut shifts: BTreeMap<u32, u64> = BTreeMap::new();
    shifts.insert(0, 1);
    for step in [x, y] {
        for s in (1..).map(|j| j * step).take_while(|&s| s <= n) {
            *shifts.entry(s).or_default() += 1;
        }
    }
    for i in (1..).take_while(|i| i * x + y <= n) {
        for j in (1..).take_while(|j| i * x + j * y <= n) {
            *shifts.entry(i * x + j * y).or_default() += 1;
        }
    }

    let mut table = SummandTable {
        trunc,
        rows: BTreeMap::new(),
    };
    for s in summands {
        for (&shift, &mult) in &shifts {
            let t = s.shift(shift);
            if t.bottom() <= n {
                table.insert(t, mult);
            }
        }
    }
    Ok(table)
}

/// `c_d` = total multiplicity of summands with top dimension `d <= trunc`.
pub fn summand_counts(t: &SummandTable) -> PowerSeries {
    let mut c = vec![0u64; t.trunc + 1];
    for (d, _, m) in t.rows() {
        if let Some(slot) = c.get_mut(d as usize) {
            *slot += m;
        }
    }
    PowerSeries::from_coeffs(c, t.trunc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::Field;
    use crate::space::{reduced_poincare_series, SpaceExpr::*};

    fn half_smash(a: &SpaceExpr, m: u32, nm: u32) -> SpaceExpr {
        SpaceExpr::half_smash(a.clone(), SpaceExpr::loop_of(SpaceExpr::product(Sphere(m), Sphere(nm))))
    }

    #[test]
    fn moore_counts() {
        let t = james_split_half_smash(&Moore(7, 4), 3, 4, 13).unwrap();
        let q = PrimePower::new(2, 2).unwrap();
        assert_eq!(t.multiplicity(Summand::Moore(12, q)), 1);
        assert_eq!(t.multiplicity(Summand::Moore(13, q)), 2);
        let c = summand_counts(&t);
        assert_eq!(c.coeff(12), &1.into());
        assert_eq!(c.coeff(13), &2.into());
        assert!(t.to_csv().contains("12,P^12(4),1\n"));
    }

    #[test]
    fn sphere_rows() {
        let t = james_split_half_smash(&Sphere(5), 3, 4, 10).unwrap();
        let degrees: Vec<u32> = t.rows().map(|(d, _, _)| d).collect();
        assert_eq!(degrees, vec![5, 7, 8, 9, 10]);
        assert_eq!(t.multiplicity(Summand::Sphere(10)), 1);
    }

    #[test]
    fn point_is_empty() {
        let t = james_split_half_smash(&Point, 3, 4, 10).unwrap();
        assert!(t.is_empty());
        assert!(summand_counts(&t).is_zero());
        assert!(james_split_half_smash(&SpaceExpr::product(Sphere(2), Sphere(2)), 3, 4, 10).is_err());
    }

    #[test]
    fn agrees_with_homology() {
        let a = SpaceExpr::wedge([Moore(5, 6), Sphere(3)]);
        for p in [2, 3, 5] {
            let t = james_split_half_smash(&a, 3, 4, 16).unwrap();
            let split = reduced_poincare_series(&t.to_expr(), Field::Prime(p), 16).unwrap();
            let whole = reduced_poincare_series(&half_smash(&a, 3, 4), Field::Prime(p), 16).unwrap();
            assert_eq!(split, whole, "p = {p}");
        }
    }
}
