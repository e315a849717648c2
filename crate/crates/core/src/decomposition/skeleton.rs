use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::report::{DecompositionReport, ExcludedPrime, ExcludedSet, RULE_SMALL_PRIME, RULE_TORSION_PRIME};
use crate::error::{Error, Result};
use crate::graded::primes::primes_with_double_below;
use crate::graded::{CoefficientRing, GradedGroup, PrimePower};
use crate::hypotheses as hyp;
use crate::space::{homology, SpaceExpr};

/// Which skeleton formula applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SkeletonVariant {
    /// Highly connected Poincaré duality complex, torsion kept as Moore spaces.
    Mp,
    /// Highly connected Poincaré duality complex, torsion primes inverted.
    Wp,
    /// Skeleton asserted to be a wedge of spheres and Moore spaces.
    Generic,
}

/// `H_i ≅ Z^{d_i} ⊕ T_i`, with `T_i` given by cyclic orders.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyEntry {
    pub degree: u32,
    pub free: u32,
    #[serde(default)]
    pub torsion: Vec<u64>,
}

/// Homology data of an `(l-1)`-connected `n`-dimensional complex with a
/// spherical pair in degrees `m` and `n - m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyDataInput {
    pub l: u32,
    pub n: u32,
    pub m: u32,
    pub k: i64,
    pub entries: Vec<HomologyEntry>,
    pub variant: SkeletonVariant,
    /// Classes `a, b` with `a² = b² = 0` and `<a ∪ b, [M]> = ±1` exist.
    #[serde(default)]
    pub spherical_pair_asserted: bool,
    /// The skeleton is a wedge of spheres and Moore spaces (generic variant).
    #[serde(default)]
    pub class_m_asserted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonReport {
    pub variant: SkeletonVariant,
    #[serde(rename = "C")]
    pub c: SpaceExpr,
    pub excluded_primes: Vec<ExcludedPrime>,
    pub hypotheses_used: Vec<String>,
    pub decomposition: DecompositionReport,
}

impl SkeletonReport {
    pub fn excluded_prime_set(&self) -> BTreeSet<u64> {
        self.excluded_primes.iter().map(|e| e.prime).collect()
    }
}

fn range_error(detail: String) -> Error {
    Error::hypothesis(hyp::CONNECTIVITY_RANGE, detail)
}

/// Range of sphere degrees and Moore-space dimensions in `C`.
fn ranges(hd: &HomologyDataInput) -> ((u32, u32), (u32, u32)) {
    match hd.variant {
        SkeletonVariant::Generic => ((2, hd.n - 1), (3, hd.n - 1)),
        _ => ((hd.l, hd.n - hd.l), (hd.l + 1, hd.n - hd.l)),
    }
}

fn check_constraints(hd: &HomologyDataInput) -> Result<()> {
    let (l, n, m) = (hd.l, hd.n, hd.m);
    if !hd.spherical_pair_asserted {
        return Err(Error::hypothesis(
            hyp::SPHERICAL_PAIR,
            "a pair (a, b) with a² = b² = 0 and <a ∪ b, [M]> = ±1 must be asserted",
        ));
    }
    match hd.variant {
        SkeletonVariant::Mp => {
            if l < 3 {
                return Err(range_error(format!("l >= 3 fails: l = {l}")));
            }
            if n + 2 > 3 * l {
                return Err(range_error(format!("n <= 3l - 2 fails: n = {n}, l = {l}")));
            }
        }
        SkeletonVariant::Wp => {
            if l < 2 {
                return Err(range_error(format!("l >= 2 fails: l = {l}")));
            }
            if n + 1 > 3 * l {
                return Err(range_error(format!("n <= 3l - 1 fails: n = {n}, l = {l}")));
            }
        }
        SkeletonVariant::Generic => {
            if !hd.class_m_asserted {
                return Err(Error::hypothesis(
                    hyp::CLASS_M,
                    "the skeleton must be asserted to be a wedge of spheres and Moore spaces",
                ));
            }
            if n < 4 || m < 2 || m + 2 > n {
                return Err(Error::hypothesis(
                    hyp::DIMENSION_RANGE,
                    format!("2 <= m <= n - 2 fails: m = {m}, n = {n}"),
                ));
            }
        }
    }
    if hd.variant != SkeletonVariant::Generic {
        if l > m || m + l > n {
            return Err(range_error(format!("l <= m <= n - l fails: l = {l}, m = {m}, n = {n}")));
        }
        if hd.k == 0 {
            return Err(Error::Validation("the skeleton formula is stated for k ≠ 0".into()));
        }
    }
    Ok(())
}

/// Reads off `C` in `S^m ∨ S^{n-m} ∨ C ≃ X^{(n-1)}` from homology data.
///
/// `C` has `d_m - 1` copies of `S^m`, `d_{n-m} - 1` copies of `S^{n-m}`
/// (together `d_m - 2` when `m = n - m`), `d_i` copies of `S^i` for the other
/// degrees, and `P^i(T_i)` for each torsion group in the Moore range.
/// Localized variants also return the primes that must be inverted.
pub fn skeleton_from_homology(hd: &HomologyDataInput) -> Result<SkeletonReport> {
    check_constraints(hd)?;
    let (n, m) = (hd.n, hd.m);
    let ((s_lo, s_hi), (t_lo, t_hi)) = ranges(hd);

    let mut free: BTreeMap<u32, u32> = BTreeMap::new();
    let mut torsion: BTreeMap<u32, Vec<PrimePower>> = BTreeMap::new();
    for e in &hd.entries {
        if e.degree < s_lo || e.degree > s_hi {
            if e.free > 0 || !e.torsion.is_empty() {
                return Err(range_error(format!(
                    "homology in degree {} lies outside [{s_lo}, {s_hi}]",
                    e.degree
                )));
            }
            continue;
        }
        *free.entry(e.degree).or_default() += e.free;
        for q in &e.torsion {
            let factors = match *q {
                0 | 1 => return Err(Error::Validation(format!("Z/{q} is not a finite nontrivial cyclic group"))),
                q => crate::graded::primes::prime_power_factors(q),
            };
            torsion.entry(e.degree).or_default().extend(factors);
        }
    }

    let d = |i: u32| free.get(&i).copied().unwrap_or(0);
    let (dm, dnm) = (d(m), d(n - m));
    let (sphere_m, sphere_nm) = if m == n - m {
        if dm < 2 {
            return Err(Error::hypothesis(
                hyp::BETTI_PAIR,
                format!("m = n - m = {m} needs d_m >= 2, got {dm}"),
            ));
        }
        (dm - 2, 0)
    } else {
        if dm < 1 || dnm < 1 {
            return Err(Error::hypothesis(
                hyp::BETTI_PAIR,
                format!("need d_m >= 1 and d_(n-m) >= 1, got d_{m} = {dm}, d_{} = {dnm}", n - m),
            ));
        }
        (dm - 1, dnm - 1)
    };

    let mut excluded = ExcludedSet::default();
    if hd.variant != SkeletonVariant::Generic {
        for p in primes_with_double_below(i64::from(m.max(n - m)) + 4) {
            excluded.add(p, RULE_SMALL_PRIME);
        }
    }

    let mut parts = Vec::new();
    parts.extend(std::iter::repeat(SpaceExpr::Sphere(m)).take(sphere_m as usize));
    parts.extend(std::iter::repeat(SpaceExpr::Sphere(n - m)).take(sphere_nm as usize));
    for (&i, &di) in &free {
        if i != m && i != n - m {
            parts.extend(std::iter::repeat(SpaceExpr::Sphere(i)).take(di as usize));
        }
    }
    for (&i, t) in &torsion {
        if hd.variant == SkeletonVariant::Wp {
            for q in t {
                excluded.add(q.prime(), RULE_TORSION_PRIME);
            }
            continue;
        }
        if i < t_lo || i > t_hi {
            return Err(range_error(format!(
                "torsion in degree {i} lies outside the Moore range [{t_lo}, {t_hi}]"
            )));
        }
        let mut t = t.clone();
        t.sort();
        parts.push(SpaceExpr::MooreGroup(i, t));
    }
    let c = match parts.len() {
        0 => SpaceExpr::Point,
        1 => parts.pop().expect("one part"),
        _ => SpaceExpr::Wedge(parts),
    };

    let mut hypotheses = vec![hyp::SPHERICAL_PAIR.to_string()];
    match hd.variant {
        SkeletonVariant::Mp => hypotheses.extend([hyp::CONNECTIVITY_RANGE, hyp::BETTI_PAIR, hyp::LOCALIZATION_AWAY].map(String::from)),
        SkeletonVariant::Wp => hypotheses.extend(
            [hyp::CONNECTIVITY_RANGE, hyp::BETTI_PAIR, hyp::TORSION_DISCARDED, hyp::LOCALIZATION_AWAY].map(String::from),
        ),
        SkeletonVariant::Generic => hypotheses.extend([hyp::CLASS_M, hyp::BETTI_PAIR].map(String::from)),
    }
    let excluded = excluded.into_vec();
    let mut decomposition = DecompositionReport::build(n, m, hd.k, Some(c.clone()));
    for h in &hypotheses {
        decomposition.uses(h);
    }
    decomposition.excluded_primes = excluded.clone();
    Ok(SkeletonReport {
        variant: hd.variant,
        c,
        excluded_primes: excluded,
        hypotheses_used: hypotheses,
        decomposition,
    })
}

/// Input homology against the homology of `S^m ∨ S^{n-m} ∨ C`, both
/// localized away from the excluded primes, in the degrees the formula
/// covers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonHomologyCheck {
    pub expected: GradedGroup,
    pub actual: GradedGroup,
    pub matches: bool,
}

pub fn check_skeleton_homology(hd: &HomologyDataInput, report: &SkeletonReport) -> Result<SkeletonHomologyCheck> {
    let ((lo, hi), _) = ranges(hd);
    let trunc = hd.n as usize;
    let inverted = report.excluded_prime_set();
    let mut expected = GradedGroup::zero(trunc);
    for e in &hd.entries {
        if (lo..=hi).contains(&e.degree) {
            expected.add_free(e.degree as usize, e.free);
            for q in &e.torsion {
                expected.add_cyclic(e.degree as usize, *q)?;
            }
        }
    }
    let expected = expected.localize(&inverted);
    let skeleton = SpaceExpr::wedge([SpaceExpr::Sphere(hd.m), SpaceExpr::Sphere(hd.n - hd.m), report.c.clone()]);
    let full = homology(&skeleton, &CoefficientRing::Integers, trunc)?.localize(&inverted);
    let mut actual = GradedGroup::zero(trunc);
    for (d, g) in full.degrees() {
        if (lo as usize..=hi as usize).contains(&d) {
            actual.add_free(d, g.free.clone());
            for (q, c) in &g.torsion {
                actual.add_torsion(d, *q, c.clone());
            }
        }
    }
    let matches = expected == actual;
    Ok(SkeletonHomologyCheck {
        expected,
        actual,
        matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::SpaceExpr::*;

    fn pp(q: u64) -> PrimePower {
        PrimePower::from_order(q).unwrap()
    }

    pub(crate) fn example(variant: SkeletonVariant) -> HomologyDataInput {
        HomologyDataInput {
            l: 3,
            n: 7,
            m: 3,
            k: 1,
            entries: vec![
                HomologyEntry { degree: 3, free: 2, torsion: vec![] },
                HomologyEntry { degree: 4, free: 2, torsion: vec![5] },
            ],
            variant,
            spherical_pair_asserted: true,
            class_m_asserted: false,
        }
    }

    #[test]
    fn moore_variant() {
        let r = skeleton_from_homology(&example(SkeletonVariant::Mp)).unwrap();
        assert_eq!(r.c, SpaceExpr::wedge([Sphere(3), Sphere(4), MooreGroup(4, vec![pp(5)])]));
        assert_eq!(r.c.to_string(), "(S^3 ∨ S^4 ∨ P^4(5))");
        assert_eq!(r.excluded_prime_set(), BTreeSet::from([2, 3]));
    }

    #[test]
    fn wedge_variant() {
        let r = skeleton_from_homology(&example(SkeletonVariant::Wp)).unwrap();
        assert_eq!(r.c, SpaceExpr::wedge([Sphere(3), Sphere(4)]));
        assert_eq!(r.excluded_prime_set(), BTreeSet::from([2, 3, 5]));
        let check = check_skeleton_homology(&example(SkeletonVariant::Wp), &r).unwrap();
        assert!(check.matches);
    }

    #[test]
    fn moore_variant_places_torsion_one_degree_low() {
        // P^i(T_i) carries T_i in degree i - 1, so the literal formula moves
        // the input torsion down one degree.
        let hd = example(SkeletonVariant::Mp);
        let r = skeleton_from_homology(&hd).unwrap();
        let check = check_skeleton_homology(&hd, &r).unwrap();
        assert!(!check.matches);
        assert_eq!(check.actual.to_string(), "3: Z^2 + Z/5\n4: Z^2");
        assert_eq!(check.expected.to_string(), "3: Z^2\n4: Z^2 + Z/5");
    }

    #[test]
    fn degenerate_inputs() {
        let mut hd = example(SkeletonVariant::Mp);
        hd.entries[0].free = 0;
        match skeleton_from_homology(&hd) {
            Err(Error::Hypothesis { hypothesis, .. }) => assert_eq!(hypothesis, hyp::BETTI_PAIR),
            other => panic!("{other:?}"),
        }
        let mut hd = example(SkeletonVariant::Mp);
        hd.l = 2;
        assert!(matches!(skeleton_from_homology(&hd), Err(Error::Hypothesis { .. })));
        let mut hd = example(SkeletonVariant::Mp);
        hd.n = 8;
        assert!(skeleton_from_homology(&hd).is_err());
        let mut hd = example(SkeletonVariant::Mp);
        hd.entries[0].torsion = vec![2];
        assert!(skeleton_from_homology(&hd).is_err());
        let mut hd = example(SkeletonVariant::Mp);
        hd.k = 0;
        assert!(skeleton_from_homology(&hd).is_err());
        let mut hd = example(SkeletonVariant::Generic);
        assert!(skeleton_from_homology(&hd).is_err());
        hd.class_m_asserted = true;
        assert!(skeleton_from_homology(&hd).is_ok());
    }

    #[test]
    fn middle_dimension_pair() {
        let hd = HomologyDataInput {
            l: 4,
            n: 8,
            m: 4,
            k: 2,
            entries: vec![HomologyEntry { degree: 4, free: 3, torsion: vec![] }],
            variant: SkeletonVariant::Mp,
            spherical_pair_asserted: true,
            class_m_asserted: false,
        };
        let r = skeleton_from_homology(&hd).unwrap();
        assert_eq!(r.c, Sphere(4));
        assert!(check_skeleton_homology(&hd, &r).unwrap().matches);
    }

    #[test]
    fn generic_variant_keeps_all_primes() {
        let hd = HomologyDataInput {
            l: 2,
            n: 6,
            m: 2,
            k: 3,
            entries: vec![
                HomologyEntry { degree: 2, free: 1, torsion: vec![] },
                HomologyEntry { degree: 3, free: 1, torsion: vec![6] },
                HomologyEntry { degree: 4, free: 1, torsion: vec![] },
            ],
            variant: SkeletonVariant::Generic,
            spherical_pair_asserted: true,
            class_m_asserted: true,
        };
        let r = skeleton_from_homology(&hd).unwrap();
        assert!(r.excluded_primes.is_empty());
        assert_eq!(r.c, SpaceExpr::wedge([Sphere(3), MooreGroup(3, vec![pp(2), pp(3)])]));
    }
}
