use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::report::{DecompositionReport, ExcludedSet, RULE_DIVIDES_QUOTIENT, RULE_SMALL_PRIME};
use crate::error::{Error, Result};
use crate::graded::primes::{prime_divisors, primes_with_double_below};
use crate::hypotheses as hyp;
use crate::space::SpaceExpr;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisClass {
    pub name: String,
    pub degree: u32,
}

/// `lhs · rhs = Σ result[name] · name`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductEntry {
    pub lhs: String,
    pub rhs: String,
    pub result: BTreeMap<String, i64>,
}

/// Integral cohomology ring data of a capped complex in positive degrees.
///
/// Products not listed are derived by graded commutativity from the
/// reversed product, or are zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyRingInput {
    pub n: u32,
    pub basis: Vec<BasisClass>,
    #[serde(default)]
    pub products: Vec<ProductEntry>,
    pub fundamental_class: String,
    pub a: String,
    pub b: String,
    #[serde(default)]
    pub spherical_witnesses_asserted: bool,
    #[serde(rename = "skeleton_coH_asserted", alias = "skeleton_co_h_asserted", default)]
    pub skeleton_co_h_asserted: bool,
    pub divisibility_k: i64,
    /// `C` in `S^m ∨ S^{n-m} ∨ C`, when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complement: Option<SpaceExpr>,
    /// `|λ|` is the intersection number of two transversally embedded spheres
    /// in a closed smooth manifold; only meaningful with `k = 1`.
    #[serde(default)]
    pub intersection_number_asserted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub m: u32,
    /// `λ = <a ∪ b, [X]>`, with sign.
    pub pairing: i64,
    /// `λ / k`.
    pub pairing_over_k: i64,
    pub decomposition: DecompositionReport,
}

type Vector = BTreeMap<usize, BigInt>;

struct Ring {
    degrees: Vec<u32>,
    table: HashMap<(usize, usize), Vector>,
}

impl Ring {
    fn build(input: &CohomologyRingInput) -> Result<(Ring, HashMap<String, usize>)> {
        let mut index = HashMap::new();
        for (i, c) in input.basis.iter().enumerate() {
            if c.degree == 0 || c.degree > input.n {
                return Err(Error::Validation(format!(
                    "class `{}` has degree {} outside 1..={}",
                    c.name, c.degree, input.n
                )));
            }
            if index.insert(c.name.clone(), i).is_some() {
                return Err(Error::Validation(format!("duplicate basis class `{}`", c.name)));
            }
        }
        let degrees: Vec<u32> = input.basis.iter().map(|c| c.degree).collect();
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::Validation(format!("unknown class `{name}`")))
        };
        let mut table: HashMap<(usize, usize), Vector> = HashMap::new();
        for p in &input.products {
            let (x, y) = (lookup(&p.lhs)?, lookup(&p.rhs)?);
            let mut v = Vector::new();
            for (name, c) in &p.result {
                let z = lookup(name)?;
                if *c == 0 {
                    continue;
                }
                if degrees[z] != degrees[x] + degrees[y] {
                    return Err(Error::Validation(format!(
                        "{}·{} has degree {} but `{name}` has degree {}",
                        p.lhs,
                        p.rhs,
                        degrees[x] + degrees[y],
                        degrees[z]
                    )));
                }
                *v.entry(z).or_insert_with(BigInt::zero) += BigInt::from(*c);
            }
            v.retain(|_, c| !c.is_zero());
            if table.insert((x, y), v).is_some() {
                return Err(Error::Validation(format!("product {}·{} listed twice", p.lhs, p.rhs)));
            }
        }
        let ring = Ring { degrees, table };
        ring.check_commutative(&input.basis)?;
        ring.check_associative(&input.basis)?;
        Ok((ring, index))
    }

    fn sign(&self, x: usize, y: usize) -> i32 {
        if (self.degrees[x] * self.degrees[y]) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    fn mul_basis(&self, x: usize, y: usize) -> Vector {
        if let Some(v) = self.table.get(&(x, y)) {
            return v.clone();
        }
        match self.table.get(&(y, x)) {
            Some(v) => v.iter().map(|(z, c)| (*z, c * self.sign(x, y))).collect(),
            None => Vector::new(),
        }
    }

    fn mul(&self, u: &Vector, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (x, a) in u {
            for (y, b) in v {
                for (z, c) in self.mul_basis(*x, *y) {
                    *out.entry(z).or_insert_with(BigInt::zero) += a * b * c;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    fn check_commutative(&self, basis: &[BasisClass]) -> Result<()> {
        for ((x, y), v) in &self.table {
            if let Some(w) = self.table.get(&(*y, *x)) {
                let expected: Vector = v.iter().map(|(z, c)| (*z, c * self.sign(*x, *y))).collect();
                if *w != expected {
                    return Err(Error::Validation(format!(
                        "products {}·{} and {}·{} violate graded commutativity",
                        basis[*x].name, basis[*y].name, basis[*y].name, basis[*x].name
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_associative(&self, basis: &[BasisClass]) -> Result<()> {
        let unit = |i: usize| Vector::from([(i, BigInt::from(1))]);
        let n = basis.len();
        for x in 0..n {
            for y in 0..n {
                let xy = self.mul(&unit(x), &unit(y));
                for z in 0..n {
                    let left = self.mul(&xy, &unit(z));
                    let right = self.mul(&unit(x), &self.mul(&unit(y), &unit(z)));
                    if left != right {
                        return Err(Error::Validation(format!(
                            "({}·{})·{} differs from {}·({}·{})",
                            basis[x].name, basis[y].name, basis[z].name, basis[x].name, basis[y].name, basis[z].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Checks the spherical-pair hypotheses on cohomology ring data and emits
/// the localized loop-space splitting with its excluded primes:
/// every `p` with `2p < max(m, n-m) + 4` and every `p` dividing `λ / k`.
pub fn check_spherical_pair(input: &CohomologyRingInput) -> Result<PairReport> {
    let (ring, index) = Ring::build(input)?;
    let class = |name: &str| -> Result<usize> {
        index
            .get(name)
            .copied()
            .ok_or_else(|| Error::Validation(format!("unknown class `{name}`")))
    };
    let (a, b, top) = (class(&input.a)?, class(&input.b)?, class(&input.fundamental_class)?);
    let n = input.n;
    if ring.degrees[top] != n {
        return Err(Error::Validation(format!(
            "fundamental class `{}` has degree {}, expected {n}",
            input.fundamental_class, ring.degrees[top]
        )));
    }
    let m = ring.degrees[a];
    if m < 2 || m + 2 > n {
        return Err(Error::hypothesis(
            hyp::DIMENSION_RANGE,
            format!("need 2 <= m <= n - 2, got m = {m}, n = {n}"),
        ));
    }
    if ring.degrees[b] != n - m {
        return Err(Error::Validation(format!(
            "`{}` has degree {}, expected n - m = {}",
            input.b,
            ring.degrees[b],
            n - m
        )));
    }
    if !input.spherical_witnesses_asserted {
        return Err(Error::hypothesis(
            hyp::SPHERICAL_WITNESSES,
            "maps from spheres detecting a and b must be asserted",
        ));
    }
    if !input.skeleton_co_h_asserted {
        return Err(Error::hypothesis(hyp::SKELETON_CO_H, "the (n-1)-skeleton must be asserted co-H"));
    }
    for (x, name) in [(a, &input.a), (b, &input.b)] {
        let sq = ring.mul_basis(x, x);
        if !sq.is_empty() {
            let terms: Vec<String> = sq.iter().map(|(z, c)| format!("{c}·{}", input.basis[*z].name)).collect();
            return Err(Error::hypothesis(
                hyp::SQUARES_VANISH,
                format!("{name}·{name} = {} is nonzero", terms.join(" + ")),
            ));
        }
    }
    let lambda = ring.mul_basis(a, b).get(&top).cloned().unwrap_or_default();
    if lambda.is_zero() {
        return Err(Error::hypothesis(hyp::PAIRING_NONZERO, "<a ∪ b, [X]> = 0"));
    }
    let k = BigInt::from(input.divisibility_k);
    if k.is_zero() || !lambda.is_multiple_of(&k) {
        return Err(Error::hypothesis(
            hyp::K_DIVIDES_PAIRING,
            format!(
                "k = {} does not divide <a ∪ b, [X]> = {lambda}; a top cell divisible by k forces k | <a ∪ b, [X]>, so the input is inconsistent",
                input.divisibility_k
            ),
        ));
    }
    let quotient = &lambda / &k;
    let too_large = || Error::Validation(format!("<a ∪ b, [X]> = {lambda} is too large"));
    let pairing = lambda.to_i64().ok_or_else(too_large)?;
    let q = quotient.abs().to_u64().ok_or_else(too_large)?;

    if input.intersection_number_asserted && input.divisibility_k != 1 {
        return Err(Error::Validation(
            "the embedded-spheres pathway takes k = 1".into(),
        ));
    }

    let mut excluded = ExcludedSet::default();
    for p in primes_with_double_below(i64::from(m.max(n - m)) + 4) {
        excluded.add(p, RULE_SMALL_PRIME);
    }
    for p in prime_divisors(q) {
        excluded.add(p, RULE_DIVIDES_QUOTIENT);
    }

    let mut report = DecompositionReport::build(n, m, input.divisibility_k, input.complement.clone());
    for h in [
        hyp::SKELETON_CO_H,
        hyp::SPHERICAL_WITNESSES,
        hyp::SQUARES_VANISH,
        hyp::PAIRING_NONZERO,
        hyp::K_DIVIDES_PAIRING,
        hyp::LOCALIZATION_AWAY,
    ] {
        report.uses(h);
    }
    if input.intersection_number_asserted {
        report.uses(hyp::INTERSECTION_NUMBER);
        report.notes.push(format!(
            "embedded spheres meeting with intersection number {}: C has dimension below n - 1 and the fiber is C ⋊ Ω{}",
            pairing.unsigned_abs(),
            report.base
        ));
    }
    report.excluded_primes = excluded.into_vec();
    Ok(PairReport {
        m,
        pairing,
        pairing_over_k: quotient.to_i64().ok_or_else(too_large)?,
        decomposition: report,
    })
}
