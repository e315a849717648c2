use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::hypotheses as hyp;
use crate::space::{normalize, CappedComplexSpec, SpaceExpr};

/// A prime inverted by a localized statement, with the rules that force it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExcludedPrime {
    pub prime: u64,
    pub rules: Vec<String>,
}

pub const RULE_SMALL_PRIME: &str = "2p < max(m, n-m) + 4";
pub const RULE_DIVIDES_QUOTIENT: &str = "p divides <a ∪ b, [X]> / k";
pub const RULE_TORSION_PRIME: &str = "p appears as torsion in the input homology";

/// Accumulates excluded primes, merging rules for a prime hit twice.
#[derive(Debug, Default)]
pub(crate) struct ExcludedSet(BTreeMap<u64, Vec<String>>);

impl ExcludedSet {
    pub fn add(&mut self, p: u64, rule: &str) {
        let rules = self.0.entry(p).or_default();
        if !rules.iter().any(|r| r == rule) {
            rules.push(rule.to_string());
        }
    }

    pub fn into_vec(self) -> Vec<ExcludedPrime> {
        self.0
            .into_iter()
            .map(|(prime, rules)| ExcludedPrime { prime, rules })
            .collect()
    }
}

/// The loop-space splitting `ΩX ≃ Ω(S^m × S^{n-m}) × Ω(fiber)` for a capped
/// complex, with the hypotheses it rests on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub n: u32,
    pub m: u32,
    pub k: i64,
    pub base: SpaceExpr,
    /// `None` when the complement is only known to exist.
    pub complement: Option<SpaceExpr>,
    /// `(P^n(k) ∨ C) ⋊ Ω(S^m × S^{n-m})`.
    pub fiber: Option<SpaceExpr>,
    pub fiber_normalized: Option<SpaceExpr>,
    pub statement: String,
    pub hypotheses_used: Vec<String>,
    /// Empty for the integral statement.
    pub excluded_primes: Vec<ExcludedPrime>,
    pub notes: Vec<String>,
}

impl DecompositionReport {
    pub(crate) fn build(n: u32, m: u32, k: i64, complement: Option<SpaceExpr>) -> Self {
        let base = SpaceExpr::product(SpaceExpr::Sphere(m), SpaceExpr::Sphere(n - m));
        let (fiber, fiber_normalized) = match &complement {
            Some(c) => {
                let f = CappedComplexSpec::new(n, m, k, c.clone()).fiber();
                let nf = normalize(&f);
                (Some(f), Some(nf))
            }
            None => (None, None),
        };
        let fiber_text = match &fiber {
            Some(f) => f.to_string(),
            None => format!("((P^{n}({k}) ∨ C) ⋊ Ω{base})"),
        };
        let statement = format!("ΩX ≃ Ω{base} × Ω{fiber_text}");
        let mut notes = Vec::new();
        if k == 0 {
            let c_text = complement.as_ref().map_or("C".to_string(), ToString::to_string);
            notes.push(format!(
                "degenerate case k = 0: the top cell attaches trivially, so X ≃ S^{m} ∨ S^{} ∨ S^{n} ∨ {c_text}",
                n - m
            ));
        }
        if k.unsigned_abs() == 1 {
            notes.push(format!("P^{n}({k}) is contractible, so the fiber is C ⋊ Ω{base}"));
        }
        DecompositionReport {
            n,
            m,
            k,
            base,
            complement,
            fiber,
            fiber_normalized,
            statement,
            hypotheses_used: vec![hyp::DIMENSION_RANGE.to_string()],
            excluded_primes: Vec::new(),
            notes,
        }
    }

    pub(crate) fn uses(&mut self, id: &str) {
        if !self.hypotheses_used.iter().any(|h| h == id) {
            self.hypotheses_used.push(id.to_string());
        }
    }
}
