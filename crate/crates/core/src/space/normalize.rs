use std::fmt;

use serde::Serialize;

use super::SpaceExpr::{self, *};
use crate::graded::primes::prime_power_factors;

/// Rewrite rules, listed in priority order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// `P^n(±1) ≃ *`.
    MooreUnit,
    /// `P^n(0) ≃ S^{n-1} ∨ S^n`.
    MooreZero,
    /// `P^n(k) ≃ ⋁ P^n(p^r)` over the prime-power factors of `k`.
    MoorePrimeSplit,
    /// `P^n(T)` for several cyclic summands is their wedge; `P^n(0) = *`.
    MooreGroupSplit,
    /// `(A ∨ B) ⋊ Y ≅ (A ⋊ Y) ∨ (B ⋊ Y)`.
    HalfSmashWedge,
    /// `* ⋊ Y = *` and `A ⋊ * = A`.
    HalfSmashTrivial,
    /// `A ⋊ Y ≃ A ∨ (A ∧ Y)` for co-H `A`.
    HalfSmashCoH,
    /// `A ∧ S^n ≃ Σ^n A`.
    SmashSphere,
    /// `A ∧ * = *`.
    SmashPoint,
    /// Suspension of a point, sphere, Moore space or wedge.
    SuspensionSimplify,
    /// Nested wedges flatten and basepoints drop out.
    WedgeFlatten,
    /// `A × * = A`.
    ProductPoint,
    /// `Ω(A × B) ≃ ΩA × ΩB` and `Ω* = *`.
    LoopProduct,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = serde_json::to_value(self).expect("rule serializes");
        f.write_str(v.as_str().expect("unit variant"))
    }
}

/// Applies one rule to the leftmost innermost redex.
pub fn rewrite_step(e: &SpaceExpr) -> Option<(Rule, SpaceExpr)> {
    if let Some(r) = rewrite_children(e) {
        return Some(r);
    }
    rewrite_root(e)
}

/// Rewrites until no rule applies. Each rule either removes a constructor,
/// moves a half-smash or suspension towards the leaves, or lowers a Moore
/// coefficient to prime powers, so the process terminates.
pub fn normalize(e: &SpaceExpr) -> SpaceExpr {
    normalize_traced(e).0
}

/// [`normalize`] together with the rules applied, in order.
pub fn normalize_traced(e: &SpaceExpr) -> (SpaceExpr, Vec<Rule>) {
    let mut cur = e.clone();
    let mut trace = Vec::new();
    while let Some((rule, next)) = rewrite_step(&cur) {
        trace.push(rule);
        cur = next;
    }
    (cur, trace)
}

fn rewrite_children(e: &SpaceExpr) -> Option<(Rule, SpaceExpr)> {
    match e {
        Point | Sphere(_) | Moore(_, _) | MooreGroup(_, _) => None,
        Wedge(parts) => parts.iter().enumerate().find_map(|(i, p)| {
            rewrite_step(p).map(|(r, q)| {
                let mut parts = parts.clone();
                parts[i] = q;
                (r, Wedge(parts))
            })
        }),
        Product(a, b) | Smash(a, b) | HalfSmash(a, b) => {
            let rebuild = |a: SpaceExpr, b: SpaceExpr| match e {
                Product(_, _) => SpaceExpr::product(a, b),
                Smash(_, _) => SpaceExpr::smash(a, b),
                _ => SpaceExpr::half_smash(a, b),
            };
            if let Some((r, a2)) = rewrite_step(a) {
                return Some((r, rebuild(a2, (**b).clone())));
            }
            rewrite_step(b).map(|(r, b2)| (r, rebuild((**a).clone(), b2)))
        }
        Suspension(a) => rewrite_step(a).map(|(r, a2)| (r, SpaceExpr::susp(a2))),
        Loop(a) => rewrite_step(a).map(|(r, a2)| (r, SpaceExpr::loop_of(a2))),
    }
}

fn iterated_suspension(e: SpaceExpr, n: u32) -> SpaceExpr {
    (0..n).fold(e, |acc, _| SpaceExpr::susp(acc))
}

fn rewrite_root(e: &SpaceExpr) -> Option<(Rule, SpaceExpr)> {
    let rules: [fn(&SpaceExpr) -> Option<(Rule, SpaceExpr)>; 6] = [
        moore_rules,
        half_smash_rules,
        smash_rules,
        suspension_rules,
        wedge_rules,
        product_and_loop_rules,
    ];
    rules.iter().find_map(|rule| rule(e))
}

fn moore_rules(e: &SpaceExpr) -> Option<(Rule, SpaceExpr)> {
    match e {
        Moore(_, k) if k.unsigned_abs() == 1 => Some((Rule::MooreUnit, Point)),
        Moore(n, 0) => Some((Rule::MooreZero, SpaceExpr::wedge([Sphere(n - 1), Sphere(*n)]))),
        Moore(n, k) => {
            let mut factors = prime_power_factors(k.unsigned_abs());
            factors.sort();
            let out = match factors.as_slice() {
                [q] => MooreGroup(*n, vec![*q]),
                qs => Wedge(qs.iter().map(|q| MooreGroup(*n, vec![*q])).collect()),
            };
            Some((Rule::MoorePrimeSplit, out))
        }
        MooreGroup(_, t) if t.is_empty() => Some((Rule::MooreGroupSplit, Point)),
        MooreGroup(n, t) if t.len() > 1 => {
            let mut t = t.clone();
            t.sort();
            Some((
                Rule::MooreGroupSplit,
                Wedge(t.into_iter().map(|q| MooreGroup(*n, vec![q])).collect()),
            ))
        }
        _ => None,
    }
}

fn half_smash_rules(e: &SpaceExpr) -> Option<(Rule, SpaceExpr)> {
    let HalfSmash(a, y) = e else { return None };
    match (&**a, &**y) {
        (Wedge(parts), _) => Some((
            Rule::HalfSmashWedge,
            Wedge(
                parts
                    .iter()
                    .map(|p| SpaceExpr::half_smash(p.clone(), (**y).clone()))
                    .collect(),
            ),
        )),
        (Point, _) => Some((Rule::HalfSmashTrivial, Point)),
        (_, Point) => Some((Rule::HalfSmashTrivial, (**a).clone())),
        (a, y) if a.is_co_h() => Some((
            Rule::HalfSmashCoH,
            SpaceExpr::wedge([a.clone(), SpaceExpr::smash(a.clone(), y.clone())]),
        )),
        _ => None,
    }
}

fn smash_rules(e: &SpaceExpr) -> Option<(Rule, SpaceExpr)> {
    let Smash(a, b) = e else { return None };
    match (&**a, &**b) {
        (Point, _) | (_, Point) => Some((Rule::SmashPoint, Point)),
        (x, Sphere(n)) | (Sphere(n), x) => {
            Some((Rule::SmashSphere, iterated_suspension(x.clone(), *n)))
        }
        _ => None,
    }
}

fn suspension_rules(e: &SpaceExpr) -> Option<(Rule, SpaceExpr)> {
    let Suspension(a) = e else { return None };
    let out = match &**a {
        Point => Point,
        Sphere(n) => Sphere(n + 1),
        Moore(n, k) => Moore(n + 1, *k),
        MooreGroup(n, t) => MooreGroup(n + 1, t.clone()),
        Wedge(parts) => Wedge(parts.iter().cloned().map(SpaceExpr::susp).collect()),
        _ => return None,
    };
    Some((Rule::SuspensionSimplify, out))
}

fn wedge_rules(e: &SpaceExpr) -> Option<(Rule, SpaceExpr)> {
    let Wedge(parts) = e else { return None };
    let needs_flattening = parts.iter().any(|p| matches!(p, Wedge(_) | Point));
    if needs_flattening {
        let flat: Vec<SpaceExpr> = parts
            .iter()
            .flat_map(|p| match p {
                Wedge(inner) => inner.clone(),
                Point => vec![],
                other => vec![other.clone()],
            })
            .collect();
        return Some((Rule::WedgeFlatten, Wedge(flat)));
    }
    match parts.as_slice() {
        [] => Some((Rule::WedgeFlatten, Point)),
        [only] => Some((Rule::WedgeFlatten, only.clone())),
        _ => None,
    }
}

fn product_and_loop_rules(e: &SpaceExpr) -> Option<(Rule, SpaceExpr)> {
    match e {
        Product(a, b) => match (&**a, &**b) {
            (Point, x) | (x, Point) => Some((Rule::ProductPoint, x.clone())),
            _ => None,
        },
        Loop(a) => match &**a {
            Point => Some((Rule::LoopProduct, Point)),
            Product(x, y) => Some((
                Rule::LoopProduct,
                SpaceExpr::product(SpaceExpr::loop_of((**x).clone()), SpaceExpr::loop_of((**y).clone())),
            )),
            _ => None,
        },
        _ => None,
    }
}
