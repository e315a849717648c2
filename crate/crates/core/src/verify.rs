//! Cross-checks of decompositions against independent computations, at the
//! level of exact Poincaré series.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::{CoefficientRing, Field, PowerSeries};
use crate::hypotheses as hyp;
use crate::space::{homology, loop_series, reduced_poincare_series, CappedComplexSpec, SpaceExpr};
use crate::tensor::{loop_homology_presentation, quotient_dims, Presentation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Path A is the degreewise rank of the loop-homology presentation; path B
/// is the series of `Ω(S^m × S^{n-m}) × Ω(fiber)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_mismatch_degree: Option<usize>,
    pub path_a: PowerSeries,
    pub path_b: PowerSeries,
    pub spec_echo: CappedComplexSpec,
    pub trunc: usize,
    pub field: String,
    pub hypotheses_used: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// `Err(Verification)` carrying both coefficient tables on mismatch.
    pub fn into_result(self) -> Result<Self> {
        match self.first_mismatch_degree {
            None => Ok(self),
            Some(d) => Err(Error::Verification(format!(
                "{}: paths differ at degree {d}\npath A: {}\npath B: {}",
                self.spec_echo.c, self.path_a, self.path_b
            ))),
        }
    }
}

/// Series of `Ω(base) × Ω((P^n(k) ∨ C) ⋊ Ω(base))`, from series algebra
/// alone. The fiber is a suspension, so its loop series is
/// `1 / (1 - P̃_fiber(t) / t)` with `P̃_fiber = P̃_{P^n(k) ∨ C} · P_{Ω(base)}`.
fn product_path(spec: &CappedComplexSpec, field: Field, n: usize) -> Result<PowerSeries> {
    let base_loops = loop_series(&spec.base(), field, n + 1)?;
    let bottom = SpaceExpr::wedge([SpaceExpr::Moore(spec.n, spec.k), spec.c.clone()]);
    let fiber_reduced = &reduced_poincare_series(&bottom, field, n + 1)? * &base_loops;
    if !fiber_reduced.coeff(1).is_zero() {
        return Err(Error::Unsupported("fiber has homology in degree 1".into()));
    }
    let fiber_loops = (&PowerSeries::one(n) - &fiber_reduced.shift_down(1)?).reciprocal()?;
    Ok(&base_loops.truncate(n) * &fiber_loops)
}

fn check_shape(spec: &CappedComplexSpec) -> Result<()> {
    spec.validate()?;
    if spec.k.unsigned_abs() != 1 {
        return Err(Error::hypothesis(
            hyp::UNIT_COEFFICIENT,
            format!("no second computation path for k = {}", spec.k),
        ));
    }
    if !spec.c.is_co_h() {
        return Err(Error::Unsupported(format!("C = {} is not a recognized co-H-space", spec.c)));
    }
    Ok(())
}

/// Compares the presentation's degreewise ranks with the product path.
pub fn verify_decomposition_series(spec: &CappedComplexSpec, field: Field, n: usize) -> Result<VerificationReport> {
    check_shape(spec)?;
    let presentation = loop_homology_presentation(spec, field)?;
    verify_with_presentation(spec, &presentation, n, None)
}

/// As [`verify_decomposition_series`], with path A taken from a supplied
/// presentation (for example one with a corrupted relation). `cap` is
/// passed to [`quotient_dims`].
pub fn verify_with_presentation(
    spec: &CappedComplexSpec,
    presentation: &Presentation,
    n: usize,
    cap: Option<usize>,
) -> Result<VerificationReport> {
    check_shape(spec)?;
    let field = presentation.field();
    let path_a = quotient_dims(presentation, n, cap)?;
    let path_b = product_path(spec, field, n)?;
    let first_mismatch_degree = path_a.first_mismatch(&path_b);
    let mut hypotheses_used = vec![
        hyp::DIMENSION_RANGE.to_string(),
        hyp::WHITEHEAD_COMPONENT.to_string(),
        hyp::UNIT_COEFFICIENT.to_string(),
        hyp::SKELETON_CO_H.to_string(),
    ];
    hypotheses_used.push(if spec.omega.is_some() { hyp::OMEGA_SUPPLIED } else { hyp::OMEGA_ZERO }.to_string());
    Ok(VerificationReport {
        status: if first_mismatch_degree.is_none() { Status::Pass } else { Status::Fail },
        first_mismatch_degree,
        path_a,
        path_b,
        spec_echo: spec.clone(),
        trunc: n,
        field: field.to_string(),
        hypotheses_used,
    })
}

/// Every `(n, m, k, C)` with `4 <= n <= n_max`, `2 <= m <= n - 2`,
/// `k = ±1` and `C` a point or `S^q`, `2 <= q <= n - 2`.
pub fn decomposition_grid(n_max: u32) -> Vec<CappedComplexSpec> {
    let mut out = Vec::new();
    for n in 4..=n_max {
        for m in 2..=n - 2 {
            for k in [1, -1] {
                out.push(CappedComplexSpec::new(n, m, k, SpaceExpr::Point));
                for q in 2..=n - 2 {
                    out.push(CappedComplexSpec::new(n, m, k, SpaceExpr::Sphere(q)));
                }
            }
        }
    }
    out
}

/// Runs the grid over each field in parallel.
pub fn verify_grid(specs: &[CappedComplexSpec], fields: &[Field], n: usize) -> Vec<Result<VerificationReport>> {
    let cases: Vec<(&CappedComplexSpec, Field)> =
        specs.iter().flat_map(|s| fields.iter().map(move |f| (s, *f))).collect();
    cases
        .into_par_iter()
        .map(|(s, f)| verify_decomposition_series(s, f, n))
        .collect()
}

/// `H_*((A ∨ B) ⋊ Y) = H_*((A ⋊ Y) ∨ (B ⋊ Y))` through degree `n`.
pub fn verify_half_smash(a: &SpaceExpr, b: &SpaceExpr, y: &SpaceExpr, ring: &CoefficientRing, n: usize) -> Result<bool> {
    let lhs = SpaceExpr::half_smash(SpaceExpr::wedge([a.clone(), b.clone()]), y.clone());
    let rhs = SpaceExpr::wedge([
        SpaceExpr::half_smash(a.clone(), y.clone()),
        SpaceExpr::half_smash(b.clone(), y.clone()),
    ]);
    Ok(homology(&lhs, ring, n)? == homology(&rhs, ring, n)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GrowthClass {
    Exponential,
    Polynomial,
    Bounded,
}

/// Heuristic at the truncation: a least-squares fit, never a proof.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub class: GrowthClass,
    /// `exp` of the fitted slope of `ln c_d` against `d`.
    pub rate: f64,
    /// Fitted slope of `ln c_d` against `ln d`.
    pub polynomial_degree: f64,
    pub window: (usize, usize),
    pub heuristic: bool,
}

/// Rates above `1 + EXPONENTIAL_TOLERANCE` count as exponential.
pub const EXPONENTIAL_TOLERANCE: f64 = 0.1;
/// Log-log slopes below this count as bounded.
pub const BOUNDED_DEGREE: f64 = 0.25;

/// `ln c` for a positive integer of any size.
fn ln_big(c: &BigInt) -> f64 {
    match c.to_f64() {
        Some(f) if f.is_finite() => f.ln(),
        _ => {
            let drop = c.bits() - 64;
            (c >> drop).to_f64().expect("fits").ln() + drop as f64 * std::f64::consts::LN_2
        }
    }
}

fn slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = points.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

/// Fits `ln c_d` over `window` (inclusive), skipping zero coefficients.
pub fn growth_estimate(s: &PowerSeries, window: (usize, usize)) -> Result<GrowthReport> {
    let (lo, hi) = window;
    if lo > hi || lo == 0 {
        return Err(Error::Validation(format!("bad window [{lo}, {hi}]")));
    }
    if hi > s.trunc() {
        return Err(Error::Truncation {
            needed: hi,
            available: s.trunc(),
        });
    }
    if s.has_negative() {
        return Err(Error::Validation("growth estimate needs nonnegative coefficients".into()));
    }
    let logs: Vec<(usize, f64)> = (lo..=hi)
        .filter(|&d| !s.coeff(d).is_zero())
        .map(|d| (d, ln_big(s.coeff(d))))
        .collect();
    if logs.len() < 2 {
        return Ok(GrowthReport {
            class: GrowthClass::Bounded,
            rate: 1.0,
            polynomial_degree: 0.0,
            window,
            heuristic: true,
        });
    }
    let linear: Vec<(f64, f64)> = logs.iter().map(|&(d, l)| (d as f64, l)).collect();
    let loglog: Vec<(f64, f64)> = logs.iter().map(|&(d, l)| ((d as f64).ln(), l)).collect();
    let rate = slope(&linear).exp();
    let polynomial_degree = slope(&loglog);
    let class = if rate > 1.0 + EXPONENTIAL_TOLERANCE {
        GrowthClass::Exponential
    } else if polynomial_degree < BOUNDED_DEGREE {
        GrowthClass::Bounded
    } else {
        GrowthClass::Polynomial
    };
    Ok(GrowthReport {
        class,
        rate,
        polynomial_degree,
        window,
        heuristic: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::SpaceExpr::*;
    use crate::tensor::free_algebra_dims;

    fn coeffs(s: &PowerSeries, upto: usize) -> Vec<i64> {
        s.to_i64_vec().unwrap()[..=upto].to_vec()
    }

    #[test]
    fn identity_case_rational() {
        let r = verify_decomposition_series(&CappedComplexSpec::new(7, 3, 1, Point), Field::Rationals, 20).unwrap();
        assert!(r.passed());
        let expected = (&(&PowerSeries::one(20) - &PowerSeries::monomial(2, 1, 20))
            * &(&PowerSeries::one(20) - &PowerSeries::monomial(3, 1, 20)))
            .reciprocal()
            .unwrap();
        assert_eq!(r.path_a, expected);
    }

    #[test]
    fn sphere_complement() {
        let r = verify_decomposition_series(&CappedComplexSpec::new(7, 3, 1, Sphere(3)), Field::Rationals, 14).unwrap();
        assert!(r.passed());
        assert_eq!(coeffs(&r.path_a, 5), vec![1, 0, 2, 1, 4, 3]);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["status"], "pass");
        assert!(json.get("first_mismatch_degree").is_none());
    }

    #[test]
    fn corrupted_relation_fails_at_five() {
        let spec = CappedComplexSpec::new(7, 3, 1, Sphere(3));
        let good = loop_homology_presentation(&spec, Field::Rationals).unwrap();
        let bad = good.with_relations(vec![]).unwrap();
        let r = verify_with_presentation(&spec, &bad, 14, None).unwrap();
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.first_mismatch_degree, Some(5));
        assert_eq!(r.path_a.coeff(5), &4.into());
        assert_eq!(r.path_b.coeff(5), &3.into());
        assert!(matches!(r.into_result(), Err(Error::Verification(_))));
    }

    #[test]
    fn refuses_non_unit_k() {
        assert!(verify_decomposition_series(&CappedComplexSpec::new(7, 3, 2, Point), Field::Rationals, 10).is_err());
    }

    #[test]
    fn half_smash_examples() {
        let q = CoefficientRing::Rationals;
        assert!(verify_half_smash(&Sphere(3), &Sphere(5), &SpaceExpr::loop_of(Sphere(3)), &q, 12).unwrap());
        let f2 = CoefficientRing::PrimeField(2);
        assert!(verify_half_smash(&Moore(4, 2), &Sphere(3), &SpaceExpr::loop_of(Sphere(4)), &f2, 12).unwrap());
        assert!(verify_half_smash(&Point, &Sphere(3), &SpaceExpr::loop_of(Sphere(4)), &CoefficientRing::Integers, 12).unwrap());
    }

    #[test]
    fn growth_classes() {
        let t = free_algebra_dims(&[2, 3], 24).unwrap();
        let g = growth_estimate(&t, (10, 24)).unwrap();
        assert_eq!(g.class, GrowthClass::Exponential);
        assert!((g.rate - 1.3247).abs() < 0.05, "{}", g.rate);
        let p = loop_homology_presentation(&CappedComplexSpec::new(7, 3, 1, Point), Field::Rationals).unwrap();
        let poly = quotient_dims(&p, 24, None).unwrap();
        assert_eq!(growth_estimate(&poly, (10, 24)).unwrap().class, GrowthClass::Polynomial);
        let ones = PowerSeries::geometric(1, 24);
        assert_eq!(growth_estimate(&ones, (10, 24)).unwrap().class, GrowthClass::Bounded);
        let neg = PowerSeries::monomial(12, -1, 24);
        assert!(growth_estimate(&neg, (10, 24)).is_err());
        assert!(growth_estimate(&ones, (10, 30)).is_err());
    }
}
