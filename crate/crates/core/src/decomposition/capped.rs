use super::report::DecompositionReport;
use crate::error::{Error, Result};
use crate::hypotheses as hyp;
use crate::space::{normalize, CappedComplexSpec, SpaceExpr};

/// Integral loop-space splitting of a capped complex whose top cell
/// attaches by `k` times the Whitehead product plus a term on `C`.
pub fn decompose_capped(spec: &CappedComplexSpec) -> Result<DecompositionReport> {
    spec.validate()?;
    if !spec.whitehead_component_asserted {
        return Err(Error::hypothesis(
            hyp::WHITEHEAD_COMPONENT,
            "the component of the attaching map on S^m ∨ S^{n-m} must be asserted to be the Whitehead product",
        ));
    }
    let mut report = DecompositionReport::build(spec.n, spec.m, spec.k, Some(spec.c.clone()));
    report.uses(hyp::WHITEHEAD_COMPONENT);
    Ok(report)
}

/// `X_{M,k}`: re-attach the top cell of `M` by `k` times its attaching map.
/// The skeleton must contain `S^m` and `S^{n-m}` as wedge summands; what is
/// left after removing one of each is `C`.
pub fn build_xmk(
    skeleton: &SpaceExpr,
    n: u32,
    k: i64,
    m: u32,
    whitehead_component_asserted: bool,
) -> Result<CappedComplexSpec> {
    skeleton.validate()?;
    if m < 2 || m + 2 > n {
        return Err(Error::Validation(format!("need 2 <= m <= n - 2, got m = {m}, n = {n}")));
    }
    let normal = normalize(skeleton);
    let mut rest: Vec<SpaceExpr> = normal.wedge_summands().into_iter().cloned().collect();
    for dim in [m, n - m] {
        let pos = rest
            .iter()
            .position(|s| *s == SpaceExpr::Sphere(dim))
            .ok_or_else(|| Error::Validation(format!("skeleton {skeleton} has no S^{dim} wedge summand")))?;
        rest.remove(pos);
    }
    let c = match rest.len() {
        0 => SpaceExpr::Point,
        1 => rest.pop().expect("one summand"),
        _ => SpaceExpr::Wedge(rest),
    };
    let spec = CappedComplexSpec {
        n,
        m,
        k,
        c,
        whitehead_component_asserted,
        omega: None,
    };
    spec.validate()?;
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::SpaceExpr::*;

    #[test]
    fn identity_case() {
        let r = decompose_capped(&CappedComplexSpec::new(7, 3, 1, Point)).unwrap();
        assert_eq!(r.fiber_normalized, Some(Point));
        assert_eq!(r.base.to_string(), "(S^3 × S^4)");
        assert!(r.excluded_primes.is_empty());
    }

    #[test]
    fn statement_shape() {
        let r = decompose_capped(&CappedComplexSpec::new(7, 3, 4, Sphere(3))).unwrap();
        assert_eq!(r.fiber.as_ref().unwrap().to_string(), "((P^7(4) ∨ S^3) ⋊ Ω(S^3 × S^4))");
        assert_eq!(r.statement, "ΩX ≃ Ω(S^3 × S^4) × Ω((P^7(4) ∨ S^3) ⋊ Ω(S^3 × S^4))");
        assert_eq!(r.hypotheses_used, vec![hyp::DIMENSION_RANGE, hyp::WHITEHEAD_COMPONENT]);
    }

    #[test]
    fn degenerate_k_zero() {
        let r = decompose_capped(&CappedComplexSpec::new(6, 2, 0, Point)).unwrap();
        let f = r.fiber_normalized.as_ref().unwrap();
        let parts: Vec<String> = f.wedge_summands().iter().map(|s| s.to_string()).collect();
        assert_eq!(parts[0], "S^5");
        assert_eq!(parts[2], "S^6");
        assert!(r.notes[0].contains("S^2 ∨ S^4 ∨ S^6 ∨ *"));
    }

    #[test]
    fn refuses_without_whitehead_assertion() {
        let mut s = CappedComplexSpec::new(7, 3, 1, Point);
        s.whitehead_component_asserted = false;
        assert!(matches!(decompose_capped(&s), Err(Error::Hypothesis { .. })));
    }

    #[test]
    fn xmk_summand_removal() {
        let sk = SpaceExpr::wedge([Sphere(3), Sphere(4), Sphere(5)]);
        let s = build_xmk(&sk, 7, 3, 3, true).unwrap();
        assert_eq!((s.n, s.m, s.k, s.c.clone()), (7, 3, 3, Sphere(5)));
        let s = build_xmk(&SpaceExpr::wedge([Sphere(3), Sphere(4)]), 7, 1, 3, true).unwrap();
        assert_eq!(s.c, Point);
        assert!(build_xmk(&SpaceExpr::wedge([Sphere(3), Sphere(3)]), 7, 1, 3, true).is_err());
        let s = build_xmk(&SpaceExpr::wedge([Sphere(3), Sphere(3), Sphere(3)]), 6, 2, 3, true).unwrap();
        assert_eq!(s.c, Sphere(3));
    }
}
