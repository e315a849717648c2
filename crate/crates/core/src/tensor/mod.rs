//! Free graded tensor algebras over a field and their quotients by
//! homogeneous two-sided ideals.

mod element;
mod field;
mod quotient;

pub use element::{graded_commutator, AlgebraElement, Generator, Word};
pub use quotient::{
    free_algebra_dims, quotient_dims, Presentation, DEFAULT_CAP_FEW, DEFAULT_CAP_MANY,
};

use crate::error::{Error, Result};
use crate::graded::Field;
use crate::hypotheses as hyp;
use crate::space::{reduced_poincare_series, CappedComplexSpec};

/// Presentation of `H_*(ΩX; F)` for a capped complex with `k = ±1` and
/// co-H `C`: the tensor algebra on the desuspended reduced homology of
/// `S^m ∨ S^{n-m} ∨ C` modulo the single relation `[u, v] + ω`.
///
/// `u` and `v` have degrees `m - 1` and `n - m - 1`. The classes of `C` are
/// named `w` when there is one, otherwise `w1, w2, ...` by degree.
pub fn loop_homology_presentation(spec: &CappedComplexSpec, field: Field) -> Result<Presentation> {
    spec.validate()?;
    if !spec.whitehead_component_asserted {
        return Err(Error::hypothesis(
            hyp::WHITEHEAD_COMPONENT,
            "the Whitehead-product component of the attaching map must be asserted",
        ));
    }
    if spec.k.unsigned_abs() != 1 {
        return Err(Error::hypothesis(
            hyp::UNIT_COEFFICIENT,
            format!("the top cell attaches inertly if and only if k = ±1; got k = {}", spec.k),
        ));
    }
    if !spec.c.is_co_h() {
        return Err(Error::hypothesis(
            hyp::SKELETON_CO_H,
            format!("C = {} is not recognized as a co-H-space", spec.c),
        ));
    }
    let (n, m) = (spec.n as usize, spec.m as usize);
    let u = Generator::new("u", m - 1);
    let v = Generator::new("v", n - m - 1);
    let c_series = reduced_poincare_series(&spec.c, field, n)?;
    let mut c_degrees = Vec::new();
    for d in 2..=n {
        let count: usize = c_series.coeff(d).try_into().expect("small dimension");
        c_degrees.extend(std::iter::repeat(d - 1).take(count));
    }
    let mut gens = vec![u.clone(), v.clone()];
    match c_degrees.as_slice() {
        [] => {}
        [d] => gens.push(Generator::new("w", *d)),
        ds => gens.extend(ds.iter().enumerate().map(|(i, d)| Generator::new(format!("w{}", i + 1), *d))),
    }

    let mut relation = graded_commutator(&u, &v);
    for text in spec.omega.iter().flatten() {
        let term = AlgebraElement::parse(text, &gens)?;
        match term.degree(&gens)? {
            None => {}
            Some(d) if d == n - 2 => relation = relation.add(&term),
            Some(d) => {
                return Err(Error::Validation(format!(
                    "ω term `{text}` has degree {d}; the relation lives in degree {}",
                    n - 2
                )))
            }
        }
    }
    Presentation::new(gens, vec![relation], field)
}
