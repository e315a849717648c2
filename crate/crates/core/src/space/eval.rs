use num_traits::Zero;

use super::SpaceExpr::{self, *};
use crate::error::{Error, Result};
use crate::graded::{CoefficientRing, Field, GradedGroup, PowerSeries};

/// Homology of `e` through degree `n`.
///
/// Over `Z` and localized integers the result carries torsion; over a field
/// it is a free graded group whose ranks are the dimensions.
pub fn homology(e: &SpaceExpr, ring: &CoefficientRing, n: usize) -> Result<GradedGroup> {
    e.validate()?;
    ring.validate()?;
    match ring {
        CoefficientRing::Integers => Ok(integral_reduced(e, n)?.unreduced()),
        CoefficientRing::LocalizedIntegers(s) => Ok(integral_reduced(e, n)?.unreduced().localize(s)),
        CoefficientRing::Rationals | CoefficientRing::PrimeField(_) => {
            let f = ring.require_field()?;
            GradedGroup::from_ranks(&poincare(e, f, n)?)
        }
    }
}

/// Poincaré series of `H_*(e; F)` through degree `n`.
pub fn poincare_series(e: &SpaceExpr, field: Field, n: usize) -> Result<PowerSeries> {
    e.validate()?;
    CoefficientRing::from(field).validate()?;
    poincare(e, field, n)
}

/// Reduced Poincaré series `P̃(t) = P(t) - 1` over `F`.
pub fn reduced_poincare_series(e: &SpaceExpr, field: Field, n: usize) -> Result<PowerSeries> {
    Ok(&poincare_series(e, field, n)? - &PowerSeries::one(n))
}

/// Poincaré series of `H_*(Ωe; F)` through degree `n`.
///
/// A suspension `W` has `H_*(ΩW) = T(Σ^{-1} H̃_*(W))`, with series
/// `1 / (1 - P̃_W(t)/t)`; loops of products are products of loops.
pub fn loop_series(e: &SpaceExpr, field: Field, n: usize) -> Result<PowerSeries> {
    e.validate()?;
    CoefficientRing::from(field).validate()?;
    loop_poincare(e, field, n)
}

fn loop_poincare(e: &SpaceExpr, field: Field, n: usize) -> Result<PowerSeries> {
    match e {
        Point => Ok(PowerSeries::one(n)),
        Product(a, b) => Ok(&loop_poincare(a, field, n)? * &loop_poincare(b, field, n)?),
        Loop(_) => Err(Error::Unsupported(format!(
            "loops of loop spaces are not evaluated: Ω{e}"
        ))),
        w if w.is_suspension() => {
            let reduced = &poincare(w, field, n + 1)? - &PowerSeries::one(n + 1);
            if !reduced.coeff(1).is_zero() {
                return Err(Error::Unsupported(format!(
                    "{w} has homology in degree 1; its loop space is not connected"
                )));
            }
            let generators = reduced.shift_down(1)?;
            (&PowerSeries::one(n) - &generators).reciprocal()
        }
        other => Err(Error::Unsupported(format!(
            "loop space of {other} is not a product of loop suspensions"
        ))),
    }
}

fn poincare(e: &SpaceExpr, field: Field, n: usize) -> Result<PowerSeries> {
    let one = PowerSeries::one(n);
    let reduced = |x: &SpaceExpr| -> Result<PowerSeries> { Ok(&poincare(x, field, n)? - &one) };
    Ok(match e {
        Point => one.clone(),
        Sphere(k) => &one + &PowerSeries::monomial(*k as usize, 1, n),
        Moore(k, q) => {
            let visible = match field {
                Field::Rationals => *q == 0,
                Field::Prime(p) => q.unsigned_abs() % p == 0,
            };
            moore_cells(*k, u64::from(visible), n)
        }
        MooreGroup(k, t) => {
            let visible = match field {
                Field::Rationals => 0,
                Field::Prime(p) => t.iter().filter(|q| q.prime() == p).count() as u64,
            };
            moore_cells(*k, visible, n)
        }
        Wedge(parts) => parts
            .iter()
            .try_fold(one.clone(), |acc, p| Ok::<_, Error>(&acc + &reduced(p)?))?,
        Product(a, b) => &poincare(a, field, n)? * &poincare(b, field, n)?,
        Smash(a, b) => &one + &(&reduced(a)? * &reduced(b)?),
        HalfSmash(a, b) => &one + &(&reduced(a)? * &poincare(b, field, n)?),
        Suspension(a) => &one + &reduced(a)?.shift_up(1),
        Loop(a) => loop_poincare(a, field, n)?,
    })
}

/// `1 + c t^{k-1} + c t^k`: `c` visible copies of a two-cell Moore space.
fn moore_cells(k: u32, c: u64, n: usize) -> PowerSeries {
    let c = c as i64;
    let k = k as usize;
    &(&PowerSeries::one(n) + &PowerSeries::monomial(k - 1, c, n)) + &PowerSeries::monomial(k, c, n)
}

fn integral_reduced(e: &SpaceExpr, n: usize) -> Result<GradedGroup> {
    let mut g = GradedGroup::zero(n);
    match e {
        Point => {}
        Sphere(k) => g.add_free(*k as usize, 1u32),
        Moore(k, 0) => {
            g.add_free(*k as usize - 1, 1u32);
            g.add_free(*k as usize, 1u32);
        }
        Moore(_, q) if q.unsigned_abs() == 1 => {}
        Moore(k, q) => g.add_cyclic(*k as usize - 1, q.unsigned_abs())?,
        MooreGroup(k, t) => {
            for q in t {
                g.add_torsion(*k as usize - 1, *q, 1u32);
            }
        }
        Wedge(parts) => {
            for p in parts {
                g = g.direct_sum(&integral_reduced(p, n)?);
            }
        }
        Product(a, b) => {
            let ha = integral_reduced(a, n)?.unreduced();
            let hb = integral_reduced(b, n)?.unreduced();
            g = ha.kunneth_product(&hb, n)?.reduced()?;
        }
        Smash(a, b) => g = integral_reduced(a, n)?.kunneth_product(&integral_reduced(b, n)?, n)?,
        HalfSmash(a, b) => {
            if !a.is_co_h() {
                return Err(Error::Unsupported(format!(
                    "integral homology of {e} needs a co-H left factor"
                )));
            }
            let ha = integral_reduced(a, n)?;
            let hb = integral_reduced(b, n)?.unreduced();
            g = ha.kunneth_product(&hb, n)?;
        }
        Suspension(a) => g = integral_reduced(a, n)?.shift(1),
        Loop(a) => g = integral_loop(a, n)?.reduced()?,
    }
    Ok(g)
}

/// `H_*(ΩA; Z)` where it is torsion-free: `A` a product of suspensions whose
/// integral homology is free, so every tensor algebra involved is `Z`-free.
fn integral_loop(a: &SpaceExpr, n: usize) -> Result<GradedGroup> {
    match a {
        Point => Ok(GradedGroup::point(n)),
        Product(x, y) => integral_loop(x, n)?.kunneth_product(&integral_loop(y, n)?, n),
        w if w.is_suspension() => {
            let h = integral_reduced(w, n + 1)?;
            if h.degrees().any(|(_, g)| !g.torsion.is_empty()) {
                return Err(Error::Unsupported(format!(
                    "integral loop homology of {w}: torsion in H_*({w}; Z) is not handled"
                )));
            }
            GradedGroup::from_ranks(&loop_poincare(w, Field::Rationals, n)?)
        }
        other => Err(Error::Unsupported(format!(
            "integral loop homology of {other} is not computed"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::normalize;

    fn z() -> CoefficientRing {
        CoefficientRing::Integers
    }

    #[test]
    fn product_of_spheres() {
        let e = SpaceExpr::product(Sphere(3), Sphere(4));
        assert_eq!(homology(&e, &z(), 10).unwrap().to_string(), "0: Z\n3: Z\n4: Z\n7: Z");
    }

    #[test]
    fn moore_zero_is_two_spheres() {
        assert_eq!(homology(&Moore(7, 0), &z(), 10).unwrap().to_string(), "0: Z\n6: Z\n7: Z");
        assert_eq!(homology(&Moore(7, 1), &z(), 10).unwrap().to_string(), "0: Z");
        assert_eq!(homology(&Moore(7, 12), &z(), 10).unwrap().to_string(), "0: Z\n6: Z/4 + Z/3");
    }

    #[test]
    fn moore_products_have_tor() {
        let e = SpaceExpr::product(Moore(3, 2), Moore(3, 2));
        assert_eq!(
            homology(&e, &z(), 8).unwrap().to_string(),
            "0: Z\n2: Z/2 + Z/2\n4: Z/2\n5: Z/2"
        );
    }

    #[test]
    fn moore_half_smash_loop_sphere_mod_3() {
        let e = SpaceExpr::half_smash(Moore(4, 3), SpaceExpr::loop_of(Sphere(3)));
        let s = reduced_poincare_series(&e, Field::Prime(3), 20).unwrap();
        for d in 0..=20 {
            assert_eq!(s.coeff(d).to_string(), if d >= 3 { "1" } else { "0" }, "degree {d}");
        }
        let mod2 = reduced_poincare_series(&e, Field::Prime(2), 20).unwrap();
        assert!(mod2.is_zero());
    }

    #[test]
    fn loop_series_examples() {
        let s3 = loop_series(&Sphere(3), Field::Rationals, 12).unwrap();
        assert_eq!(s3, PowerSeries::geometric(2, 12));
        let prod = loop_series(&SpaceExpr::product(Sphere(3), Sphere(4)), Field::Rationals, 12).unwrap();
        assert_eq!(prod.to_i64_vec().unwrap(), vec![1, 0, 1, 1, 1, 1, 2, 1, 2, 2, 2, 2, 3]);
        let wedge = loop_series(&SpaceExpr::wedge([Sphere(3), Sphere(4)]), Field::Rationals, 12).unwrap();
        assert_eq!(wedge.to_i64_vec().unwrap(), vec![1, 0, 1, 1, 1, 2, 2, 3, 4, 5, 7, 9, 12]);
    }

    #[test]
    fn loop_series_of_moore_space() {
        // T(x_2, y_3) over F_2 for P^4(2); nothing over Q.
        let e = Moore(4, 2);
        let f2 = loop_series(&e, Field::Prime(2), 10).unwrap();
        let expect = (&PowerSeries::one(10)
            - &(&PowerSeries::monomial(2, 1, 10) + &PowerSeries::monomial(3, 1, 10)))
            .reciprocal()
            .unwrap();
        assert_eq!(f2, expect);
        assert_eq!(loop_series(&e, Field::Rationals, 10).unwrap(), PowerSeries::one(10));
    }

    #[test]
    fn unsupported_shapes() {
        let ll = SpaceExpr::loop_of(SpaceExpr::loop_of(Sphere(3)));
        assert!(matches!(homology(&ll, &CoefficientRing::Rationals, 8), Err(Error::Unsupported(_))));
        let pr = SpaceExpr::smash(SpaceExpr::product(Sphere(2), Sphere(2)), SpaceExpr::product(Sphere(2), Sphere(2)));
        assert!(matches!(loop_series(&pr, Field::Rationals, 8), Err(Error::Unsupported(_))));
        let hs = SpaceExpr::half_smash(SpaceExpr::product(Sphere(2), Sphere(2)), Sphere(3));
        assert!(matches!(homology(&hs, &z(), 8), Err(Error::Unsupported(_))));
        assert!(homology(&hs, &CoefficientRing::Rationals, 8).is_ok());
        let lm = SpaceExpr::loop_of(Moore(4, 2));
        assert!(matches!(homology(&lm, &z(), 8), Err(Error::Unsupported(_))));
    }

    #[test]
    fn integral_loop_of_sphere_wedge() {
        let e = SpaceExpr::loop_of(SpaceExpr::wedge([Sphere(3), Sphere(4)]));
        let h = homology(&e, &z(), 8).unwrap();
        let q = homology(&e, &CoefficientRing::Rationals, 8).unwrap();
        assert_eq!(h, q);
        assert_eq!(h.free_rank(7).to_string(), "3");
    }

    #[test]
    fn localization_kills_named_torsion() {
        let e = SpaceExpr::wedge([Moore(5, 6), Sphere(3)]);
        let ring = CoefficientRing::localized([2]).unwrap();
        assert_eq!(homology(&e, &ring, 8).unwrap().to_string(), "0: Z\n3: Z\n4: Z/3");
    }

    #[test]
    fn co_h_half_smash_matches_split() {
        let a = SpaceExpr::wedge([Moore(4, 2), Sphere(3)]);
        let y = SpaceExpr::loop_of(Sphere(4));
        let hs = SpaceExpr::half_smash(a.clone(), y.clone());
        let split = SpaceExpr::wedge([a.clone(), SpaceExpr::smash(a, y)]);
        for ring in [z(), CoefficientRing::Rationals, CoefficientRing::PrimeField(2)] {
            assert_eq!(homology(&hs, &ring, 12).unwrap(), homology(&split, &ring, 12).unwrap());
            assert_eq!(
                homology(&hs, &ring, 12).unwrap(),
                homology(&normalize(&hs), &ring, 12).unwrap()
            );
        }
    }
}
