//! Loop-space decompositions of capped complexes as checkable constructions:
//! the integral splitting, the spherical-pair checker, skeleton formulas and
//! the verdict tables.

mod capped;
mod pair;
mod report;
mod skeleton;
mod verdicts;

pub use capped::{build_xmk, decompose_capped};
pub use pair::{check_spherical_pair, BasisClass, CohomologyRingInput, PairReport, ProductEntry};
pub use report::{DecompositionReport, ExcludedPrime, RULE_DIVIDES_QUOTIENT, RULE_SMALL_PRIME, RULE_TORSION_PRIME};
pub use skeleton::{
    check_skeleton_homology, skeleton_from_homology, HomologyDataInput, HomologyEntry, SkeletonHomologyCheck,
    SkeletonReport, SkeletonVariant,
};
pub use verdicts::{hyperbolicity_verdict, inertness_verdict, HyperbolicityVerdict, InertnessVerdict, PrimeSet, TorsionClaims};
