//! Identifiers of the hypotheses a report can rely on. Reports list them in
//! `hypotheses_used`; errors name the one that failed.

pub const DIMENSION_RANGE: &str = "dimension-range";
pub const WHITEHEAD_COMPONENT: &str = "whitehead-component-asserted";
pub const UNIT_COEFFICIENT: &str = "k-is-unit";
pub const SKELETON_CO_H: &str = "skeleton-co-h";
pub const OMEGA_ZERO: &str = "omega-zero";
pub const OMEGA_SUPPLIED: &str = "omega-supplied";
pub const SPHERICAL_WITNESSES: &str = "spherical-witnesses-asserted";
pub const SQUARES_VANISH: &str = "squares-vanish";
pub const PAIRING_NONZERO: &str = "pairing-nonzero";
pub const K_DIVIDES_PAIRING: &str = "k-divides-pairing";
pub const LOCALIZATION_AWAY: &str = "localized-away-from-excluded-primes";
pub const INTERSECTION_NUMBER: &str = "intersection-number-asserted";
pub const CONNECTIVITY_RANGE: &str = "connectivity-range";
pub const BETTI_PAIR: &str = "betti-pair-present";
pub const SPHERICAL_PAIR: &str = "spherical-pair-asserted";
pub const CLASS_M: &str = "class-m-asserted";
pub const TORSION_DISCARDED: &str = "torsion-primes-inverted";
pub const SKELETON_SUMMANDS: &str = "skeleton-has-sphere-summands";
pub const CO_H_FACTOR: &str = "co-h-left-factor";

/// One-line meaning of a hypothesis identifier.
pub fn describe(id: &str) -> &'static str {
    match id {
        DIMENSION_RANGE => "2 <= m <= n - 2 and C has cells below dimension n",
        WHITEHEAD_COMPONENT => "the attaching map restricted to S^m ∨ S^{n-m} is k times the Whitehead product",
        UNIT_COEFFICIENT => "k = ±1, so the top cell attaches inertly",
        SKELETON_CO_H => "the (n-1)-skeleton is a co-H-space",
        OMEGA_ZERO => "the loop-level image of ω was taken to be zero",
        OMEGA_SUPPLIED => "the loop-level image of ω was supplied as relation terms",
        SPHERICAL_WITNESSES => "a and b are detected by maps from spheres",
        SQUARES_VANISH => "a² = 0 and b² = 0",
        PAIRING_NONZERO => "<a ∪ b, [X]> is nonzero",
        K_DIVIDES_PAIRING => "k divides <a ∪ b, [X]>",
        LOCALIZATION_AWAY => "statements hold after inverting the excluded primes",
        INTERSECTION_NUMBER => "|<a ∪ b, [X]>| is the geometric intersection number of two embedded spheres",
        CONNECTIVITY_RANGE => "connectivity and dimension bounds on l, m and n",
        BETTI_PAIR => "d_m >= 1 and d_{n-m} >= 1",
        SPHERICAL_PAIR => "the cohomology carries a spherical pair in degrees m and n - m",
        CLASS_M => "the skeleton quotient lies in the class of wedges of spheres and Moore spaces",
        TORSION_DISCARDED => "every prime appearing as torsion is inverted",
        SKELETON_SUMMANDS => "the skeleton has S^m and S^{n-m} wedge summands",
        CO_H_FACTOR => "the left factor of the half-smash is a co-H-space",
        _ => "unknown hypothesis",
    }
}
