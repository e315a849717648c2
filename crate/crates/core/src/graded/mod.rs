//! Exact arithmetic for truncated graded abelian groups and integer power
//! series.

mod coeff;
mod group;
pub mod primes;
mod series;

pub use coeff::{CoefficientRing, Field};
pub use group::{DegreeGroup, GradedGroup};
pub use primes::PrimePower;
pub use series::PowerSeries;

