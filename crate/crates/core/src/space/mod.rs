//! Space expressions, their normal forms, and evaluation into homology and
//! loop-space Poincaré series.

mod capped;
mod eval;
mod expr;
mod normalize;

pub use capped::CappedComplexSpec;
pub use eval::{homology, loop_series, poincare_series, reduced_poincare_series};
pub use expr::SpaceExpr;
pub use normalize::{normalize, normalize_traced, rewrite_step, Rule};
