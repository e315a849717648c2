//! Symbolic calculator for capped complexes with a spherical pair.
//!
//! Spaces are expressions ([`space::SpaceExpr`]) evaluated into truncated
//! graded homology ([`graded::GradedGroup`]) and loop-space Poincaré series
//! ([`graded::PowerSeries`]). The [`decomposition`] module turns the loop
//! space splitting `ΩX ≃ Ω(S^m × S^{n-m}) × Ω((P^n(k) ∨ C) ⋊ Ω(S^m × S^{n-m}))`
//! and its corollaries into checkable reports, and [`verify`] cross-checks
//! every decomposition at the level of Poincaré series.

pub mod cli;
pub mod decomposition;
pub mod error;
pub mod graded;
pub mod hypotheses;
pub mod space;
pub mod splitting;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
