use serde::{Deserialize, Serialize};

use super::SpaceExpr;
use crate::error::{Error, Result};

/// Data of a capped complex `X = (S^m ∨ S^{n-m} ∨ C) ∪_g e^n` whose top
/// cell attaches by `k` times the Whitehead product plus a term `ω` on `C`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CappedComplexSpec {
    pub n: u32,
    pub m: u32,
    pub k: i64,
    #[serde(rename = "C", alias = "c", default = "point")]
    pub c: SpaceExpr,
    /// The component of the attaching map on `S^m ∨ S^{n-m}` is `k` times
    /// the Whitehead product. Not checkable from the data; must be asserted.
    #[serde(default)]
    pub whitehead_component_asserted: bool,
    /// Loop-level image of `ω` as relation text over the generators of
    /// `C`; `None` means `ω = 0`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<Vec<String>>,
}

fn point() -> SpaceExpr {
    SpaceExpr::Point
}

impl CappedComplexSpec {
    pub fn new(n: u32, m: u32, k: i64, c: SpaceExpr) -> Self {
        CappedComplexSpec {
            n,
            m,
            k,
            c,
            whitehead_component_asserted: true,
            omega: None,
        }
    }

    /// Checks `n >= 4`, `2 <= m <= n - 2` and that `C` is a finite
    /// simply connected complex of dimension below `n`.
    pub fn validate(&self) -> Result<()> {
        if self.n < 4 {
            return Err(Error::Validation(format!("need n >= 4, got n = {}", self.n)));
        }
        if self.m < 2 || self.m + 2 > self.n {
            return Err(Error::Validation(format!(
                "need 2 <= m <= n - 2, got m = {}, n = {}",
                self.m, self.n
            )));
        }
        self.c.validate()?;
        match self.c.cell_dimension() {
            None => Err(Error::Validation(format!("C = {} is not a finite complex", self.c))),
            Some(d) if d >= self.n => Err(Error::Validation(format!(
                "C = {} has cells in dimension {d} >= n = {}",
                self.c, self.n
            ))),
            Some(_) => Ok(()),
        }
    }

    /// `S^m × S^{n-m}`.
    pub fn base(&self) -> SpaceExpr {
        SpaceExpr::product(SpaceExpr::Sphere(self.m), SpaceExpr::Sphere(self.n - self.m))
    }

    /// `(P^n(k) ∨ C) ⋊ Ω(S^m × S^{n-m})`, before normalization.
    pub fn fiber(&self) -> SpaceExpr {
        SpaceExpr::half_smash(
            SpaceExpr::wedge([SpaceExpr::Moore(self.n, self.k), self.c.clone()]),
            SpaceExpr::loop_of(self.base()),
        )
    }

    /// `S^m ∨ S^{n-m} ∨ C`, the `(n-1)`-skeleton.
    pub fn skeleton(&self) -> SpaceExpr {
        SpaceExpr::wedge([
            SpaceExpr::Sphere(self.m),
            SpaceExpr::Sphere(self.n - self.m),
            self.c.clone(),
        ])
    }
}
