use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graded::PrimePower;

/// A space built from spheres and Moore spaces by wedge, product, smash,
/// right half-smash, suspension and loops.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SpaceExpr {
    Point,
    /// `S^n`, `n >= 2`.
    Sphere(u32),
    /// `P^n(k)`: cofibre of the degree `k` map on `S^{n-1}`; `n >= 3`.
    Moore(u32, i64),
    /// `P^n(T)` for `T = ⊕ Z/q_i`; the wedge of the `P^n(q_i)`.
    MooreGroup(u32, Vec<PrimePower>),
    Wedge(Vec<SpaceExpr>),
    Product(Box<SpaceExpr>, Box<SpaceExpr>),
    Smash(Box<SpaceExpr>, Box<SpaceExpr>),
    /// `A ⋊ B = (A × B)/({*} × B)`.
    HalfSmash(Box<SpaceExpr>, Box<SpaceExpr>),
    Suspension(Box<SpaceExpr>),
    Loop(Box<SpaceExpr>),
}

use SpaceExpr::*;

impl SpaceExpr {
    pub fn sphere(n: u32) -> Self {
        Sphere(n)
    }

    pub fn moore(n: u32, k: i64) -> Self {
        Moore(n, k)
    }

    pub fn wedge<I: IntoIterator<Item = SpaceExpr>>(parts: I) -> Self {
        Wedge(parts.into_iter().collect())
    }

    pub fn product(a: SpaceExpr, b: SpaceExpr) -> Self {
        Product(Box::new(a), Box::new(b))
    }

    pub fn smash(a: SpaceExpr, b: SpaceExpr) -> Self {
        Smash(Box::new(a), Box::new(b))
    }

    pub fn half_smash(a: SpaceExpr, b: SpaceExpr) -> Self {
        HalfSmash(Box::new(a), Box::new(b))
    }

    pub fn susp(a: SpaceExpr) -> Self {
        Suspension(Box::new(a))
    }

    pub fn loop_of(a: SpaceExpr) -> Self {
        Loop(Box::new(a))
    }

    /// Checks constructor ranges: spheres `n >= 2`, Moore spaces `n >= 3`,
    /// nonempty wedges.
    pub fn validate(&self) -> Result<()> {
        match self {
            Point => Ok(()),
            Sphere(n) if *n < 2 => Err(Error::Validation(format!(
                "S^{n} is not simply connected (need n >= 2)"
            ))),
            Sphere(_) => Ok(()),
            Moore(n, _) | MooreGroup(n, _) if *n < 3 => Err(Error::Validation(format!(
                "P^{n} is not simply connected (need n >= 3)"
            ))),
            Moore(_, _) | MooreGroup(_, _) => Ok(()),
            Wedge(parts) if parts.is_empty() => {
                Err(Error::Validation("empty wedge; use \"point\"".into()))
            }
            Wedge(parts) => parts.iter().try_for_each(SpaceExpr::validate),
            Product(a, b) | Smash(a, b) | HalfSmash(a, b) => {
                a.validate()?;
                b.validate()
            }
            Suspension(a) | Loop(a) => a.validate(),
        }
    }

    /// Syntactic co-H recognition: points, spheres, Moore spaces, explicit
    /// suspensions and wedges of these.
    pub fn is_co_h(&self) -> bool {
        match self {
            Point | Sphere(_) | Moore(_, _) | MooreGroup(_, _) | Suspension(_) => true,
            Wedge(parts) => parts.iter().all(SpaceExpr::is_co_h),
            _ => false,
        }
    }

    /// Recognizes spaces that are suspensions up to homotopy. Broader than
    /// [`is_co_h`](Self::is_co_h): a smash with a suspension factor and a
    /// half-smash with a suspension on the left are suspensions too.
    pub fn is_suspension(&self) -> bool {
        match self {
            Point | Sphere(_) | Moore(_, _) | MooreGroup(_, _) | Suspension(_) => true,
            Wedge(parts) => parts.iter().all(SpaceExpr::is_suspension),
            Smash(a, b) => a.is_suspension() || b.is_suspension(),
            HalfSmash(a, _) => a.is_suspension(),
            Product(_, _) | Loop(_) => false,
        }
    }

    /// Top cell dimension of a finite expression; `None` when a loop space
    /// makes it infinite.
    pub fn cell_dimension(&self) -> Option<u32> {
        match self {
            Point => Some(0),
            Sphere(n) => Some(*n),
            Moore(n, k) => Some(if k.unsigned_abs() == 1 { 0 } else { *n }),
            MooreGroup(n, t) => Some(if t.is_empty() { 0 } else { *n }),
            Wedge(parts) => parts
                .iter()
                .map(SpaceExpr::cell_dimension)
                .try_fold(0, |acc, d| d.map(|d| acc.max(d))),
            Product(a, b) | Smash(a, b) | HalfSmash(a, b) => {
                Some(a.cell_dimension()? + b.cell_dimension()?)
            }
            Suspension(a) => a.cell_dimension().map(|d| if d == 0 { 0 } else { d + 1 }),
            Loop(_) => None,
        }
    }

    /// Wedge summands, with a non-wedge treated as a single summand and a
    /// point as none.
    pub fn wedge_summands(&self) -> Vec<&SpaceExpr> {
        match self {
            Point => vec![],
            Wedge(parts) => parts.iter().flat_map(SpaceExpr::wedge_summands).collect(),
            other => vec![other],
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Point => json!("point"),
            Sphere(n) => json!({ "sphere": n }),
            Moore(n, k) => json!({ "moore": [n, k] }),
            MooreGroup(n, t) => {
                let orders: Vec<u64> = t.iter().map(PrimePower::value).collect();
                json!({ "moore_group": [n, orders] })
            }
            Wedge(parts) => json!({ "wedge": parts.iter().map(SpaceExpr::to_json).collect::<Vec<_>>() }),
            Product(a, b) => json!({ "product": [a.to_json(), b.to_json()] }),
            Smash(a, b) => json!({ "smash": [a.to_json(), b.to_json()] }),
            HalfSmash(a, b) => json!({ "halfsmash": [a.to_json(), b.to_json()] }),
            Suspension(a) => json!({ "susp": a.to_json() }),
            Loop(a) => json!({ "loop": a.to_json() }),
        }
    }

    /// Parses the JSON expression schema and validates constructor ranges.
    pub fn from_json(v: &Value) -> Result<SpaceExpr> {
        let e = parse_value(v)?;
        e.validate()?;
        Ok(e)
    }

    pub fn from_json_str(s: &str) -> Result<SpaceExpr> {
        let v: Value = serde_json::from_str(s)
            .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
        Self::from_json(&v)
    }
}

fn parse_value(v: &Value) -> Result<SpaceExpr> {
    let bad = |what: &str| Error::Parse(format!("{what}: {v}"));
    match v {
        Value::String(s) if s == "point" => Ok(Point),
        Value::Object(map) if map.len() == 1 => {
            let (key, arg) = map.iter().next().expect("one entry");
            let pair = |arg: &Value| -> Result<(SpaceExpr, SpaceExpr)> {
                match arg.as_array().map(Vec::as_slice) {
                    Some([a, b]) => Ok((parse_value(a)?, parse_value(b)?)),
                    _ => Err(bad(&format!("`{key}` takes a two-element array"))),
                }
            };
            let dim = |x: &Value| -> Result<u32> {
                x.as_u64()
                    .and_then(|n| u32::try_from(n).ok())
                    .ok_or_else(|| bad("dimension must be a nonnegative integer"))
            };
            match key.as_str() {
                "sphere" => Ok(Sphere(dim(arg)?)),
                "moore" => match arg.as_array().map(Vec::as_slice) {
                    Some([n, k]) => Ok(Moore(
                        dim(n)?,
                        k.as_i64().ok_or_else(|| bad("Moore coefficient must be an integer"))?,
                    )),
                    _ => Err(bad("`moore` takes [n, k]")),
                },
                "moore_group" => match arg.as_array().map(Vec::as_slice) {
                    Some([n, t]) => {
                        let orders = t.as_array().ok_or_else(|| bad("`moore_group` takes [n, [q, ...]]"))?;
                        let mut t = orders
                            .iter()
                            .map(|q| {
                                q.as_u64()
                                    .ok_or_else(|| bad("torsion order must be a positive integer"))
                                    .and_then(PrimePower::from_order)
                            })
                            .collect::<Result<Vec<_>>>()?;
                        t.sort();
                        Ok(MooreGroup(dim(n)?, t))
                    }
                    _ => Err(bad("`moore_group` takes [n, [q, ...]]")),
                },
                "wedge" => {
                    let parts = arg.as_array().ok_or_else(|| bad("`wedge` takes an array"))?;
                    Ok(Wedge(parts.iter().map(parse_value).collect::<Result<_>>()?))
                }
                "product" => pair(arg).map(|(a, b)| SpaceExpr::product(a, b)),
                "smash" => pair(arg).map(|(a, b)| SpaceExpr::smash(a, b)),
                "halfsmash" => pair(arg).map(|(a, b)| SpaceExpr::half_smash(a, b)),
                "susp" => Ok(SpaceExpr::susp(parse_value(arg)?)),
                "loop" => Ok(SpaceExpr::loop_of(parse_value(arg)?)),
                other => Err(bad(&format!("unknown constructor `{other}`"))),
            }
        }
        _ => Err(bad("not a space expression")),
    }
}

impl Serialize for SpaceExpr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SpaceExpr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        SpaceExpr::from_json(&v).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for SpaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point => write!(f, "*"),
            Sphere(n) => write!(f, "S^{n}"),
            Moore(n, k) => write!(f, "P^{n}({k})"),
            MooreGroup(n, t) => {
                let orders: Vec<String> = t.iter().map(|q| q.value().to_string()).collect();
                write!(f, "P^{n}({})", orders.join("+"))
            }
            Wedge(parts) => {
                let s: Vec<String> = parts.iter().map(ToString::to_string).collect();
                write!(f, "({})", s.join(" ∨ "))
            }
            Product(a, b) => write!(f, "({a} × {b})"),
            Smash(a, b) => write!(f, "({a} ∧ {b})"),
            HalfSmash(a, b) => write!(f, "({a} ⋊ {b})"),
            Suspension(a) => write!(f, "Σ{a}"),
            Loop(a) => write!(f, "Ω{a}"),
        }
    }
}
