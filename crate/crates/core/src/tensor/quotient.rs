use std::collections::HashSet;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::element::{degree_table, AlgebraElement, Generator};
use super::field::{axpy, collect, Arith, Modp, Rationals, SVec};
use crate::error::{Error, Result};
use crate::graded::{CoefficientRing, Field, PowerSeries};

/// Default degree cap for presentations with at most two generators.
pub const DEFAULT_CAP_FEW: usize = 24;
/// Default degree cap for presentations with three or more generators.
pub const DEFAULT_CAP_MANY: usize = 14;

/// `T(V) / (relations)` over a field: graded generators of positive degree
/// and homogeneous relations of positive degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<Generator>,
    relations: Vec<AlgebraElement>,
    field: Field,
}

impl Presentation {
    pub fn new(generators: Vec<Generator>, relations: Vec<AlgebraElement>, field: Field) -> Result<Self> {
        CoefficientRing::from(field).validate()?;
        let mut seen = HashSet::new();
        for g in &generators {
            if g.degree == 0 {
                return Err(Error::Validation(format!("generator `{}` has degree 0", g.name)));
            }
            if !seen.insert(g.name.as_str()) {
                return Err(Error::Validation(format!("duplicate generator `{}`", g.name)));
            }
        }
        for r in &relations {
            if r.degree(&generators)? == Some(0) {
                return Err(Error::Validation(format!("relation `{r}` has degree 0")));
            }
        }
        Ok(Presentation {
            generators,
            relations,
            field,
        })
    }

    /// Builds a presentation from relation text in the element grammar.
    pub fn parse<S: AsRef<str>>(generators: Vec<Generator>, relations: &[S], field: Field) -> Result<Self> {
        let rels = relations
            .iter()
            .map(|t| AlgebraElement::parse(t.as_ref(), &generators))
            .collect::<Result<Vec<_>>>()?;
        Self::new(generators, rels, field)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[AlgebraElement] {
        &self.relations
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn with_relation(&self, r: AlgebraElement) -> Result<Self> {
        let mut rels = self.relations.clone();
        rels.push(r);
        Self::new(self.generators.clone(), rels, self.field)
    }

    pub fn with_relations(&self, relations: Vec<AlgebraElement>) -> Result<Self> {
        Self::new(self.generators.clone(), relations, self.field)
    }

    pub fn with_field(&self, field: Field) -> Result<Self> {
        Self::new(self.generators.clone(), self.relations.clone(), field)
    }

    pub fn default_cap(&self) -> usize {
        if self.generators.len() <= 2 {
            DEFAULT_CAP_FEW
        } else {
            DEFAULT_CAP_MANY
        }
    }
}

#[derive(Serialize, Deserialize)]
struct PresentationDoc {
    generators: Vec<Generator>,
    relations: Vec<String>,
    field: String,
}

impl Serialize for Presentation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PresentationDoc {
            generators: self.generators.clone(),
            relations: self.relations.iter().map(ToString::to_string).collect(),
            field: self.field.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Presentation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = PresentationDoc::deserialize(d)?;
        let ring: CoefficientRing = doc.field.parse().map_err(serde::de::Error::custom)?;
        let field = ring.require_field().map_err(serde::de::Error::custom)?;
        Presentation::parse(doc.generators, &doc.relations, field).map_err(serde::de::Error::custom)
    }
}

/// Dimensions of the free tensor algebra: `1 / (1 - Σ t^{d_i})`.
pub fn free_algebra_dims(degrees: &[usize], n: usize) -> Result<PowerSeries> {
    let mut denom = PowerSeries::one(n);
    for &d in degrees {
        if d == 0 {
            return Err(Error::Validation("generator of degree 0".into()));
        }
        denom = &denom - &PowerSeries::monomial(d, 1, n);
    }
    denom.reciprocal()
}

/// Degreewise dimensions of `T(V)/(relations)` through degree `n`.
///
/// `cap` overrides [`Presentation::default_cap`]; asking for more degrees
/// than the cap is a resource error.
pub fn quotient_dims(p: &Presentation, n: usize, cap: Option<usize>) -> Result<PowerSeries> {
    let cap = cap.unwrap_or_else(|| p.default_cap());
    if n > cap {
        return Err(Error::Resource(format!(
            "quotient dimensions requested through degree {n}, cap is {cap} for {} generators",
            p.generators.len()
        )));
    }
    let dims = match p.field {
        Field::Prime(q) => Engine::new(Modp(q), p).run(n),
        Field::Rationals => Engine::new(Rationals, p).run(n),
    };
    Ok(PowerSeries::from_coeffs(dims, n))
}

/// Computes `A_d = (⊕_g A_{d-|g|}·g) / span{b·r}` degree by degree, where
/// `b` runs over a basis of `A_{d-|r|}`. This is exact because
/// `I_d = Σ_g I_{d-|g|}·g + Σ_r T_{d-|r|}·r` for the two-sided ideal `I`.
///
/// Basis vectors of `A_d` are the non-pivot columns `(g, j)`; right
/// multiplication by each generator is stored as reduced images so that
/// `b·r` is evaluated letter by letter.
struct Engine<A: Arith> {
    f: A,
    degrees: Vec<usize>,
    /// `(degree, [(word as generator indices, coefficient)])`.
    relations: Vec<(usize, Vec<(Vec<usize>, A::E)>)>,
    dims: Vec<usize>,
    /// `right_mul[e][g][j]`: image of basis element `j` of `A_e` times `g`.
    right_mul: Vec<Vec<Vec<SVec<A::E>>>>,
}

impl<A: Arith> Engine<A> {
    fn new(f: A, p: &Presentation) -> Self {
        let table = degree_table(&p.generators);
        let index = |name: &str| p.generators.iter().position(|g| g.name == name).expect("validated");
        let relations = p
            .relations
            .iter()
            .filter_map(|r| {
                let terms: Vec<(Vec<usize>, A::E)> = r
                    .terms()
                    .map(|(w, c)| (w.iter().map(|x| index(x)).collect(), f.from_int(c)))
                    .filter(|(_, c)| !f.is_zero(c))
                    .collect();
                let word = &terms.first()?.0;
                let d = word.iter().map(|&g| table[p.generators[g].name.as_str()]).sum();
                Some((d, terms))
            })
            .collect();
        Engine {
            f,
            degrees: p.generators.iter().map(|g| g.degree).collect(),
            relations,
            dims: Vec::new(),
            right_mul: Vec::new(),
        }
    }

    fn run(mut self, n: usize) -> Vec<usize> {
        self.dims.push(1);
        self.right_mul.push(vec![Vec::new(); self.degrees.len()]);
        for d in 1..=n {
            self.step(d, d < n);
        }
        self.dims
    }

    /// Image of basis element `j` of `A_e` under right multiplication by a
    /// word, stopping before the last letter.
    fn multiply_prefix(&self, e: usize, j: usize, word: &[usize]) -> (usize, SVec<A::E>) {
        let one = self.f.from_int(&BigInt::from(1));
        let mut deg = e;
        let mut v: SVec<A::E> = vec![(j as u32, one)];
        for &g in word {
            let table = &self.right_mul[deg][g];
            let mut items = Vec::new();
            for (i, x) in &v {
                for (c, y) in &table[*i as usize] {
                    items.push((*c, self.f.mul(x, y)));
                }
            }
            v = collect(&self.f, items);
            deg += self.degrees[g];
        }
        (deg, v)
    }

    fn step(&mut self, d: usize, store_products: bool) {
        let mut offsets = vec![None; self.degrees.len()];
        let mut total = 0usize;
        for (g, &dg) in self.degrees.iter().enumerate() {
            if dg <= d {
                offsets[g] = Some(total);
                total += self.dims[d - dg];
            }
        }

        let mut pivots: Vec<Option<SVec<A::E>>> = vec![None; total];
        let mut rank = 0usize;
        for (rd, terms) in &self.relations {
            if *rd > d {
                continue;
            }
            for j in 0..self.dims[d - rd] {
                let mut items = Vec::new();
                for (word, c) in terms {
                    let (last, prefix) = word.split_last().expect("positive degree");
                    let (_, v) = self.multiply_prefix(d - rd, j, prefix);
                    let off = offsets[*last].expect("degree fits") as u32;
                    items.extend(v.into_iter().map(|(i, x)| (off + i, self.f.mul(c, &x))));
                }
                let row = reduce(&self.f, &pivots, collect(&self.f, items));
                if let Some((lead, x)) = row.last() {
                    let lead = *lead as usize;
                    let s = self.f.inv(x);
                    let row = row.iter().map(|(c, y)| (*c, self.f.mul(&s, y))).collect();
                    pivots[lead] = Some(row);
                    rank += 1;
                }
            }
        }
        self.dims.push(total - rank);
        self.right_mul.push(vec![Vec::new(); self.degrees.len()]);
        if !store_products {
            return;
        }

        let mut basis_index = vec![u32::MAX; total];
        let mut next = 0u32;
        for (c, p) in pivots.iter().enumerate() {
            if p.is_none() {
                basis_index[c] = next;
                next += 1;
            }
        }
        let to_basis = |v: SVec<A::E>| -> SVec<A::E> {
            v.into_iter().map(|(c, x)| (basis_index[c as usize], x)).collect()
        };
        for (g, &dg) in self.degrees.iter().enumerate() {
            let Some(off) = offsets[g] else { continue };
            let e = d - dg;
            let images = (0..self.dims[e])
                .map(|j| {
                    let col = off + j;
                    match &pivots[col] {
                        None => vec![(basis_index[col], self.f.from_int(&BigInt::from(1)))],
                        Some(row) => {
                            // e_col ≡ e_col - row, whose entries all lie below col
                            let minus_one = self.f.from_int(&BigInt::from(-1));
                            let rest: SVec<A::E> = row[..row.len() - 1]
                                .iter()
                                .map(|(c, x)| (*c, self.f.mul(&minus_one, x)))
                                .collect();
                            to_basis(reduce(&self.f, &pivots, rest))
                        }
                    }
                })
                .collect();
            self.right_mul[e][g] = images;
        }
    }
}

/// Clears every pivot column from `v`, working from the highest column down.
/// Pivot rows are monic with the pivot as their largest column.
fn reduce<A: Arith>(f: &A, pivots: &[Option<SVec<A::E>>], mut v: SVec<A::E>) -> SVec<A::E> {
    let mut pos = v.len();
    while pos > 0 {
        let (c, x) = &v[pos - 1];
        if let Some(row) = &pivots[*c as usize] {
            let a = f.neg(x);
            let c = *c;
            v = axpy(f, &v, &a, row);
            pos = v.partition_point(|(k, _)| *k < c);
        } else {
            pos -= 1;
        }
    }
    v
}
