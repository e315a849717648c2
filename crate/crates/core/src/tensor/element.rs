use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::iter::Peekable;
use std::str::Chars;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A named generator of a graded tensor algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: usize) -> Self {
        Generator {
            name: name.into(),
            degree,
        }
    }
}

pub type Word = Vec<String>;

/// Integer combination of words in generator names. Like terms are
/// combined and zero coefficients never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    terms: BTreeMap<Word, BigInt>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(BigInt::one(), Vec::new())
    }

    pub fn generator(name: &str) -> Self {
        Self::term(BigInt::one(), vec![name.to_string()])
    }

    pub fn term(coeff: BigInt, word: Word) -> Self {
        let mut e = Self::zero();
        e.add_term(word, coeff);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    fn add_term(&mut self, word: Word, coeff: BigInt) {
        let slot = self.terms.entry(word.clone()).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&word);
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add(&other.scale(&-BigInt::one()))
    }

    /// Concatenation product.
    pub fn mul(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend(w2.iter().cloned());
                out.add_term(w, c1 * c2);
            }
        }
        out
    }

    /// Total degree, `None` for zero. Fails on unknown generators or mixed
    /// degrees.
    pub fn degree(&self, gens: &[Generator]) -> Result<Option<usize>> {
        let table = degree_table(gens);
        let mut found = None;
        for w in self.terms.keys() {
            let d = word_degree(w, &table)?;
            match found {
                None => found = Some(d),
                Some(e) if e != d => {
                    return Err(Error::Validation(format!(
                        "`{self}` is not homogeneous: degrees {e} and {d}"
                    )))
                }
                _ => {}
            }
        }
        Ok(found)
    }

    /// Graded commutator `xy - (-1)^{|x||y|} yx` of homogeneous elements.
    pub fn commutator(x: &AlgebraElement, y: &AlgebraElement, gens: &[Generator]) -> Result<AlgebraElement> {
        let (Some(dx), Some(dy)) = (x.degree(gens)?, y.degree(gens)?) else {
            return Ok(AlgebraElement::zero());
        };
        let yx = y.mul(x);
        Ok(if dx * dy % 2 == 0 {
            x.mul(y).sub(&yx)
        } else {
            x.mul(y).add(&yx)
        })
    }

    /// Parses the relation grammar
    ///
    /// ```text
    /// expr   := term (('+' | '-') term)*
    /// term   := ['+' | '-'] factor ('*' factor)*
    /// factor := integer | name | '[' expr ',' expr ']' | '(' expr ')'
    /// ```
    ///
    /// Names must be generators in `gens`; brackets are graded commutators.
    pub fn parse(text: &str, gens: &[Generator]) -> Result<AlgebraElement> {
        let mut p = Parser {
            chars: text.chars().peekable(),
            text,
            gens,
        };
        let e = p.expr()?;
        p.skip_ws();
        if let Some(c) = p.chars.peek() {
            return Err(Error::Parse(format!("unexpected `{c}` in relation `{text}`")));
        }
        Ok(e)
    }
}

/// The graded commutator of two generators.
pub fn graded_commutator(x: &Generator, y: &Generator) -> AlgebraElement {
    let gens = [x.clone(), y.clone()];
    AlgebraElement::commutator(
        &AlgebraElement::generator(&x.name),
        &AlgebraElement::generator(&y.name),
        &gens,
    )
    .expect("generators are homogeneous")
}

pub(crate) fn degree_table(gens: &[Generator]) -> HashMap<&str, usize> {
    gens.iter().map(|g| (g.name.as_str(), g.degree)).collect()
}

fn word_degree(w: &[String], table: &HashMap<&str, usize>) -> Result<usize> {
    w.iter()
        .map(|x| {
            table
                .get(x.as_str())
                .copied()
                .ok_or_else(|| Error::Validation(format!("unknown generator `{x}`")))
        })
        .sum()
}

struct Parser<'a> {
    chars: Peekable<Chars<'a>>,
    text: &'a str,
    gens: &'a [Generator],
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.chars.peek().is_some_and(|c| c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().copied()
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.chars.next();
                Ok(())
            }
            other => Err(Error::Parse(format!(
                "expected `{want}`, found {} in relation `{}`",
                other.map_or("end of input".to_string(), |c| format!("`{c}`")),
                self.text
            ))),
        }
    }

    fn expr(&mut self) -> Result<AlgebraElement> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.chars.next();
                    acc = acc.add(&self.term()?);
                }
                Some('-') => {
                    self.chars.next();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<AlgebraElement> {
        let negate = match self.peek() {
            Some('-') => {
                self.chars.next();
                true
            }
            Some('+') => {
                self.chars.next();
                false
            }
            _ => false,
        };
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.chars.next();
            acc = acc.mul(&self.factor()?);
        }
        Ok(if negate { acc.scale(&-BigInt::one()) } else { acc })
    }

    fn factor(&mut self) -> Result<AlgebraElement> {
        match self.peek() {
            Some('(') => {
                self.chars.next();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some('[') => {
                self.chars.next();
                let x = self.expr()?;
                self.expect(',')?;
                let y = self.expr()?;
                self.expect(']')?;
                AlgebraElement::commutator(&x, &y, self.gens)
            }
            Some(c) if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(d) = self.chars.peek().copied().filter(char::is_ascii_digit) {
                    digits.push(d);
                    self.chars.next();
                }
                let n: BigInt = digits.parse().expect("digits");
                Ok(AlgebraElement::term(n, Vec::new()))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(d) = self.chars.peek().copied().filter(|d| d.is_alphanumeric() || *d == '_') {
                    name.push(d);
                    self.chars.next();
                }
                if !self.gens.iter().any(|g| g.name == name) {
                    return Err(Error::Parse(format!(
                        "unknown generator `{name}` in relation `{}`",
                        self.text
                    )));
                }
                Ok(AlgebraElement::generator(&name))
            }
            other => Err(Error::Parse(format!(
                "expected a factor, found {} in relation `{}`",
                other.map_or("end of input".to_string(), |c| format!("`{c}`")),
                self.text
            ))),
        }
    }
}

/// Canonical form: words in lexicographic order, `*` between letters and
/// coefficients, signs folded into the joining operator.
impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || w.is_empty() {
                parts.push(mag.to_string());
            }
            parts.extend(w.iter().cloned());
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}
