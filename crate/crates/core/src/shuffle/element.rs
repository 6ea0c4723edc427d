use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::cartan::Weight;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::words::Word;

/// A finite combination of words with rational-function coefficients. No zero is stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<Word, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The empty word, i.e. the unit.
    pub fn one() -> Self {
        Self::word(Word::empty())
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, Scalar::one())
    }

    pub fn term(w: Word, c: Scalar) -> Self {
        let mut e = Self::zero();
        e.add_term(w, c);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut e = Self::zero();
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Scalar, other: &Element) {
        if c.is_zero() {
            return;
        }
        for (w, x) in &other.terms {
            self.add_term(w.clone(), c * x);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    pub fn map_coefficients(&self, f: impl Fn(&Scalar) -> Scalar) -> Element {
        Element::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }

    /// Terms in increasing lexicographic order of words.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn words(&self) -> impl DoubleEndedIterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn get(&self, w: &Word) -> Option<&Scalar> {
        self.terms.get(w)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest word with nonzero coefficient, and that coefficient.
    pub fn max_word(&self) -> Result<(Word, Scalar)> {
        self.terms
            .iter()
            .next_back()
            .map(|(w, c)| (w.clone(), c.clone()))
            .ok_or(Error::ZeroElement)
    }

    /// The common weight of all words, if there is one. `None` for zero.
    pub fn weight(&self, n: usize) -> Option<Weight> {
        let mut it = self.terms.keys();
        let first = it.next()?.weight(n);
        it.all(|w| w.weight(n) == first).then_some(first)
    }

    pub fn homogeneous_weight(&self, n: usize) -> Result<Weight> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        self.weight(n).ok_or(Error::Inhomogeneous)
    }

    pub fn is_homogeneous(&self, n: usize) -> bool {
        self.is_zero() || self.weight(n).is_some()
    }

    /// True when every coefficient is a Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.terms.values().all(Scalar::is_laurent)
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, first: bool, w: &Word, c: &Scalar) -> fmt::Result {
    let text = c.to_string();
    let single = c.is_laurent() && c.numerator().terms().len() == 1;
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) if single => (true, rest.to_string()),
        _ => (false, text.clone()),
    };
    match (first, negative) {
        (true, true) => write!(f, "-")?,
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
        (true, false) => {}
    }
    if body == "1" {
        write!(f, "{w}")
    } else if single || !c.is_laurent() {
        write!(f, "{body} {w}")
    } else {
        write!(f, "({body}) {w}")
    }
}

impl fmt::Display for Element {
    /// `c1 w1 + c2 w2 + ...` in increasing word order; `0` for zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            write_term(f, k == 0, w, c)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({self})")
    }
}

impl Add<&Element> for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(&Scalar::one(), rhs);
        out
    }
}

impl Sub<&Element> for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(&-Scalar::one(), rhs);
        out
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&-Scalar::one())
    }
}

/// A finite combination of `u ⊗ v` with rational-function coefficients.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct TensorElement {
    terms: BTreeMap<(Word, Word), Scalar>,
}

impl TensorElement {
    pub fn add_term(&mut self, left: Word, right: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (left, right);
        let sum = match self.terms.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Word, Word), &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, left: &Word, right: &Word) -> Scalar {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, ((l, r), c)) in self.terms.iter().enumerate() {
            let label = format!("{l}⊗{r}");
            if k > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{label}")?;
            } else {
                write!(f, "({c}) {label}")?;
            }
        }
        Ok(())
    }
}

/// JSON shape `{"weight":[..],"terms":[{"word":[..],"coeff":".."}]}`, terms in decreasing word order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub weight: Option<Weight>,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub word: Word,
    pub coeff: String,
}

impl Element {
    pub fn to_json(&self, n: usize) -> ElementJson {
        ElementJson {
            weight: self.weight(n),
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(w, c)| TermJson {
                    word: w.clone(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &ElementJson) -> Result<Element> {
        let mut e = Element::zero();
        for t in &json.terms {
            e.add_term(t.word.clone(), t.coeff.parse()?);
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn display_forms() {
        let e = Element::from_terms([(w("(1,2)"), Scalar::one()), (w("(2,1)"), Scalar::q_pow(2))]);
        assert_eq!(e.to_string(), "(1,2) + q^2 (2,1)");
        let e = Element::term(w("(2,2)"), "1 - q^-2".parse().unwrap());
        assert_eq!(e.to_string(), "(1 - q^-2) (2,2)");
        let e = Element::from_terms([
            (w("(1)"), Scalar::monomial(-1, 0)),
            (w("(2)"), Scalar::monomial(-3, 1)),
        ]);
        assert_eq!(e.to_string(), "-(1) - 3*q (2)");
        assert_eq!(Element::zero().to_string(), "0");
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut e = Element::word(w("(1)"));
        e.add_term(w("(1)"), -Scalar::one());
        assert!(e.is_zero());
        assert!(e.max_word().is_err());
    }

    #[test]
    fn json_round_trip() {
        let e = Element::from_terms([
            (w("(1,2)"), Scalar::one()),
            (w("(2,1)"), "(1)/(q^2 - 1)".parse().unwrap()),
        ]);
        let j = e.to_json(2);
        assert_eq!(j.weight, Some(Weight::new(vec![1, 1])));
        assert_eq!(j.terms[0].word, w("(2,1)"));
        let text = serde_json::to_string(&j).unwrap();
        let back: ElementJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Element::from_json(&back).unwrap(), e);
    }
}
