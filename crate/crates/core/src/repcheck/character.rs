use std::fmt;

use crate::bases::Algebra;
use crate::cartan::{Root, RootDatum};
use crate::error::{Error, Result};
use crate::scalar::{LaurentPoly, Scalar};
use crate::shuffle::{shuffle, Element};
use crate::words::{check_dominant, iota_plus_inverse, xi_and_s_of, Word};

use super::module::{cuspidal_module, GradedSuperModule};

/// Graded super-character: words weighted by signed graded dimensions.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Character(Element);

impl Character {
    /// Fails unless every coefficient is a Laurent polynomial.
    pub fn from_element(e: Element) -> Result<Self> {
        if !e.is_laurent() {
            return Err(Error::Inconsistent(format!(
                "character with non-Laurent coefficient: {e}"
            )));
        }
        Ok(Self(e))
    }

    /// The character of the one-dimensional even module of weight zero.
    pub fn trivial() -> Self {
        Self(Element::one())
    }

    pub fn element(&self) -> &Element {
        &self.0
    }

    pub fn into_element(self) -> Element {
        self.0
    }

    pub fn coeff(&self, w: &Word) -> LaurentPoly {
        self.0
            .coeff(w)
            .to_laurent()
            .expect("characters are Laurent")
    }

    /// `Π^a {m}`: multiplies by `(-1)^a q^m`.
    pub fn shifted(&self, parity_shift: i64, grading_shift: i64) -> Self {
        Self(self.0.scale(&Scalar::signed_q_pow(
            parity_shift.rem_euclid(2) == 1,
            grading_shift,
        )))
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `Σ_v (-1)^{p(v)} q^{deg v} block(v)`.
pub fn character(m: &GradedSuperModule) -> Character {
    Character(Element::from_terms(m.basis.iter().map(|v| {
        (
            v.block.clone(),
            Scalar::signed_q_pow(v.parity.is_odd(), v.deg),
        )
    })))
}

/// `ch(M ∘ N) = ch(N) ⋄ ch(M)`.
pub fn induced_character(datum: &RootDatum, ch_m: &Character, ch_n: &Character) -> Character {
    Character(shuffle(datum, &ch_n.0, &ch_m.0))
}

pub fn cuspidal_character(datum: &RootDatum, root: &Root) -> Result<Character> {
    Ok(character(&cuspidal_module(datum, root)?))
}

/// `ch(L_β ∘ ... ∘ L_β)` with `m` factors.
pub fn cuspidal_power_character(datum: &RootDatum, root: &Root, m: u32) -> Result<Character> {
    let ch = cuspidal_character(datum, root)?;
    Ok((0..m).fold(Character::trivial(), |acc, _| {
        induced_character(datum, &acc, &ch)
    }))
}

/// Character of `Π^{xi} (L_{β_1}^{∘n_1} ∘ ... ∘ L_{β_d}^{∘n_d}) {s}` along the canonical
/// factorization of `w`, before comparison with `E*_w`.
pub fn standard_character_unchecked(datum: &RootDatum, w: &Word) -> Result<Character> {
    let n = datum.rank();
    let cf = check_dominant(w, n)?;
    let mut ch = Character::trivial();
    for (f, m) in &cf.factors {
        let root = iota_plus_inverse(f, n)?;
        let power = cuspidal_power_character(datum, &root, *m)?;
        ch = induced_character(datum, &ch, &power);
    }
    let (xi, s) = xi_and_s_of(datum, &cf);
    Ok(ch.shifted(xi, s))
}

/// The standard character, which must coincide with `E*_w`.
pub fn standard_character(algebra: &Algebra, w: &Word) -> Result<Character> {
    let ch = standard_character_unchecked(algebra.datum(), w)?;
    let star = algebra.dual_pbw(w)?;
    if *ch.element() != star {
        return Err(Error::Inconsistent(format!(
            "standard character of {w} is {ch}, but E* is {star}"
        )));
    }
    Ok(ch)
}

/// The largest word of a nonzero character.
pub fn highest_weight(ch: &Character) -> Result<Word> {
    Ok(ch.0.max_word()?.0)
}
