//! Words over `I = {1,...,n}`, Lyndon factorization, dominant words and their statistics.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cartan::{Parity, Root, RootDatum, RootKind, Weight};
use crate::error::{Error, ParseError, Result};
use crate::scalar::{super_qfact, LaurentPoly};

/// A word `(i_1,...,i_d)`. The derived order is lexicographic with proper prefixes smaller.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn new(letters: Vec<u8>) -> Self {
        Self(letters)
    }

    pub fn letter(i: u8) -> Self {
        Self(vec![i])
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Checks every letter lies in `1..=n`.
    pub fn validate(&self, n: usize) -> Result<()> {
        match self.0.iter().find(|&&l| l == 0 || usize::from(l) > n) {
            Some(&letter) => Err(Error::LetterOutOfRange { letter, n }),
            None => Ok(()),
        }
    }

    pub fn weight(&self, n: usize) -> Weight {
        let mut c = vec![0u32; n];
        for &l in &self.0 {
            c[usize::from(l) - 1] += 1;
        }
        Weight::new(c)
    }

    /// Parity of the weight: the number of `n` letters mod 2.
    pub fn parity(&self, n: usize) -> Parity {
        let count = self.0.iter().filter(|&&l| usize::from(l) == n).count();
        Parity::from_int(count as i64)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, m: u32) -> Word {
        Word(self.0.repeat(m as usize))
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// `(i_{a+1},...,i_b)` for `a <= b`.
    pub fn slice(&self, a: usize, b: usize) -> Word {
        Word(self.0[a..b].to_vec())
    }

    pub fn is_lyndon(&self) -> Result<bool> {
        if self.is_empty() {
            return Err(Error::EmptyWord("Lyndon property"));
        }
        Ok(lyndon_factors(&self.0).len() == 1)
    }

    pub fn canonical_factorization(&self) -> Result<CanonicalFactorization> {
        if self.is_empty() {
            return Err(Error::EmptyWord("canonical factorization"));
        }
        let mut factors: Vec<(Word, u32)> = Vec::new();
        for f in lyndon_factors(&self.0) {
            match factors.last_mut() {
                Some((last, m)) if last.0 == f => *m += 1,
                _ => factors.push((Word(f.to_vec()), 1)),
            }
        }
        Ok(CanonicalFactorization { factors })
    }
}

/// Duval's scan: the non-increasing Lyndon factorization as slices.
fn lyndon_factors(s: &[u8]) -> Vec<&[u8]> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < s.len() {
        let (mut j, mut k) = (i + 1, i);
        while j < s.len() && s[k] <= s[j] {
            k = if s[k] < s[j] { i } else { k + 1 };
            j += 1;
        }
        while i <= k {
            out.push(&s[i..i + j - k]);
            i += j - k;
        }
    }
    out
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Word {
    type Err = ParseError;

    /// Accepts `(i1,...,id)`, `[i1,...,id]` or bare `i1,...,id`; `()` is the empty word.
    fn from_str(text: &str) -> Result<Self, ParseError> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .or_else(|| compact.strip_prefix('[').and_then(|s| s.strip_suffix(']')))
            .unwrap_or(&compact);
        if inner.is_empty() {
            return if compact.is_empty() {
                Err(ParseError::new("word", text, "empty"))
            } else {
                Ok(Word::empty())
            };
        }
        inner
            .split(',')
            .map(|tok| match tok.parse::<u8>() {
                Ok(l) if l > 0 => Ok(l),
                _ => Err(ParseError::new("word", text, tok)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

/// `i_1^{n_1} ... i_d^{n_d}` with strictly decreasing Lyndon factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalFactorization {
    pub factors: Vec<(Word, u32)>,
}

impl CanonicalFactorization {
    pub fn to_word(&self) -> Word {
        Word(self.factors.iter().flat_map(|(w, m)| w.pow(*m).0).collect())
    }
}

impl fmt::Display for CanonicalFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(w, m)| {
                if *m == 1 {
                    w.to_string()
                } else {
                    format!("{w}^{m}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `iota^+`: `alpha(i,j) -> (i,...,j)`, `beta(i,j) -> (i,...,n,n,...,j)`.
pub fn iota_plus(root: &Root, n: usize) -> Word {
    let up = |a: usize, b: usize| (a..=b).map(|l| l as u8);
    match root.kind {
        RootKind::Alpha => Word(up(root.i, root.j).collect()),
        RootKind::Beta => Word(up(root.i, n).chain(up(root.j, n).rev()).collect()),
    }
}

pub fn iota_plus_inverse(w: &Word, n: usize) -> Result<Root> {
    let not_dominant = || Error::NotDominantLyndon(w.to_string());
    let l: Vec<usize> = w.0.iter().map(|&x| usize::from(x)).collect();
    let (&first, &last) = (l.first().ok_or_else(not_dominant)?, l.last().unwrap());
    if first == 0 || l.iter().any(|&x| x > n) {
        return Err(not_dominant());
    }
    let candidate = if l.windows(2).all(|p| p[1] == p[0] + 1) {
        Root::alpha(first, last)
    } else {
        Root::beta(first, last)
    };
    if candidate.is_valid(n) && iota_plus(&candidate, n) == *w {
        Ok(candidate)
    } else {
        Err(not_dominant())
    }
}

/// `L^+` listed in the order of the reduced positive roots.
pub fn dominant_lyndon_words(datum: &RootDatum) -> Vec<Word> {
    datum
        .reduced_positive_roots()
        .iter()
        .map(|r| iota_plus(r, datum.rank()))
        .collect()
}

pub fn is_dominant_lyndon(w: &Word, n: usize) -> bool {
    iota_plus_inverse(w, n).is_ok()
}

/// Every canonical factor lies in `L^+`. The empty word counts as dominant.
pub fn is_dominant(w: &Word, n: usize) -> bool {
    match w.canonical_factorization() {
        Err(_) => true,
        Ok(cf) => cf.factors.iter().all(|(f, _)| is_dominant_lyndon(f, n)),
    }
}

pub fn check_dominant(w: &Word, n: usize) -> Result<CanonicalFactorization> {
    w.validate(n)?;
    if w.is_empty() {
        return Ok(CanonicalFactorization { factors: vec![] });
    }
    if !is_dominant(w, n) {
        return Err(Error::NotDominant(w.to_string()));
    }
    w.canonical_factorization()
}

/// All words of weight `nu`, in increasing lexicographic order.
pub fn words_of_weight(nu: &Weight) -> Vec<Word> {
    let mut remaining: Vec<u32> = nu.coefficients().to_vec();
    let total = nu.height() as usize;
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(total);
    fn rec(remaining: &mut [u32], total: usize, current: &mut Vec<u8>, out: &mut Vec<Word>) {
        if current.len() == total {
            out.push(Word(current.clone()));
            return;
        }
        for i in 0..remaining.len() {
            if remaining[i] > 0 {
                remaining[i] -= 1;
                current.push(i as u8 + 1);
                rec(remaining, total, current, out);
                current.pop();
                remaining[i] += 1;
            }
        }
    }
    rec(&mut remaining, total, &mut current, &mut out);
    out
}

/// Dominant words of weight `nu` in decreasing lexicographic order, via Kostant partitions:
/// each multiset of positive roots summing to `nu` maps to the decreasing concatenation of
/// its `iota^+` images.
pub fn dominant_words(datum: &RootDatum, nu: &Weight) -> Result<Vec<Word>> {
    datum.check_rank(nu)?;
    let n = datum.rank();
    let mut lyndon: Vec<(Word, Weight)> = datum
        .reduced_positive_roots()
        .iter()
        .map(|r| (iota_plus(r, n), r.weight(n)))
        .collect();
    lyndon.sort_by(|a, b| b.0.cmp(&a.0));

    type Memo = HashMap<(usize, Weight), Vec<Vec<usize>>>;
    fn partitions(
        start: usize,
        rest: &Weight,
        roots: &[(Word, Weight)],
        memo: &mut Memo,
    ) -> Vec<Vec<usize>> {
        if rest.is_zero() {
            return vec![vec![]];
        }
        if let Some(hit) = memo.get(&(start, rest.clone())) {
            return hit.clone();
        }
        let mut out = Vec::new();
        for (k, (_, w)) in roots.iter().enumerate().skip(start) {
            if let Some(next) = rest.checked_sub(w) {
                for mut tail in partitions(k, &next, roots, memo) {
                    tail.insert(0, k);
                    out.push(tail);
                }
            }
        }
        memo.insert((start, rest.clone()), out.clone());
        out
    }

    let mut memo = Memo::new();
    let mut words: Vec<Word> = partitions(0, nu, &lyndon, &mut memo)
        .into_iter()
        .map(|p| Word(p.iter().flat_map(|&k| lyndon[k].0 .0.clone()).collect()))
        .collect();
    words.sort_by(|a, b| b.cmp(a));
    words.dedup();
    Ok(words)
}

/// Same set as [`dominant_words`], by filtering every word of weight `nu`.
pub fn dominant_words_by_filter(datum: &RootDatum, nu: &Weight) -> Result<Vec<Word>> {
    datum.check_rank(nu)?;
    let mut words: Vec<Word> = words_of_weight(nu)
        .into_iter()
        .filter(|w| is_dominant(w, datum.rank()))
        .collect();
    words.reverse();
    Ok(words)
}

/// `(xi(i), s(i))` from the canonical factorization of a dominant word.
pub fn xi_and_s(datum: &RootDatum, w: &Word) -> Result<(i64, i64)> {
    let cf = check_dominant(w, datum.rank())?;
    Ok(xi_and_s_of(datum, &cf))
}

pub(crate) fn xi_and_s_of(datum: &RootDatum, cf: &CanonicalFactorization) -> (i64, i64) {
    let n = datum.rank();
    let (mut xi, mut s) = (0, 0);
    for (f, m) in &cf.factors {
        let m = i64::from(*m);
        let wt = f.weight(n);
        xi += wt.parity().as_int() * m * (m - 1) / 2;
        s += datum.bilinear(&wt, &wt).expect("same rank") * m * (m - 1) / 4;
    }
    (xi, s)
}

/// `[m]_i` for a word `i`: parity `p(i)` and `q_i = q^{(|i|,|i|)/2}`.
pub fn word_qfact(datum: &RootDatum, w: &Word, m: u32) -> LaurentPoly {
    let wt = w.weight(datum.rank());
    let s = datum.bilinear(&wt, &wt).expect("same rank") / 2;
    super_qfact(
        m,
        wt.parity(),
        u32::try_from(s).expect("form is positive definite"),
    )
}

/// `varsigma_i = prod [n_k]_{i_k}!` for a dominant word.
pub fn varsigma(datum: &RootDatum, w: &Word) -> Result<LaurentPoly> {
    check_dominant(w, datum.rank())?;
    Ok(varsigma_any(datum, w))
}

/// `varsigma` extended to every word through its canonical factorization.
pub fn varsigma_any(datum: &RootDatum, w: &Word) -> LaurentPoly {
    match w.canonical_factorization() {
        Err(_) => LaurentPoly::one(),
        Ok(cf) => cf.factors.iter().fold(LaurentPoly::one(), |acc, (f, m)| {
            acc * word_qfact(datum, f, *m)
        }),
    }
}
