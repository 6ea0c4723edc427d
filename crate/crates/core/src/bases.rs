//! PBW, dual PBW and dual canonical bases, per weight.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::cartan::{Parity, Root, RootDatum, RootKind, Weight};
use crate::error::{Error, Result};
use crate::scalar::{super_qint, LaurentPoly, Scalar};
use crate::shuffle::{coefficient_bar, shuffle, shuffle_power, Element, FormEngine, Preimaged};
use crate::words::{
    check_dominant, dominant_words, iota_plus_inverse, varsigma_any, word_qfact, xi_and_s_of, Word,
};

/// All bases of one weight, indexed alike: `words[k]` labels `pbw[k]`, `dual_pbw[k]`,
/// `canonical[k]`. Words are in decreasing order.
#[derive(Debug, Clone)]
pub struct WeightBases {
    pub weight: Weight,
    pub words: Vec<Word>,
    pub pbw: Vec<Element>,
    pub norms: Vec<Scalar>,
    pub dual_pbw: Vec<Element>,
    pub canonical: Vec<Element>,
    /// `transition[i][k]`: coefficient of `E*_{words[k]}` in `b*_{words[i]}`.
    pub transition: Vec<Vec<LaurentPoly>>,
}

impl WeightBases {
    pub fn position(&self, w: &Word) -> Option<usize> {
        self.words.iter().position(|x| x == w)
    }
}

/// Entry point for all basis computations at a fixed rank, with caches.
#[derive(Debug)]
pub struct Algebra {
    form: FormEngine,
    pbw_cache: Mutex<HashMap<Word, Preimaged>>,
    weight_cache: Mutex<HashMap<Weight, Arc<WeightBases>>>,
}

/// `q^2 - q^-2`.
fn q2_minus_qm2() -> LaurentPoly {
    LaurentPoly::from_terms([(2, 1), (-2, -1)])
}

/// `[2]_n = -q + q^-1`.
fn two_n() -> LaurentPoly {
    super_qint(2, Parity::Odd, 1)
}

impl Algebra {
    pub fn new(n: usize) -> Self {
        Self::from_datum(RootDatum::osp(n))
    }

    pub fn from_datum(datum: RootDatum) -> Self {
        Self {
            form: FormEngine::new(datum),
            pbw_cache: Mutex::new(HashMap::new()),
            weight_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn datum(&self) -> &RootDatum {
        self.form.datum()
    }

    pub fn rank(&self) -> usize {
        self.datum().rank()
    }

    pub fn form_engine(&self) -> &FormEngine {
        &self.form
    }

    pub fn shuffle(&self, x: &Element, y: &Element) -> Element {
        shuffle(self.datum(), x, y)
    }

    pub fn form(&self, x: &Element, y: &Element) -> Result<Scalar> {
        self.form.form(x, y)
    }

    /// The scalar `c` with `E_{iota^+(root)} = c * iota^+(root)`:
    /// `(-1)^{j-i} (q^2-q^-2)^{j-i} q^{-N}` for `alpha(i,j)` and
    /// `(-1)^{j-i} (q^2-q^-2)^{2n-i-j+1} q^{-N} [2]_n^{-1}` for `beta(i,j)`.
    ///
    /// With the exponent `2n-i-j` on beta roots, `E/(E,E)` comes out as
    /// `(q^2-q^-2)[2]_n i` rather than `[2]_n i`, which is the character of the 2-dimensional
    /// cuspidal module; the extra factor restores that.
    pub fn pbw_lyndon_scalar(&self, root: &Root) -> Result<Scalar> {
        let n = self.rank();
        if !root.is_valid(n) {
            return Err(Error::NotDominantLyndon(root.to_string()));
        }
        let (i, j) = (root.i as i64, root.j as i64);
        let sign = (j - i) % 2 == 1;
        let big_n = self.datum().big_n(&root.weight(n));
        let base = Scalar::signed_q_pow(sign, -big_n);
        Ok(match root.kind {
            RootKind::Alpha => base.mul_laurent(&q2_minus_qm2().pow((j - i) as u32)),
            RootKind::Beta => {
                let e = (2 * n as i64 - i - j + 1) as u32;
                base.mul_laurent(&q2_minus_qm2().pow(e)) / Scalar::from_laurent(two_n())
            }
        })
    }

    /// `E_i` for a dominant Lyndon word, with a preimage for the form.
    pub fn pbw_lyndon(&self, root: &Root) -> Result<Preimaged> {
        let c = self.pbw_lyndon_scalar(root)?;
        let w = crate::words::iota_plus(root, self.rank());
        Ok(self.form.lyndon_vector(&w)?.scale(&c))
    }

    /// `E_i = E_{i_d}^{(n_d)} ⋄ ... ⋄ E_{i_1}^{(n_1)}` for dominant `i`.
    pub fn pbw_preimaged(&self, w: &Word) -> Result<Preimaged> {
        let cf = check_dominant(w, self.rank())?;
        if let Some(hit) = self.pbw_cache.lock().unwrap().get(w) {
            return Ok(hit.clone());
        }
        let mut acc = Preimaged::one();
        for (f, m) in cf.factors.iter().rev() {
            let root = iota_plus_inverse(f, self.rank())?;
            let e = self.pbw_lyndon(&root)?;
            let mut power = Preimaged::one();
            for _ in 0..*m {
                power = power.shuffle(self.datum(), &e);
            }
            let fact = Scalar::from_laurent(word_qfact(self.datum(), f, *m));
            acc = acc.shuffle(self.datum(), &power.scale(&(Scalar::one() / fact)));
        }
        self.pbw_cache
            .lock()
            .unwrap()
            .insert(w.clone(), acc.clone());
        Ok(acc)
    }

    pub fn pbw(&self, w: &Word) -> Result<Element> {
        Ok(self.pbw_preimaged(w)?.element)
    }

    /// `(E_i, E_i)` straight from the form.
    pub fn pbw_norm_direct(&self, w: &Word) -> Result<Scalar> {
        let e = self.pbw_preimaged(w)?;
        Ok(FormEngine::pair_with_preimage(&e.element, &e.preimage))
    }

    /// `(E_i, E_i)` from the product formula, with Lyndon norms taken from the form.
    pub fn pbw_norm_product(&self, w: &Word) -> Result<Scalar> {
        let cf = check_dominant(w, self.rank())?;
        let (xi, s) = xi_and_s_of(self.datum(), &cf);
        let mut total = Scalar::signed_q_pow(xi % 2 == 1, -s);
        for (f, m) in &cf.factors {
            let norm = self.pbw_norm_direct(f)?;
            let fact = Scalar::from_laurent(word_qfact(self.datum(), f, *m));
            total = total * norm.pow(*m) / fact;
        }
        Ok(total)
    }

    /// `(E_i, E_i)`, failing if the two routes disagree.
    pub fn pbw_norm(&self, w: &Word) -> Result<Scalar> {
        let direct = self.pbw_norm_direct(w)?;
        let product = self.pbw_norm_product(w)?;
        if direct != product {
            return Err(Error::Inconsistent(format!(
                "(E,E) for {w}: form gives {direct}, product formula gives {product}"
            )));
        }
        Ok(direct)
    }

    /// `E*_i = E_i / (E_i, E_i)`.
    pub fn dual_pbw_by_norm(&self, w: &Word) -> Result<Element> {
        let e = self.pbw_preimaged(w)?;
        let norm = FormEngine::pair_with_preimage(&e.element, &e.preimage);
        Ok(e.element.scale(&(Scalar::one() / norm)))
    }

    /// `E*_i = (-1)^{xi} q^{s} (E*_{i_d})^{⋄n_d} ⋄ ... ⋄ (E*_{i_1})^{⋄n_1}`.
    pub fn dual_pbw_by_product(&self, w: &Word) -> Result<Element> {
        let cf = check_dominant(w, self.rank())?;
        let (xi, s) = xi_and_s_of(self.datum(), &cf);
        let mut acc = Element::term(Word::empty(), Scalar::signed_q_pow(xi % 2 == 1, s));
        for (f, m) in cf.factors.iter().rev() {
            let star = self.dual_pbw_by_norm(f)?;
            acc = shuffle(self.datum(), &acc, &shuffle_power(self.datum(), &star, *m));
        }
        Ok(acc)
    }

    /// `E*_i`, failing if the two routes disagree.
    pub fn dual_pbw(&self, w: &Word) -> Result<Element> {
        let by_norm = self.dual_pbw_by_norm(w)?;
        let by_product = self.dual_pbw_by_product(w)?;
        if by_norm != by_product {
            return Err(Error::Inconsistent(format!(
                "E* for {w}: {by_norm} by norm, {by_product} by product"
            )));
        }
        Ok(by_norm)
    }

    /// `κ_i = prod κ_{i_k}^{n_k} [n_k]_{i_k}!`, with `κ = 1` on alpha words and
    /// `-q + q^-1` on beta words.
    pub fn kappa(&self, w: &Word) -> Result<LaurentPoly> {
        let cf = check_dominant(w, self.rank())?;
        let mut total = LaurentPoly::one();
        for (f, m) in &cf.factors {
            let lyndon = match iota_plus_inverse(f, self.rank())?.kind {
                RootKind::Alpha => LaurentPoly::one(),
                RootKind::Beta => two_n(),
            };
            total = total * lyndon.pow(*m) * word_qfact(self.datum(), f, *m);
        }
        Ok(total)
    }

    /// Every coefficient of `x` at a word `i` lies in `A · varsigma_i`.
    pub fn lattice_check(&self, x: &Element) -> bool {
        x.iter().all(|(w, c)| match c.to_laurent() {
            None => false,
            Some(p) => p.div_exact(&varsigma_any(self.datum(), w)).is_some(),
        })
    }

    /// Everything at weight `nu`, computed once and cached.
    pub fn weight_bases(&self, nu: &Weight) -> Result<Arc<WeightBases>> {
        self.datum().check_rank(nu)?;
        if let Some(hit) = self.weight_cache.lock().unwrap().get(nu) {
            return Ok(hit.clone());
        }
        let words = dominant_words(self.datum(), nu)?;
        let mut pbw = Vec::with_capacity(words.len());
        let mut norms = Vec::with_capacity(words.len());
        let mut dual_pbw = Vec::with_capacity(words.len());
        for w in &words {
            pbw.push(self.pbw(w)?);
            norms.push(self.pbw_norm(w)?);
            dual_pbw.push(self.dual_pbw(w)?);
        }
        let (canonical, transition) = dual_canonical_solve(&words, &dual_pbw)?;
        let bases = Arc::new(WeightBases {
            weight: nu.clone(),
            words,
            pbw,
            norms,
            dual_pbw,
            canonical,
            transition,
        });
        self.weight_cache
            .lock()
            .unwrap()
            .entry(nu.clone())
            .or_insert(bases.clone());
        Ok(bases)
    }

    /// `b*_i` for one dominant word, through its weight.
    pub fn dual_canonical_word(&self, w: &Word) -> Result<Element> {
        check_dominant(w, self.rank())?;
        let bases = self.weight_bases(&w.weight(self.rank()))?;
        let k = bases
            .position(w)
            .ok_or_else(|| Error::NotDominant(w.to_string()))?;
        Ok(bases.canonical[k].clone())
    }

    /// Gram matrix of the PBW basis at `nu`.
    pub fn pbw_gram(&self, nu: &Weight) -> Result<(Vec<Word>, Vec<Vec<Scalar>>)> {
        let words = dominant_words(self.datum(), nu)?;
        let vectors = words
            .iter()
            .map(|w| self.pbw(w))
            .collect::<Result<Vec<_>>>()?;
        Ok((words, self.form.gram(&vectors)?))
    }
}

/// Coordinates of `x` in a basis whose `k`-th vector has largest word `words[k]`
/// (decreasing). Fails if `x` leaves the span.
pub fn triangular_coordinates(
    words: &[Word],
    basis: &[Element],
    x: &Element,
) -> Result<Vec<Scalar>> {
    let index: HashMap<&Word, usize> = words.iter().enumerate().map(|(k, w)| (w, k)).collect();
    let mut coords = vec![Scalar::zero(); words.len()];
    let mut rem = x.clone();
    while let Ok((m, c)) = rem.max_word() {
        let &k = index
            .get(&m)
            .ok_or_else(|| Error::NotInSubalgebra(m.to_string()))?;
        let lead = basis[k].coeff(&m);
        let coef = c / lead;
        rem.add_scaled(&-coef.clone(), &basis[k]);
        coords[k] += &coef;
    }
    Ok(coords)
}

/// The part of `p` on strictly positive powers of `q`.
fn positive_part(p: &LaurentPoly) -> LaurentPoly {
    LaurentPoly::from_terms(p.terms().iter().filter(|(e, _)| *e > 0).cloned())
}

/// Bar-invariant unitriangular correction of the dual PBW basis.
///
/// With `B(E*_i) = Σ_j a_{ji} E*_j` and `b*_i = Σ_k c_{ki} E*_k`, invariance gives
/// `c_{ji} - bar(c_{ji}) = Σ_{j < k <= i} bar(c_{ki}) a_{jk}`; the right side is solved from the
/// top down and `c_{ji}` is its part in `qZ[q]`.
fn dual_canonical_solve(
    words: &[Word],
    dual: &[Element],
) -> Result<(Vec<Element>, Vec<Vec<LaurentPoly>>)> {
    let size = words.len();
    // a[j][k]: coefficient of E*_j in B(E*_k)
    let mut a = vec![vec![LaurentPoly::zero(); size]; size];
    for k in 0..size {
        let coords = triangular_coordinates(words, dual, &coefficient_bar(&dual[k]))?;
        for (j, c) in coords.into_iter().enumerate() {
            let p = c.to_laurent().ok_or_else(|| {
                Error::Inconsistent(format!(
                    "bar of E*{} has non-Laurent coordinate {c}",
                    words[k]
                ))
            })?;
            if j < k && !p.is_zero() {
                return Err(Error::Inconsistent(format!(
                    "bar of E*{} involves the larger E*{}",
                    words[k], words[j]
                )));
            }
            a[j][k] = p;
        }
        if !a[k][k].is_one() {
            return Err(Error::Inconsistent(format!(
                "bar of E*{} has diagonal coordinate {}",
                words[k], a[k][k]
            )));
        }
    }
    let mut canonical = Vec::with_capacity(size);
    let mut transition = Vec::with_capacity(size);
    for i in 0..size {
        let mut c = vec![LaurentPoly::zero(); size];
        c[i] = LaurentPoly::one();
        for j in i + 1..size {
            let mut r = LaurentPoly::zero();
            for k in i..j {
                if !c[k].is_zero() && !a[j][k].is_zero() {
                    r += &(c[k].bar() * &a[j][k]);
                }
            }
            if !(&r + &r.bar()).is_zero() {
                return Err(Error::Inconsistent(format!(
                    "correction for b*{} at {} is not bar-antisymmetric: {r}",
                    words[i], words[j]
                )));
            }
            c[j] = positive_part(&r);
        }
        let mut b = Element::zero();
        for (k, ck) in c.iter().enumerate() {
            if !ck.is_zero() {
                b.add_scaled(&Scalar::from_laurent(ck.clone()), &dual[k]);
            }
        }
        canonical.push(b);
        transition.push(c);
    }
    Ok((canonical, transition))
}

/// Rank of a family of elements, by elimination on largest words.
pub fn rank_of(elements: &[Element]) -> usize {
    let mut pivots: Vec<(Word, Element)> = Vec::new();
    for x in elements {
        let mut rem = x.clone();
        loop {
            let Ok((m, c)) = rem.max_word() else { break };
            match pivots.iter().find(|(w, _)| *w == m) {
                Some((_, p)) => {
                    let coef = c / p.coeff(&m);
                    rem.add_scaled(&-coef, p);
                }
                None => {
                    pivots.push((m, rem));
                    break;
                }
            }
        }
    }
    pivots.len()
}
