//! The symmetric bilinear form on the shuffle subalgebra `U`.
//!
//! For a word `v = (v_1,...,v_k)` put `T_v = (v_k) ⋄ ... ⋄ (v_1)`. The adjunction forces
//! `(x, T_v) = coeff_v(x)` for `x` in `U`, so once `u = Σ c_v T_v` is known,
//! `(x, u) = Σ c_v coeff_v(x)`. Such a preimage `c` (stored as an [`Element`] whose words
//! stand for the `T_v`) is tracked alongside every basis vector: `T` turns concatenation
//! into the opposite shuffle, `T_{w v} = T_v ⋄ T_w`, so preimages of products are products
//! of preimages. Only dominant Lyndon words need a genuine solve.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::cartan::{RootDatum, Weight};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::words::{check_dominant, dominant_words, is_dominant_lyndon, words_of_weight, Word};

use super::element::{Element, TensorElement};
use super::product::shuffle;

/// An element of `U` with a chosen preimage under `T`.
#[derive(Debug, Clone)]
pub struct Preimaged {
    pub element: Element,
    pub preimage: Element,
}

impl Preimaged {
    pub fn letter(i: u8) -> Self {
        let e = Element::word(Word::letter(i));
        Self {
            element: e.clone(),
            preimage: e,
        }
    }

    pub fn one() -> Self {
        Self {
            element: Element::one(),
            preimage: Element::one(),
        }
    }

    pub fn shuffle(&self, datum: &RootDatum, other: &Preimaged) -> Preimaged {
        Preimaged {
            element: shuffle(datum, &self.element, &other.element),
            preimage: concat_opposite(&self.preimage, &other.preimage),
        }
    }

    pub fn add_scaled(&mut self, c: &Scalar, other: &Preimaged) {
        self.element.add_scaled(c, &other.element);
        self.preimage.add_scaled(c, &other.preimage);
    }

    pub fn scale(&self, c: &Scalar) -> Preimaged {
        Preimaged {
            element: self.element.scale(c),
            preimage: self.preimage.scale(c),
        }
    }
}

/// Preimage of `x ⋄ y` from preimages of `x` and `y`: `Σ c_v d_w (w v)`.
fn concat_opposite(x: &Element, y: &Element) -> Element {
    let mut out = Element::zero();
    for (v, c) in x.iter() {
        for (w, d) in y.iter() {
            out.add_term(w.concat(v), c * d);
        }
    }
    out
}

/// Basis vector of `U_ν` with leading word `lead`.
#[derive(Debug, Clone)]
pub struct BasisRow {
    pub lead: Word,
    pub lead_coeff: Scalar,
    pub vector: Preimaged,
}

/// Triangular basis of `U_ν`: for each dominant word `i = i_1^{n_1}...i_d^{n_d}` the product
/// `i_d^{⋄n_d} ⋄ ... ⋄ i_1^{⋄n_1}` of Lyndon words, whose largest word is `i`.
#[derive(Debug)]
pub struct WeightBasis {
    pub weight: Weight,
    pub rows: Vec<BasisRow>,
    index: HashMap<Word, usize>,
}

impl WeightBasis {
    fn new(weight: Weight, rows: Vec<BasisRow>) -> Self {
        let index = rows
            .iter()
            .enumerate()
            .map(|(k, r)| (r.lead.clone(), k))
            .collect();
        Self {
            weight,
            rows,
            index,
        }
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }
}

/// Reduces `u` by rows with matching leading words until the leading word has no row.
fn reduce(u: &Element, rows: &[BasisRow], index: &HashMap<Word, usize>) -> (Element, Element) {
    let mut rem = u.clone();
    let mut pre = Element::zero();
    while let Ok((m, c)) = rem.max_word() {
        let Some(&k) = index.get(&m) else { break };
        let row = &rows[k];
        let coef = &c / &row.lead_coeff;
        rem.add_scaled(&-coef.clone(), &row.vector.element);
        pre.add_scaled(&coef, &row.vector.preimage);
    }
    (rem, pre)
}

/// Computes the form, caching per-weight bases and Lyndon preimages.
#[derive(Debug)]
pub struct FormEngine {
    datum: RootDatum,
    bases: Mutex<HashMap<Weight, Arc<WeightBasis>>>,
    lyndon: Mutex<HashMap<Word, Preimaged>>,
}

impl FormEngine {
    pub fn new(datum: RootDatum) -> Self {
        Self {
            datum,
            bases: Mutex::new(HashMap::new()),
            lyndon: Mutex::new(HashMap::new()),
        }
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    /// The dominant Lyndon word `w` as an element of `U`, with a preimage.
    pub fn lyndon_vector(&self, w: &Word) -> Result<Preimaged> {
        let n = self.datum.rank();
        w.validate(n)?;
        if !is_dominant_lyndon(w, n) {
            return Err(Error::NotDominantLyndon(w.to_string()));
        }
        if let Some(hit) = self.lyndon.lock().unwrap().get(w) {
            return Ok(hit.clone());
        }
        let found = if w.len() == 1 {
            Preimaged::letter(w.letters()[0])
        } else {
            self.solve_lyndon(w)?
        };
        self.lyndon.lock().unwrap().insert(w.clone(), found.clone());
        Ok(found)
    }

    /// The other dominant words of `|w|` have at least two canonical factors, so their rows
    /// come from smaller weights. Reducing any `T_v` by them leaves a multiple of `w`.
    fn solve_lyndon(&self, w: &Word) -> Result<Preimaged> {
        let nu = w.weight(self.datum.rank());
        let mut rows = Vec::new();
        for other in dominant_words(&self.datum, &nu)? {
            if other != *w {
                rows.push(self.row_for(&other)?);
            }
        }
        let index: HashMap<Word, usize> = rows
            .iter()
            .enumerate()
            .map(|(k, r)| (r.lead.clone(), k))
            .collect();
        for v in words_of_weight(&nu) {
            let t = v.letters().iter().fold(Preimaged::one(), |acc, &l| {
                Preimaged::letter(l).shuffle(&self.datum, &acc)
            });
            let (rem, pre) = reduce(&t.element, &rows, &index);
            if rem.is_zero() {
                continue;
            }
            let (m, c) = rem.max_word()?;
            if m != *w || rem.len() != 1 {
                return Err(Error::Inconsistent(format!(
                    "reducing T_{v} in weight {nu} left {rem}, expected a multiple of {w}"
                )));
            }
            let mut preimage = t.preimage;
            preimage.add_scaled(&-Scalar::one(), &pre);
            let inv = Scalar::one() / c;
            return Ok(Preimaged {
                element: Element::word(w.clone()),
                preimage: preimage.scale(&inv),
            });
        }
        Err(Error::Inconsistent(format!(
            "no T_v in weight {nu} reaches {w}"
        )))
    }

    fn row_for(&self, w: &Word) -> Result<BasisRow> {
        let cf = check_dominant(w, self.datum.rank())?;
        let mut acc = Preimaged::one();
        for (f, m) in cf.factors.iter().rev() {
            let l = self.lyndon_vector(f)?;
            for _ in 0..*m {
                acc = acc.shuffle(&self.datum, &l);
            }
        }
        let (lead, lead_coeff) = acc.element.max_word()?;
        if lead != *w {
            return Err(Error::Inconsistent(format!(
                "largest word of the product for {w} is {lead}"
            )));
        }
        Ok(BasisRow {
            lead,
            lead_coeff,
            vector: acc,
        })
    }

    /// The triangular basis of `U_ν`, rows in decreasing order of leading word.
    pub fn basis(&self, nu: &Weight) -> Result<Arc<WeightBasis>> {
        self.datum.check_rank(nu)?;
        if let Some(hit) = self.bases.lock().unwrap().get(nu) {
            return Ok(hit.clone());
        }
        let rows = dominant_words(&self.datum, nu)?
            .iter()
            .map(|w| self.row_for(w))
            .collect::<Result<Vec<_>>>()?;
        let basis = Arc::new(WeightBasis::new(nu.clone(), rows));
        self.bases
            .lock()
            .unwrap()
            .entry(nu.clone())
            .or_insert(basis.clone());
        Ok(basis)
    }

    /// A preimage of `u` under `T`. Fails when `u` is not in `U`.
    pub fn preimage(&self, u: &Element) -> Result<Element> {
        let n = self.datum.rank();
        let mut by_weight: HashMap<Weight, Element> = HashMap::new();
        for (w, c) in u.iter() {
            by_weight
                .entry(w.weight(n))
                .or_default()
                .add_term(w.clone(), c.clone());
        }
        let mut total = Element::zero();
        for (nu, part) in by_weight {
            if nu.is_zero() {
                total.add_scaled(&Scalar::one(), &part);
                continue;
            }
            let basis = self.basis(&nu)?;
            let (rem, pre) = reduce(&part, &basis.rows, &basis.index);
            if let Ok((m, _)) = rem.max_word() {
                return Err(Error::NotInSubalgebra(m.to_string()));
            }
            total.add_scaled(&Scalar::one(), &pre);
        }
        Ok(total)
    }

    /// `(x, u)` given a preimage of `u`: `Σ_v pre_v coeff_v(x)`.
    pub fn pair_with_preimage(x: &Element, preimage: &Element) -> Scalar {
        let mut total = Scalar::zero();
        for (v, c) in preimage.iter() {
            if let Some(xv) = x.get(v) {
                total += &(c * xv);
            }
        }
        total
    }

    /// `(x, y)` for `x, y` in `U`.
    pub fn form(&self, x: &Element, y: &Element) -> Result<Scalar> {
        if x.is_zero() || y.is_zero() {
            return Ok(Scalar::zero());
        }
        Ok(Self::pair_with_preimage(x, &self.preimage(y)?))
    }

    /// `(t, y ⊗ z) = Σ c (l, y)(r, z)` for `t` in `U ⊗ U`.
    pub fn tensor_form(&self, t: &TensorElement, y: &Element, z: &Element) -> Result<Scalar> {
        let (py, pz) = (self.preimage(y)?, self.preimage(z)?);
        let mut total = Scalar::zero();
        for ((l, r), c) in t.iter() {
            let (a, b) = (py.coeff(l), pz.coeff(r));
            if !a.is_zero() && !b.is_zero() {
                total += &(c * &a * b);
            }
        }
        Ok(total)
    }

    /// `[(x_a, x_b)]`.
    pub fn gram(&self, vectors: &[Element]) -> Result<Vec<Vec<Scalar>>> {
        let pre = vectors
            .iter()
            .map(|v| self.preimage(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(vectors
            .iter()
            .map(|a| {
                pre.iter()
                    .map(|pb| Self::pair_with_preimage(a, pb))
                    .collect()
            })
            .collect())
    }
}

/// Determinant by Gaussian elimination over `Q(q)`.
pub fn determinant(matrix: &[Vec<Scalar>]) -> Scalar {
    let mut m: Vec<Vec<Scalar>> = matrix.to_vec();
    let size = m.len();
    let mut det = Scalar::one();
    for col in 0..size {
        let Some(pivot) = (col..size).find(|&r| !m[r][col].is_zero()) else {
            return Scalar::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det = det * &p;
        for r in col + 1..size {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &p;
            for c in col..size {
                let sub = &f * &m[col][c];
                m[r][c] -= &sub;
            }
        }
    }
    det
}
