use std::collections::{BTreeMap, HashMap};

use crate::cartan::RootDatum;
use crate::scalar::{LaurentPoly, Scalar};
use crate::words::Word;

use super::element::{Element, TensorElement};

/// Crossing factor of letter `a` placed before letter `b` from the other word:
/// `(sign, exponent)` of `(-1)^{p(a)p(b)} q^{-(a,b)}`.
fn crossing(datum: &RootDatum, a: u8, b: u8) -> (bool, i64) {
    let (a, b) = (usize::from(a), usize::from(b));
    let sign = datum.parity_of(a).is_odd() && datum.parity_of(b).is_odd();
    (sign, -datum.b(a, b))
}

/// `a ⋄ b` for two words, by enumerating interleavings. Each pair (letter of `a`, letter of
/// `b`) with the `a` letter placed first contributes its crossing factor.
pub fn shuffle_words(datum: &RootDatum, a: &Word, b: &Word) -> Vec<(Word, LaurentPoly)> {
    let (la, lb) = (a.letters(), b.letters());
    // cost[t][k]: total crossing of b_t over the first k letters of a
    let cost: Vec<Vec<(u32, i64)>> = lb
        .iter()
        .map(|&bt| {
            let mut row = vec![(0u32, 0i64)];
            for &as_ in la {
                let (s, e) = crossing(datum, as_, bt);
                let &(ps, pe) = row.last().unwrap();
                row.push((ps + u32::from(s), pe + e));
            }
            row
        })
        .collect();

    let mut acc: HashMap<Vec<u8>, BTreeMap<i64, i64>> = HashMap::new();
    let mut current = Vec::with_capacity(la.len() + lb.len());

    struct Ctx<'a> {
        la: &'a [u8],
        lb: &'a [u8],
        cost: &'a [Vec<(u32, i64)>],
    }

    fn rec(
        ctx: &Ctx<'_>,
        i: usize,
        j: usize,
        sign: u32,
        exp: i64,
        current: &mut Vec<u8>,
        acc: &mut HashMap<Vec<u8>, BTreeMap<i64, i64>>,
    ) {
        if i == ctx.la.len() && j == ctx.lb.len() {
            let slot = acc
                .entry(current.clone())
                .or_default()
                .entry(exp)
                .or_insert(0);
            *slot += if sign.is_multiple_of(2) { 1 } else { -1 };
            return;
        }
        if i < ctx.la.len() {
            current.push(ctx.la[i]);
            rec(ctx, i + 1, j, sign, exp, current, acc);
            current.pop();
        }
        if j < ctx.lb.len() {
            let (s, e) = ctx.cost[j][i];
            current.push(ctx.lb[j]);
            rec(ctx, i, j + 1, sign + s, exp + e, current, acc);
            current.pop();
        }
    }

    let ctx = Ctx {
        la,
        lb,
        cost: &cost,
    };
    rec(&ctx, 0, 0, 0, 0, &mut current, &mut acc);

    let mut out: Vec<(Word, LaurentPoly)> = acc
        .into_iter()
        .map(|(w, poly)| (Word::new(w), LaurentPoly::from_terms(poly)))
        .filter(|(_, p)| !p.is_zero())
        .collect();
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

/// Groups terms by denominator so that products run in Laurent arithmetic.
fn by_denominator(x: &Element) -> Vec<(LaurentPoly, Vec<(&Word, &LaurentPoly)>)> {
    let mut groups: Vec<(LaurentPoly, Vec<(&Word, &LaurentPoly)>)> = Vec::new();
    for (w, c) in x.iter() {
        match groups.iter_mut().find(|(d, _)| d == c.denominator()) {
            Some((_, g)) => g.push((w, c.numerator())),
            None => groups.push((c.denominator().clone(), vec![(w, c.numerator())])),
        }
    }
    groups
}

/// The quantum shuffle product, extended bilinearly.
pub fn shuffle(datum: &RootDatum, x: &Element, y: &Element) -> Element {
    let mut out = Element::zero();
    for (dx, gx) in by_denominator(x) {
        for (dy, gy) in by_denominator(y) {
            let mut acc: HashMap<Word, LaurentPoly> = HashMap::new();
            for (a, na) in &gx {
                for (b, nb) in &gy {
                    let scale = *na * *nb;
                    for (w, c) in shuffle_words(datum, a, b) {
                        *acc.entry(w).or_default() += &(&c * &scale);
                    }
                }
            }
            let den = &dx * &dy;
            let mut sorted: Vec<_> = acc.into_iter().collect();
            sorted.sort_by(|p, q| p.0.cmp(&q.0));
            for (w, num) in sorted {
                if !num.is_zero() {
                    out.add_term(w, Scalar::new(num, den.clone()));
                }
            }
        }
    }
    out
}

/// `x_1 ⋄ x_2 ⋄ ... ⋄ x_k`, left to right; the unit for an empty list.
pub fn shuffle_all<'a>(datum: &RootDatum, xs: impl IntoIterator<Item = &'a Element>) -> Element {
    xs.into_iter()
        .fold(Element::one(), |acc, x| shuffle(datum, &acc, x))
}

/// `x^{⋄m}`.
pub fn shuffle_power(datum: &RootDatum, x: &Element, m: u32) -> Element {
    (0..m).fold(Element::one(), |acc, _| shuffle(datum, &acc, x))
}

/// Literal recursion `(xi)⋄(yj) = (x⋄(yj))i + (-1)^{p(xi)p(j)} q^{-(|xi|,|j|)} ((xi)⋄y)j`
/// on words, with no shared state. Kept as an oracle for [`shuffle_words`].
pub fn shuffle_words_recursive(
    datum: &RootDatum,
    a: &Word,
    b: &Word,
) -> BTreeMap<Word, LaurentPoly> {
    let mut out = BTreeMap::new();
    if a.is_empty() || b.is_empty() {
        out.insert(a.concat(b), LaurentPoly::one());
        return out;
    }
    let n = datum.rank();
    let (x, i) = (a.slice(0, a.len() - 1), a.letters()[a.len() - 1]);
    let (y, j) = (b.slice(0, b.len() - 1), b.letters()[b.len() - 1]);
    let wa = a.weight(n);
    let wj = Word::letter(j).weight(n);
    let odd = a.parity(n).is_odd() && datum.parity_of(usize::from(j)).is_odd();
    let factor = LaurentPoly::monomial(
        if odd { -1 } else { 1 },
        -datum.bilinear(&wa, &wj).expect("same rank"),
    );
    let mut push = |w: Word, c: LaurentPoly| {
        let slot: &mut LaurentPoly = out.entry(w).or_default();
        *slot += &c;
    };
    for (w, c) in shuffle_words_recursive(datum, &x, b) {
        push(w.concat(&Word::letter(i)), c);
    }
    for (w, c) in shuffle_words_recursive(datum, a, &y) {
        push(w.concat(&Word::letter(j)), &c * &factor);
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Bilinear extension of [`shuffle_words_recursive`] in plain rational-function arithmetic.
pub fn shuffle_reference(datum: &RootDatum, x: &Element, y: &Element) -> Element {
    let mut out = Element::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            let c = ca * cb;
            for (w, p) in shuffle_words_recursive(datum, a, b) {
                out.add_term(w, &c * &Scalar::from_laurent(p));
            }
        }
    }
    out
}

/// `Δ(i_1..i_d) = Σ_k (i_{k+1}..i_d) ⊗ (i_1..i_k)`, extended linearly.
pub fn coproduct(x: &Element) -> TensorElement {
    let mut out = TensorElement::default();
    for (w, c) in x.iter() {
        for k in 0..=w.len() {
            out.add_term(w.slice(k, w.len()), w.slice(0, k), c.clone());
        }
    }
    out
}
