//! The invariant suite behind `osp-shuffle selftest`.

use serde::Serialize;

use crate::bases::{rank_of, Algebra};
use crate::cartan::{RootDatum, Weight};
use crate::error::{Error, Result};
use crate::repcheck::{
    cuspidal_character, cuspidal_module, cuspidal_power_character, highest_weight,
    standard_character, verify_relations, Orientation, QuiverData,
};
use crate::scalar::{LaurentPoly, Scalar};
use crate::shuffle::{
    bar, coefficient_bar, determinant, shuffle, shuffle_power, shuffle_words,
    shuffle_words_recursive, sigma, tau, Element,
};
use crate::words::{
    check_dominant, dominant_lyndon_words, dominant_words, dominant_words_by_filter, iota_plus,
    iota_plus_inverse, word_qfact, xi_and_s_of, Word,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

type Check = fn(&Algebra, &QuiverData, u32) -> Result<String>;

fn fail(msg: String) -> Error {
    Error::Inconsistent(msg)
}

fn weights(datum: &RootDatum, max_height: u32) -> Vec<Weight> {
    Weight::all_up_to_height(datum.rank(), max_height)
}

/// All words of length `1..=max_len` over `1..=n`.
fn words_up_to(n: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| (1..=n as u8).map(move |l| w.concat(&Word::letter(l))))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn census(alg: &Algebra, _: &QuiverData, _: u32) -> Result<String> {
    let n = alg.rank();
    let lyndon = dominant_lyndon_words(alg.datum());
    if lyndon.len() != n * n {
        return Err(fail(format!(
            "{} dominant Lyndon words, expected {}",
            lyndon.len(),
            n * n
        )));
    }
    for root in alg.datum().reduced_positive_roots() {
        let w = iota_plus(&root, n);
        if !w.is_lyndon()? || iota_plus_inverse(&w, n)? != root || w.weight(n) != root.weight(n) {
            return Err(fail(format!(
                "{root} -> {w} is not a dominant Lyndon word of that weight"
            )));
        }
    }
    Ok(format!("{} dominant Lyndon words", lyndon.len()))
}

fn dominance(alg: &Algebra, _: &QuiverData, h: u32) -> Result<String> {
    let mut total = 0;
    for nu in weights(alg.datum(), h) {
        let a = dominant_words(alg.datum(), &nu)?;
        if a != dominant_words_by_filter(alg.datum(), &nu)? {
            return Err(fail(format!(
                "dominant words of {nu} differ between the two enumerations"
            )));
        }
        let dim = alg.form_engine().basis(&nu)?.dimension();
        if dim != a.len() {
            return Err(fail(format!(
                "dim U_{nu} = {dim} but {} dominant words",
                a.len()
            )));
        }
        total += a.len();
    }
    Ok(format!("{total} dominant words"))
}

fn shuffle_oracle(alg: &Algebra, _: &QuiverData, h: u32) -> Result<String> {
    let d = alg.datum();
    let words = words_up_to(d.rank(), (h as usize / 2).clamp(1, 3));
    for a in &words {
        for b in &words {
            let fast: std::collections::BTreeMap<_, _> =
                shuffle_words(d, a, b).into_iter().collect();
            if fast != shuffle_words_recursive(d, a, b) {
                return Err(fail(format!(
                    "enumeration and recursion differ on {a} ⋄ {b}"
                )));
            }
        }
    }
    Ok(format!("{} word pairs", words.len() * words.len()))
}

fn involutions(alg: &Algebra, _: &QuiverData, h: u32) -> Result<String> {
    let d = alg.datum();
    let c: Scalar = "q^2 - 3*q^-1".parse().expect("literal");
    let words = words_up_to(d.rank(), (h as usize).min(4));
    for w in &words {
        let x = Element::term(w.clone(), c.clone());
        if sigma(d, &sigma(d, &x)) != x
            || bar(d, &bar(d, &x)) != x
            || sigma(d, &x) != bar(d, &tau(&x))
        {
            return Err(fail(format!("involution identities fail on {w}")));
        }
    }
    let short = words_up_to(d.rank(), (h as usize / 2).clamp(1, 2));
    for a in &short {
        for b in &short {
            let (x, y) = (Element::word(a.clone()), Element::word(b.clone()));
            let xy = shuffle(d, &x, &y);
            if tau(&xy) != shuffle(d, &tau(&y), &tau(&x))
                || bar(d, &xy) != shuffle(d, &bar(d, &x), &bar(d, &y))
                || sigma(d, &xy) != shuffle(d, &sigma(d, &y), &sigma(d, &x))
            {
                return Err(fail(format!("(anti-)multiplicativity fails on {a}, {b}")));
            }
        }
    }
    Ok(format!(
        "{} words, {} pairs",
        words.len(),
        short.len() * short.len()
    ))
}

fn form(alg: &Algebra, _: &QuiverData, h: u32) -> Result<String> {
    let mut count = 0;
    for nu in weights(alg.datum(), h) {
        let basis = alg.form_engine().basis(&nu)?;
        let vectors: Vec<Element> = basis
            .rows
            .iter()
            .map(|r| r.vector.element.clone())
            .collect();
        let g = alg.form_engine().gram(&vectors)?;
        for (i, row) in g.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if *x != g[j][i] {
                    return Err(fail(format!(
                        "Gram matrix of {nu} is not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        if determinant(&g).is_zero() {
            return Err(fail(format!("Gram matrix of {nu} is singular")));
        }
        count += 1;
    }
    Ok(format!("{count} weights"))
}

fn pbw(alg: &Algebra, _: &QuiverData, h: u32) -> Result<String> {
    let mut count = 0;
    for nu in weights(alg.datum(), h) {
        let (words, g) = alg.pbw_gram(&nu)?;
        for (i, row) in g.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let expect = if i == j {
                    alg.pbw_norm(&words[i])?
                } else {
                    Scalar::zero()
                };
                if *x != expect {
                    return Err(fail(format!("(E{}, E{}) = {x}", words[i], words[j])));
                }
            }
            alg.dual_pbw(&words[i])?;
            count += 1;
        }
    }
    Ok(format!("{count} PBW vectors"))
}

fn dual_canonical(alg: &Algebra, _: &QuiverData, h: u32) -> Result<String> {
    let d = alg.datum();
    let mut count = 0;
    for nu in weights(d, h) {
        let b = alg.weight_bases(&nu)?;
        for (k, w) in b.words.iter().enumerate() {
            let x = &b.canonical[k];
            if coefficient_bar(x) != *x {
                return Err(fail(format!("b*{w} is not bar-invariant")));
            }
            let (top, c) = x.max_word()?;
            if top != *w || c != Scalar::from_laurent(alg.kappa(w)?) {
                return Err(fail(format!("b*{w} has top term {c} {top}")));
            }
            for (j, t) in b.transition[k].iter().enumerate() {
                let ok = match j.cmp(&k) {
                    std::cmp::Ordering::Less => t.is_zero(),
                    std::cmp::Ordering::Equal => t.is_one(),
                    std::cmp::Ordering::Greater => t.in_q_zq(),
                };
                if !ok {
                    return Err(fail(format!(
                        "b*{w} has coefficient {t} on E*{}",
                        b.words[j]
                    )));
                }
            }
            let cf = check_dominant(w, d.rank())?;
            if cf.factors.len() == 1 && cf.factors[0].1 <= 3 && *x != b.dual_pbw[k] {
                return Err(fail(format!("b*{w} differs from E*{w} on a Lyndon power")));
            }
            count += 1;
        }
    }
    Ok(format!("{count} canonical vectors"))
}

fn cuspidal(alg: &Algebra, quiver: &QuiverData, _: u32) -> Result<String> {
    let d = alg.datum();
    for root in d.reduced_positive_roots() {
        let report = verify_relations(&cuspidal_module(d, &root)?, quiver)?;
        if !report.passed() {
            return Err(fail(format!("L_{root}: {report}")));
        }
        let ch = cuspidal_character(d, &root)?;
        if *ch.element() != alg.dual_pbw(&iota_plus(&root, d.rank()))? {
            return Err(fail(format!("ch L_{root} = {ch} differs from E*")));
        }
    }
    Ok(format!(
        "{} cuspidal modules",
        d.reduced_positive_roots().len()
    ))
}

fn lyndon_powers(alg: &Algebra, _: &QuiverData, h: u32) -> Result<String> {
    let d = alg.datum();
    let n = d.rank();
    let mut count = 0;
    for root in d.reduced_positive_roots() {
        let l = iota_plus(&root, n);
        for m in 1..=3u32 {
            if l.len() as u32 * m > h {
                break;
            }
            let w = l.pow(m);
            let (xi, s) = xi_and_s_of(d, &check_dominant(&w, n)?);
            let expect = alg
                .dual_canonical_word(&w)?
                .scale(&Scalar::signed_q_pow(xi % 2 == 1, -s));
            if *cuspidal_power_character(d, &root, m)?.element() != expect {
                return Err(fail(format!("ch of L_{root}^{m} is not the shifted b*{w}")));
            }
            let lead = shuffle_power(d, &Element::word(l.clone()), m).max_word()?;
            let factor =
                LaurentPoly::monomial(if xi % 2 == 1 { -1 } else { 1 }, -s) * word_qfact(d, &l, m);
            if lead != (w.clone(), Scalar::from_laurent(factor)) {
                return Err(fail(format!(
                    "leading term of {l}^⋄{m} is {} {}",
                    lead.1, lead.0
                )));
            }
            count += 1;
        }
    }
    Ok(format!("{count} Lyndon powers"))
}

fn standard(alg: &Algebra, _: &QuiverData, h: u32) -> Result<String> {
    let d = alg.datum();
    let mut count = 0;
    for nu in weights(d, h) {
        let words = dominant_words(d, &nu)?;
        let mut chars = vec![];
        for w in &words {
            let ch = standard_character(alg, w)?;
            if highest_weight(&ch)? != *w || ch.coeff(w) != alg.kappa(w)? {
                return Err(fail(format!(
                    "standard character of {w} has the wrong top term"
                )));
            }
            chars.push(ch.into_element());
        }
        if rank_of(&chars) != words.len() {
            return Err(fail(format!("standard characters of {nu} are dependent")));
        }
        count += words.len();
    }
    Ok(format!("{count} standard characters"))
}

const CHECKS: [(&str, Check); 10] = [
    ("dominant Lyndon census", census),
    ("dominant words", dominance),
    ("shuffle oracle", shuffle_oracle),
    ("involutions", involutions),
    ("bilinear form", form),
    ("PBW basis", pbw),
    ("dual canonical basis", dual_canonical),
    ("cuspidal modules", cuspidal),
    ("Lyndon powers", lyndon_powers),
    ("standard characters", standard),
];

/// Runs every check for each rank `1..=max_rank` and weights of height `<= max_height`.
pub fn run_selftest(
    max_rank: usize,
    max_height: u32,
    orientation: Orientation,
) -> Vec<CheckOutcome> {
    let mut out = vec![];
    for n in 1..=max_rank {
        let alg = Algebra::new(n);
        let quiver = QuiverData::new(alg.datum().clone(), orientation);
        for (name, check) in CHECKS {
            let (passed, detail) = match check(&alg, &quiver, max_height) {
                Ok(d) => (true, d),
                Err(e) => (false, e.to_string()),
            };
            out.push(CheckOutcome {
                name: format!("n={n} {name}"),
                passed,
                detail,
            });
        }
    }
    out
}
