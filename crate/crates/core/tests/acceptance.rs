//! Acceptance suite. Prints one line per criterion and exits nonzero if any fails.
//!
//! The oracles below are written from the definitions (interleaving sums, Duval
//! factorization, Weyl reflections, explicit Lyndon dual vectors) and use only the
//! library's containers and its rational-function field for comparison.

use std::collections::{BTreeMap, BTreeSet};
use std::process::{Command, ExitCode};
use std::time::Instant;

use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use osp_shuffle::bases::Algebra;
use osp_shuffle::cartan::{Root, RootDatum, RootKind, Weight};
use osp_shuffle::repcheck::{
    character, cuspidal_module, highest_weight, standard_character_unchecked, verify_relations,
    BasisJson, Check, GradedSuperModule, ModuleJson, Orientation, QuiverData,
};
use osp_shuffle::scalar::{LaurentPoly, Scalar};
use osp_shuffle::shuffle::{self as lib, determinant, Element};
use osp_shuffle::words::{self, Word};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn lib_err<E: std::fmt::Display>(e: E) -> String {
    format!("library error: {e}")
}

// ---------------------------------------------------------------- Laurent polynomials

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Poly(BTreeMap<i64, i128>);

impl Poly {
    fn mono(c: i128, k: i64) -> Self {
        let mut p = Poly::default();
        p.add_term(k, c);
        p
    }

    fn one() -> Self {
        Self::mono(1, 0)
    }

    fn signed_q(odd: bool, k: i64) -> Self {
        Self::mono(if odd { -1 } else { 1 }, k)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add_term(&mut self, k: i64, c: i128) {
        let e = self.0.entry(k).or_insert(0);
        *e += c;
        if *e == 0 {
            self.0.remove(&k);
        }
    }

    fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (k, c) in &o.0 {
            r.add_term(*k, *c);
        }
        r
    }

    fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|(k, c)| (*k, -c)).collect())
    }

    fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    fn mul(&self, o: &Poly) -> Poly {
        let mut r = Poly::default();
        for (a, x) in &self.0 {
            for (b, y) in &o.0 {
                r.add_term(a + b, x * y);
            }
        }
        r
    }

    fn pow(&self, m: u32) -> Poly {
        (0..m).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    /// `q -> -q^-1`.
    fn bar(&self) -> Poly {
        Poly(
            self.0
                .iter()
                .map(|(k, c)| (-k, if k % 2 == 0 { *c } else { -c }))
                .collect(),
        )
    }

    /// Exact quotient; panics if `d` does not divide `self`.
    fn div_exact(&self, d: &Poly) -> Poly {
        let (&dmax, &dlead) = d.0.iter().next_back().expect("nonzero divisor");
        let dmin = *d.0.keys().next().unwrap();
        let floor = self.0.keys().next().map_or(0, |k| k - dmin);
        let mut rem = self.clone();
        let mut quo = Poly::default();
        while let Some((&k, &c)) = rem.0.iter().next_back() {
            assert!(k - dmax >= floor && c % dlead == 0, "inexact division");
            let t = Poly::mono(c / dlead, k - dmax);
            rem = rem.sub(&t.mul(d));
            quo = quo.add(&t);
        }
        quo
    }

    /// Nonzero with all exponents positive.
    fn in_q_zq(&self) -> bool {
        self.0.keys().all(|k| *k > 0)
    }

    fn to_lib(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.0.iter().map(|(k, c)| (*k, *c)))
    }

    fn scalar(&self) -> Scalar {
        Scalar::from_laurent(self.to_lib())
    }

    fn from_lib(p: &LaurentPoly) -> Poly {
        let mut r = Poly::default();
        for (k, c) in p.terms() {
            r.add_term(*k, c.to_i128().expect("coefficient fits"));
        }
        r
    }

    fn from_scalar(s: &Scalar) -> Option<Poly> {
        s.to_laurent().map(|p| Poly::from_lib(&p))
    }
}

// ---------------------------------------------------------------- elements

type El = BTreeMap<Vec<u8>, Poly>;

fn el_add(e: &mut El, w: Vec<u8>, c: &Poly) {
    let slot = e.entry(w.clone()).or_default();
    *slot = slot.add(c);
    if slot.is_zero() {
        e.remove(&w);
    }
}

fn el_word(w: &[u8]) -> El {
    El::from([(w.to_vec(), Poly::one())])
}

fn el_scale(e: &El, c: &Poly) -> El {
    let mut r = El::new();
    for (w, x) in e {
        el_add(&mut r, w.clone(), &x.mul(c));
    }
    r
}

fn el_sum(a: &El, b: &El) -> El {
    let mut r = a.clone();
    for (w, x) in b {
        el_add(&mut r, w.clone(), x);
    }
    r
}

fn to_lib(e: &El) -> Element {
    Element::from_terms(e.iter().map(|(w, c)| (Word::new(w.clone()), c.scalar())))
}

fn from_lib(x: &Element) -> Option<El> {
    let mut r = El::new();
    for (w, c) in x.iter() {
        el_add(&mut r, w.letters().to_vec(), &Poly::from_scalar(c)?);
    }
    Some(r)
}

fn el_max(e: &El) -> Option<(&Vec<u8>, &Poly)> {
    e.iter().next_back()
}

fn show(w: &[u8]) -> String {
    Word::new(w.to_vec()).to_string()
}

// ---------------------------------------------------------------- root datum

struct Osp {
    n: usize,
    a: Vec<Vec<i64>>,
    b: Vec<Vec<i64>>,
}

impl Osp {
    /// Tridiagonal Cartan matrix with `a_{n,n-1} = -2`, symmetrized by `D = (2,...,2,1)`.
    fn new(n: usize) -> Self {
        let mut a = vec![vec![0i64; n]; n];
        for i in 0..n {
            a[i][i] = 2;
            if i + 1 < n {
                a[i][i + 1] = -1;
                a[i + 1][i] = if i + 2 == n { -2 } else { -1 };
            }
        }
        let d: Vec<i64> = (0..n).map(|i| if i + 1 == n { 1 } else { 2 }).collect();
        let b = (0..n)
            .map(|i| (0..n).map(|j| d[i] * a[i][j]).collect())
            .collect();
        Osp { n, a, b }
    }

    fn form(&self, i: u8, j: u8) -> i64 {
        self.b[i as usize - 1][j as usize - 1]
    }

    fn odd(&self, i: u8) -> bool {
        i as usize == self.n
    }

    fn word_form(&self, x: &[u8], y: &[u8]) -> i64 {
        x.iter()
            .map(|&a| y.iter().map(|&b| self.form(a, b)).sum::<i64>())
            .sum()
    }

    fn parity(&self, x: &[u8]) -> bool {
        x.iter().filter(|&&a| self.odd(a)).count() % 2 == 1
    }

    /// Reflection closure of the simple roots.
    fn positive_roots(&self) -> BTreeSet<Vec<u32>> {
        let n = self.n;
        let mut roots: BTreeSet<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        let mut frontier: Vec<Vec<i64>> = roots.iter().cloned().collect();
        while let Some(beta) = frontier.pop() {
            for i in 0..n {
                let c: i64 = (0..n).map(|j| self.a[i][j] * beta[j]).sum();
                let mut r = beta.clone();
                r[i] -= c;
                if r.iter().all(|&x| x >= 0) && r.iter().any(|&x| x > 0) && roots.insert(r.clone())
                {
                    frontier.push(r);
                }
            }
        }
        roots
            .into_iter()
            .map(|r| r.into_iter().map(|x| x as u32).collect())
            .collect()
    }

    /// Dominant Lyndon words `(i..j)` and `(i..n,n..j)`, flagged true for the second family.
    fn lyndon_plus(&self) -> BTreeMap<Vec<u8>, bool> {
        let n = self.n as u8;
        let mut out = BTreeMap::new();
        for i in 1..=n {
            for j in i..=n {
                out.insert((i..=j).collect(), false);
                if i < j {
                    let w: Vec<u8> = (i..=n).chain((j..=n).rev()).collect();
                    out.insert(w, true);
                }
            }
        }
        out
    }

    fn weight(&self, w: &[u8]) -> Vec<u32> {
        let mut c = vec![0u32; self.n];
        for &a in w {
            c[a as usize - 1] += 1;
        }
        c
    }
}

// ---------------------------------------------------------------- shuffle oracle

/// Sum over interleavings; a left letter `a` placed before a right letter `b`
/// contributes `(-1)^{p(a)p(b)} q^{-(a,b)}`.
fn shuffle_words(d: &Osp, x: &[u8], y: &[u8]) -> El {
    #[allow(clippy::too_many_arguments)]
    fn rec(
        d: &Osp,
        x: &[u8],
        y: &[u8],
        i: usize,
        j: usize,
        exp: i64,
        odd: bool,
        buf: &mut Vec<u8>,
        out: &mut El,
    ) {
        if i == x.len() && j == y.len() {
            el_add(out, buf.clone(), &Poly::signed_q(odd, exp));
            return;
        }
        if i < x.len() {
            let a = x[i];
            let (mut e, mut s) = (exp, odd);
            for &b in &y[j..] {
                e -= d.form(a, b);
                s ^= d.odd(a) && d.odd(b);
            }
            buf.push(a);
            rec(d, x, y, i + 1, j, e, s, buf, out);
            buf.pop();
        }
        if j < y.len() {
            buf.push(y[j]);
            rec(d, x, y, i, j + 1, exp, odd, buf, out);
            buf.pop();
        }
    }
    let mut out = El::new();
    rec(d, x, y, 0, 0, 0, false, &mut Vec::new(), &mut out);
    out
}

fn shuffle(d: &Osp, x: &El, y: &El) -> El {
    let mut out = El::new();
    for (a, c) in x {
        for (b, e) in y {
            let ce = c.mul(e);
            for (w, k) in shuffle_words(d, a, b) {
                el_add(&mut out, w, &k.mul(&ce));
            }
        }
    }
    out
}

fn shuffle_power(d: &Osp, x: &El, m: u32) -> El {
    (0..m).fold(el_word(&[]), |acc, _| shuffle(d, &acc, x))
}

/// `T(v) = (v_1) ⋄ ... ⋄ (v_d)`.
fn letter_product(d: &Osp, v: &[u8]) -> El {
    v.iter()
        .fold(el_word(&[]), |acc, &a| shuffle(d, &acc, &el_word(&[a])))
}

// ---------------------------------------------------------------- words

fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|k| w < &w[k..])
}

/// Duval's algorithm: non-increasing Lyndon factors.
fn duval(s: &[u8]) -> Vec<Vec<u8>> {
    let mut out = vec![];
    let mut i = 0;
    while i < s.len() {
        let (mut j, mut k) = (i + 1, i);
        while j < s.len() && s[k] <= s[j] {
            k = if s[k] < s[j] { i } else { k + 1 };
            j += 1;
        }
        while i <= k {
            out.push(s[i..i + j - k].to_vec());
            i += j - k;
        }
    }
    out
}

/// Canonical factorization as runs `(l, m)`, largest factor first.
fn runs(w: &[u8]) -> Vec<(Vec<u8>, u32)> {
    let mut out: Vec<(Vec<u8>, u32)> = vec![];
    for f in duval(w) {
        match out.last_mut() {
            Some((l, m)) if *l == f => *m += 1,
            _ => out.push((f, 1)),
        }
    }
    out
}

fn is_dominant(lp: &BTreeMap<Vec<u8>, bool>, w: &[u8]) -> bool {
    duval(w).iter().all(|f| lp.contains_key(f))
}

/// All words of a weight, in increasing order.
fn words_of_weight(nu: &[u32]) -> Vec<Vec<u8>> {
    fn rec(left: &mut Vec<u32>, buf: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if left.iter().all(|&c| c == 0) {
            out.push(buf.clone());
            return;
        }
        for i in 0..left.len() {
            if left[i] > 0 {
                left[i] -= 1;
                buf.push(i as u8 + 1);
                rec(left, buf, out);
                buf.pop();
                left[i] += 1;
            }
        }
    }
    let mut out = vec![];
    rec(&mut nu.to_vec(), &mut vec![], &mut out);
    out
}

fn weights_up_to(n: usize, h: u32) -> Vec<Vec<u32>> {
    Weight::all_up_to_height(n, h)
        .into_iter()
        .map(|w| w.coefficients().to_vec())
        .collect()
}

fn xi_s(d: &Osp, w: &[u8]) -> (i64, i64) {
    let (mut xi, mut s) = (0, 0);
    for (l, m) in runs(w) {
        let m = i64::from(m);
        xi += i64::from(d.parity(&l)) * m * (m - 1) / 2;
        s += d.word_form(&l, &l) * m * (m - 1) / 4;
    }
    (xi, s)
}

/// `[m]_l` with `q_l = q^{(l,l)/2}`, as a quotient of Laurent polynomials.
fn qint(d: &Osp, l: &[u8], m: u32) -> Poly {
    let e = d.word_form(l, l) / 2;
    let (x, xinv) = (Poly::mono(1, e), Poly::mono(1, -e));
    if d.parity(l) {
        let y = x.neg();
        y.pow(m).sub(&xinv.pow(m)).div_exact(&y.sub(&xinv))
    } else {
        x.pow(m).sub(&xinv.pow(m)).div_exact(&x.sub(&xinv))
    }
}

fn qfact(d: &Osp, l: &[u8], m: u32) -> Poly {
    (1..=m).fold(Poly::one(), |acc, k| acc.mul(&qint(d, l, k)))
}

fn kappa(d: &Osp, w: &[u8]) -> Poly {
    let lp = d.lyndon_plus();
    runs(w).iter().fold(Poly::one(), |acc, (l, m)| {
        let k = if lp[l] {
            Poly::mono(-1, 1).add(&Poly::mono(1, -1))
        } else {
            Poly::one()
        };
        acc.mul(&k.pow(*m)).mul(&qfact(d, l, *m))
    })
}

/// Explicit dual PBW vectors of dominant Lyndon words.
fn dual_lyndon(d: &Osp, l: &[u8]) -> El {
    if d.lyndon_plus()[l] {
        el_scale(&el_word(l), &Poly::mono(-1, 1).add(&Poly::mono(1, -1)))
    } else {
        el_word(l)
    }
}

/// `E*_w = (-1)^xi q^s (E*_{l_d})^{⋄n_d} ⋄ ... ⋄ (E*_{l_1})^{⋄n_1}`.
fn dual_pbw(d: &Osp, w: &[u8]) -> El {
    let (xi, s) = xi_s(d, w);
    let mut acc = el_word(&[]);
    for (l, m) in runs(w).iter().rev() {
        acc = shuffle(d, &acc, &shuffle_power(d, &dual_lyndon(d, l), *m));
    }
    el_scale(&acc, &Poly::signed_q(xi % 2 == 1, s))
}

fn tau(e: &El) -> El {
    e.iter()
        .map(|(w, c)| (w.iter().rev().copied().collect(), c.clone()))
        .collect()
}

fn bar(d: &Osp, e: &El) -> El {
    let mut out = El::new();
    for (w, c) in e {
        let (mut exp, mut odd) = (0, false);
        for s in 0..w.len() {
            for t in s + 1..w.len() {
                exp -= d.form(w[s], w[t]);
                odd ^= d.odd(w[s]) && d.odd(w[t]);
            }
        }
        el_add(
            &mut out,
            w.iter().rev().copied().collect(),
            &c.bar().mul(&Poly::signed_q(odd, exp)),
        );
    }
    out
}

fn sigma(d: &Osp, e: &El) -> El {
    bar(d, &tau(e))
}

// ---------------------------------------------------------------- linear algebra over Q(q)

type Vector = BTreeMap<Vec<u8>, Scalar>;

fn to_vector(e: &El) -> Vector {
    e.iter().map(|(w, c)| (w.clone(), c.scalar())).collect()
}

/// Echelon form by maximal word; returns the pivot words.
fn pivot_words(vectors: impl IntoIterator<Item = Vector>) -> BTreeSet<Vec<u8>> {
    let mut pivots: BTreeMap<Vec<u8>, Vector> = BTreeMap::new();
    for mut v in vectors {
        while let Some((m, c)) = v.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
            let Some(p) = pivots.get(&m) else {
                pivots.insert(m, v);
                break;
            };
            let f = &c / &p[&m];
            for (w, x) in p {
                let slot = v.entry(w.clone()).or_default();
                *slot -= &(&f * x);
                if slot.is_zero() {
                    v.remove(w);
                }
            }
        }
    }
    pivots.into_keys().collect()
}

/// Dominant words of a weight as the maximal words of the span of letter products.
fn dominant_by_span(d: &Osp, nu: &[u32]) -> BTreeSet<Vec<u8>> {
    pivot_words(
        words_of_weight(nu)
            .iter()
            .map(|v| to_vector(&letter_product(d, v))),
    )
}

// ---------------------------------------------------------------- criteria

fn lib_word(w: &[u8]) -> Word {
    Word::new(w.to_vec())
}

fn criterion_1() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_osp-shuffle"))
        .args(["roots", "-n", "2"])
        .output()
        .map_err(lib_err)?;
    ensure!(
        out.status.success(),
        "roots -n 2 exited with {:?}",
        out.status.code()
    );
    let text = String::from_utf8(out.stdout).map_err(lib_err)?;
    let lists: BTreeMap<&str, &str> = text.lines().filter_map(|l| l.split_once(": ")).collect();
    let expected = [
        (
            "full positive roots (6)",
            "α1, α2, α1+α2, α1+2α2, 2α2, 2α1+2α2",
        ),
        ("reduced positive roots (4)", "α1, α2, α1+α2, α1+2α2"),
        ("full even (4)", "α1, α1+2α2, 2α2, 2α1+2α2"),
        ("reduced even (2)", "α1, α1+2α2"),
        ("full odd (2)", "α2, α1+α2"),
        ("reduced odd (2)", "α2, α1+α2"),
    ];
    for (k, v) in expected {
        ensure!(
            lists.get(k) == Some(&v),
            "{k}: got {:?}, expected {v}",
            lists.get(k)
        );
    }
    // Same sets from reflections, for n up to 5 against the JSON output.
    for n in 1..=5usize {
        let d = Osp::new(n);
        let reduced = d.positive_roots();
        let odd = |r: &Vec<u32>| r[n - 1] % 2 == 1;
        let doubled: BTreeSet<Vec<u32>> = reduced
            .iter()
            .filter(|r| odd(r))
            .map(|r| r.iter().map(|x| 2 * x).collect())
            .collect();
        let out = Command::new(env!("CARGO_BIN_EXE_osp-shuffle"))
            .args(["roots", "-n", &n.to_string(), "--format", "json"])
            .output()
            .map_err(lib_err)?;
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(lib_err)?;
        let set = |key: &str| -> BTreeSet<Vec<u32>> {
            v[key]
                .as_array()
                .unwrap()
                .iter()
                .map(|e| {
                    e["weight"]
                        .as_array()
                        .unwrap()
                        .iter()
                        .map(|x| x.as_u64().unwrap() as u32)
                        .collect()
                })
                .collect()
        };
        let full: BTreeSet<Vec<u32>> = reduced.union(&doubled).cloned().collect();
        ensure!(
            set("reduced") == reduced,
            "n={n}: reduced roots differ from the reflection closure"
        );
        ensure!(set("full") == full, "n={n}: full roots differ");
        ensure!(
            set("reduced_odd") == reduced.iter().filter(|r| odd(r)).cloned().collect(),
            "n={n}: odd split"
        );
        ensure!(
            set("full_even") == full.iter().filter(|r| r[n - 1] % 2 == 0).cloned().collect(),
            "n={n}: even split"
        );
    }
    Ok("rank 2 lists match exactly; ranks 1..5 match the reflection closure".into())
}

fn criterion_2() -> Outcome {
    let mut detail = vec![];
    for n in 1..=5usize {
        let d = Osp::new(n);
        let datum = RootDatum::osp(n);
        let lib: BTreeSet<Vec<u8>> = words::dominant_lyndon_words(&datum)
            .iter()
            .map(|w| w.letters().to_vec())
            .collect();
        ensure!(
            lib.len() == n * n,
            "n={n}: {} dominant Lyndon words",
            lib.len()
        );
        let listed: BTreeSet<Vec<u8>> = d.lyndon_plus().into_keys().collect();
        ensure!(
            lib == listed,
            "n={n}: dominant Lyndon words differ from the explicit list"
        );
        ensure!(
            lib.iter().all(|w| is_lyndon(w)),
            "n={n}: a listed word is not Lyndon"
        );
        let images: BTreeSet<Vec<u32>> = lib.iter().map(|w| d.weight(w)).collect();
        ensure!(
            images.len() == lib.len(),
            "n={n}: weight map is not injective"
        );
        ensure!(
            images == d.positive_roots(),
            "n={n}: weights of dominant Lyndon words are not the positive roots"
        );
        for r in datum.reduced_positive_roots() {
            let w = words::iota_plus(&r, n);
            ensure!(
                d.weight(w.letters()) == r.weight(n).coefficients(),
                "n={n}: iota+({r}) = {w} has the wrong weight"
            );
        }
        detail.push(format!("n={n}: {}", lib.len()));
    }
    // From first principles: Lyndon maximal words of the span of letter products.
    for n in 1..=3usize {
        let d = Osp::new(n);
        let roots = d.positive_roots();
        for nu in weights_up_to(n, 5) {
            let lyndon: Vec<Vec<u8>> = dominant_by_span(&d, &nu)
                .into_iter()
                .filter(|w| is_lyndon(w))
                .collect();
            let expected: Vec<Vec<u8>> = if roots.contains(&nu) {
                vec![d
                    .lyndon_plus()
                    .into_keys()
                    .find(|w| d.weight(w) == nu)
                    .unwrap()]
            } else {
                vec![]
            };
            ensure!(
                lyndon == expected,
                "n={n}, weight {nu:?}: Lyndon maximal words {lyndon:?}"
            );
        }
    }
    Ok(format!(
        "|L+| = n^2 ({}); span check to height 5 for n <= 3",
        detail.join(", ")
    ))
}

fn criterion_3() -> Outcome {
    let mut count = 0;
    for n in 1..=3usize {
        let d = Osp::new(n);
        let datum = RootDatum::osp(n);
        let lp = d.lyndon_plus();
        let mut dominant: Vec<Vec<u8>> = vec![];
        for nu in weights_up_to(n, 6) {
            dominant.extend(
                words_of_weight(&nu)
                    .into_iter()
                    .filter(|w| is_dominant(&lp, w)),
            );
        }
        for i in lp.keys() {
            let pi = d.parity(i);
            for m in 1..=3u32 {
                let im: Vec<u8> = i.repeat(m as usize);
                // i^m ⋄ i and the m-th shuffle power of i.
                let x = shuffle_words(&d, &im, i);
                let top = [im.as_slice(), i].concat();
                let expect = Poly::signed_q(pi && m % 2 == 1, 0)
                    .mul(&Poly::mono(1, -(m as i64) * d.word_form(i, i) / 2))
                    .mul(&qint(&d, i, m + 1));
                ensure!(
                    el_max(&x) == Some((&top, &expect)),
                    "{}^{m} ⋄ {}: top term differs",
                    show(i),
                    show(i)
                );
                let power = shuffle_power(&d, &el_word(i), m);
                let t = i64::from(m * (m - 1) / 2);
                let lead = Poly::signed_q(pi && t % 2 == 1, -t * d.word_form(i, i) / 2)
                    .mul(&qfact(&d, i, m));
                ensure!(
                    el_max(&power) == Some((&im, &lead)),
                    "{}^⋄{m}: top term differs",
                    show(i)
                );
                count += 2;
                // Powers against smaller words, both ways round, for every smaller dominant word.
                for j in dominant
                    .iter()
                    .filter(|j| j.as_slice() < i.as_slice() && im.len() + j.len() <= 6)
                {
                    let top = [im.as_slice(), j].concat();
                    let c1 = Poly::signed_q(
                        pi && m % 2 == 1 && d.parity(j),
                        -(m as i64) * d.word_form(i, j),
                    );
                    let a = shuffle_words(&d, &im, j);
                    ensure!(
                        el_max(&a) == Some((&top, &c1)),
                        "{}^{m} ⋄ {}: top term differs",
                        show(i),
                        show(j)
                    );
                    let b = shuffle_words(&d, j, &im);
                    ensure!(
                        el_max(&b) == Some((&top, &Poly::one())),
                        "{} ⋄ {}^{m}: top term differs",
                        show(j),
                        show(i)
                    );
                    let c = shuffle(&d, &el_word(j), &power);
                    ensure!(
                        el_max(&c) == Some((&top, &lead)),
                        "{} ⋄ {}^⋄{m}: top term differs",
                        show(j),
                        show(i)
                    );
                    count += 3;
                }
            }
        }
        // Leading term of the ordered product over the canonical factorization.
        for w in &dominant {
            let mut acc = el_word(&[]);
            for (l, m) in runs(w).iter().rev() {
                acc = shuffle(&d, &acc, &shuffle_power(&d, &el_word(l), *m));
            }
            let (xi, s) = xi_s(&d, w);
            let mut lead = Poly::signed_q(xi % 2 == 1, -s);
            for (l, m) in runs(w) {
                lead = lead.mul(&qfact(&d, &l, m));
            }
            ensure!(
                el_max(&acc) == Some((w, &lead)),
                "product for {}: top term differs",
                show(w)
            );
            let lw = lib_word(w);
            ensure!(
                words::xi_and_s(&datum, &lw).map_err(lib_err)? == (xi, s),
                "xi, s of {} differ",
                show(w)
            );
            let lib_lead = lib::shuffle_all(
                &datum,
                words::check_dominant(&lw, n)
                    .map_err(lib_err)?
                    .factors
                    .iter()
                    .rev()
                    .flat_map(|(l, m)| std::iter::repeat_n(Element::word(l.clone()), *m as usize))
                    .collect::<Vec<_>>()
                    .iter(),
            )
            .max_word()
            .map_err(lib_err)?;
            ensure!(
                lib_lead == (lw, lead.scalar()),
                "library product for {} has a different top term",
                show(w)
            );
            count += 1;
        }
    }
    Ok(format!("{count} leading-term identities"))
}

fn criterion_4() -> Outcome {
    let c1 = Poly::mono(1, 2).add(&Poly::mono(-3, -1));
    let c2 = Poly::mono(1, 0).add(&Poly::mono(1, 1));
    let (mut singles, mut pairs) = (0, 0);
    for n in 1..=3usize {
        let d = Osp::new(n);
        let datum = RootDatum::osp(n);
        let all: Vec<Vec<u8>> = (1..=5u32)
            .flat_map(|len| {
                (0..(n as u32).pow(len)).map(move |mut k| {
                    (0..len)
                        .map(|_| {
                            let a = (k % n as u32) as u8 + 1;
                            k /= n as u32;
                            a
                        })
                        .collect()
                })
            })
            .collect();
        for w in &all {
            let x = el_scale(&el_word(w), &c1);
            let lx = to_lib(&x);
            ensure!(
                sigma(&d, &sigma(&d, &x)) == x,
                "sigma^2 != id on {}",
                show(w)
            );
            ensure!(bar(&d, &bar(&d, &x)) == x, "bar^2 != id on {}", show(w));
            ensure!(
                lib::tau(&lx) == to_lib(&tau(&x)),
                "tau differs on {}",
                show(w)
            );
            ensure!(
                lib::bar(&datum, &lx) == to_lib(&bar(&d, &x)),
                "bar differs on {}",
                show(w)
            );
            ensure!(
                lib::sigma(&datum, &lx) == to_lib(&sigma(&d, &x)),
                "sigma differs on {}",
                show(w)
            );
            ensure!(
                lib::sigma(&datum, &lx) == lib::bar(&datum, &lib::tau(&lx)),
                "library sigma != bar tau on {}",
                show(w)
            );
            ensure!(
                lib::sigma(&datum, &lib::sigma(&datum, &lx)) == lx,
                "library sigma^2 != id on {}",
                show(w)
            );
            ensure!(
                lib::bar(&datum, &lib::bar(&datum, &lx)) == lx,
                "library bar^2 != id on {}",
                show(w)
            );
            singles += 1;
        }
        for a in &all {
            for b in all.iter().filter(|b| a.len() + b.len() <= 5) {
                let (x, y) = (el_scale(&el_word(a), &c1), el_scale(&el_word(b), &c2));
                let xy = shuffle(&d, &x, &y);
                ensure!(
                    tau(&xy) == shuffle(&d, &tau(&y), &tau(&x)),
                    "tau not anti-multiplicative on {}, {}",
                    show(a),
                    show(b)
                );
                ensure!(
                    bar(&d, &xy) == shuffle(&d, &bar(&d, &x), &bar(&d, &y)),
                    "bar not multiplicative on {}, {}",
                    show(a),
                    show(b)
                );
                ensure!(
                    sigma(&d, &xy) == shuffle(&d, &sigma(&d, &y), &sigma(&d, &x)),
                    "sigma not anti-multiplicative on {}, {}",
                    show(a),
                    show(b)
                );
                let lxy = lib::shuffle(&datum, &to_lib(&x), &to_lib(&y));
                ensure!(
                    lxy == to_lib(&xy),
                    "library shuffle differs on {}, {}",
                    show(a),
                    show(b)
                );
                let (lx, ly) = (to_lib(&x), to_lib(&y));
                ensure!(
                    lib::bar(&datum, &lxy)
                        == lib::shuffle(&datum, &lib::bar(&datum, &lx), &lib::bar(&datum, &ly))
                        && lib::sigma(&datum, &lxy)
                            == lib::shuffle(
                                &datum,
                                &lib::sigma(&datum, &ly),
                                &lib::sigma(&datum, &lx)
                            ),
                    "library maps fail on {}, {}",
                    show(a),
                    show(b)
                );
                pairs += 1;
            }
        }
    }
    Ok(format!("{singles} words, {pairs} pairs"))
}

fn random_word(rng: &mut ChaCha8Rng, nu: &[u32]) -> Vec<u8> {
    let mut w: Vec<u8> = nu
        .iter()
        .enumerate()
        .flat_map(|(i, &c)| std::iter::repeat_n(i as u8 + 1, c as usize))
        .collect();
    w.shuffle(rng);
    w
}

fn random_coefficient(rng: &mut ChaCha8Rng) -> Poly {
    let c = [-3, -2, -1, 1, 2, 3][rng.gen_range(0..6)];
    Poly::mono(c, rng.gen_range(-2..=2))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x05f0_5f00);
    let algebras: Vec<Algebra> = (1..=3).map(Algebra::new).collect();
    let mut nonzero = 0;
    for _ in 0..200 {
        let n = rng.gen_range(1..=3usize);
        let (d, alg) = (Osp::new(n), &algebras[n - 1]);
        let mut weight = || {
            let h = rng.gen_range(1..=3);
            let mut c = vec![0u32; n];
            for _ in 0..h {
                c[rng.gen_range(0..n)] += 1;
            }
            c
        };
        let (mu, nu) = (weight(), weight());
        let total: Vec<u32> = mu.iter().zip(&nu).map(|(a, b)| a + b).collect();
        let mut in_u = |w: &[u32]| {
            let mut e = El::new();
            for _ in 0..rng.gen_range(1..=2) {
                let c = random_coefficient(&mut rng);
                e = el_sum(
                    &e,
                    &el_scale(&letter_product(&d, &random_word(&mut rng, w)), &c),
                );
            }
            e
        };
        let (y, z) = (in_u(&mu), in_u(&nu));
        let x = in_u(&total);
        let (x, y, z) = (to_lib(&x), to_lib(&y), to_lib(&z));
        let engine = alg.form_engine();
        let lhs = engine
            .form(&x, &lib::shuffle(alg.datum(), &y, &z))
            .map_err(lib_err)?;
        let rhs = engine
            .tensor_form(&lib::coproduct(&x), &y, &z)
            .map_err(lib_err)?;
        ensure!(
            lhs == rhs,
            "adjunction fails: x = {x}, y = {y}, z = {z}: {lhs} vs {rhs}"
        );
        nonzero += usize::from(!lhs.is_zero());
    }
    ensure!(
        nonzero >= 100,
        "only {nonzero} of 200 adjunction triples are nonzero"
    );
    let mut grams = 0;
    let mut norms = 0;
    for alg in &algebras {
        for nu in Weight::all_up_to_height(alg.rank(), 6) {
            let basis = alg.form_engine().basis(&nu).map_err(lib_err)?;
            let vectors: Vec<Element> = basis
                .rows
                .iter()
                .map(|r| r.vector.element.clone())
                .collect();
            let g = alg.form_engine().gram(&vectors).map_err(lib_err)?;
            for (i, row) in g.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    ensure!(*x == g[j][i], "Gram matrix of {nu} is not symmetric");
                }
            }
            ensure!(
                !determinant(&g).is_zero(),
                "Gram matrix of {nu} is singular"
            );
            let (ws, pg) = alg.pbw_gram(&nu).map_err(lib_err)?;
            for (i, row) in pg.iter().enumerate() {
                let direct = alg.pbw_norm_direct(&ws[i]).map_err(lib_err)?;
                let product = alg.pbw_norm_product(&ws[i]).map_err(lib_err)?;
                ensure!(
                    direct == product,
                    "norm routes disagree on {}: {direct} vs {product}",
                    ws[i]
                );
                for (j, x) in row.iter().enumerate() {
                    let expect = if i == j {
                        direct.clone()
                    } else {
                        Scalar::zero()
                    };
                    ensure!(*x == expect, "(E{}, E{}) = {x}", ws[i], ws[j]);
                }
                norms += 1;
            }
            grams += 1;
        }
    }
    let w22 = lib_word(&[2, 2]);
    let q = Scalar::q_pow(1);
    let expect = Scalar::q_pow(-1) / (q - Scalar::q_pow(-1));
    let alg = &algebras[1];
    let e22 = alg.pbw(&w22).map_err(lib_err)?;
    ensure!(
        e22 == to_lib(&el_scale(&el_word(&[2, 2]), &Poly::mono(-1, -1))),
        "E(2,2) = {e22}"
    );
    for (route, v) in [
        ("direct", alg.pbw_norm_direct(&w22)),
        ("product", alg.pbw_norm_product(&w22)),
        ("form", alg.form(&e22, &e22)),
    ] {
        let v = v.map_err(lib_err)?;
        ensure!(v == expect, "(E(2,2), E(2,2)) by the {route} route is {v}");
    }
    Ok(format!(
        "200 adjunction triples ({nonzero} nonzero); {grams} Gram matrices; {norms} PBW norms; (E(2,2),E(2,2)) = {expect}"
    ))
}

fn criterion_6() -> Outcome {
    let mut checked = 0;
    let mut powers = 0;
    for n in 1..=5usize {
        let d = Osp::new(n);
        let alg = Algebra::new(n);
        let lp = d.lyndon_plus();
        let small = if n <= 3 {
            Weight::all_up_to_height(n, 6)
        } else {
            vec![]
        };
        for nu in small {
            let b = alg.weight_bases(&nu).map_err(lib_err)?;
            let stars: Vec<El> = b.words.iter().map(|w| dual_pbw(&d, w.letters())).collect();
            for (k, w) in b.words.iter().enumerate() {
                let wl = w.letters();
                ensure!(
                    b.dual_pbw[k] == to_lib(&stars[k]),
                    "E*{w} differs from the product formula"
                );
                let bs = from_lib(&b.canonical[k])
                    .ok_or(format!("b*{w} has non-Laurent coefficients"))?;
                ensure!(
                    bs.values().all(|c| c.bar() == *c),
                    "b*{w} has a coefficient that is not bar-invariant"
                );
                ensure!(
                    el_max(&bs) == Some((&wl.to_vec(), &kappa(&d, wl))),
                    "top term of b*{w} is not kappa {w}"
                );
                // Coordinates in the dual PBW basis, peeled from the largest word down.
                let mut rest = to_vector(&bs);
                let mut coords: BTreeMap<Vec<u8>, Scalar> = BTreeMap::new();
                let mut order: Vec<(&Word, &El)> = b.words.iter().zip(&stars).collect();
                order.sort_by(|a, b| b.0.cmp(a.0));
                for (j, v) in order {
                    let top = &v[j.letters()];
                    let c = rest.get(j.letters()).cloned().unwrap_or_default() / top.scalar();
                    if !c.is_zero() {
                        for (u, x) in v {
                            let slot = rest.entry(u.clone()).or_default();
                            *slot -= &(&c * &x.scalar());
                            if slot.is_zero() {
                                rest.remove(u);
                            }
                        }
                        coords.insert(j.letters().to_vec(), c);
                    }
                }
                ensure!(
                    rest.is_empty(),
                    "b*{w} is not in the span of the dual PBW basis"
                );
                for (j, c) in &coords {
                    let ok = match j.as_slice().cmp(wl) {
                        std::cmp::Ordering::Greater => false,
                        std::cmp::Ordering::Equal => c.is_one(),
                        std::cmp::Ordering::Less => {
                            Poly::from_scalar(c).is_some_and(|p| p.in_q_zq())
                        }
                    };
                    ensure!(ok, "b*{w} has coefficient {c} on E*{}", show(j));
                }
                if runs(wl).len() == 1 {
                    ensure!(
                        b.canonical[k] == b.dual_pbw[k],
                        "b*{w} != E*{w} for a Lyndon power"
                    );
                }
                checked += 1;
            }
        }
        // Lyndon powers (m <= 3 for n <= 3, Lyndon words beyond): the power is the smallest
        // dominant word of its weight, so b* = E* amounts to bar-invariance of E*.
        for l in lp.keys() {
            for m in 1..=if n <= 3 { 3 } else { 1 } {
                let w = l.repeat(m as usize);
                let nu = d.weight(&w);
                let smaller = words_of_weight(&nu)
                    .into_iter()
                    .take_while(|v| *v < w)
                    .find(|v| is_dominant(&lp, v));
                ensure!(
                    smaller.is_none(),
                    "{} is dominant and below {}",
                    show(&smaller.unwrap()),
                    show(&w)
                );
                let star = dual_pbw(&d, &w);
                ensure!(
                    star.values().all(|c| c.bar() == *c),
                    "E*{} is not bar-invariant",
                    show(&w)
                );
                ensure!(
                    el_max(&star) == Some((&w, &kappa(&d, &w))),
                    "top term of E*{}",
                    show(&w)
                );
                let lw = lib_word(&w);
                ensure!(
                    alg.kappa(&lw).map_err(lib_err)? == kappa(&d, &w).to_lib(),
                    "kappa {lw} differs"
                );
                if n <= 3 {
                    ensure!(
                        alg.dual_pbw_by_product(&lw).map_err(lib_err)? == to_lib(&star),
                        "library E*{lw} differs from the product formula"
                    );
                }
                if n <= 3 && w.len() <= 10 {
                    let lib_b = alg.dual_canonical_word(&lw).map_err(lib_err)?;
                    ensure!(lib_b == to_lib(&star), "library b*{lw} != E*{lw}");
                }
                powers += 1;
            }
        }
    }
    Ok(format!(
        "{checked} dual canonical vectors; {powers} Lyndon powers"
    ))
}

fn explicit_cuspidal(n: usize, root: &Root) -> ModuleJson {
    let word = words::iota_plus(root, n);
    let d = word.len();
    let dim = if root.kind == RootKind::Alpha { 1 } else { 2 };
    let zero = || vec![vec!["0".to_string(); dim]; dim];
    let mut y = vec![zero(); d];
    let mut tau = vec![zero(); d - 1];
    let vector = |label: &str, deg, parity| BasisJson {
        label: label.into(),
        deg,
        parity,
        block: word.clone(),
    };
    let basis = if root.kind == RootKind::Alpha {
        vec![vector("v", 0, 0)]
    } else {
        let r = n - root.i + 1;
        y[r - 1][0][1] = "1".into();
        y[r][0][1] = "1".into();
        tau[r - 1][1][0] = "1".into();
        vec![vector("v1", 1, 1), vector("v-1", -1, 0)]
    };
    ModuleJson {
        n,
        nu: root.weight(n),
        basis,
        y,
        tau,
    }
}

fn criterion_7() -> Outcome {
    let mut modules = 0;
    let mut instances = 0;
    for n in 1..=5usize {
        let d = Osp::new(n);
        let datum = RootDatum::osp(n);
        let alg = Algebra::new(n);
        for orientation in [Orientation::Up, Orientation::Down] {
            let quiver = QuiverData::new(datum.clone(), orientation);
            for root in datum.reduced_positive_roots() {
                let m = cuspidal_module(&datum, &root).map_err(lib_err)?;
                let explicit =
                    GradedSuperModule::from_json(&explicit_cuspidal(n, &root)).map_err(lib_err)?;
                ensure!(m == explicit, "L_{root} differs from the explicit module");
                let report = verify_relations(&m, &quiver).map_err(lib_err)?;
                ensure!(report.passed(), "L_{root} ({orientation}): {report}");
                instances += report.instances;
                let ch = character(&m);
                let w = words::iota_plus(&root, n);
                ensure!(
                    *ch.element() == to_lib(&dual_lyndon(&d, w.letters())),
                    "ch L_{root} = {ch}"
                );
                if n <= 3 {
                    ensure!(
                        *ch.element() == alg.dual_pbw(&w).map_err(lib_err)?,
                        "ch L_{root} != library E*"
                    );
                }
                modules += 1;
            }
        }
    }
    // Perturbations must be reported where they were made.
    let datum = RootDatum::osp(3);
    let quiver = QuiverData::new(datum.clone(), Orientation::Up);
    let root = Root::beta(1, 2);
    let mut bad = explicit_cuspidal(3, &root);
    bad.tau[2][1][0] = "2".into();
    let report = verify_relations(
        &GradedSuperModule::from_json(&bad).map_err(lib_err)?,
        &quiver,
    )
    .map_err(lib_err)?;
    ensure!(!report.passed(), "scaled tau_3 passes");
    ensure!(
        report
            .violations
            .iter()
            .all(|v| v.indices == vec![3] && v.block.to_string() == "(1,2,3,3,2)"),
        "scaled tau_3 reported away from r=3: {report}"
    );
    ensure!(
        report
            .violations
            .iter()
            .any(|v| v.check == Check::Relation(7)),
        "scaled tau_3 does not break relation 7"
    );
    let mut bad = explicit_cuspidal(3, &root);
    bad.basis[0].parity = 0;
    let report = verify_relations(
        &GradedSuperModule::from_json(&bad).map_err(lib_err)?,
        &quiver,
    )
    .map_err(lib_err)?;
    ensure!(
        report
            .violations
            .iter()
            .any(|v| v.check == Check::Homogeneity),
        "parity flip not detected: {report}"
    );
    let mut bad = explicit_cuspidal(3, &Root::alpha(1, 3));
    bad.y[0][0][0] = "1".into();
    let report = verify_relations(
        &GradedSuperModule::from_json(&bad).map_err(lib_err)?,
        &quiver,
    )
    .map_err(lib_err)?;
    ensure!(
        report
            .violations
            .iter()
            .any(|v| v.check == Check::Homogeneity && v.indices == vec![1]),
        "degree-0 y_1 not detected: {report}"
    );
    Ok(format!("{modules} module/orientation pairs, {instances} relation instances; perturbations localized"))
}

fn criterion_8() -> Outcome {
    let mut count = 0;
    for n in 1..=3usize {
        let d = Osp::new(n);
        let datum = RootDatum::osp(n);
        let lp = d.lyndon_plus();
        for nu in weights_up_to(n, 6) {
            let dominant: Vec<Vec<u8>> = words_of_weight(&nu)
                .into_iter()
                .filter(|w| is_dominant(&lp, w))
                .collect();
            let mut chars = vec![];
            for w in &dominant {
                let lw = lib_word(w);
                let ch = standard_character_unchecked(&datum, &lw).map_err(lib_err)?;
                ensure!(
                    *ch.element() == to_lib(&dual_pbw(&d, w)),
                    "ch Δ{lw} != E*{lw}"
                );
                ensure!(
                    highest_weight(&ch).map_err(lib_err)? == lw,
                    "highest weight of Δ{lw}"
                );
                ensure!(
                    ch.coeff(&lw) == kappa(&d, w).to_lib(),
                    "top coefficient of Δ{lw}"
                );
                chars.push(
                    ch.element()
                        .iter()
                        .map(|(w, c)| (w.letters().to_vec(), c.clone()))
                        .collect::<Vector>(),
                );
            }
            let rank = pivot_words(chars).len();
            ensure!(
                rank == dominant.len(),
                "weight {nu:?}: rank {rank} for {} standard characters",
                dominant.len()
            );
            let lib_count = words::dominant_words(&datum, &Weight::new(nu.clone()))
                .map_err(lib_err)?
                .len();
            ensure!(
                lib_count == dominant.len(),
                "weight {nu:?}: library lists {lib_count} dominant words"
            );
            count += dominant.len();
        }
    }
    Ok(format!(
        "{count} standard characters, independent in every weight"
    ))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x09a1_2b3c);
    for _ in 0..500 {
        let n = rng.gen_range(1..=3usize);
        let (d, datum) = (Osp::new(n), RootDatum::osp(n));
        let mut word = || -> Vec<u8> {
            (0..rng.gen_range(0..=5))
                .map(|_| rng.gen_range(1..=n as u8))
                .collect()
        };
        let (a, b) = (word(), word());
        let (la, lb) = (lib_word(&a), lib_word(&b));
        let fast: BTreeMap<Word, LaurentPoly> =
            lib::shuffle_words(&datum, &la, &lb).into_iter().collect();
        let slow = lib::shuffle_words_recursive(&datum, &la, &lb);
        ensure!(
            fast == slow,
            "enumeration and recursion differ on {la} ⋄ {lb}"
        );
        let oracle: BTreeMap<Word, LaurentPoly> = shuffle_words(&d, &a, &b)
            .iter()
            .map(|(w, c)| (lib_word(w), c.to_lib()))
            .collect();
        ensure!(
            fast == oracle,
            "library and interleaving oracle differ on {la} ⋄ {lb}"
        );
    }
    let mut weights = 0;
    for n in 1..=3usize {
        let d = Osp::new(n);
        let datum = RootDatum::osp(n);
        let lp = d.lyndon_plus();
        for nu in weights_up_to(n, 8) {
            let lnu = Weight::new(nu.clone());
            let kostant = words::dominant_words(&datum, &lnu).map_err(lib_err)?;
            let filter = words::dominant_words_by_filter(&datum, &lnu).map_err(lib_err)?;
            ensure!(
                kostant == filter,
                "weight {nu:?}: partition and filter enumerations differ"
            );
            let listed: BTreeSet<Vec<u8>> = words_of_weight(&nu)
                .into_iter()
                .filter(|w| is_dominant(&lp, w))
                .collect();
            let lib_set: BTreeSet<Vec<u8>> = kostant.iter().map(|w| w.letters().to_vec()).collect();
            ensure!(
                lib_set == listed,
                "weight {nu:?}: library differs from factor test"
            );
            if nu.iter().sum::<u32>() <= 5 {
                ensure!(
                    dominant_by_span(&d, &nu) == listed,
                    "weight {nu:?}: span maxima differ"
                );
            }
            weights += 1;
        }
    }
    Ok(format!(
        "500 random pairs bit-exact; {weights} weights agree"
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("root tables", criterion_1),
        ("dominant Lyndon census", criterion_2),
        ("shuffle leading coefficients", criterion_3),
        ("involutions", criterion_4),
        ("bilinear form", criterion_5),
        ("dual canonical basis", criterion_6),
        ("cuspidal modules", criterion_7),
        ("standard characters", criterion_8),
        ("oracle agreement", criterion_9),
    ];
    let start = Instant::now();
    let results: Vec<(Outcome, f64)> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|(_, f)| {
                s.spawn(move || {
                    let t = Instant::now();
                    let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
                    (r, t.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("criterion thread"))
            .collect()
    });
    let mut failed = 0;
    for (k, ((name, _), (r, secs))) in criteria.iter().zip(results).enumerate() {
        match r {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}) [{secs:.1}s]", k + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({e}) [{secs:.1}s]", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed [{:.1}s]",
        9 - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
