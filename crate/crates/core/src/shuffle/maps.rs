use crate::cartan::RootDatum;
use crate::scalar::Scalar;
use crate::words::Word;

use super::element::Element;

/// `(sign, exponent)` of `(-1)^{Σ_{s<t} p(i_s)p(i_t)} q^{-Σ_{s<t}(α_{i_s},α_{i_t})}`.
fn pair_twist(datum: &RootDatum, w: &Word) -> (bool, i64) {
    let l = w.letters();
    let (mut odd_pairs, mut exp) = (0usize, 0i64);
    let mut odd_seen = 0usize;
    for (t, &b) in l.iter().enumerate() {
        let b = usize::from(b);
        if datum.parity_of(b).is_odd() {
            odd_pairs += odd_seen;
            odd_seen += 1;
        }
        for &a in &l[..t] {
            exp -= datum.b(usize::from(a), b);
        }
    }
    (odd_pairs % 2 == 1, exp)
}

/// `τ`: reverses every word, linear over `Q(q)`.
pub fn tau(x: &Element) -> Element {
    Element::from_terms(x.iter().map(|(w, c)| (w.reversed(), c.clone())))
}

/// The algebra bar map: `q -> -q^-1` on coefficients and
/// `i -> (-1)^{Σ p p} q^{-Σ (,)} reversed(i)`.
pub fn bar(datum: &RootDatum, x: &Element) -> Element {
    Element::from_terms(x.iter().map(|(w, c)| {
        let (sign, exp) = pair_twist(datum, w);
        (w.reversed(), c.bar() * Scalar::signed_q_pow(sign, exp))
    }))
}

/// `σ = bar ∘ τ`, computed directly as `i -> (-1)^{P} q^{-N} i` with barred coefficients.
pub fn sigma(datum: &RootDatum, x: &Element) -> Element {
    let n = datum.rank();
    Element::from_terms(x.iter().map(|(w, c)| {
        let wt = w.weight(n);
        let factor = Scalar::signed_q_pow(datum.big_p(&wt).rem_euclid(2) == 1, -datum.big_n(&wt));
        (w.clone(), c.bar() * factor)
    }))
}

/// Applies `q -> -q^-1` to each coefficient and leaves words alone.
pub fn coefficient_bar(x: &Element) -> Element {
    x.map_coefficients(Scalar::bar)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(s: &str) -> Element {
        Element::word(s.parse().unwrap())
    }

    #[test]
    fn examples() {
        let d = RootDatum::osp(2);
        assert_eq!(sigma(&d, &el("(1,2)")).to_string(), "q^2 (1,2)");
        assert_eq!(tau(&el("(1,2,2)")), el("(2,2,1)"));
        assert_eq!(bar(&d, &el("(2,2)")).to_string(), "-q^-2 (2,2)");
    }

    #[test]
    fn sigma_is_bar_after_tau() {
        let d = RootDatum::osp(3);
        for s in ["(1,2,3)", "(3,3,3)", "(3,2,3,1)", "(2)", "()"] {
            let x = el(s).scale(&"q^3 - 2".parse().unwrap());
            assert_eq!(sigma(&d, &x), bar(&d, &tau(&x)), "{s}");
            assert_eq!(sigma(&d, &sigma(&d, &x)), x);
        }
    }
}
