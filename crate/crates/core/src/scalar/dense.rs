//! Dense integer polynomial helpers used for normalization of rational functions.
//!
//! Polynomials are stored in ascending order, `p[k]` being the coefficient of `q^k`.
//! All routines keep their outputs trimmed (no trailing zeros); the zero polynomial is
//! the empty vector.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) type Dense = Vec<BigInt>;

pub(crate) fn trim(p: &mut Dense) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> Dense {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn scale_div(p: &[BigInt], c: &BigInt) -> Dense {
    p.iter().map(|x| x / c).collect()
}

/// Exact division over the integers. Returns `None` when `b` does not divide `a` in `Z[q]`.
pub(crate) fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Dense> {
    assert!(!b.is_empty(), "division by the zero polynomial");
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let mut rem: Dense = a.to_vec();
    let lead = b.last().unwrap();
    let mut quot = vec![BigInt::zero(); a.len() - b.len() + 1];
    for k in (0..quot.len()).rev() {
        let top = &rem[k + b.len() - 1];
        if top.is_zero() {
            continue;
        }
        let (c, r) = top.div_rem(lead);
        if !r.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &c * bj;
        }
        quot[k] = c;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim(&mut quot);
    Some(quot)
}

/// Pseudo-remainder of `a` by `b`: `lc(b)^(deg a - deg b + 1) * a mod b`.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Dense {
    let mut rem: Dense = a.to_vec();
    let lead = b.last().unwrap().clone();
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let top = rem.last().unwrap().clone();
        for c in rem.iter_mut() {
            *c *= &lead;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[shift + j] -= &top * bj;
        }
        trim(&mut rem);
    }
    rem
}

fn primitive(p: &[BigInt]) -> Dense {
    let c = content(p);
    let mut out = scale_div(p, &c);
    if out.last().is_some_and(Signed::is_negative) {
        for x in out.iter_mut() {
            *x = -&*x;
        }
    }
    out
}

/// Greatest common divisor in `Z[q]`, normalized to a positive leading coefficient.
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> Dense {
    if a.is_empty() {
        return primitive_with_content(b);
    }
    if b.is_empty() {
        return primitive_with_content(a);
    }
    let c = content(a).gcd(&content(b));
    let (mut x, mut y) = if a.len() >= b.len() {
        (primitive(a), primitive(b))
    } else {
        (primitive(b), primitive(a))
    };
    while !y.is_empty() {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = if r.is_empty() { r } else { primitive(&r) };
    }
    x.iter().map(|v| v * &c).collect()
}

fn primitive_with_content(p: &[BigInt]) -> Dense {
    let mut out = p.to_vec();
    if out.last().is_some_and(Signed::is_negative) {
        for x in out.iter_mut() {
            *x = -&*x;
        }
    }
    if out.is_empty() {
        out.push(BigInt::one());
    }
    out
}
