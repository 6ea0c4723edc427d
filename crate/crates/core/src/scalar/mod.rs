//! Exact scalars: `Z[q, q^-1]`, its fraction field, and super quantum integers.

mod dense;
mod laurent;
mod rational;

use std::str::FromStr;

use num_bigint::BigInt;

pub use laurent::LaurentPoly;
pub use rational::RationalFunction;

use crate::cartan::Parity;
use crate::error::ParseError;

/// Scalar type used for coefficients throughout the crate.
pub type Scalar = RationalFunction;

/// Super quantum integer `[m]` with `q_i = q^s`.
///
/// Even parity gives `(x^m - x^-m)/(x - x^-1)`, odd parity gives
/// `((-x)^m - x^-m)/(-x - x^-1)`, where `x = q^s`. Both are Laurent polynomials.
pub fn super_qint(m: u32, parity: Parity, s: u32) -> LaurentPoly {
    let s = i64::from(s);
    let m = i64::from(m);
    // With y = x (even) or y = -x (odd) both cases read sum_k (+-1)^k y^(m-1-2k).
    let terms = (0..m).map(|k| {
        let e = m - 1 - 2 * k;
        let sign = match parity {
            Parity::Even => 1,
            // (-x)^e * (-1)^k
            Parity::Odd => {
                if (e.rem_euclid(2) + k) % 2 == 0 {
                    1
                } else {
                    -1
                }
            }
        };
        (e * s, sign)
    });
    LaurentPoly::from_terms(terms)
}

/// `[m]! = [m][m-1]...[1]`, with `[0]! = 1`.
pub fn super_qfact(m: u32, parity: Parity, s: u32) -> LaurentPoly {
    (1..=m).fold(LaurentPoly::one(), |acc, k| acc * super_qint(k, parity, s))
}

impl FromStr for LaurentPoly {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ParseError::new("scalar", text, "empty"));
        }
        let mut terms: Vec<(i64, BigInt)> = Vec::new();
        let bytes = compact.as_bytes();
        let mut start = 0;
        // split at top-level +/- that are not exponent signs
        let mut pieces = Vec::new();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                pieces.push(&compact[start..i]);
                start = i;
            }
        }
        pieces.push(&compact[start..]);
        for piece in pieces {
            terms.push(parse_term(piece).ok_or_else(|| ParseError::new("scalar", text, piece))?);
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

fn parse_term(piece: &str) -> Option<(i64, BigInt)> {
    let (sign, body) = match piece.as_bytes().first()? {
        b'+' => (1, &piece[1..]),
        b'-' => (-1, &piece[1..]),
        _ => (1, piece),
    };
    if body.is_empty() {
        return None;
    }
    let (coef, power) = match body.find('q') {
        None => (body, None),
        Some(pos) => {
            let coef = body[..pos].trim_end_matches('*');
            (coef, Some(&body[pos + 1..]))
        }
    };
    let coef: BigInt = if coef.is_empty() {
        power?;
        BigInt::from(1)
    } else {
        coef.parse().ok()?
    };
    let exp = match power {
        None => 0,
        Some("") => 1,
        Some(rest) => rest.strip_prefix('^')?.parse().ok()?,
    };
    Some((exp, coef * sign))
}

impl FromStr for RationalFunction {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(split) = compact.find(")/(") {
            let (num, den) = (&compact[..split + 1], &compact[split + 2..]);
            let strip = |s: &str| -> Result<LaurentPoly, ParseError> {
                s.strip_prefix('(')
                    .and_then(|s| s.strip_suffix(')'))
                    .ok_or_else(|| ParseError::new("scalar", text, s))?
                    .parse()
            };
            let den = strip(den)?;
            if den.is_zero() {
                return Err(ParseError::new("scalar", text, "zero denominator"));
            }
            return Ok(RationalFunction::new(strip(num)?, den));
        }
        let inner = compact
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .unwrap_or(&compact);
        Ok(RationalFunction::from_laurent(inner.parse()?))
    }
}
