use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::dense::{self, Dense};

/// An element of `Z[q, q^-1]`, stored as sorted `(exponent, coefficient)` pairs with no
/// zero coefficients. The zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(i64, BigInt)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^k`.
    pub fn monomial(c: impl Into<BigInt>, k: i64) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            Self {
                terms: vec![(k, c)],
            }
        }
    }

    /// `q^k`.
    pub fn q_pow(k: i64) -> Self {
        Self::monomial(1, k)
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut raw: Vec<(i64, BigInt)> = terms.into_iter().map(|(k, c)| (k, c.into())).collect();
        raw.sort_by_key(|(k, _)| *k);
        let mut terms: Vec<(i64, BigInt)> = Vec::with_capacity(raw.len());
        for (k, c) in raw {
            match terms.last_mut() {
                Some((k0, c0)) if *k0 == k => *c0 += c,
                _ => terms.push((k, c)),
            }
        }
        terms.retain(|(_, c)| !c.is_zero());
        Self { terms }
    }

    pub fn terms(&self) -> &[(i64, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.first().map(|(k, _)| *k)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.last().map(|(k, _)| *k)
    }

    pub fn coeff(&self, k: i64) -> BigInt {
        match self.terms.binary_search_by_key(&k, |(e, _)| *e) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// Leading (highest exponent) coefficient; zero for the zero polynomial.
    pub fn leading_coeff(&self) -> BigInt {
        self.terms
            .last()
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }

    /// Image under the ring involution `q -> -q^-1`.
    pub fn bar(&self) -> Self {
        let mut terms: Vec<(i64, BigInt)> = self
            .terms
            .iter()
            .map(|(k, c)| (-k, if k.rem_euclid(2) == 1 { -c } else { c.clone() }))
            .collect();
        terms.reverse();
        Self { terms }
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.bar() == *self
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn pow(&self, m: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..m {
            acc = &acc * self;
        }
        acc
    }

    /// True when every exponent is strictly positive (membership in `qZ[q]`).
    pub fn in_q_zq(&self) -> bool {
        self.terms.iter().all(|(k, _)| *k > 0)
    }

    /// Splits off the lowest power of `q`: returns `(k, p)` with `self = q^k * p(q)` and
    /// `p` an ordinary polynomial with nonzero constant term (ascending dense form).
    pub(crate) fn to_dense(&self) -> (i64, Dense) {
        let Some(low) = self.min_exp() else {
            return (0, Vec::new());
        };
        let high = self.max_exp().unwrap();
        let mut out = vec![BigInt::zero(); (high - low + 1) as usize];
        for (k, c) in &self.terms {
            out[(k - low) as usize] = c.clone();
        }
        (low, out)
    }

    pub(crate) fn from_dense(low: i64, coeffs: Dense) -> Self {
        let terms = coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (low + i as i64, c))
            .collect();
        Self { terms }
    }

    /// Exact division in `Z[q, q^-1]`, `None` if `other` does not divide `self`.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        assert!(!other.is_zero(), "division by zero Laurent polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if other.is_monomial() {
            let (k, c) = &other.terms[0];
            let mut terms = Vec::with_capacity(self.terms.len());
            for (e, x) in &self.terms {
                if !(x % c).is_zero() {
                    return None;
                }
                terms.push((e - k, x / c));
            }
            return Some(Self { terms });
        }
        let (la, a) = self.to_dense();
        let (lb, b) = other.to_dense();
        dense::div_exact(&a, &b).map(|quot| Self::from_dense(la - lb, quot))
    }

    /// Substitutes an integer value for `q` (only meaningful with nonnegative exponents or
    /// for inspection in tests); returns numerator and denominator of the value.
    pub fn eval_i64(&self, q: i64) -> (BigInt, BigInt) {
        let low = self.min_exp().unwrap_or(0).min(0);
        let mut num = BigInt::zero();
        for (k, c) in &self.terms {
            num += c * BigInt::from(q).pow((k - low) as u32);
        }
        (num, BigInt::from(q).pow((-low) as u32))
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let sign = |c: &BigInt| if negate { -c } else { c.clone() };
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                terms.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                terms.push((b[j].0, sign(&b[j].1)));
                j += 1;
            } else {
                let c = if negate {
                    &a[i].1 - &b[j].1
                } else {
                    &a[i].1 + &b[j].1
                };
                if !c.is_zero() {
                    terms.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        Self { terms }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.is_monomial() {
            let (k, c) = &self.terms[0];
            return other.scale(c).shift(*k);
        }
        if other.is_monomial() {
            let (k, c) = &other.terms[0];
            return self.scale(c).shift(*k);
        }
        let (la, a) = self.to_dense();
        let (lb, b) = other.to_dense();
        Self::from_dense(la + lb, dense::mul(&a, &b))
    }
}

impl fmt::Display for LaurentPoly {
    /// Canonical text: terms in decreasing exponent order, e.g. `-q + q^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (k, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let power = match *k {
                0 => String::new(),
                1 => "q".to_string(),
                k => format!("q^{k}"),
            };
            match (abs.is_one(), power.is_empty()) {
                (_, true) => write!(f, "{abs}")?,
                (true, false) => write!(f, "{power}")?,
                (false, false) => write!(f, "{abs}*{power}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                $body(self, rhs)
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                $body(&self, &rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                $body(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &LaurentPoly, b: &LaurentPoly| a
    .add_impl(b, false));
forward_binop!(Sub, sub, |a: &LaurentPoly, b: &LaurentPoly| a
    .add_impl(b, true));
forward_binop!(Mul, mul, |a: &LaurentPoly, b: &LaurentPoly| a.mul_impl(b));

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.add_impl(rhs, false);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.add_impl(rhs, true);
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        Self {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}
