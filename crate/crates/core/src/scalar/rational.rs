use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::dense;
use super::laurent::LaurentPoly;

/// An element of `Q(q)` kept in a unique normal form.
///
/// The denominator is an ordinary polynomial with nonzero constant term and positive
/// leading coefficient, and numerator and denominator are coprime in `Z[q]` once the
/// numerator's powers of `q` are cleared. Equality is therefore structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    pub fn zero() -> Self {
        Self::from_laurent(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_laurent(LaurentPoly::constant(c))
    }

    /// `c * q^k`.
    pub fn monomial(c: impl Into<BigInt>, k: i64) -> Self {
        Self::from_laurent(LaurentPoly::monomial(c, k))
    }

    pub fn q_pow(k: i64) -> Self {
        Self::monomial(1, k)
    }

    /// `(-1)^sign * q^k`.
    pub fn signed_q_pow(odd_sign: bool, k: i64) -> Self {
        Self::monomial(if odd_sign { -1 } else { 1 }, k)
    }

    /// Builds `num / den` and normalizes. Panics if `den` is zero.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return Self::from_laurent(num);
        }
        if den.is_monomial() {
            let (k, c) = den.terms()[0].clone();
            if c.is_one() {
                return Self::from_laurent(num.shift(-k));
            }
            if (-&c).is_one() {
                return Self::from_laurent(-num.shift(-k));
            }
        }
        let (ln, n) = num.to_dense();
        let (ld, d) = den.to_dense();
        let g = dense::gcd(&n, &d);
        let mut n = dense::div_exact(&n, &g).expect("gcd divides numerator");
        let mut d = dense::div_exact(&d, &g).expect("gcd divides denominator");
        if d.last().is_some_and(Signed::is_negative) {
            n.iter_mut().for_each(|x| *x = -&*x);
            d.iter_mut().for_each(|x| *x = -&*x);
        }
        Self {
            num: LaurentPoly::from_dense(ln - ld, n),
            den: LaurentPoly::from_dense(0, d),
        }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// True when the value lies in `Z[q, q^-1]`.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        self.is_laurent().then(|| self.num.clone())
    }

    /// Image under `q -> -q^-1`.
    pub fn bar(&self) -> Self {
        if self.is_laurent() {
            return Self::from_laurent(self.num.bar());
        }
        Self::new(self.num.bar(), self.den.bar())
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.bar() == *self
    }

    pub fn shift(&self, k: i64) -> Self {
        Self {
            num: self.num.shift(k),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, m: u32) -> Self {
        Self::new(self.num.pow(m), self.den.pow(m))
    }

    pub fn neg_if(self, odd: bool) -> Self {
        if odd {
            -self
        } else {
            self
        }
    }

    /// Multiplies by a Laurent polynomial; cheaper than a general product.
    pub fn mul_laurent(&self, p: &LaurentPoly) -> Self {
        if self.is_laurent() {
            return Self::from_laurent(&self.num * p);
        }
        Self::new(&self.num * p, self.den.clone())
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        if self.is_laurent() && other.is_laurent() {
            let num = if negate {
                &self.num - &other.num
            } else {
                &self.num + &other.num
            };
            return Self::from_laurent(num);
        }
        if self.den == other.den {
            let num = if negate {
                &self.num - &other.num
            } else {
                &self.num + &other.num
            };
            return Self::new(num, self.den.clone());
        }
        let left = &self.num * &other.den;
        let right = &other.num * &self.den;
        let num = if negate { left - right } else { left + right };
        Self::new(num, &self.den * &other.den)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.is_laurent() && other.is_laurent() {
            return Self::from_laurent(&self.num * &other.num);
        }
        Self::new(&self.num * &other.num, &self.den * &other.den)
    }

    fn div_impl(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero rational function");
        if self.is_laurent() && other.is_laurent() {
            if let Some(q) = self.num.div_exact(&other.num) {
                return Self::from_laurent(q);
            }
        }
        Self::new(&self.num * &other.den, &self.den * &other.num)
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<LaurentPoly> for RationalFunction {
    fn from(p: LaurentPoly) -> Self {
        Self::from_laurent(p)
    }
}

impl From<i64> for RationalFunction {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl fmt::Display for RationalFunction {
    /// `<num>` when the denominator is 1, otherwise `(<num>)/(<den>)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_laurent() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &RationalFunction) -> RationalFunction {
                $body(self, rhs)
            }
        }
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                $body(&self, &rhs)
            }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &RationalFunction) -> RationalFunction {
                $body(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &RationalFunction, b: &RationalFunction| a
    .add_impl(b, false));
forward_binop!(Sub, sub, |a: &RationalFunction, b: &RationalFunction| a
    .add_impl(b, true));
forward_binop!(Mul, mul, |a: &RationalFunction, b: &RationalFunction| a
    .mul_impl(b));
forward_binop!(Div, div, |a: &RationalFunction, b: &RationalFunction| a
    .div_impl(b));

impl AddAssign<&RationalFunction> for RationalFunction {
    fn add_assign(&mut self, rhs: &RationalFunction) {
        *self = self.add_impl(rhs, false);
    }
}

impl SubAssign<&RationalFunction> for RationalFunction {
    fn sub_assign(&mut self, rhs: &RationalFunction) {
        *self = self.add_impl(rhs, true);
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        Self {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -self.clone()
    }
}
