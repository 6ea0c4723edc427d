use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cartan::RootDatum;
use crate::error::{Error, ParseError, Result};

use super::matrix::Matrix;

/// Direction of the arrow between `i` and `i+1`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// `i -> i+1`, so `d_{i,i+1} = 1`.
    #[default]
    Up,
    /// `i+1 -> i`, so `d_{i+1,i} = 1`.
    Down,
}

impl FromStr for Orientation {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        match s.trim() {
            "up" => Ok(Self::Up),
            "down" => Ok(Self::Down),
            other => Err(ParseError::new("orientation", s, other)),
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Up => "up",
            Self::Down => "down",
        })
    }
}

/// `Q_{ij}(u,v) = sign (u^{u_exp} - v^{v_exp})`, or zero when `sign == 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QPolynomial {
    pub sign: i8,
    pub u_exp: u32,
    pub v_exp: u32,
}

impl QPolynomial {
    pub const ZERO: QPolynomial = QPolynomial {
        sign: 0,
        u_exp: 0,
        v_exp: 0,
    };

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// Substitutes `u`, `v`. Each monomial involves one variable only, so order is immaterial.
    pub fn eval(&self, u: &Matrix, v: &Matrix) -> Matrix {
        let dim = u.dim();
        if self.is_zero() {
            return Matrix::zero(dim);
        }
        let diff = &u.pow(self.u_exp) - &v.pow(self.v_exp);
        if self.sign < 0 {
            -&diff
        } else {
            diff
        }
    }

    /// `(Q(w,v) - Q(u,v)) / (w - u)` for commuting `u`, `w`; with `squared`, the quotient
    /// by `w^2 - u^2` instead. `None` when that quotient is not a polynomial.
    pub fn divided_difference(&self, w: &Matrix, u: &Matrix, squared: bool) -> Option<Matrix> {
        let dim = u.dim();
        if self.is_zero() {
            return Some(Matrix::zero(dim));
        }
        let (w, u, a) = if squared {
            if self.u_exp % 2 == 1 {
                return None;
            }
            (w * w, u * u, self.u_exp / 2)
        } else {
            (w.clone(), u.clone(), self.u_exp)
        };
        let mut out = Matrix::zero(dim);
        for k in 0..a {
            out = &out + &(&w.pow(k) * &u.pow(a - 1 - k));
        }
        Some(if self.sign < 0 { -&out } else { out })
    }
}

fn power(var: &str, e: u32) -> String {
    if e == 1 {
        var.to_string()
    } else {
        format!("{var}^{e}")
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let body = format!("{} - {}", power("u", self.u_exp), power("v", self.v_exp));
        if self.sign < 0 {
            write!(f, "-({body})")
        } else {
            write!(f, "{body}")
        }
    }
}

/// The root datum together with arrow counts `d_{ij}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverData {
    datum: RootDatum,
    d: BTreeMap<(usize, usize), u32>,
}

impl QuiverData {
    pub fn new(datum: RootDatum, orientation: Orientation) -> Self {
        let n = datum.rank();
        let mut d = BTreeMap::new();
        for i in 1..n {
            let (fwd, back) = match orientation {
                Orientation::Up => (1, 0),
                Orientation::Down => (0, 1),
            };
            d.insert((i, i + 1), fwd);
            d.insert((i + 1, i), back);
        }
        Self { datum, d }
    }

    /// Arbitrary arrow counts; missing pairs count as zero.
    pub fn with_arrows(datum: RootDatum, d: BTreeMap<(usize, usize), u32>) -> Result<Self> {
        let n = datum.rank();
        let get = |i, j| d.get(&(i, j)).copied().unwrap_or(0);
        for &(i, j) in d.keys() {
            if i == j || !(1..=n).contains(&i) || !(1..=n).contains(&j) {
                return Err(Error::MalformedModule(format!(
                    "arrow count at invalid pair ({i},{j})"
                )));
            }
        }
        for i in 1..=n {
            for j in i + 1..=n {
                let adjacent = datum.cartan_matrix()[i - 1][j - 1] != 0;
                let total = get(i, j) + get(j, i);
                if adjacent && total != 1 || !adjacent && total != 0 {
                    return Err(Error::MalformedModule(format!(
                        "arrow counts d({i},{j}) = {}, d({j},{i}) = {} violate the quiver invariants",
                        get(i, j),
                        get(j, i)
                    )));
                }
            }
        }
        Ok(Self { datum, d })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn d(&self, i: usize, j: usize) -> u32 {
        self.d.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.datum.cartan_matrix()[i - 1][j - 1] != 0
    }

    /// `Q_ii = 0`; otherwise `(-1)^{d_ij} (u^{2/s_i} - v^{2/s_j})`, for every pair.
    pub fn q_polynomial(&self, i: usize, j: usize) -> QPolynomial {
        if i == j {
            return QPolynomial::ZERO;
        }
        let exp = |k: usize| u32::try_from(2 / self.datum.s(k)).expect("s is 1 or 2");
        QPolynomial {
            sign: if self.d(i, j) % 2 == 1 { -1 } else { 1 },
            u_exp: exp(i),
            v_exp: exp(j),
        }
    }
}
