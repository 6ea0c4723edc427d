//! Root datum of `osp(1|2n)`: Cartan matrix, symmetrizer, parity, the form on `Q`, and
//! positive roots.

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};

/// Element of `Z/2Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_int(k: i64) -> Self {
        if k.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn as_int(self) -> i64 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_int(self.as_int() + rhs.as_int())
    }
}

impl std::ops::Mul for Parity {
    type Output = Parity;
    fn mul(self, rhs: Parity) -> Parity {
        Parity::from_int(self.as_int() * rhs.as_int())
    }
}

/// `nu = sum c_i alpha_i` in `Q^+`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<u32>);

impl Weight {
    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn new(coefficients: Vec<u32>) -> Self {
        Self(coefficients)
    }

    /// The simple root `alpha_i` (1-based).
    pub fn simple(n: usize, i: usize) -> Self {
        let mut c = vec![0; n];
        c[i - 1] = 1;
        Self(c)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coefficients(&self) -> &[u32] {
        &self.0
    }

    /// Coefficient of `alpha_i` (1-based).
    pub fn coeff(&self, i: usize) -> u32 {
        self.0[i - 1]
    }

    pub fn height(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// `p(nu)`; only `alpha_n` is odd.
    pub fn parity(&self) -> Parity {
        Parity::from_int(self.0.last().copied().unwrap_or(0).into())
    }

    pub fn scaled(&self, m: u32) -> Self {
        Self(self.0.iter().map(|c| c * m).collect())
    }

    /// `self - other` if it stays in `Q^+`.
    pub fn checked_sub(&self, other: &Weight) -> Option<Weight> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Weight)
    }

    pub fn plus(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Every weight of height `1..=max_height` in rank `n`, in lexicographic order of
    /// coefficient vectors.
    pub fn all_up_to_height(n: usize, max_height: u32) -> Vec<Weight> {
        let mut out = Vec::new();
        let mut current = vec![0u32; n];
        fn rec(pos: usize, left: u32, current: &mut Vec<u32>, out: &mut Vec<Weight>) {
            if pos == current.len() {
                if current.iter().any(|&c| c > 0) {
                    out.push(Weight(current.clone()));
                }
                return;
            }
            for c in 0..=left {
                current[pos] = c;
                rec(pos + 1, left - c, current, out);
            }
            current[pos] = 0;
        }
        rec(0, max_height, &mut current, &mut out);
        out
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for Weight {
    type Err = ParseError;

    /// Accepts `[c1,...,cn]`, `(c1,...,cn)` or bare `c1,...,cn`.
    fn from_str(text: &str) -> Result<Self, ParseError> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .or_else(|| compact.strip_prefix('(').and_then(|s| s.strip_suffix(')')))
            .unwrap_or(&compact);
        if inner.is_empty() {
            return Err(ParseError::new("weight", text, "empty"));
        }
        inner
            .split(',')
            .map(|tok| {
                tok.parse::<u32>()
                    .map_err(|_| ParseError::new("weight", text, tok))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Weight)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootKind {
    Alpha,
    Beta,
}

/// A reduced positive root `alpha(i,j)` (`i <= j`) or `beta(i,j)` (`i < j`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    pub kind: RootKind,
    pub i: usize,
    pub j: usize,
}

impl Root {
    pub fn alpha(i: usize, j: usize) -> Self {
        Self {
            kind: RootKind::Alpha,
            i,
            j,
        }
    }

    pub fn beta(i: usize, j: usize) -> Self {
        Self {
            kind: RootKind::Beta,
            i,
            j,
        }
    }

    pub fn is_valid(&self, n: usize) -> bool {
        match self.kind {
            RootKind::Alpha => 1 <= self.i && self.i <= self.j && self.j <= n,
            RootKind::Beta => 1 <= self.i && self.i < self.j && self.j <= n,
        }
    }

    pub fn weight(&self, n: usize) -> Weight {
        let mut c = vec![0u32; n];
        match self.kind {
            RootKind::Alpha => (self.i..=self.j).for_each(|r| c[r - 1] = 1),
            RootKind::Beta => {
                (self.i..self.j).for_each(|r| c[r - 1] = 1);
                (self.j..=n).for_each(|r| c[r - 1] = 2);
            }
        }
        Weight(c)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            RootKind::Alpha => "alpha",
            RootKind::Beta => "beta",
        };
        write!(f, "{name}({},{})", self.i, self.j)
    }
}

impl FromStr for Root {
    type Err = ParseError;

    /// Accepts `alpha(i,j)`, `beta(i,j)` or the JSON object form.
    fn from_str(text: &str) -> Result<Self, ParseError> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.starts_with('{') {
            return serde_json::from_str(&compact)
                .map_err(|_| ParseError::new("root", text, &compact));
        }
        let (kind, rest) = if let Some(rest) = compact.strip_prefix("alpha") {
            (RootKind::Alpha, rest)
        } else if let Some(rest) = compact.strip_prefix("beta") {
            (RootKind::Beta, rest)
        } else {
            let tok = compact.split('(').next().unwrap_or(&compact);
            return Err(ParseError::new("root", text, tok));
        };
        let inner = rest
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| ParseError::new("root", text, rest))?;
        let idx: Vec<usize> = inner
            .split(',')
            .map(|t| t.parse().map_err(|_| ParseError::new("root", text, t)))
            .collect::<Result<_, _>>()?;
        match idx.as_slice() {
            [i, j] => Ok(Root { kind, i: *i, j: *j }),
            _ => Err(ParseError::new("root", text, inner)),
        }
    }
}

/// A positive root of the full system: either reduced, or twice an odd reduced root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FullRoot {
    Reduced(Root),
    Doubled(Root),
}

impl FullRoot {
    pub fn weight(&self, n: usize) -> Weight {
        match self {
            FullRoot::Reduced(r) => r.weight(n),
            FullRoot::Doubled(r) => r.weight(n).scaled(2),
        }
    }
}

impl fmt::Display for FullRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FullRoot::Reduced(r) => write!(f, "{r}"),
            FullRoot::Doubled(r) => write!(f, "2*{r}"),
        }
    }
}

/// The positive roots split by parity, for both the full and the reduced system.
#[derive(Debug, Clone)]
pub struct FullPositiveRoots {
    pub all: Vec<FullRoot>,
    pub even: Vec<FullRoot>,
    pub odd: Vec<FullRoot>,
    pub reduced_even: Vec<Root>,
    pub reduced_odd: Vec<Root>,
}

/// Cartan datum of `osp(1|2n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDatum {
    n: usize,
    cartan: Vec<Vec<i64>>,
    symmetrizer: Vec<i64>,
    form: Vec<Vec<i64>>,
}

impl RootDatum {
    /// The datum of rank `n >= 1`. Index `n` is the only odd index.
    pub fn osp(n: usize) -> Self {
        assert!(n >= 1, "rank must be positive");
        let mut cartan = vec![vec![0i64; n]; n];
        for i in 0..n {
            cartan[i][i] = 2;
            if i + 1 < n {
                cartan[i][i + 1] = -1;
                cartan[i + 1][i] = -1;
            }
        }
        if n >= 2 {
            cartan[n - 1][n - 2] = -2;
        }
        let symmetrizer: Vec<i64> = (0..n).map(|i| if i + 1 == n { 1 } else { 2 }).collect();
        let form = (0..n)
            .map(|i| (0..n).map(|j| symmetrizer[i] * cartan[i][j]).collect())
            .collect();
        Self {
            n,
            cartan,
            symmetrizer,
            form,
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Diagonal of `D`.
    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    /// `B = DA`.
    pub fn form_matrix(&self) -> &[Vec<i64>] {
        &self.form
    }

    /// `s_i` for a 1-based index.
    pub fn s(&self, i: usize) -> i64 {
        self.symmetrizer[i - 1]
    }

    pub fn parity_of(&self, i: usize) -> Parity {
        if i == self.n {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// `(alpha_i, alpha_j)` for 1-based letters.
    pub fn b(&self, i: usize, j: usize) -> i64 {
        self.form[i - 1][j - 1]
    }

    pub fn check_rank(&self, w: &Weight) -> Result<()> {
        if w.rank() == self.n {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                expected: self.n,
                found: w.rank(),
            })
        }
    }

    /// `(mu, nu) = sum c_i d_j b_ij`.
    pub fn bilinear(&self, mu: &Weight, nu: &Weight) -> Result<i64> {
        self.check_rank(mu)?;
        self.check_rank(nu)?;
        let mut total = 0;
        for (i, ci) in mu.coefficients().iter().enumerate() {
            if *ci == 0 {
                continue;
            }
            for (j, dj) in nu.coefficients().iter().enumerate() {
                total += i64::from(*ci) * i64::from(*dj) * self.form[i][j];
            }
        }
        Ok(total)
    }

    /// `N(nu) = ((nu,nu) - sum c_i (alpha_i,alpha_i)) / 2`.
    pub fn big_n(&self, nu: &Weight) -> i64 {
        let total = self.bilinear(nu, nu).expect("weight of the datum's rank");
        let diag: i64 = nu
            .coefficients()
            .iter()
            .enumerate()
            .map(|(i, c)| i64::from(*c) * self.form[i][i])
            .sum();
        (total - diag) / 2
    }

    /// `P(nu) = (p(nu)^2 - sum c_i p(alpha_i)) / 2` with parities read as 0/1.
    pub fn big_p(&self, nu: &Weight) -> i64 {
        let p = nu.parity().as_int();
        let odd_count = i64::from(nu.coeff(self.n));
        (p * p - odd_count) / 2
    }

    /// All `n^2` reduced positive roots: alphas by `(i,j)` lexicographically, then betas.
    pub fn reduced_positive_roots(&self) -> Vec<Root> {
        let n = self.n;
        let mut roots = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in i..=n {
                roots.push(Root::alpha(i, j));
            }
        }
        for i in 1..=n {
            for j in i + 1..=n {
                roots.push(Root::beta(i, j));
            }
        }
        roots
    }

    pub fn full_positive_roots(&self) -> FullPositiveRoots {
        let reduced = self.reduced_positive_roots();
        let (reduced_odd, reduced_even): (Vec<Root>, Vec<Root>) = reduced
            .iter()
            .partition(|r| r.weight(self.n).parity().is_odd());
        let mut all: Vec<FullRoot> = reduced.iter().map(|r| FullRoot::Reduced(*r)).collect();
        all.extend(reduced_odd.iter().map(|r| FullRoot::Doubled(*r)));
        let (odd, even) = all.iter().partition(|r| r.weight(self.n).parity().is_odd());
        FullPositiveRoots {
            all,
            even,
            odd,
            reduced_even,
            reduced_odd,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(c: &[u32]) -> Weight {
        Weight::new(c.to_vec())
    }

    #[test]
    fn rank_two_form() {
        let d = RootDatum::osp(2);
        assert_eq!(d.cartan_matrix(), &[vec![2, -1], vec![-2, 2]]);
        assert_eq!(d.form_matrix(), &[vec![4, -2], vec![-2, 2]]);
        assert_eq!(d.bilinear(&w(&[1, 0]), &w(&[0, 1])).unwrap(), -2);
        assert_eq!(d.bilinear(&w(&[1, 2]), &w(&[1, 2])).unwrap(), 4);
        assert_eq!(d.bilinear(&w(&[1, 2]), &w(&[0, 0])).unwrap(), 0);
        assert!(d.bilinear(&w(&[1, 2, 0]), &w(&[1, 0])).is_err());
    }

    #[test]
    fn n_and_p_values() {
        let d = RootDatum::osp(2);
        assert_eq!(d.big_n(&w(&[1, 0])), 0);
        assert_eq!(d.big_p(&w(&[0, 1])), 0);
        assert_eq!(d.big_n(&w(&[1, 2])), -2);
        assert_eq!(d.big_p(&w(&[1, 1])), 0);
    }

    #[test]
    fn form_is_symmetric_with_diagonal_2s() {
        for n in 1..=6 {
            let d = RootDatum::osp(n);
            for i in 1..=n {
                assert_eq!(d.b(i, i), 2 * d.s(i));
                assert_eq!(d.s(i) % 2 == 1, d.parity_of(i).is_odd());
                for j in 1..=n {
                    assert_eq!(d.b(i, j), d.b(j, i));
                }
            }
        }
    }

    #[test]
    fn root_tables() {
        let d = RootDatum::osp(2);
        let weights: Vec<Weight> = d
            .reduced_positive_roots()
            .iter()
            .map(|r| r.weight(2))
            .collect();
        assert_eq!(
            weights,
            vec![w(&[1, 0]), w(&[1, 1]), w(&[0, 1]), w(&[1, 2])]
        );
        let full = d.full_positive_roots();
        assert_eq!(full.all.len(), 6);
        let odd: Vec<Weight> = full.odd.iter().map(|r| r.weight(2)).collect();
        assert_eq!(odd, vec![w(&[1, 1]), w(&[0, 1])]);
        let one = RootDatum::osp(1).full_positive_roots();
        let all: Vec<Weight> = one.all.iter().map(|r| r.weight(1)).collect();
        assert_eq!(all, vec![w(&[1]), w(&[2])]);
        assert_eq!(RootDatum::osp(3).reduced_positive_roots().len(), 9);
    }

    #[test]
    fn parse_roots_and_weights() {
        assert_eq!("beta(1, 2)".parse::<Root>().unwrap(), Root::beta(1, 2));
        assert_eq!(
            r#"{"kind":"alpha","i":2,"j":3}"#.parse::<Root>().unwrap(),
            Root::alpha(2, 3)
        );
        assert!("gamma(1,2)".parse::<Root>().is_err());
        assert_eq!("[1, 2]".parse::<Weight>().unwrap(), w(&[1, 2]));
        assert_eq!("1,2".parse::<Weight>().unwrap(), w(&[1, 2]));
        let err = "[1,x]".parse::<Weight>().unwrap_err();
        assert_eq!(err.token, "x");
    }
}
