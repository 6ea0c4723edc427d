use serde::{Deserialize, Serialize};

use num_rational::BigRational;
use num_traits::One;

use crate::cartan::{Parity, Root, RootDatum, RootKind, Weight};
use crate::error::{Error, Result};
use crate::words::{iota_plus, Word};

use super::matrix::{format_rational, parse_rational, Matrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisVector {
    pub label: String,
    pub deg: i64,
    pub parity: Parity,
    /// The word `i` with `e(i) v = v`.
    pub block: Word,
}

/// A finite-dimensional graded super-module given by its generator matrices.
/// `y[r-1]` is `y_r` and `tau[r-1]` is `tau_r`; `e(i)` projects onto the vectors of block `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSuperModule {
    pub n: usize,
    pub nu: Weight,
    pub basis: Vec<BasisVector>,
    pub y: Vec<Matrix>,
    pub tau: Vec<Matrix>,
}

impl GradedSuperModule {
    /// Checks shapes only. Relation and grading failures are left to the verifier.
    pub fn new(
        n: usize,
        nu: Weight,
        basis: Vec<BasisVector>,
        y: Vec<Matrix>,
        tau: Vec<Matrix>,
    ) -> Result<Self> {
        let malformed = |m: String| Err(Error::MalformedModule(m));
        if n == 0 {
            return malformed("rank must be positive".into());
        }
        if nu.rank() != n {
            return malformed(format!(
                "weight {nu} has {} coefficients, expected {n}",
                nu.rank()
            ));
        }
        let d = nu.height() as usize;
        let dim = basis.len();
        if y.len() != d {
            return malformed(format!("{} y matrices given, expected {d}", y.len()));
        }
        if tau.len() != d.saturating_sub(1) {
            return malformed(format!(
                "{} tau matrices given, expected {}",
                tau.len(),
                d.saturating_sub(1)
            ));
        }
        for (name, list) in [("y", &y), ("tau", &tau)] {
            if let Some((k, m)) = list.iter().enumerate().find(|(_, m)| m.dim() != dim) {
                return malformed(format!(
                    "{name}_{} is {1}x{1}, expected {dim}x{dim}",
                    k + 1,
                    m.dim()
                ));
            }
        }
        for v in &basis {
            if v.block.len() != d {
                return malformed(format!(
                    "block {} of {} has length {}, expected {d}",
                    v.block,
                    v.label,
                    v.block.len()
                ));
            }
            v.block.validate(n)?;
        }
        Ok(Self {
            n,
            nu,
            basis,
            y,
            tau,
        })
    }

    /// The module with no vectors.
    pub fn zero(n: usize, nu: Weight) -> Result<Self> {
        let d = nu.height() as usize;
        Self::new(
            n,
            nu,
            vec![],
            vec![Matrix::zero(0); d],
            vec![Matrix::zero(0); d.saturating_sub(1)],
        )
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Length of the words in `I^nu`.
    pub fn word_length(&self) -> usize {
        self.nu.height() as usize
    }

    pub fn to_json(&self) -> ModuleJson {
        let mat = |m: &Matrix| {
            m.rows()
                .iter()
                .map(|r| r.iter().map(format_rational).collect())
                .collect()
        };
        ModuleJson {
            n: self.n,
            nu: self.nu.clone(),
            basis: self
                .basis
                .iter()
                .map(|v| BasisJson {
                    label: v.label.clone(),
                    deg: v.deg,
                    parity: v.parity.as_int() as u8,
                    block: v.block.clone(),
                })
                .collect(),
            y: self.y.iter().map(mat).collect(),
            tau: self.tau.iter().map(mat).collect(),
        }
    }

    pub fn from_json(json: &ModuleJson) -> Result<Self> {
        let mat = |rows: &Vec<Vec<String>>| -> Result<Matrix> {
            let parsed = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|x| parse_rational(x))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            Matrix::from_rows(parsed)
        };
        let basis = json
            .basis
            .iter()
            .map(|b| match b.parity {
                0 | 1 => Ok(BasisVector {
                    label: b.label.clone(),
                    deg: b.deg,
                    parity: Parity::from_int(i64::from(b.parity)),
                    block: b.block.clone(),
                }),
                p => Err(Error::MalformedModule(format!(
                    "parity {p} of {} is not 0 or 1",
                    b.label
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(
            json.n,
            json.nu.clone(),
            basis,
            json.y.iter().map(mat).collect::<Result<_>>()?,
            json.tau.iter().map(mat).collect::<Result<_>>()?,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisJson {
    pub label: String,
    pub deg: i64,
    pub parity: u8,
    pub block: Word,
}

/// File format of a module: matrices are dense `[row][col]` arrays of `"p/q"` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub n: usize,
    pub nu: Weight,
    pub basis: Vec<BasisJson>,
    pub y: Vec<Vec<Vec<String>>>,
    pub tau: Vec<Vec<Vec<String>>>,
}

/// The cuspidal module `L_root`: one vector for `alpha(i,j)`; for `beta(i,j)` the vectors
/// `v1` (degree 1, odd) and `v-1` (degree -1, even) with
/// `y_{n-i+1} v-1 = y_{n-i+2} v-1 = v1` and `tau_{n-i+1} v1 = v-1`.
pub fn cuspidal_module(datum: &RootDatum, root: &Root) -> Result<GradedSuperModule> {
    let n = datum.rank();
    if !root.is_valid(n) {
        return Err(Error::NotDominantLyndon(format!(
            "{root} (not a root for rank {n})"
        )));
    }
    let word = iota_plus(root, n);
    let nu = root.weight(n);
    let d = word.len();
    let vector = |label: &str, deg, parity| BasisVector {
        label: label.to_string(),
        deg,
        parity,
        block: word.clone(),
    };
    match root.kind {
        RootKind::Alpha => GradedSuperModule::new(
            n,
            nu,
            vec![vector("v", 0, Parity::Even)],
            vec![Matrix::zero(1); d],
            vec![Matrix::zero(1); d - 1],
        ),
        RootKind::Beta => {
            let (top, bottom) = (0, 1);
            let r = n - root.i + 1;
            let mut y = vec![Matrix::zero(2); d];
            y[r - 1].set(top, bottom, BigRational::one());
            y[r].set(top, bottom, BigRational::one());
            let mut tau = vec![Matrix::zero(2); d - 1];
            tau[r - 1].set(bottom, top, BigRational::one());
            GradedSuperModule::new(
                n,
                nu,
                vec![
                    vector("v1", 1, Parity::Odd),
                    vector("v-1", -1, Parity::Even),
                ],
                y,
                tau,
            )
        }
    }
}
