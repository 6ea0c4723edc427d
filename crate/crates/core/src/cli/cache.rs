use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bases::{Algebra, WeightBases};
use crate::cartan::Weight;
use crate::error::{Error, Result};
use crate::scalar::{LaurentPoly, Scalar};
use crate::shuffle::{Element, ElementJson};
use crate::words::Word;

#[derive(Debug, Serialize, Deserialize)]
struct CachedBases {
    n: usize,
    weight: Weight,
    words: Vec<Word>,
    pbw: Vec<ElementJson>,
    norms: Vec<String>,
    dual_pbw: Vec<ElementJson>,
    canonical: Vec<ElementJson>,
    transition: Vec<Vec<String>>,
}

impl CachedBases {
    fn from_bases(n: usize, b: &WeightBases) -> Self {
        let json = |xs: &[Element]| xs.iter().map(|x| x.to_json(n)).collect();
        Self {
            n,
            weight: b.weight.clone(),
            words: b.words.clone(),
            pbw: json(&b.pbw),
            norms: b.norms.iter().map(ToString::to_string).collect(),
            dual_pbw: json(&b.dual_pbw),
            canonical: json(&b.canonical),
            transition: b
                .transition
                .iter()
                .map(|row| row.iter().map(ToString::to_string).collect())
                .collect(),
        }
    }

    fn into_bases(self) -> Result<WeightBases> {
        let elements = |xs: Vec<ElementJson>| {
            xs.iter()
                .map(Element::from_json)
                .collect::<Result<Vec<_>>>()
        };
        let size = self.words.len();
        let bases = WeightBases {
            weight: self.weight,
            words: self.words,
            pbw: elements(self.pbw)?,
            norms: self
                .norms
                .iter()
                .map(|s| s.parse::<Scalar>())
                .collect::<Result<_, _>>()?,
            dual_pbw: elements(self.dual_pbw)?,
            canonical: elements(self.canonical)?,
            transition: self
                .transition
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|s| s.parse::<LaurentPoly>())
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<_, _>>()?,
        };
        let lengths = [
            bases.pbw.len(),
            bases.norms.len(),
            bases.dual_pbw.len(),
            bases.canonical.len(),
            bases.transition.len(),
        ];
        if lengths.iter().any(|&l| l != size) || bases.transition.iter().any(|r| r.len() != size) {
            return Err(Error::Inconsistent(
                "cached bases have inconsistent lengths".into(),
            ));
        }
        Ok(bases)
    }
}

/// Per-weight bases stored as JSON under `dir/v<version>/n<rank>/`.
pub struct BasesCache {
    dir: Option<PathBuf>,
}

impl BasesCache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Self { dir }
    }

    fn path(&self, n: usize, nu: &Weight) -> Option<PathBuf> {
        let key: Vec<String> = nu.coefficients().iter().map(ToString::to_string).collect();
        self.dir.as_ref().map(|d| {
            d.join(format!("v{}", env!("CARGO_PKG_VERSION")))
                .join(format!("n{n}"))
                .join(format!("{}.json", key.join("-")))
        })
    }

    fn load(path: &Path, n: usize, nu: &Weight) -> Option<WeightBases> {
        let text = fs::read_to_string(path).ok()?;
        let cached: CachedBases = serde_json::from_str(&text).ok()?;
        if cached.n != n || cached.weight != *nu {
            return None;
        }
        cached.into_bases().ok()
    }

    fn store(path: &Path, n: usize, b: &WeightBases) -> std::io::Result<()> {
        fs::create_dir_all(path.parent().expect("cache path has a parent"))?;
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        let text =
            serde_json::to_string(&CachedBases::from_bases(n, b)).map_err(std::io::Error::other)?;
        fs::write(&tmp, text)?;
        fs::rename(&tmp, path)
    }

    /// Cached bases, or computed and stored. Unreadable entries are recomputed; a failed
    /// write is reported in the returned warning.
    pub fn weight_bases(
        &self,
        alg: &Algebra,
        nu: &Weight,
    ) -> Result<(Arc<WeightBases>, Option<String>)> {
        let n = alg.rank();
        let Some(path) = self.path(n, nu) else {
            return Ok((alg.weight_bases(nu)?, None));
        };
        if let Some(b) = Self::load(&path, n, nu) {
            return Ok((Arc::new(b), None));
        }
        let b = alg.weight_bases(nu)?;
        let warning = Self::store(&path, n, &b)
            .err()
            .map(|e| format!("could not write cache entry {}: {e}", path.display()));
        Ok((b, warning))
    }
}
