use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::cartan::{Parity, RootDatum};
use crate::error::{Error, Result};
use crate::words::Word;

use super::matrix::{format_rational, Matrix};
use super::module::GradedSuperModule;
use super::quiver::QuiverData;

/// A defining relation (numbered 1 to 10) or the grading bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Relation(u8),
    Homogeneity,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Check::Relation(k) => write!(f, "relation {k}"),
            Check::Homogeneity => write!(f, "homogeneity"),
        }
    }
}

impl Serialize for Check {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// One failing instance: relation, its 1-based position indices, the block, and a basis
/// vector of that block on which the two sides differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub check: Check,
    pub indices: Vec<usize>,
    pub block: Word,
    pub witness: usize,
    pub witness_label: String,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["r", "s"];
        let idx: Vec<String> = self
            .indices
            .iter()
            .zip(names)
            .map(|(k, name)| format!("{name}={k}"))
            .collect();
        write!(f, "{}", self.check)?;
        if !idx.is_empty() {
            write!(f, " [{}]", idx.join(","))?;
        }
        write!(
            f,
            " on block {}: witness {} (basis index {}): {}",
            self.block, self.witness_label, self.witness, self.detail
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub instances: usize,
    pub violations: Vec<Violation>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn merge(&mut self, other: Report) {
        self.instances += other.instances;
        self.violations.extend(other.violations);
        self.warnings.extend(other.warnings);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        for v in &self.violations {
            writeln!(f, "FAIL {v}")?;
        }
        if self.passed() {
            write!(f, "PASS ({} relation instances)", self.instances)
        } else {
            write!(
                f,
                "{} violation(s) in {} relation instances",
                self.violations.len(),
                self.instances
            )
        }
    }
}

struct Ctx<'a> {
    m: &'a GradedSuperModule,
    quiver: &'a QuiverData,
    /// Block word -> indices of its basis vectors.
    blocks: BTreeMap<Word, Vec<usize>>,
    d: usize,
}

impl Ctx<'_> {
    fn datum(&self) -> &RootDatum {
        self.quiver.datum()
    }

    fn letter(block: &Word, r: usize) -> usize {
        usize::from(block.letters()[r - 1])
    }

    fn p(&self, block: &Word, r: usize) -> Parity {
        self.datum().parity_of(Self::letter(block, r))
    }

    fn y(&self, r: usize) -> &Matrix {
        &self.m.y[r - 1]
    }

    fn t(&self, r: usize) -> &Matrix {
        &self.m.tau[r - 1]
    }

    fn signed(sign: Parity, x: Matrix) -> Matrix {
        if sign.is_odd() {
            -&x
        } else {
            x
        }
    }

    fn violation(
        &self,
        check: Check,
        indices: Vec<usize>,
        block: &Word,
        witness: usize,
        detail: String,
    ) -> Violation {
        Violation {
            check,
            indices,
            block: block.clone(),
            witness,
            witness_label: self.m.basis[witness].label.clone(),
            detail,
        }
    }

    /// Compares `lhs e(i)` with `rhs e(i)` column by column on the vectors of `block`.
    fn compare(
        &self,
        out: &mut Report,
        check: Check,
        indices: Vec<usize>,
        block: &Word,
        lhs: &Matrix,
        rhs: &Matrix,
    ) {
        out.instances += 1;
        let dim = self.m.dim();
        for &v in &self.blocks[block] {
            let diff: Vec<_> = (0..dim)
                .map(|row| lhs.entry(row, v) - rhs.entry(row, v))
                .collect();
            if diff.iter().any(|x| !num_traits::Zero::is_zero(x)) {
                let shown: Vec<String> = diff.iter().map(format_rational).collect();
                let detail = format!("(lhs - rhs) v = [{}]", shown.join(", "));
                out.violations
                    .push(self.violation(check, indices, block, v, detail));
                return;
            }
        }
    }

    fn warn_non_adjacent(
        &self,
        out: &mut Report,
        check: Check,
        r: usize,
        block: &Word,
        i: usize,
        j: usize,
    ) {
        if i != j && !self.quiver.adjacent(i, j) {
            out.warnings.push(format!(
                "{check} at r={r} on block {block} evaluates Q_({i},{j}) on a non-adjacent pair"
            ));
        }
    }

    /// Relations 1 to 3 and the grading, entry by entry.
    fn structural(&self) -> Report {
        let mut out = Report::default();
        let n = self.m.n;
        let datum = self.datum();
        for (k, v) in self.m.basis.iter().enumerate() {
            out.instances += 1;
            if v.block.weight(n) != self.m.nu {
                let detail = format!(
                    "block has weight {}, module weight is {}",
                    v.block.weight(n),
                    self.m.nu
                );
                out.violations.push(self.violation(
                    Check::Relation(1),
                    vec![],
                    &v.block,
                    k,
                    detail,
                ));
            }
        }
        let mut seen = BTreeSet::new();
        let mut push = |out: &mut Report,
                        check: Check,
                        r: usize,
                        block: &Word,
                        witness: usize,
                        detail: String| {
            if seen.insert((check, r, block.clone())) {
                out.violations
                    .push(self.violation(check, vec![r], block, witness, detail));
            }
        };
        for r in 1..=self.d {
            out.instances += self.blocks.len() * 2;
            for (a, b) in self.y(r).support() {
                let (src, dst) = (&self.m.basis[b], &self.m.basis[a]);
                let i = &src.block;
                if dst.block != *i {
                    push(
                        &mut out,
                        Check::Relation(2),
                        r,
                        i,
                        b,
                        format!("y_{r} sends it into block {}", dst.block),
                    );
                }
                let letter = Self::letter(i, r);
                let (deg, par) = (
                    src.deg + datum.b(letter, letter),
                    src.parity + datum.parity_of(letter),
                );
                if dst.deg != deg || dst.parity != par {
                    let detail = format!(
                        "y_{r} reaches {} of degree {} parity {}, expected degree {deg} parity {}",
                        dst.label,
                        dst.deg,
                        dst.parity.as_int(),
                        par.as_int()
                    );
                    push(&mut out, Check::Homogeneity, r, i, b, detail);
                }
            }
        }
        for r in 1..self.d {
            out.instances += self.blocks.len() * 2;
            for (a, b) in self.t(r).support() {
                let (src, dst) = (&self.m.basis[b], &self.m.basis[a]);
                let i = &src.block;
                let mut swapped = i.letters().to_vec();
                swapped.swap(r - 1, r);
                let swapped = Word::new(swapped);
                if dst.block != swapped {
                    let detail = format!(
                        "tau_{r} sends it into block {}, expected {swapped}",
                        dst.block
                    );
                    push(&mut out, Check::Relation(3), r, i, b, detail);
                }
                let (x, z) = (Self::letter(i, r), Self::letter(i, r + 1));
                let deg = src.deg - datum.b(x, z);
                let par = src.parity + datum.parity_of(x) * datum.parity_of(z);
                if dst.deg != deg || dst.parity != par {
                    let detail = format!(
                        "tau_{r} reaches {} of degree {} parity {}, expected degree {deg} parity {}",
                        dst.label,
                        dst.deg,
                        dst.parity.as_int(),
                        par.as_int()
                    );
                    push(&mut out, Check::Homogeneity, r, i, b, detail);
                }
            }
        }
        out
    }

    fn relation4(&self) -> Report {
        let mut out = Report::default();
        for r in 1..=self.d {
            for s in r + 1..=self.d {
                let (lhs, swapped) = (self.y(r) * self.y(s), self.y(s) * self.y(r));
                for i in self.blocks.keys() {
                    let rhs = Self::signed(self.p(i, r) * self.p(i, s), swapped.clone());
                    self.compare(&mut out, Check::Relation(4), vec![r, s], i, &lhs, &rhs);
                }
            }
        }
        out
    }

    fn relation5(&self) -> Report {
        let mut out = Report::default();
        for r in 1..self.d {
            for s in (1..=self.d).filter(|&s| s != r && s != r + 1) {
                let (lhs, swapped) = (self.t(r) * self.y(s), self.y(s) * self.t(r));
                for i in self.blocks.keys() {
                    let sign = self.p(i, r) * self.p(i, r + 1) * self.p(i, s);
                    let rhs = Self::signed(sign, swapped.clone());
                    self.compare(&mut out, Check::Relation(5), vec![r, s], i, &lhs, &rhs);
                }
            }
        }
        out
    }

    fn relation6(&self) -> Report {
        let mut out = Report::default();
        for r in 1..self.d {
            for s in r + 2..self.d {
                let (lhs, swapped) = (self.t(r) * self.t(s), self.t(s) * self.t(r));
                for i in self.blocks.keys() {
                    let sign = self.p(i, r) * self.p(i, r + 1) * self.p(i, s) * self.p(i, s + 1);
                    let rhs = Self::signed(sign, swapped.clone());
                    self.compare(&mut out, Check::Relation(6), vec![r, s], i, &lhs, &rhs);
                }
            }
        }
        out
    }

    /// Relation 7 (`tau_r y_{r+1}`) and relation 8 (`y_{r+1} tau_r`).
    fn relations78(&self, which: u8) -> Report {
        let mut out = Report::default();
        let dim = self.m.dim();
        for r in 1..self.d {
            let (lhs, cross) = if which == 7 {
                (self.t(r) * self.y(r + 1), self.y(r) * self.t(r))
            } else {
                (self.y(r + 1) * self.t(r), self.t(r) * self.y(r))
            };
            for i in self.blocks.keys() {
                let mut rhs = Self::signed(self.p(i, r) * self.p(i, r + 1), cross.clone());
                if Self::letter(i, r) == Self::letter(i, r + 1) {
                    rhs = &rhs + &Matrix::identity(dim);
                }
                self.compare(&mut out, Check::Relation(which), vec![r], i, &lhs, &rhs);
            }
        }
        out
    }

    fn relation9(&self) -> Report {
        let mut out = Report::default();
        for r in 1..self.d {
            let lhs = self.t(r) * self.t(r);
            for i in self.blocks.keys() {
                let (a, b) = (Self::letter(i, r), Self::letter(i, r + 1));
                self.warn_non_adjacent(&mut out, Check::Relation(9), r, i, a, b);
                let rhs = self
                    .quiver
                    .q_polynomial(a, b)
                    .eval(self.y(r), self.y(r + 1));
                self.compare(&mut out, Check::Relation(9), vec![r], i, &lhs, &rhs);
            }
        }
        out
    }

    fn relation10(&self) -> Result<Report> {
        let mut out = Report::default();
        let n = self.m.n;
        let dim = self.m.dim();
        for r in 1..self.d.saturating_sub(1) {
            let (t1, t2) = (self.t(r), self.t(r + 1));
            let lhs = &(&(t1 * t2) * t1) - &(&(t2 * t1) * t2);
            for i in self.blocks.keys() {
                let (a, b, c) = (
                    Self::letter(i, r),
                    Self::letter(i, r + 1),
                    Self::letter(i, r + 2),
                );
                let rhs = if a != c {
                    Matrix::zero(dim)
                } else {
                    self.warn_non_adjacent(&mut out, Check::Relation(10), r, i, a, b);
                    let q = self.quiver.q_polynomial(a, b);
                    let (w, u) = (self.y(r + 2), self.y(r));
                    let squared = a == n;
                    let kernel = q.divided_difference(w, u, squared).ok_or_else(|| {
                        Error::Inconsistent(format!(
                            "Q_({a},{b}) = {q} has no divided difference by y^2"
                        ))
                    })?;
                    if squared {
                        Self::signed(self.p(i, r + 1), &(w - u) * &kernel)
                    } else {
                        kernel
                    }
                };
                self.compare(&mut out, Check::Relation(10), vec![r], i, &lhs, &rhs);
            }
        }
        Ok(out)
    }
}

/// Checks every instance of the defining relations and the grading on `m`.
/// Independent relation families run on separate threads; the report order is fixed.
pub fn verify_relations(m: &GradedSuperModule, quiver: &QuiverData) -> Result<Report> {
    if quiver.datum().rank() != m.n {
        return Err(Error::RankMismatch {
            expected: quiver.datum().rank(),
            found: m.n,
        });
    }
    let mut blocks: BTreeMap<Word, Vec<usize>> = BTreeMap::new();
    for (k, v) in m.basis.iter().enumerate() {
        blocks.entry(v.block.clone()).or_default().push(k);
    }
    let ctx = Ctx {
        m,
        quiver,
        blocks,
        d: m.word_length(),
    };
    let ctx = &ctx;
    let parts: Vec<Result<Report>> = std::thread::scope(|scope| {
        let jobs: Vec<Box<dyn FnOnce() -> Result<Report> + Send + '_>> = vec![
            Box::new(move || Ok(ctx.structural())),
            Box::new(move || Ok(ctx.relation4())),
            Box::new(move || Ok(ctx.relation5())),
            Box::new(move || Ok(ctx.relation6())),
            Box::new(move || Ok(ctx.relations78(7))),
            Box::new(move || Ok(ctx.relations78(8))),
            Box::new(move || Ok(ctx.relation9())),
            Box::new(move || ctx.relation10()),
        ];
        let handles: Vec<_> = jobs.into_iter().map(|job| scope.spawn(job)).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verifier thread panicked"))
            .collect()
    });
    let mut report = Report::default();
    for part in parts {
        report.merge(part?);
    }
    report
        .violations
        .sort_by(|x, y| (x.check, &x.indices, &x.block).cmp(&(y.check, &y.indices, &y.block)));
    report.warnings.sort();
    report.warnings.dedup();
    Ok(report)
}
