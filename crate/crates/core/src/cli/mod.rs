//! Command-line front end. [`run`] parses arguments and returns the exit code with the
//! text destined for stdout and stderr.

mod cache;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bases::Algebra;
use crate::cartan::{FullRoot, Root, RootDatum, Weight};
use crate::error::{Error, Result};
use crate::repcheck::{
    character, cuspidal_module, highest_weight, standard_character, verify_relations,
    GradedSuperModule, ModuleJson, Orientation, QuiverData,
};
use crate::selftest::run_selftest;
use crate::shuffle::{determinant, shuffle, Element};
use crate::words::{check_dominant, dominant_words, iota_plus, varsigma, Word};

use cache::BasesCache;

pub const CACHE_ENV: &str = "OSP_SHUFFLE_CACHE_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrientationArg {
    Up,
    Down,
}

impl From<OrientationArg> for Orientation {
    fn from(o: OrientationArg) -> Self {
        match o {
            OrientationArg::Up => Orientation::Up,
            OrientationArg::Down => Orientation::Down,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "osp-shuffle",
    version,
    about = "Quantum shuffle superalgebra of osp(1|2n) and its spin quiver Hecke modules"
)]
struct Cli {
    /// Rank n of osp(1|2n).
    #[arg(short = 'n', long = "rank", global = true, default_value_t = 2, value_parser = clap::value_parser!(u16).range(1..=64))]
    n: u16,

    /// Largest weight height visited when no weight is given.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..))]
    max_height: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Quiver orientation: arrows i -> i+1 (up) or i+1 -> i (down).
    #[arg(long, global = true, value_enum, default_value_t = OrientationArg::Up)]
    orientation: OrientationArg,

    /// Write output to this file instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    /// Directory for cached per-weight bases. Caching is off when unset.
    #[arg(long, global = true, env = CACHE_ENV)]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Positive roots, full and reduced, split by parity.
    Roots,
    /// Dominant Lyndon words and their roots.
    Lyndon,
    /// Dominant words of a weight, or of every weight up to --max-height.
    Dominant {
        #[arg(long)]
        weight: Option<String>,
    },
    /// Shuffle product of two words.
    Shuffle { left: String, right: String },
    /// Gram matrix of the form on the monomial basis of a weight.
    Gram {
        #[arg(long)]
        weight: String,
    },
    /// PBW basis and norms.
    Pbw {
        #[arg(long)]
        weight: String,
    },
    /// Dual PBW basis.
    DualPbw {
        #[arg(long)]
        weight: String,
    },
    /// Dual canonical basis.
    DualCanonical {
        #[arg(long)]
        weight: String,
    },
    /// Leading coefficient of the dual canonical vector of a dominant word.
    Kappa { word: String },
    /// Cuspidal module of a root such as alpha(1,2) or beta(1,2). JSON output is a module file.
    Cuspidal { root: String },
    /// Check the defining relations on a module file.
    Verify { file: PathBuf },
    /// Character of the standard module of a dominant word.
    StandardChar { word: String },
    /// Run the invariant suite for ranks 1..=n and heights up to --max-height.
    Selftest,
}

/// Exit code and captured streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Either malformed input (exit 2) or a failed mathematical check (exit 1).
enum Failure {
    Input(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotInSubalgebra(_) | Error::Inconsistent(_) => Failure::Math(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

struct Ctx {
    n: usize,
    max_height: u32,
    format: Format,
    orientation: Orientation,
    cache: BasesCache,
    warnings: Vec<String>,
}

/// What a command produced: text, JSON, and whether its checks passed.
struct Rendered {
    text: String,
    json: Value,
    ok: bool,
}

impl Rendered {
    fn ok(text: String, json: Value) -> Self {
        Self {
            text,
            json,
            ok: true,
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 {
                (text, String::new())
            } else {
                (String::new(), text)
            };
            return Outcome {
                code,
                stdout,
                stderr,
            };
        }
    };
    let mut ctx = Ctx {
        n: usize::from(cli.n),
        max_height: cli.max_height,
        format: cli.format,
        orientation: cli.orientation.into(),
        cache: BasesCache::new(cli.cache_dir.clone()),
        warnings: vec![],
    };
    let result = dispatch(&mut ctx, &cli.command);
    let mut stderr: String = ctx
        .warnings
        .iter()
        .map(|w| format!("warning: {w}\n"))
        .collect();
    let rendered = match result {
        Ok(r) => r,
        Err(Failure::Input(msg)) => {
            stderr.push_str(&format!("error: {msg}\n"));
            return Outcome {
                code: 2,
                stdout: String::new(),
                stderr,
            };
        }
        Err(Failure::Math(msg)) => {
            stderr.push_str(&format!("failure: {msg}\n"));
            return Outcome {
                code: 1,
                stdout: String::new(),
                stderr,
            };
        }
    };
    let mut body = match ctx.format {
        Format::Text => rendered.text,
        Format::Json => {
            serde_json::to_string_pretty(&rendered.json).expect("JSON values serialize")
        }
    };
    if !body.ends_with('\n') {
        body.push('\n');
    }
    let code = if rendered.ok { 0 } else { 1 };
    match &cli.output {
        None => Outcome {
            code,
            stdout: body,
            stderr,
        },
        Some(path) => match std::fs::write(path, body) {
            Ok(()) => Outcome {
                code,
                stdout: String::new(),
                stderr,
            },
            Err(e) => {
                stderr.push_str(&format!("error: cannot write {}: {e}\n", path.display()));
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr,
                }
            }
        },
    }
}

fn dispatch(ctx: &mut Ctx, command: &Command) -> Result<Rendered, Failure> {
    let datum = RootDatum::osp(ctx.n);
    match command {
        Command::Roots => Ok(roots(&datum)),
        Command::Lyndon => Ok(lyndon(&datum)),
        Command::Dominant { weight } => {
            let weights = match weight {
                Some(w) => vec![parse_weight(&datum, w)?],
                None => Weight::all_up_to_height(ctx.n, ctx.max_height),
            };
            dominant(&datum, &weights)
        }
        Command::Shuffle { left, right } => {
            let (a, b) = (parse_word(&datum, left)?, parse_word(&datum, right)?);
            let x = shuffle(&datum, &Element::word(a), &Element::word(b));
            Ok(Rendered::ok(x.to_string(), json!(x.to_json(ctx.n))))
        }
        Command::Gram { weight } => gram(&datum, &parse_weight(&datum, weight)?),
        Command::Pbw { weight } => {
            bases_command(ctx, &parse_weight(&datum, weight)?, BasesKind::Pbw)
        }
        Command::DualPbw { weight } => {
            bases_command(ctx, &parse_weight(&datum, weight)?, BasesKind::DualPbw)
        }
        Command::DualCanonical { weight } => {
            bases_command(ctx, &parse_weight(&datum, weight)?, BasesKind::Canonical)
        }
        Command::Kappa { word } => {
            let w = parse_word(&datum, word)?;
            let k = Algebra::from_datum(datum).kappa(&w)?;
            Ok(Rendered::ok(
                k.to_string(),
                json!({"word": w, "kappa": k.to_string()}),
            ))
        }
        Command::Cuspidal { root } => cuspidal(ctx, &datum, root),
        Command::Verify { file } => verify(ctx, &datum, file),
        Command::StandardChar { word } => {
            let w = parse_word(&datum, word)?;
            let alg = Algebra::from_datum(datum);
            let ch = standard_character(&alg, &w)?;
            let top = highest_weight(&ch)?;
            let kappa = alg.kappa(&w)?;
            let cf = check_dominant(&w, ctx.n)?;
            let text = format!("ch Δ{w} = {ch}\nfactorization: {cf}\nhighest weight: {top}\ntop coefficient: {kappa}");
            let value = json!({
                "word": w,
                "character": ch.element().to_json(ctx.n),
                "highest_weight": top,
                "top_coefficient": kappa.to_string(),
            });
            Ok(Rendered::ok(text, value))
        }
        Command::Selftest => Ok(selftest(ctx)),
    }
}

fn parse_word(datum: &RootDatum, text: &str) -> Result<Word, Failure> {
    let w: Word = text.parse().map_err(Error::from)?;
    w.validate(datum.rank())?;
    Ok(w)
}

fn parse_weight(datum: &RootDatum, text: &str) -> Result<Weight, Failure> {
    let w: Weight = text.parse().map_err(Error::from)?;
    datum.check_rank(&w)?;
    Ok(w)
}

/// `α1+2α2`, or `2α1+2α2` for doubled roots.
fn weight_name(w: &Weight) -> String {
    let parts: Vec<String> = w
        .coefficients()
        .iter()
        .enumerate()
        .filter(|(_, c)| **c > 0)
        .map(|(i, c)| {
            if *c == 1 {
                format!("α{}", i + 1)
            } else {
                format!("{c}α{}", i + 1)
            }
        })
        .collect();
    parts.join("+")
}

/// Sorted by height, then by decreasing coefficient vector; reduced roots before doubled ones.
fn sorted_roots(datum: &RootDatum, roots: &[FullRoot]) -> Vec<FullRoot> {
    let n = datum.rank();
    let mut v = roots.to_vec();
    v.sort_by_key(|r| {
        let w = r.weight(n);
        (
            matches!(r, FullRoot::Doubled(_)),
            w.height(),
            std::cmp::Reverse(w),
        )
    });
    v
}

fn roots(datum: &RootDatum) -> Rendered {
    let n = datum.rank();
    let full = datum.full_positive_roots();
    let reduced = |rs: &[Root]| rs.iter().map(|r| FullRoot::Reduced(*r)).collect::<Vec<_>>();
    let sets: [(&str, &str, Vec<FullRoot>); 6] = [
        ("full", "full positive roots", full.all.clone()),
        (
            "reduced",
            "reduced positive roots",
            reduced(&datum.reduced_positive_roots()),
        ),
        ("full_even", "full even", full.even.clone()),
        ("reduced_even", "reduced even", reduced(&full.reduced_even)),
        ("full_odd", "full odd", full.odd.clone()),
        ("reduced_odd", "reduced odd", reduced(&full.reduced_odd)),
    ];
    let mut text = format!("rank {n}\n");
    let mut map = serde_json::Map::new();
    map.insert("n".into(), json!(n));
    for (key, title, set) in sets {
        let set = sorted_roots(datum, &set);
        let names: Vec<String> = set.iter().map(|r| weight_name(&r.weight(n))).collect();
        let _ = writeln!(text, "{title} ({}): {}", set.len(), names.join(", "));
        let entries: Vec<Value> = set
            .iter()
            .map(|r| json!({"root": r.to_string(), "weight": r.weight(n)}))
            .collect();
        map.insert(key.into(), Value::Array(entries));
    }
    Rendered::ok(text, Value::Object(map))
}

fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.first().map_or(0, Vec::len);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(x, w)| format!("{x}{}", " ".repeat(w - x.chars().count())))
            .collect();
        let _ = writeln!(out, "{}", cells.join("  ").trim_end());
    }
    out
}

fn lyndon(datum: &RootDatum) -> Rendered {
    let n = datum.rank();
    let mut rows = vec![vec![
        "root".into(),
        "weight".into(),
        "word".into(),
        "parity".into(),
    ]];
    let mut entries = vec![];
    for r in datum.reduced_positive_roots() {
        let (w, wt) = (iota_plus(&r, n), r.weight(n));
        let parity = wt.parity().as_int();
        rows.push(vec![
            r.to_string(),
            wt.to_string(),
            w.to_string(),
            parity.to_string(),
        ]);
        entries.push(json!({"root": r.to_string(), "weight": wt, "word": w, "parity": parity}));
    }
    Rendered::ok(table(&rows), json!({"n": n, "lyndon": entries}))
}

fn dominant(datum: &RootDatum, weights: &[Weight]) -> Result<Rendered, Failure> {
    let n = datum.rank();
    let mut text = String::new();
    let mut entries = vec![];
    for nu in weights {
        let words = dominant_words(datum, nu)?;
        let _ = writeln!(text, "weight {nu}: {} dominant word(s)", words.len());
        let mut rows = vec![];
        let mut items = vec![];
        for w in &words {
            let cf = check_dominant(w, n)?;
            rows.push(vec![format!("  {w}"), cf.to_string()]);
            items.push(json!({"word": w, "factorization": cf.to_string()}));
        }
        text.push_str(&table(&rows));
        entries.push(json!({"weight": nu, "words": items}));
    }
    Ok(Rendered::ok(text, json!({"n": n, "weights": entries})))
}

fn gram(datum: &RootDatum, nu: &Weight) -> Result<Rendered, Failure> {
    let alg = Algebra::from_datum(datum.clone());
    let basis = alg.form_engine().basis(nu)?;
    let vectors: Vec<Element> = basis
        .rows
        .iter()
        .map(|r| r.vector.element.clone())
        .collect();
    let g = alg.form_engine().gram(&vectors)?;
    let det = determinant(&g);
    let labels: Vec<Word> = basis.rows.iter().map(|r| r.lead.clone()).collect();
    let mut text = format!(
        "weight {nu}: monomial basis indexed by {} dominant word(s)\n",
        labels.len()
    );
    for (l, row) in labels.iter().zip(&g) {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        let _ = writeln!(text, "{l}: {}", cells.join(" | "));
    }
    let _ = write!(text, "det = {det}");
    let matrix: Vec<Vec<String>> = g
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    let value =
        json!({"weight": nu, "basis": labels, "matrix": matrix, "determinant": det.to_string()});
    Ok(Rendered::ok(text, value))
}

#[derive(Clone, Copy)]
enum BasesKind {
    Pbw,
    DualPbw,
    Canonical,
}

fn bases_command(ctx: &mut Ctx, nu: &Weight, kind: BasesKind) -> Result<Rendered, Failure> {
    let alg = Algebra::new(ctx.n);
    let (b, warning) = ctx.cache.weight_bases(&alg, nu)?;
    ctx.warnings.extend(warning);
    let n = ctx.n;
    let mut text = format!("weight {nu}: {} dominant word(s)\n", b.words.len());
    let mut entries = vec![];
    for (k, w) in b.words.iter().enumerate() {
        let kappa = alg.kappa(w)?;
        let vs = varsigma(alg.datum(), w)?;
        let _ = writeln!(text, "{w}: kappa = {kappa}, varsigma = {vs}");
        let mut entry = json!({"word": w, "kappa": kappa.to_string(), "varsigma": vs.to_string()});
        match kind {
            BasesKind::Pbw => {
                let _ = writeln!(text, "  E{w} = {}\n  (E,E) = {}", b.pbw[k], b.norms[k]);
                entry["element"] = json!(b.pbw[k].to_json(n));
                entry["norm"] = json!(b.norms[k].to_string());
            }
            BasesKind::DualPbw => {
                let _ = writeln!(text, "  E*{w} = {}", b.dual_pbw[k]);
                entry["element"] = json!(b.dual_pbw[k].to_json(n));
            }
            BasesKind::Canonical => {
                let mut parts = vec![];
                let mut trans = vec![];
                for (j, c) in b.transition[k].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let wj = &b.words[j];
                    parts.push(if c.is_one() {
                        format!("E*{wj}")
                    } else {
                        format!("({c}) E*{wj}")
                    });
                    trans.push(json!({"word": wj, "coeff": c.to_string()}));
                }
                let _ = writeln!(
                    text,
                    "  b*{w} = {}\n  = {}",
                    b.canonical[k],
                    parts.join(" + ")
                );
                entry["element"] = json!(b.canonical[k].to_json(n));
                entry["dual_pbw_coordinates"] = json!(trans);
            }
        }
        entries.push(entry);
    }
    Ok(Rendered::ok(
        text,
        json!({"n": n, "weight": nu, "entries": entries}),
    ))
}

fn describe_module(m: &GradedSuperModule) -> String {
    let mut text = String::new();
    let mut rows = vec![];
    for v in &m.basis {
        rows.push(vec![
            format!("  {}", v.label),
            format!("deg {}", v.deg),
            format!("parity {}", v.parity.as_int()),
            format!("block {}", v.block),
        ]);
    }
    text.push_str(&table(&rows));
    let named = |name: &str, list: &[crate::repcheck::Matrix], out: &mut String| {
        for (r, mat) in list.iter().enumerate() {
            for (a, b) in mat.support() {
                let c = mat.entry(a, b);
                let coef = if num_traits::One::is_one(c) {
                    String::new()
                } else {
                    format!("{c} ")
                };
                let _ = writeln!(
                    out,
                    "  {name}_{} {} = {coef}{}",
                    r + 1,
                    m.basis[b].label,
                    m.basis[a].label
                );
            }
        }
    };
    named("y", &m.y, &mut text);
    named("tau", &m.tau, &mut text);
    text
}

fn cuspidal(ctx: &Ctx, datum: &RootDatum, root: &str) -> Result<Rendered, Failure> {
    let root: Root = root.parse().map_err(Error::from)?;
    let m = cuspidal_module(datum, &root)?;
    let quiver = QuiverData::new(datum.clone(), ctx.orientation);
    let report = verify_relations(&m, &quiver)?;
    let ch = character(&m);
    let mut text = format!("L_{root}, n={}: {}-dimensional\n", ctx.n, m.dim());
    text.push_str(&describe_module(&m));
    let _ = write!(text, "character: {ch}\nrelations: {report}");
    Ok(Rendered {
        text,
        json: serde_json::to_value(m.to_json()).expect("module JSON"),
        ok: report.passed(),
    })
}

fn verify(ctx: &mut Ctx, datum: &RootDatum, file: &PathBuf) -> Result<Rendered, Failure> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", file.display())))?;
    let json: ModuleJson = serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("{}: invalid module file: {e}", file.display())))?;
    if json.n != ctx.n {
        ctx.warnings.push(format!(
            "module file has n={}, overriding -n {}",
            json.n, ctx.n
        ));
    }
    let datum = if json.n == datum.rank() {
        datum.clone()
    } else {
        RootDatum::osp(json.n)
    };
    let m = GradedSuperModule::from_json(&json)?;
    let quiver = QuiverData::new(datum, ctx.orientation);
    let report = verify_relations(&m, &quiver)?;
    let ch = character(&m);
    let text = format!("{report}\ncharacter: {ch}");
    let value = json!({"passed": report.passed(), "report": report, "character": ch.element().to_json(m.n)});
    Ok(Rendered {
        text,
        json: value,
        ok: report.passed(),
    })
}

#[derive(Serialize)]
struct SelftestJson<'a> {
    max_rank: usize,
    max_height: u32,
    passed: bool,
    checks: &'a [crate::selftest::CheckOutcome],
}

fn selftest(ctx: &Ctx) -> Rendered {
    let checks = run_selftest(ctx.n, ctx.max_height, ctx.orientation);
    let passed = checks.iter().all(|c| c.passed);
    let mut text = String::new();
    for c in &checks {
        let _ = writeln!(
            text,
            "{} {}: {}",
            if c.passed { "ok  " } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    let _ = write!(text, "{} checks, {failed} failed", checks.len());
    let json = serde_json::to_value(SelftestJson {
        max_rank: ctx.n,
        max_height: ctx.max_height,
        passed,
        checks: &checks,
    })
    .expect("selftest JSON");
    Rendered {
        text,
        json,
        ok: passed,
    }
}
