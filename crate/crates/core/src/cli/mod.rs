//! Command-line front end. `run` returns the exit code and the full report,
//! so the binary only prints.

pub mod format;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::chaincx::{check_gamma_identities, embed_degree0, random_complex, PoincareComplex};
use crate::error::{Error, Result};
use crate::exactlin::Field;
use crate::formcore::{check_form_axioms, FormParam, Sign};
use crate::functors::{hyper, mor_to_hyp, s2_class};
use crate::random;
use crate::spaces::{arf, gw0_class, invariants, oracle, witt_class, GwClass};
use crate::surgery::{check_presentation, eval_ledger, gw0_of_complex, reduce_full};
pub use format::{parse, serialize, Document, Payload};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "gwcx", version, about = "Quadratic forms, Poincaré complexes and their Grothendieck-Witt classes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Randomized checks of the form axioms and the chain-level identities.
    Axioms {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        max_dim: usize,
        /// Random complexes for the cone/path identities.
        #[arg(long, default_value_t = 200)]
        complexes: usize,
    },
    /// Invariants of the object in FILE, checked against its `expect` lines.
    Invariants { file: PathBuf },
    /// Witt group of a finite prime field by brute-force classification.
    WittTable {
        #[arg(long)]
        field: u64,
        #[arg(long, default_value_t = 4)]
        max_rank: usize,
        #[arg(long, default_value = "quadratic +1")]
        param: String,
        /// Largest number of forms of one rank enumerated exhaustively.
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Reduce a Poincaré complex (or a space) to degree 0 and report its class.
    Reduce { file: PathBuf },
    /// Randomized checks of the three relations defining GW_0.
    VerifyRelations {
        #[arg(long, default_value_t = 300)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Restrict to one field; default F2 (quadratic), F3 and F5.
        #[arg(long)]
        field: Option<u64>,
        #[arg(long)]
        param: Option<String>,
    },
    /// Compare homology, and classes for Poincaré complexes.
    Quis { file1: PathBuf, file2: PathBuf },
    /// Parse, round-trip and check every file of the corpus.
    CorpusCheck { dir: Option<PathBuf> },
}

/// Exit code plus report text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
}

pub fn default_corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            return Outcome { code, report: e.render().to_string() };
        }
    };
    let mut out = String::new();
    let res = match cli.command {
        Command::Axioms { trials, seed, max_dim, complexes } => cmd_axioms(&mut out, trials, seed, max_dim, complexes),
        Command::Invariants { file } => load(&file).map(|d| check_document(&mut out, &d)),
        Command::WittTable { field, max_rank, param, budget, samples, seed } => {
            cmd_witt_table(&mut out, field, max_rank, &param, budget, samples, seed)
        }
        Command::Reduce { file } => load(&file).and_then(|d| cmd_reduce(&mut out, &d)),
        Command::VerifyRelations { trials, seed, field, param } => cmd_relations(&mut out, trials, seed, field, param),
        Command::Quis { file1, file2 } => load(&file1).and_then(|a| Ok((a, load(&file2)?))).and_then(|(a, b)| cmd_quis(&mut out, &a, &b)),
        Command::CorpusCheck { dir } => cmd_corpus(&mut out, &dir.unwrap_or_else(default_corpus_dir)),
    };
    match res {
        Ok(true) => Outcome { code: EXIT_PASS, report: out },
        Ok(false) => Outcome { code: EXIT_FAIL, report: out },
        Err(e @ (Error::Io(_) | Error::Parse { .. })) => {
            writeln!(out, "error: {e}").unwrap();
            Outcome { code: EXIT_USAGE, report: out }
        }
        Err(e) => {
            writeln!(out, "FAIL: {e}").unwrap();
            Outcome { code: EXIT_FAIL, report: out }
        }
    }
}

fn load(path: &Path) -> Result<Document> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| match e {
        Error::Parse { line, col, msg } => Error::Parse { line, col, msg: format!("{}: {msg}", path.display()) },
        other => other,
    })
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Io(msg.into())
}

/// `+H(k)`, `-H(k)` or `0` when the class is a multiple of the hyperbolic
/// plane.
pub fn hyperbolic_multiple(c: &GwClass) -> Option<String> {
    if c.rank % 2 != 0 {
        return None;
    }
    let k = c.rank / 2;
    (GwClass::hyperbolic(c.field, c.param, k) == *c).then(|| match k {
        0 => "0".to_string(),
        k if k > 0 => format!("+H({k})"),
        k => format!("-H({})", -k),
    })
}

fn complex_class(p: &PoincareComplex) -> Result<Vec<(String, String)>> {
    let res = reduce_full(p)?;
    let ledger = eval_ledger(&res.ledger, p.field(), p.param())?;
    let class = gw0_class(&res.space).add(&ledger)?;
    let mut f = vec![
        ("steps".into(), res.trace.len().to_string()),
        ("residue".into(), invariants(&res.space).to_string()),
        ("ledger".into(), res.ledger.to_string()),
        ("ledger_class".into(), ledger.to_string()),
        ("class".into(), class.to_string()),
    ];
    if let Some(h) = hyperbolic_multiple(&class) {
        f.push(("hyperbolic".into(), h));
    }
    Ok(f)
}

/// Every computed fact about the payload, in a fixed order.
pub fn facts(doc: &Document) -> Result<Vec<(String, String)>> {
    let mut f: Vec<(String, String)> = Vec::new();
    match &doc.payload {
        Payload::QSpace(x) => {
            f.push(("rank".into(), x.rank().to_string()));
            f.push(("invariants".into(), invariants(x).to_string()));
            if let Ok(a) = arf(x) {
                f.push(("arf".into(), a.to_string()));
            }
            let class = gw0_class(x);
            f.push(("class".into(), class.to_string()));
            if let Some(h) = hyperbolic_multiple(&class) {
                f.push(("hyperbolic".into(), h));
            }
            if x.field().is_finite() {
                let w = witt_class(x)?;
                f.push(("witt".into(), w.to_string()));
                f.push(("witt_zero".into(), w.is_zero().to_string()));
                if x.rank() <= 4 {
                    f.push(("metabolic".into(), oracle::is_metabolic(x).to_string()));
                }
            }
        }
        Payload::Complex(e) => {
            let (lo, hi) = e.window();
            f.push(("window".into(), format!("{lo} {hi}")));
            let h: Vec<String> = (lo..=hi).map(|n| e.homology(n).to_string()).collect();
            f.push(("homology".into(), h.join(" ")));
            f.push(("acyclic".into(), e.is_acyclic().to_string()));
        }
        Payload::Poincare(p) => {
            let (lo, hi) = p.complex().window();
            f.push(("window".into(), format!("{lo} {hi}")));
            let h: Vec<String> = (lo..=hi).map(|n| p.complex().homology(n).to_string()).collect();
            f.push(("homology".into(), h.join(" ")));
            f.extend(complex_class(p)?);
        }
        Payload::MorForm(m) => {
            let hp = mor_to_hyp(m);
            f.push(("hyp_pair".into(), format!("{} {}", hp.x_dim, hp.y_dim)));
            match hyper(doc.param, &hp) {
                Ok(x) => f.push(("hyper_class".into(), gw0_class(&x).to_string())),
                Err(_) => f.push(("hyper_class".into(), "degenerate".into())),
            }
        }
        Payload::S2Object(s) => {
            f.push(("lagrangian_rank".into(), s.lagrangian().cols().to_string()));
            let c = s2_class(s)?;
            f.push(("class".into(), c.to_string()));
            if let Some(h) = hyperbolic_multiple(&c) {
                f.push(("hyperbolic".into(), h));
            }
        }
    }
    Ok(f)
}

/// Prints the facts and checks the `expect` lines. Returns whether all
/// expectations hold.
pub fn check_document(out: &mut String, doc: &Document) -> bool {
    writeln!(out, "{} ({}, {} over {})", display_name(doc), doc.payload.kind(), doc.param, doc.field).unwrap();
    let facts = match facts(doc) {
        Ok(f) => f,
        Err(e) => {
            writeln!(out, "  FAIL: {e}").unwrap();
            return false;
        }
    };
    for (k, v) in &facts {
        writeln!(out, "  {k}: {v}").unwrap();
    }
    let mut ok = true;
    for (k, want) in &doc.expect {
        match facts.iter().find(|(fk, _)| fk == k) {
            Some((_, got)) if got == want => writeln!(out, "  expect {k} = {want}: ok").unwrap(),
            Some((_, got)) => {
                ok = false;
                writeln!(out, "  expect {k} = {want}: FAIL (computed {got})").unwrap()
            }
            None => {
                ok = false;
                writeln!(out, "  expect {k} = {want}: FAIL (no such fact)").unwrap()
            }
        }
    }
    ok
}

fn display_name(doc: &Document) -> &str {
    if doc.name.is_empty() {
        "(unnamed)"
    } else {
        &doc.name
    }
}

const AXIOM_FIELDS: [Field; 4] = [Field::Prime(2), Field::Prime(3), Field::Prime(5), Field::Rationals];

fn cmd_axioms(out: &mut String, trials: usize, seed: u64, max_dim: usize, complexes: usize) -> Result<bool> {
    let mut ok = true;
    for (i, field) in AXIOM_FIELDS.iter().enumerate() {
        for (j, param) in FormParam::all().into_iter().enumerate() {
            let r = check_form_axioms(param, *field, trials, max_dim, seed.wrapping_add((i * 6 + j) as u64));
            ok &= r.passed();
            writeln!(out, "{} {r}", if r.passed() { "PASS" } else { "FAIL" }).unwrap();
        }
    }
    let mut rng = random::rng(seed);
    for field in AXIOM_FIELDS {
        let mut failure = None;
        for t in 0..complexes {
            let lo = rand::Rng::gen_range(&mut rng, -3..=1);
            let width = rand::Rng::gen_range(&mut rng, 0..=4);
            let e = random_complex(field, lo, lo + width, 3, &mut rng);
            for eps in [Sign::Plus, Sign::Minus] {
                if let Err(msg) = check_gamma_identities(&e, eps) {
                    failure.get_or_insert(format!("complex {t}, epsilon {}: {msg}", eps.value()));
                }
            }
        }
        ok &= failure.is_none();
        match failure {
            None => writeln!(out, "PASS chain identities over {field}: {complexes} complexes, both signs").unwrap(),
            Some(m) => writeln!(out, "FAIL chain identities over {field}: {m}").unwrap(),
        }
    }
    Ok(ok)
}

fn cmd_witt_table(out: &mut String, p: u64, max_rank: usize, param: &str, budget: u64, samples: usize, seed: u64) -> Result<bool> {
    let field = Field::prime(p).map_err(|e| usage(e.to_string()))?;
    let param: FormParam = param.parse().map_err(|e: Error| usage(e.to_string()))?;
    let t = oracle::witt_table(field, param, max_rank, budget, samples, seed)?;
    writeln!(out, "{t}").unwrap();
    Ok(t.is_group() && t.decompose_mismatches == 0)
}

fn cmd_reduce(out: &mut String, doc: &Document) -> Result<bool> {
    let p = match &doc.payload {
        Payload::Poincare(p) => p.clone(),
        Payload::QSpace(x) => embed_degree0(x),
        other => return Err(usage(format!("reduce needs a poincare or qspace document, found {}", other.kind()))),
    };
    writeln!(out, "{} ({} over {})", display_name(doc), doc.param, doc.field).unwrap();
    let res = reduce_full(&p)?;
    for step in &res.trace {
        writeln!(out, "  step {step}").unwrap();
    }
    let ok = check_document(out, doc);
    Ok(ok)
}

fn relation_targets(field: Option<u64>, param: Option<String>) -> Result<Vec<(Field, FormParam)>> {
    let params = match param {
        Some(s) => vec![s.parse().map_err(|e: Error| usage(e.to_string()))?],
        None => FormParam::all(),
    };
    Ok(match field {
        Some(p) => {
            let f = Field::prime(p).map_err(|e| usage(e.to_string()))?;
            params.into_iter().map(|q| (f, q)).collect()
        }
        None => {
            let mut v = vec![(Field::Prime(2), FormParam::quadratic())];
            for p in [3, 5] {
                v.extend(params.iter().map(|&q| (Field::Prime(p), q)));
            }
            v
        }
    })
}

fn cmd_relations(out: &mut String, trials: usize, seed: u64, field: Option<u64>, param: Option<String>) -> Result<bool> {
    let mut ok = true;
    for (i, (f, p)) in relation_targets(field, param)?.into_iter().enumerate() {
        let r = check_presentation(f, p, trials, seed.wrapping_add(i as u64));
        ok &= r.passed();
        writeln!(out, "{} {f} {p}: {r}", if r.passed() { "PASS" } else { "FAIL" }).unwrap();
    }
    Ok(ok)
}

fn cmd_quis(out: &mut String, a: &Document, b: &Document) -> Result<bool> {
    let complex = |d: &Document| match &d.payload {
        Payload::Complex(e) => Ok(e.clone()),
        Payload::Poincare(p) => Ok(p.complex().clone()),
        Payload::QSpace(x) => Ok(embed_degree0(x).complex().clone()),
        other => Err(usage(format!("quis needs complexes, found {}", other.kind()))),
    };
    let (ea, eb) = (complex(a)?, complex(b)?);
    let (lo, hi) = (ea.window().0.min(eb.window().0), ea.window().1.max(eb.window().1));
    let ha: Vec<usize> = (lo..=hi).map(|n| ea.homology(n)).collect();
    let hb: Vec<usize> = (lo..=hi).map(|n| eb.homology(n)).collect();
    let show = |h: &[usize]| h.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ");
    writeln!(out, "degrees {lo}..{hi}").unwrap();
    writeln!(out, "homology {}: {}", display_name(a), show(&ha)).unwrap();
    writeln!(out, "homology {}: {}", display_name(b), show(&hb)).unwrap();
    let same = ha == hb && ea.field() == eb.field();
    writeln!(out, "quasi-isomorphic: {}", if same { "yes" } else { "no" }).unwrap();
    let mut ok = same;
    let poincare = |d: &Document| match &d.payload {
        Payload::Poincare(p) => Some(p.clone()),
        Payload::QSpace(x) => Some(embed_degree0(x)),
        _ => None,
    };
    if let (Some(pa), Some(pb)) = (poincare(a), poincare(b)) {
        let (ca, cb) = (gw0_of_complex(&pa)?, gw0_of_complex(&pb)?);
        writeln!(out, "class {}: {ca}", display_name(a)).unwrap();
        writeln!(out, "class {}: {cb}", display_name(b)).unwrap();
        let eq = ca == cb;
        writeln!(out, "equal classes: {}", if eq { "yes" } else { "no" }).unwrap();
        ok &= eq;
    }
    Ok(ok)
}

fn cmd_corpus(out: &mut String, dir: &Path) -> Result<bool> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "form"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(usage(format!("no .form files in {}", dir.display())));
    }
    let mut passed = 0;
    for path in &files {
        let name = path.file_name().unwrap().to_string_lossy();
        let doc = match load(path) {
            Ok(d) => d,
            Err(e) => {
                writeln!(out, "FAIL {name}: {e}").unwrap();
                continue;
            }
        };
        let canon = serialize(&doc);
        let stable = parse(&canon).map(|d| serialize(&d) == canon && d == doc).unwrap_or(false);
        let mut body = String::new();
        let ok = check_document(&mut body, &doc) && stable;
        writeln!(out, "{} {name}: {} expectation(s), round-trip {}", if ok { "PASS" } else { "FAIL" }, doc.expect.len(), if stable { "ok" } else { "FAILED" }).unwrap();
        out.push_str(&body);
        passed += ok as usize;
    }
    writeln!(out, "corpus: {passed}/{} files pass", files.len()).unwrap();
    Ok(passed == files.len())
}
