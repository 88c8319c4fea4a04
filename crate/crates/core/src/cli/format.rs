//! The `gwcx/1` text format. See `docs/format.md` for the grammar.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::chaincx::{dualize, make_poincare, ChainComplex, ChainMap, PoincareComplex};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Mat};
use crate::formcore::{FormParam, QForm};
use crate::functors::{MorForm, S2Object};
use crate::spaces::QSpace;

pub const FORMAT: &str = "gwcx/1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    QSpace(QSpace),
    Complex(ChainComplex),
    Poincare(PoincareComplex),
    MorForm(MorForm),
    S2Object(S2Object),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::QSpace(_) => "qspace",
            Payload::Complex(_) => "complex",
            Payload::Poincare(_) => "poincare",
            Payload::MorForm(_) => "mor_form",
            Payload::S2Object(_) => "s2_object",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub name: String,
    pub seed: Option<u64>,
    pub field: Field,
    pub param: FormParam,
    pub payload: Payload,
    pub expect: Vec<(String, String)>,
}

fn perr(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter().map(|(s, t)| (line[..s].chars().count() + 1, t)).collect()
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

fn parse_int<T: std::str::FromStr>(line: usize, col: usize, tok: &str, what: &str) -> Result<T> {
    tok.parse().map_err(|_| perr(line, col, format!("expected {what}, found '{tok}'")))
}

fn parse_entry(field: Field, line: usize, col: usize, tok: &str) -> Result<crate::exactlin::Scalar> {
    let (num, den) = match tok.split_once('/') {
        Some((n, d)) => (n, d),
        None => (tok, "1"),
    };
    let num: BigInt = parse_int(line, col, num, "an integer or fraction")?;
    let den: BigInt = parse_int(line, col, den, "an integer or fraction")?;
    field.from_ratio(&num, &den).ok_or_else(|| perr(line, col, format!("'{tok}' is not defined in {field}")))
}

struct Raw {
    line: usize,
    mat: Mat,
}

#[derive(Default)]
struct Header {
    format: Option<String>,
    name: Option<String>,
    seed: Option<u64>,
    field: Option<Field>,
    param: Option<FormParam>,
    kind: Option<(usize, String)>,
    window: Option<(i64, i64)>,
    dims: Option<(usize, Vec<usize>)>,
}

pub fn parse(text: &str) -> Result<Document> {
    let lines: Vec<&str> = text.lines().collect();
    let mut h = Header::default();
    let mut mats: BTreeMap<String, Raw> = BTreeMap::new();
    let mut expect = Vec::new();
    let mut i = 0;
    while i < lines.len() {
        let ln = i + 1;
        let toks = tokens(strip_comment(lines[i]));
        i += 1;
        let Some(&(kcol, key)) = toks.first() else { continue };
        let args = &toks[1..];
        if h.format.is_none() && key != "format" {
            return Err(perr(ln, kcol, "document must start with 'format gwcx/1'"));
        }
        let arity = |n: usize| -> Result<()> {
            if args.len() != n {
                return Err(perr(ln, kcol, format!("'{key}' takes {n} argument(s), found {}", args.len())));
            }
            Ok(())
        };
        let once = |present: bool| -> Result<()> {
            if present {
                return Err(perr(ln, kcol, format!("duplicate '{key}'")));
            }
            Ok(())
        };
        match key {
            "format" => {
                once(h.format.is_some())?;
                arity(1)?;
                if args[0].1 != FORMAT {
                    return Err(perr(ln, args[0].0, format!("unsupported format '{}'", args[0].1)));
                }
                h.format = Some(args[0].1.to_string());
            }
            "name" => {
                once(h.name.is_some())?;
                arity(1)?;
                h.name = Some(args[0].1.to_string());
            }
            "seed" => {
                once(h.seed.is_some())?;
                arity(1)?;
                h.seed = Some(parse_int(ln, args[0].0, args[0].1, "a seed")?);
            }
            "field" => {
                once(h.field.is_some())?;
                arity(1)?;
                h.field = Some(args[0].1.parse().map_err(|e: Error| perr(ln, args[0].0, e.to_string()))?);
            }
            "param" => {
                once(h.param.is_some())?;
                arity(2)?;
                let s = format!("{} {}", args[0].1, args[1].1);
                h.param = Some(s.parse().map_err(|e: Error| perr(ln, args[0].0, e.to_string()))?);
            }
            "kind" => {
                once(h.kind.is_some())?;
                arity(1)?;
                h.kind = Some((ln, args[0].1.to_string()));
            }
            "window" => {
                once(h.window.is_some())?;
                arity(2)?;
                let lo = parse_int(ln, args[0].0, args[0].1, "a degree")?;
                let hi = parse_int(ln, args[1].0, args[1].1, "a degree")?;
                if lo > hi {
                    return Err(perr(ln, args[0].0, "window must satisfy lo <= hi"));
                }
                h.window = Some((lo, hi));
            }
            "dims" => {
                once(h.dims.is_some())?;
                let d = args.iter().map(|&(c, t)| parse_int(ln, c, t, "a dimension")).collect::<Result<Vec<usize>>>()?;
                h.dims = Some((ln, d));
            }
            "expect" => {
                if args.len() < 2 {
                    return Err(perr(ln, kcol, "'expect' needs a key and a value"));
                }
                let value: Vec<&str> = args[1..].iter().map(|t| t.1).collect();
                expect.push((args[0].1.to_string(), value.join(" ")));
            }
            "matrix" => {
                arity(3)?;
                let field = h.field.ok_or_else(|| perr(ln, kcol, "'field' must precede matrices"))?;
                let name = args[0].1.to_string();
                if mats.contains_key(&name) {
                    return Err(perr(ln, args[0].0, format!("duplicate matrix '{name}'")));
                }
                let rows: usize = parse_int(ln, args[1].0, args[1].1, "a row count")?;
                let cols: usize = parse_int(ln, args[2].0, args[2].1, "a column count")?;
                let mut data = Vec::with_capacity(rows * cols);
                let mut got = 0;
                while cols > 0 && got < rows {
                    let Some(row) = lines.get(i) else {
                        return Err(perr(lines.len(), 1, format!("matrix '{name}' ends after {got} of {rows} rows")));
                    };
                    let rt = tokens(strip_comment(row));
                    i += 1;
                    if rt.is_empty() {
                        continue;
                    }
                    if rt.len() != cols {
                        return Err(perr(i, rt[0].0, format!("matrix '{name}' row has {} entries, expected {cols}", rt.len())));
                    }
                    for (c, t) in rt {
                        data.push(parse_entry(field, i, c, t)?);
                    }
                    got += 1;
                }
                let mat = Mat::from_scalars(field, rows, cols, data).map_err(|e| perr(ln, kcol, e.to_string()))?;
                mats.insert(name, Raw { line: ln, mat });
            }
            _ => return Err(perr(ln, kcol, format!("unknown key '{key}'"))),
        }
    }
    build(h, mats, expect)
}

fn take(mats: &mut BTreeMap<String, Raw>, field: Field, name: &str, rows: usize, cols: usize) -> Result<Mat> {
    match mats.remove(name) {
        Some(r) if r.mat.shape() == (rows, cols) => Ok(r.mat),
        Some(r) => Err(perr(r.line, 1, format!("matrix '{name}' must be {rows}x{cols}"))),
        None if rows * cols == 0 => Ok(Mat::zeros(field, rows, cols)),
        None => Err(perr(0, 0, format!("missing 'matrix {name}'"))),
    }
}

fn build(h: Header, mut mats: BTreeMap<String, Raw>, expect: Vec<(String, String)>) -> Result<Document> {
    if h.format.is_none() {
        return Err(perr(1, 1, "empty document"));
    }
    let missing = |k: &str| perr(0, 0, format!("missing '{k}'"));
    let field = h.field.ok_or_else(|| missing("field"))?;
    let param = h.param.ok_or_else(|| missing("param"))?;
    let (kind_line, kind) = h.kind.ok_or_else(|| missing("kind"))?;

    let window = h.window;
    let dims = h.dims.clone();
    let complex = |mats: &mut BTreeMap<String, Raw>| -> Result<ChainComplex> {
        let (lo, hi) = window.ok_or_else(|| missing("window"))?;
        let (dl, dims) = dims.clone().ok_or_else(|| missing("dims"))?;
        if dims.len() as i64 != hi - lo + 1 {
            return Err(perr(dl, 1, format!("window [{lo}, {hi}] needs {} dims, found {}", hi - lo + 1, dims.len())));
        }
        let dim = |n: i64| dims[(n - lo) as usize];
        let diffs = (lo + 1..=hi).map(|n| take(mats, field, &format!("d{n}"), dim(n - 1), dim(n))).collect::<Result<Vec<_>>>()?;
        ChainComplex::new(field, lo, dims.clone(), diffs)
    };

    let payload = match kind.as_str() {
        "qspace" => {
            let n = h.dims.as_ref().map(|d| d.1.first().copied().unwrap_or(0));
            let xi = match mats.get("xi") {
                Some(r) => r.mat.clone(),
                None => Mat::zeros(field, n.unwrap_or(0), n.unwrap_or(0)),
            };
            mats.remove("xi");
            Payload::QSpace(QSpace::new(QForm::new(param, xi)?)?)
        }
        "complex" => Payload::Complex(complex(&mut mats)?),
        "poincare" => {
            let e = complex(&mut mats)?;
            let xi = QForm::new(param, take(&mut mats, field, "xi", e.dim(0), e.dim(0))?)?;
            let (lo, hi) = e.window();
            let mut phis = BTreeMap::new();
            for n in lo..=hi {
                phis.insert(n, take(&mut mats, field, &format!("phi{n}"), e.dim(-n), e.dim(n))?);
            }
            let ed = dualize(&e);
            let phi = ChainMap::new(&e, &ed, |n| phis.get(&n).cloned().unwrap_or_else(|| Mat::zeros(field, e.dim(-n), e.dim(n))))?;
            Payload::Poincare(make_poincare(param, e, xi, phi)?)
        }
        "mor_form" => {
            let f = mats.remove("f").ok_or_else(|| missing("matrix f"))?.mat;
            let xi = QForm::new(param, take(&mut mats, field, "xi", f.cols(), f.cols())?)?;
            let a = take(&mut mats, field, "a", f.rows(), f.cols())?;
            Payload::MorForm(MorForm::new(f, xi, a)?)
        }
        "s2_object" => {
            let l = mats.remove("lagrangian").ok_or_else(|| missing("matrix lagrangian"))?.mat;
            let xi = QForm::new(param, take(&mut mats, field, "xi", l.rows(), l.rows())?)?;
            Payload::S2Object(S2Object::new(l, xi)?)
        }
        other => return Err(perr(kind_line, 6, format!("unknown kind '{other}'"))),
    };
    if let Some((name, r)) = mats.iter().next() {
        return Err(perr(r.line, 1, format!("matrix '{name}' is not used by kind '{kind}'")));
    }
    Ok(Document { name: h.name.unwrap_or_default(), seed: h.seed, field, param, payload, expect })
}

fn write_matrix(out: &mut String, name: &str, m: &Mat) {
    if m.rows() * m.cols() == 0 {
        return;
    }
    writeln!(out, "matrix {name} {} {}", m.rows(), m.cols()).unwrap();
    for r in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|c| m.get(r, c).to_string()).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
}

fn write_complex(out: &mut String, e: &ChainComplex) {
    let (lo, hi) = e.window();
    writeln!(out, "window {lo} {hi}").unwrap();
    let dims: Vec<String> = (lo..=hi).map(|n| e.dim(n).to_string()).collect();
    writeln!(out, "dims {}", dims.join(" ")).unwrap();
    for n in lo + 1..=hi {
        write_matrix(out, &format!("d{n}"), &e.d(n));
    }
}

/// Canonical text: fixed key order, reduced entries, no comments.
pub fn serialize(doc: &Document) -> String {
    let mut out = String::new();
    writeln!(out, "format {FORMAT}").unwrap();
    if !doc.name.is_empty() {
        writeln!(out, "name {}", doc.name).unwrap();
    }
    if let Some(s) = doc.seed {
        writeln!(out, "seed {s}").unwrap();
    }
    writeln!(out, "field {}", doc.field).unwrap();
    writeln!(out, "param {}", doc.param).unwrap();
    writeln!(out, "kind {}", doc.payload.kind()).unwrap();
    match &doc.payload {
        Payload::QSpace(x) => {
            writeln!(out, "dims {}", x.rank()).unwrap();
            write_matrix(&mut out, "xi", x.form().rep());
        }
        Payload::Complex(e) => write_complex(&mut out, e),
        Payload::Poincare(p) => {
            write_complex(&mut out, p.complex());
            write_matrix(&mut out, "xi", p.xi().rep());
            let (lo, hi) = p.complex().window();
            for n in lo..=hi {
                write_matrix(&mut out, &format!("phi{n}"), &p.phi().f(n));
            }
        }
        Payload::MorForm(m) => {
            writeln!(out, "matrix f {} {}", m.f().rows(), m.f().cols()).unwrap();
            if m.f().cols() > 0 {
                for r in 0..m.f().rows() {
                    let row: Vec<String> = (0..m.f().cols()).map(|c| m.f().get(r, c).to_string()).collect();
                    writeln!(out, "{}", row.join(" ")).unwrap();
                }
            }
            write_matrix(&mut out, "xi", m.xi().rep());
            write_matrix(&mut out, "a", m.a());
        }
        Payload::S2Object(s) => {
            let l = s.lagrangian();
            writeln!(out, "matrix lagrangian {} {}", l.rows(), l.cols()).unwrap();
            if l.cols() > 0 {
                for r in 0..l.rows() {
                    let row: Vec<String> = (0..l.cols()).map(|c| l.get(r, c).to_string()).collect();
                    writeln!(out, "{}", row.join(" ")).unwrap();
                }
            }
            write_matrix(&mut out, "xi", s.xi().rep());
        }
    }
    for (k, v) in &doc.expect {
        writeln!(out, "expect {k} {v}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const ONE: &str = "format gwcx/1\nfield F3\nparam quadratic +1\nkind qspace\nmatrix xi 1 1\n1\n";

    #[test]
    fn minimal_qspace() {
        let d = parse(ONE).unwrap();
        let x = QSpace::diagonal(FormParam::quadratic(), Field::Prime(3), &[1]).unwrap();
        assert_eq!(d.payload, Payload::QSpace(x));
        assert_eq!(parse(&serialize(&d)).unwrap(), d);
    }

    #[test]
    fn rejects_non_complex() {
        let t = "format gwcx/1\nfield F3\nparam quadratic +1\nkind complex\nwindow 0 2\ndims 1 1 1\nmatrix d1 1 1\n1\nmatrix d2 1 1\n1\n";
        assert_eq!(parse(t).unwrap_err(), Error::NotComplex { degree: 1 });
    }

    #[test]
    fn syntax_errors_have_positions() {
        let t = "format gwcx/1\nfield F3\nparam quadratic +1\nkind qspace\nmatrix xi 1 1\n  x\n";
        assert_eq!(parse(t).unwrap_err(), perr(6, 3, "expected an integer or fraction, found 'x'"));
        assert!(matches!(parse("field F3\n"), Err(Error::Parse { line: 1, col: 1, .. })));
        let bad = "format gwcx/1\nfield F3\nparam quadratic +1\nkind qspace\nmatrix xi 1 1\n1/3\n";
        assert!(matches!(parse(bad), Err(Error::Parse { line: 6, col: 1, .. })));
    }

    #[test]
    fn fractions_over_q() {
        let t = "format gwcx/1\nfield Q\nparam symmetric +1\nkind qspace\nmatrix xi 2 2\n1/2 -3\n-6/2 4\n";
        let d = parse(t).unwrap();
        let s = serialize(&d);
        assert!(s.contains("1/2 -3\n-3 4\n"));
        assert_eq!(parse(&s).unwrap(), d);
    }
}
