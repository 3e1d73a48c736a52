//! Construction specs and batch verification.
//!
//! One spec per line:
//!
//! ```text
//! braid:3: 1 -2 1 -2
//! rosette:7
//! dt:(4 6 2)
//! pd: X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]
//! template:templates/t1.tpl(0|1) switch I,III:c1
//! union:(1) dt:(4 6 2)
//! knots/fig8.pd
//! ```
//!
//! A bare path names a file holding one of the other forms. Relative paths
//! resolve against the manifest's directory.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use super::catalog::Catalog;
use super::certificate::certify_spa;
use super::checks::check_amphicheiral_necessary;
use crate::construct::{
    expand_almost, expand_template, parse_twist_list, rosette, BraidWord, HalfDiagram, QuarterTemplate,
    TwistSpec,
};
use crate::diagram::{parse_dt, parse_pd, Diagram};
use crate::error::{Error, Result};
use crate::invariants::determinant;

#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    Braid(BraidWord),
    Rosette(i64),
    Dt(String),
    Pd(String),
    Template { path: PathBuf, spec: TwistSpec },
    Union { y_twists: Vec<i64>, inner: Box<Source> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Plain,
    Union,
    Template,
    AlmostTemplate,
}

/// A diagram with whatever its construction guarantees.
#[derive(Debug, Clone)]
pub struct Built {
    pub kind: Kind,
    pub diagram: Diagram,
    pub partial: Option<Diagram>,
    pub rho: Option<Vec<usize>>,
}

fn resolve(base: &Path, p: &str) -> PathBuf {
    let p = Path::new(p.trim());
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

fn parse_template_spec(rest: &str, base: &Path) -> Result<Source> {
    let open = rest
        .find('(')
        .ok_or_else(|| Error::TwistSpec(format!("template spec {rest:?} has no '(x|y)'")))?;
    let close = rest[open..]
        .find(')')
        .map(|i| i + open)
        .ok_or_else(|| Error::TwistSpec(format!("template spec {rest:?} has no ')'")))?;
    let mut spec: TwistSpec = rest[open..=close].parse()?;
    let mut toks = rest[close + 1..].split_whitespace();
    while let Some(t) = toks.next() {
        if t != "switch" {
            return Err(Error::TwistSpec(format!("unexpected {t:?} after twists")));
        }
        let sw = toks
            .next()
            .ok_or_else(|| Error::TwistSpec("switch needs '<pair>:<crossing>'".into()))?;
        spec.switches.push(sw.parse()?);
    }
    Ok(Source::Template {
        path: resolve(base, &rest[..open]),
        spec,
    })
}

impl Source {
    pub fn parse(line: &str, base: &Path) -> Result<Source> {
        let line = line.trim();
        if line.starts_with("braid:") {
            return Ok(Source::Braid(line.parse()?));
        }
        if let Some(n) = line.strip_prefix("rosette:") {
            let n = n
                .trim()
                .parse()
                .map_err(|_| Error::Braid(format!("bad rosette size {:?}", n.trim())))?;
            return Ok(Source::Rosette(n));
        }
        if line.starts_with("dt:") {
            return Ok(Source::Dt(line.to_string()));
        }
        if let Some(pd) = line.strip_prefix("pd:") {
            return Ok(Source::Pd(pd.to_string()));
        }
        if line.starts_with("X[") {
            return Ok(Source::Pd(line.to_string()));
        }
        if let Some(rest) = line.strip_prefix("template:") {
            return parse_template_spec(rest, base);
        }
        if let Some(rest) = line.strip_prefix("union:") {
            let rest = rest.trim_start();
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::TwistSpec("union spec must start with '(twists)'".into()))?;
            let (twists, inner) = body
                .split_once(')')
                .ok_or_else(|| Error::TwistSpec("union spec has no ')'".into()))?;
            return Ok(Source::Union {
                y_twists: parse_twist_list(twists)?,
                inner: Box::new(Source::parse(inner, base)?),
            });
        }
        let path = resolve(base, line);
        let text = std::fs::read_to_string(&path)?;
        let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        let body: String = text
            .lines()
            .map(|l| l.split('#').next().unwrap())
            .collect::<Vec<_>>()
            .join(" ");
        if body.trim().is_empty() {
            return Err(Error::InvalidDiagram(vec![format!(
                "{} is empty",
                path.display()
            )]));
        }
        if body.trim_start().starts_with("X[") {
            // PD files keep their line structure for error positions.
            return Ok(Source::Pd(text));
        }
        Source::parse(&body, &dir)
    }

    pub fn build(&self) -> Result<Built> {
        let plain = |diagram| Built {
            kind: Kind::Plain,
            diagram,
            partial: None,
            rho: None,
        };
        Ok(match self {
            Source::Braid(w) => plain(w.closure()),
            Source::Rosette(n) => plain(rosette(*n)?),
            Source::Dt(s) => plain(parse_dt(s)?),
            Source::Pd(s) => plain(parse_pd(s)?),
            Source::Template { path, spec } => {
                let t = QuarterTemplate::load(path)?;
                let (kind, e) = if spec.switches.is_empty() {
                    (Kind::Template, expand_template(&t, spec)?)
                } else {
                    (Kind::AlmostTemplate, expand_almost(&t, spec)?)
                };
                Built {
                    kind,
                    diagram: e.diagram,
                    partial: Some(e.partial),
                    rho: Some(e.rho),
                }
            }
            Source::Union { y_twists, inner } => {
                let j = inner.build()?.diagram;
                let h = HalfDiagram::from_knot(&j, y_twists.len())?;
                Built {
                    kind: Kind::Union,
                    diagram: h.symmetric_union(y_twists)?,
                    partial: Some(h.partial_knot()?),
                    rho: None,
                }
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Ok,
    Fail,
    Error,
    NotAKnot,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BatchRow {
    pub input: String,
    pub status: RowStatus,
    pub kind: Option<Kind>,
    pub crossings: Option<usize>,
    pub det: Option<u64>,
    pub det_partial_sq: Option<u64>,
    pub alex_square: Option<bool>,
    pub jones_palindromic: Option<bool>,
    pub spa_certificate: Option<bool>,
    pub candidates: Vec<String>,
    pub message: Option<String>,
}

impl BatchRow {
    fn failed(input: &str, status: RowStatus, message: String) -> Self {
        Self {
            input: input.to_string(),
            status,
            kind: None,
            crossings: None,
            det: None,
            det_partial_sq: None,
            alex_square: None,
            jones_palindromic: None,
            spa_certificate: None,
            candidates: Vec::new(),
            message: Some(message),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct BatchSummary {
    pub total: usize,
    pub ok: usize,
    pub fail: usize,
    pub error: usize,
    pub not_a_knot: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BatchReport {
    pub rows: Vec<BatchRow>,
    pub summary: BatchSummary,
}

#[derive(Debug, Clone)]
pub struct BatchOptions {
    pub base_dir: PathBuf,
    pub catalog: Option<Catalog>,
    pub jobs: usize,
}

impl Default for BatchOptions {
    fn default() -> Self {
        Self {
            base_dir: PathBuf::from("."),
            catalog: None,
            jobs: 1,
        }
    }
}

fn evaluate_built(input: &str, b: &Built, catalog: Option<&Catalog>) -> Result<BatchRow> {
    let d = &b.diagram;
    let v = d.validate();
    if !v.is_valid() {
        return Err(Error::InvalidDiagram(
            v.issues.iter().map(ToString::to_string).collect(),
        ));
    }
    let det = determinant(d)?;
    let amph = check_amphicheiral_necessary(d)?;
    let det_partial_sq = match &b.partial {
        Some(p) => Some(determinant(p)?.pow(2)),
        None => None,
    };
    let spa = b.rho.as_ref().map(|rho| certify_spa(d, rho).is_ok());
    let candidates = match catalog {
        Some(c) => c.identify(d)?.iter().map(ToString::to_string).collect(),
        None => Vec::new(),
    };
    let det_law = det_partial_sq == Some(det);
    let pass = match b.kind {
        Kind::Plain => true,
        Kind::Union => det_law,
        Kind::Template => det_law && spa == Some(true) && amph.passes(),
        Kind::AlmostTemplate => spa == Some(true) && amph.passes(),
    };
    Ok(BatchRow {
        input: input.to_string(),
        status: if pass { RowStatus::Ok } else { RowStatus::Fail },
        kind: Some(b.kind),
        crossings: Some(d.crossing_count()),
        det: Some(det),
        det_partial_sq,
        alex_square: Some(amph.alexander_square()),
        jones_palindromic: Some(amph.jones_palindromic),
        spa_certificate: spa,
        candidates,
        message: None,
    })
}

/// Builds and checks one spec. Never panics on bad input; errors become rows.
pub fn evaluate(input: &str, base: &Path, catalog: Option<&Catalog>) -> BatchRow {
    let built = Source::parse(input, base).and_then(|s| s.build());
    let result = built.and_then(|b| evaluate_built(input, &b, catalog));
    match result {
        Ok(row) => row,
        Err(e @ Error::NotAKnot { .. }) => BatchRow::failed(input, RowStatus::NotAKnot, e.to_string()),
        Err(e) => BatchRow::failed(input, RowStatus::Error, e.to_string()),
    }
}

/// Manifest lines with comments and blanks removed.
pub fn manifest_entries(text: &str) -> Vec<String> {
    text.lines()
        .map(|l| l.trim())
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect()
}

/// Rows come back in input order whatever `jobs` is.
pub fn batch_verify(entries: &[String], opts: &BatchOptions) -> Result<BatchReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;
    let rows: Vec<BatchRow> = pool.install(|| {
        entries
            .par_iter()
            .map(|e| evaluate(e, &opts.base_dir, opts.catalog.as_ref()))
            .collect()
    });
    Ok(BatchReport::from_rows(rows))
}

impl BatchReport {
    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0 && self.summary.error == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_rows(rows: Vec<BatchRow>) -> Self {
        let mut summary = BatchSummary {
            total: rows.len(),
            ..Default::default()
        };
        for r in &rows {
            match r.status {
                RowStatus::Ok => summary.ok += 1,
                RowStatus::Fail => summary.fail += 1,
                RowStatus::Error => summary.error += 1,
                RowStatus::NotAKnot => summary.not_a_knot += 1,
            }
        }
        Self { rows, summary }
    }

    pub fn text_header() -> String {
        format!(
            "{:<10} {:>5} {:>10} {:>10} {:>5} {:>5} {:>5}  {:<24} input",
            "status", "cr", "det", "det(J)^2", "Δ=□", "V=V*", "spa", "candidates"
        )
    }

    pub fn to_text(&self) -> String {
        let mut s = Self::text_header();
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.to_text_line());
            s.push('\n');
        }
        s.push_str(&self.summary.to_text_line());
        s.push('\n');
        s
    }
}

impl BatchRow {
    /// One fixed-width line, as in [`BatchReport::to_text`].
    pub fn to_text_line(&self) -> String {
        let opt = |v: Option<u64>| v.map_or("-".to_string(), |x| x.to_string());
        let flag = |v: Option<bool>| match v {
            Some(true) => "yes",
            Some(false) => "no",
            None => "-",
        };
        let status = match self.status {
            RowStatus::Ok => "ok",
            RowStatus::Fail => "FAIL",
            RowStatus::Error => "error",
            RowStatus::NotAKnot => "not_a_knot",
        };
        let cands = if self.candidates.is_empty() {
            "-".to_string()
        } else {
            self.candidates.join(", ")
        };
        let mut s = format!(
            "{:<10} {:>5} {:>10} {:>10} {:>5} {:>5} {:>5}  {:<24} {}",
            status,
            opt(self.crossings.map(|c| c as u64)),
            opt(self.det),
            opt(self.det_partial_sq),
            flag(self.alex_square),
            flag(self.jones_palindromic),
            flag(self.spa_certificate),
            cands,
            self.input
        );
        if let Some(m) = &self.message {
            let _ = write!(s, "  ({m})");
        }
        s
    }
}

impl BatchSummary {
    pub fn to_text_line(&self) -> String {
        format!(
            "total {}: {} ok, {} fail, {} error, {} not a knot",
            self.total, self.ok, self.fail, self.error, self.not_a_knot
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn source_forms() {
        let base = Path::new(".");
        assert_eq!(Source::parse("rosette:5", base).unwrap(), Source::Rosette(5));
        assert!(matches!(
            Source::parse("braid:2: 1 1 1", base).unwrap(),
            Source::Braid(_)
        ));
        assert!(matches!(
            Source::parse("dt:(4 6 2)", base).unwrap(),
            Source::Dt(_)
        ));
        match Source::parse("union:(1, -1) dt:(4 6 2)", base).unwrap() {
            Source::Union { y_twists, inner } => {
                assert_eq!(y_twists, vec![1, -1]);
                assert!(matches!(*inner, Source::Dt(_)));
            }
            other => panic!("{other:?}"),
        }
        match Source::parse("template:t/a.tpl(0,1|2) switch I,III:c1", base).unwrap() {
            Source::Template { path, spec } => {
                assert_eq!(path, Path::new("./t/a.tpl"));
                assert_eq!(spec.x_twists, vec![0, 1]);
                assert_eq!(spec.switches.len(), 1);
            }
            other => panic!("{other:?}"),
        }
        assert!(Source::parse("template:a.tpl(0|1) flip", base).is_err());
    }

    #[test]
    fn rows_and_statuses() {
        let entries =
            manifest_entries("# demo\nrosette:5\nrosette:3\nunion:(1) dt:(4 6 2)\nnonsense-file\n\n");
        let report = batch_verify(&entries, &BatchOptions::default()).unwrap();
        let st: Vec<RowStatus> = report.rows.iter().map(|r| r.status).collect();
        assert_eq!(
            st,
            vec![RowStatus::Ok, RowStatus::Error, RowStatus::Ok, RowStatus::Error]
        );
        assert_eq!(report.rows[0].det, Some(121));
        assert_eq!(report.rows[2].det, Some(9));
        assert_eq!(report.rows[2].det_partial_sq, Some(9));
        assert!(!report.all_passed());
        assert!(report.to_text().contains("total 4"));
    }

    #[test]
    fn empty_batch() {
        let r = batch_verify(&[], &BatchOptions::default()).unwrap();
        assert!(r.rows.is_empty() && r.all_passed());
    }
}
