use std::cmp::Ordering;
use std::fmt;
use std::path::Path;

use serde::Serialize;

use crate::diagram::{Diagram, DtCode};
use crate::error::{Error, ParseError, Result};
use crate::invariants::{alexander, jones};
use crate::poly::LaurentPoly;

const BUILTIN: &str = include_str!("../../data/catalog.txt");

/// Which of `V(q)`, `V(1/q)` the knot's own Jones polynomial is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Chirality {
    /// `V(q) = V(1/q)`.
    Palindromic,
    /// `V(q)` is the smaller of the two.
    Key,
    /// `V(1/q)` is the smaller of the two.
    Mirror,
}

impl Chirality {
    pub fn flipped(self) -> Self {
        match self {
            Self::Palindromic => Self::Palindromic,
            Self::Key => Self::Mirror,
            Self::Mirror => Self::Key,
        }
    }
}

/// Mirror-insensitive invariants plus a chirality flag.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    pub det: u64,
    pub delta: LaurentPoly,
    pub jones_key: LaurentPoly,
    pub chirality: Chirality,
}

/// Total order on polynomials: by ascending terms, exponent then
/// coefficient.
fn poly_cmp(a: &LaurentPoly, b: &LaurentPoly) -> Ordering {
    a.terms().cmp(b.terms())
}

impl Fingerprint {
    pub fn of(d: &Diagram) -> Result<Self> {
        let delta = alexander(d)?.delta;
        let v = jones(d)?.jones;
        let w = v.invert_variable();
        let (jones_key, chirality) = match poly_cmp(&v, &w) {
            Ordering::Equal => (v, Chirality::Palindromic),
            Ordering::Less => (v, Chirality::Key),
            Ordering::Greater => (w, Chirality::Mirror),
        };
        let det = u64::try_from(delta.eval(-1).magnitude().clone()).expect("determinant exceeds u64");
        Ok(Self {
            det,
            delta,
            jones_key,
            chirality,
        })
    }

    pub fn same_knot_type(&self, other: &Fingerprint) -> bool {
        self.det == other.det && self.delta == other.delta && self.jones_key == other.jones_key
    }

    /// One line: `det | delta | jones_key | chirality`.
    pub fn to_line(&self) -> String {
        format!(
            "{} | {} | {} | {:?}",
            self.det,
            self.delta.to_sparse_string(),
            self.jones_key.to_sparse_string(),
            self.chirality
        )
    }
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub code: DtCode,
    pub fingerprint: Fingerprint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub name: String,
    /// The input matches the mirror image of the catalog knot.
    pub mirror: bool,
    pub amphicheiral: bool,
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.amphicheiral {
            write!(f, "{} (amphicheiral)", self.name)
        } else if self.mirror {
            write!(f, "mirror of {}", self.name)
        } else {
            f.write_str(&self.name)
        }
    }
}

/// Named knots with fingerprints computed from their stored DT codes.
#[derive(Debug, Clone, Default)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    /// Parses `name dt:(...)` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (name, code) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| ParseError::new(ln + 1, 1, "expected '<name> dt:(...)'"))?;
            let code = DtCode::parse(code.trim()).map_err(|e| match e {
                Error::Parse(p) => Error::Parse(ParseError::new(ln + 1, p.column, p.message)),
                other => other,
            })?;
            let d = code.to_diagram()?;
            entries.push(CatalogEntry {
                name: name.to_string(),
                fingerprint: Fingerprint::of(&d)?,
                code,
            });
        }
        Ok(Self { entries })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Prime knots through nine crossings and 10_123.
    pub fn builtin() -> Self {
        Self::parse(BUILTIN).expect("builtin catalog parses")
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn identify_fingerprint(&self, fp: &Fingerprint) -> Vec<Candidate> {
        self.entries
            .iter()
            .filter(|e| e.fingerprint.same_knot_type(fp))
            .map(|e| Candidate {
                name: e.name.clone(),
                mirror: fp.chirality != Chirality::Palindromic && fp.chirality != e.fingerprint.chirality,
                amphicheiral: fp.chirality == Chirality::Palindromic,
            })
            .collect()
    }

    /// Every entry whose fingerprint matches; empty when none does.
    pub fn identify(&self, d: &Diagram) -> Result<Vec<Candidate>> {
        Ok(self.identify_fingerprint(&Fingerprint::of(d)?))
    }

    /// `name | det | delta | jones_key | chirality` per entry.
    pub fn snapshot(&self) -> String {
        let mut s = String::new();
        for e in &self.entries {
            s.push_str(&format!("{} | {}\n", e.name, e.fingerprint.to_line()));
        }
        s
    }
}

pub fn identify(d: &Diagram, c: &Catalog) -> Result<Vec<Candidate>> {
    c.identify(d)
}
