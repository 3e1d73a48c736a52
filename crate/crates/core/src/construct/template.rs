//! Doubly symmetric diagrams from a quarter template.
//!
//! The quarter sits in quadrant II. Quadrant I is its reflection across the
//! y-axis, quadrant III its reflection across the x-axis with every crossing
//! switched, and quadrant IV its rotation by π with every crossing switched.
//! Twist columns sit on the y-axis (`n` above the origin, `-n` in mirrored
//! order below) and twist rows on the x-axis (`n` on the negative side, `-n`
//! on the positive side).
//!
//! Template text format:
//!
//! ```text
//! name: t1
//! quarter: c1[y1 x1 x2 y2] y3-x3
//! x_slots: 1
//! y_slots: 1
//! wiring: y = [y1 y2] y3 ; x = x1 [x2 x3]
//! ```
//!
//! Crossing ends are listed counterclockwise with the under-strand first and
//! third. `a-b` is a strand without crossings. Ports are named `yk` (on the
//! y-axis, top to bottom) and `xk` (on the x-axis, left to right); any other
//! name is an internal arc and must occur twice. In the wiring a bracketed
//! pair is a twist slot and a bare port crosses the axis directly.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use super::tangle::{Placement, Tangle};
use super::union::{AxisPort, HalfDiagram};
use crate::diagram::Diagram;
use crate::error::{Error, ParseError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum AxisEntry {
    Join(String),
    Slot(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuarterCrossing {
    pub id: String,
    pub ends: [String; 4],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuarterTemplate {
    pub name: String,
    pub crossings: Vec<QuarterCrossing>,
    pub strands: Vec<(String, String)>,
    /// Top to bottom.
    pub y_axis: Vec<AxisEntry>,
    /// Left to right.
    pub x_axis: Vec<AxisEntry>,
}

fn is_port(name: &str) -> bool {
    let mut ch = name.chars();
    matches!(ch.next(), Some('x' | 'y')) && name.len() > 1 && ch.all(|c| c.is_ascii_digit())
}

fn slots(axis: &[AxisEntry]) -> usize {
    axis.iter().filter(|e| matches!(e, AxisEntry::Slot(..))).count()
}

impl QuarterTemplate {
    pub fn x_slots(&self) -> usize {
        slots(&self.x_axis)
    }

    pub fn y_slots(&self) -> usize {
        slots(&self.y_axis)
    }

    pub fn crossing_index(&self, id: &str) -> Option<usize> {
        self.crossings.iter().position(|c| c.id == id)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        std::fs::read_to_string(path)?.parse()
    }

    /// Structural checks: names, port usage and the single y-axis join.
    pub fn check(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Template(format!("{}: {m}", self.name)));
        let mut count: HashMap<&str, usize> = HashMap::new();
        for c in &self.crossings {
            for e in &c.ends {
                *count.entry(e).or_default() += 1;
            }
        }
        for (a, b) in &self.strands {
            *count.entry(a).or_default() += 1;
            *count.entry(b).or_default() += 1;
        }
        for (i, c) in self.crossings.iter().enumerate() {
            if self.crossings[..i].iter().any(|o| o.id == c.id) {
                return bad(format!("crossing id {} repeated", c.id));
            }
        }
        for (name, &k) in &count {
            let want = if is_port(name) { 1 } else { 2 };
            if k != want {
                return bad(format!("{name} occurs {k} times, expected {want}"));
            }
        }
        let mut wired: HashMap<&str, usize> = HashMap::new();
        for (axis, prefix) in [(&self.y_axis, 'y'), (&self.x_axis, 'x')] {
            for e in axis.iter() {
                let names: Vec<&str> = match e {
                    AxisEntry::Join(a) => vec![a],
                    AxisEntry::Slot(a, b) => vec![a, b],
                };
                for n in names {
                    if !n.starts_with(prefix) || !is_port(n) {
                        return bad(format!("{n} is not a {prefix}-axis port"));
                    }
                    *wired.entry(n).or_default() += 1;
                }
            }
        }
        for name in count.keys().filter(|n| is_port(n)) {
            if wired.get(name) != Some(&1) {
                return bad(format!("port {name} must be wired exactly once"));
            }
        }
        if let Some(n) = wired.keys().find(|n| !count.contains_key(*n)) {
            return bad(format!("wiring names unknown port {n}"));
        }
        let y_joins = self.y_axis.len() - self.y_slots();
        if y_joins != 1 {
            return bad(format!("need exactly one y-axis join, found {y_joins}"));
        }
        Ok(())
    }

    /// The quarter as a tangle whose ports are the `xk`/`yk` names; crossing
    /// `i` is `self.crossings[i]`.
    pub fn quarter_tangle(&self) -> Result<Tangle> {
        self.check()?;
        let mut t = Tangle::new();
        let mut at: HashMap<&str, Vec<usize>> = HashMap::new();
        for c in &self.crossings {
            let pts = t.crossing();
            for (e, p) in c.ends.iter().zip(pts) {
                at.entry(e).or_default().push(p);
            }
        }
        for (a, b) in &self.strands {
            let (p, q) = (t.point(), t.point());
            t.wire(p, q);
            at.entry(a).or_default().push(p);
            at.entry(b).or_default().push(q);
        }
        for (name, pts) in at {
            match pts[..] {
                [p] => t.set_port(name, p),
                [p, q] => t.wire(p, q),
                _ => unreachable!("checked above"),
            }
        }
        Ok(t)
    }

    /// Quadrants II and III with the negative x-axis rows, as the left half
    /// of a symmetric union. Also returns the reflection across the x-axis
    /// as an involution on the half's crossings.
    pub fn half(&self, x_twists: &[i64]) -> Result<(HalfDiagram, Vec<usize>)> {
        if x_twists.len() != self.x_slots() {
            return Err(Error::TwistSpec(format!(
                "{}: {} x twists given for {} slots",
                self.name,
                x_twists.len(),
                self.x_slots()
            )));
        }
        let q = self.quarter_tangle()?;
        let mut t = Tangle::new();
        let q2 = t.embed(&q, Placement::Identity);
        let q3 = t.embed(&q, Placement::ReflectSwitch);
        let nq = q.crossing_count();
        let mut sigma: Vec<usize> = (0..nq).map(|k| q3.crossing(k)).collect();
        sigma.extend((0..nq).map(|k| q2.crossing(k)));
        let port = |e: &super::tangle::Embedded, name: &str| e.point(q.expect_port(name));
        let mut twists = x_twists.iter();
        for entry in &self.x_axis {
            match entry {
                AxisEntry::Join(a) => t.wire(port(&q2, a), port(&q3, a)),
                AxisEntry::Slot(a, b) => {
                    let row = Tangle::twist_row(*twists.next().unwrap());
                    let r = t.embed(&row, Placement::Identity);
                    t.wire(port(&q2, a), r.point(row.expect_port("NW")));
                    t.wire(port(&q2, b), r.point(row.expect_port("NE")));
                    t.wire(port(&q3, a), r.point(row.expect_port("SW")));
                    t.wire(port(&q3, b), r.point(row.expect_port("SE")));
                    sigma.extend((0..row.crossing_count()).map(|k| r.crossing(k)));
                }
            }
        }
        let mut axis = Vec::new();
        for entry in &self.y_axis {
            axis.push(match entry {
                AxisEntry::Join(a) => AxisPort::Join(port(&q2, a)),
                AxisEntry::Slot(a, b) => AxisPort::Slot {
                    upper: port(&q2, a),
                    lower: port(&q2, b),
                },
            });
        }
        for entry in self.y_axis.iter().rev() {
            axis.push(match entry {
                AxisEntry::Join(a) => AxisPort::Join(port(&q3, a)),
                AxisEntry::Slot(a, b) => AxisPort::Slot {
                    upper: port(&q3, b),
                    lower: port(&q3, a),
                },
            });
        }
        Ok((HalfDiagram::new(t, axis)?, sigma))
    }
}

impl FromStr for QuarterTemplate {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut name = None;
        let mut crossings = Vec::new();
        let mut strands = Vec::new();
        let mut wiring = None;
        let mut declared: [Option<(usize, usize)>; 2] = [None, None];
        for (ln, raw) in text.lines().enumerate() {
            let ln = ln + 1;
            let line = raw.split('#').next().unwrap();
            if line.trim().is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| ParseError::new(ln, 1, "expected 'key: value'"))?;
            let col = key.len() + 2;
            match key.trim() {
                "name" => name = Some(value.trim().to_string()),
                "quarter" => parse_quarter(value, ln, col, &mut crossings, &mut strands)?,
                "x_slots" | "y_slots" => {
                    let n = value.trim().parse().map_err(|_| {
                        ParseError::new(ln, col, format!("bad slot count {:?}", value.trim()))
                    })?;
                    declared[usize::from(key.trim() == "y_slots")] = Some((n, ln));
                }
                "wiring" => wiring = Some(parse_wiring(value, ln, col)?),
                other => return Err(ParseError::new(ln, 1, format!("unknown key {other:?}")).into()),
            }
        }
        let name = name.ok_or_else(|| ParseError::new(1, 1, "missing 'name'"))?;
        let (y_axis, x_axis) = wiring.ok_or_else(|| ParseError::new(1, 1, "missing 'wiring'"))?;
        let t = QuarterTemplate {
            name,
            crossings,
            strands,
            y_axis,
            x_axis,
        };
        for (i, found) in [t.x_slots(), t.y_slots()].into_iter().enumerate() {
            if let Some((n, ln)) = declared[i] {
                if n != found {
                    let axis = if i == 0 { "x" } else { "y" };
                    return Err(ParseError::new(
                        ln,
                        1,
                        format!("{axis}_slots is {n} but the wiring has {found}"),
                    )
                    .into());
                }
            }
        }
        t.check()?;
        Ok(t)
    }
}

fn parse_quarter(
    value: &str,
    ln: usize,
    col: usize,
    crossings: &mut Vec<QuarterCrossing>,
    strands: &mut Vec<(String, String)>,
) -> Result<()> {
    let mut rest = value;
    let mut offset = col - 1;
    loop {
        let trimmed = rest.trim_start();
        offset += rest.len() - trimmed.len();
        rest = trimmed;
        if rest.is_empty() {
            return Ok(());
        }
        let here = offset + 1;
        if let Some(open) = rest
            .find('[')
            .filter(|&i| !rest[..i].contains(char::is_whitespace))
        {
            let close = rest
                .find(']')
                .ok_or_else(|| ParseError::new(ln, here, "unclosed '['"))?;
            let id = rest[..open].to_string();
            let ends: Vec<String> = rest[open + 1..close]
                .split_whitespace()
                .map(String::from)
                .collect();
            let ends: [String; 4] = ends.try_into().map_err(|e: Vec<String>| {
                ParseError::new(
                    ln,
                    here,
                    format!("crossing {id} has {} ends, expected 4", e.len()),
                )
            })?;
            if id.is_empty() {
                return Err(ParseError::new(ln, here, "crossing without id").into());
            }
            crossings.push(QuarterCrossing { id, ends });
            offset += close + 1;
            rest = &rest[close + 1..];
        } else {
            let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
            let tok = &rest[..end];
            let (a, b) = tok
                .split_once('-')
                .filter(|(a, b)| !a.is_empty() && !b.is_empty())
                .ok_or_else(|| {
                    ParseError::new(ln, here, format!("expected crossing or strand, got {tok:?}"))
                })?;
            strands.push((a.to_string(), b.to_string()));
            offset += end;
            rest = &rest[end..];
        }
    }
}

type Wiring = (Vec<AxisEntry>, Vec<AxisEntry>);

fn parse_wiring(value: &str, ln: usize, col: usize) -> Result<Wiring> {
    let mut y = None;
    let mut x = None;
    for part in value.split(';') {
        let (axis, list) = part
            .split_once('=')
            .ok_or_else(|| ParseError::new(ln, col, "expected 'y = ...' or 'x = ...'"))?;
        let entries = parse_axis_list(list).map_err(|m| ParseError::new(ln, col, m))?;
        match axis.trim() {
            "y" => y = Some(entries),
            "x" => x = Some(entries),
            other => return Err(ParseError::new(ln, col, format!("unknown axis {other:?}")).into()),
        }
    }
    Ok((y.unwrap_or_default(), x.unwrap_or_default()))
}

fn parse_axis_list(list: &str) -> std::result::Result<Vec<AxisEntry>, String> {
    let spaced = list.replace('[', " [ ").replace(']', " ] ");
    let mut toks = spaced.split_whitespace();
    let mut out = Vec::new();
    while let Some(t) = toks.next() {
        if t == "[" {
            let a = toks.next().ok_or("unclosed '['")?;
            let b = toks.next().ok_or("unclosed '['")?;
            if toks.next() != Some("]") {
                return Err("a twist slot holds exactly two ports".into());
            }
            out.push(AxisEntry::Slot(a.into(), b.into()));
        } else if t == "]" {
            return Err("unbalanced ']'".into());
        } else {
            out.push(AxisEntry::Join(t.into()));
        }
    }
    Ok(out)
}

impl fmt::Display for QuarterTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "name: {}", self.name)?;
        write!(f, "quarter:")?;
        for c in &self.crossings {
            write!(f, " {}[{}]", c.id, c.ends.join(" "))?;
        }
        for (a, b) in &self.strands {
            write!(f, " {a}-{b}")?;
        }
        writeln!(f)?;
        writeln!(f, "x_slots: {}", self.x_slots())?;
        writeln!(f, "y_slots: {}", self.y_slots())?;
        let list = |axis: &[AxisEntry]| {
            axis.iter()
                .map(|e| match e {
                    AxisEntry::Join(a) => a.clone(),
                    AxisEntry::Slot(a, b) => format!("[{a} {b}]"),
                })
                .collect::<Vec<_>>()
                .join(" ")
        };
        writeln!(
            f,
            "wiring: y = {} ; x = {}",
            list(&self.y_axis),
            list(&self.x_axis)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum QuadrantPair {
    /// Quadrants I and III.
    OneThree,
    /// Quadrants II and IV.
    TwoFour,
}

impl fmt::Display for QuadrantPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuadrantPair::OneThree => "I,III",
            QuadrantPair::TwoFour => "II,IV",
        })
    }
}

/// A symmetric pair of quarter-crossing copies to switch.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Switch {
    pub pair: QuadrantPair,
    pub crossing: String,
}

impl FromStr for Switch {
    type Err = Error;

    /// `I,III:c1` or `II,IV:c1`.
    fn from_str(s: &str) -> Result<Self> {
        let (pair, id) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::TwistSpec(format!("switch {s:?} is not '<pair>:<crossing>'")))?;
        let pair = match pair.replace(' ', "").as_str() {
            "I,III" => QuadrantPair::OneThree,
            "II,IV" => QuadrantPair::TwoFour,
            other => return Err(Error::TwistSpec(format!("unknown quadrant pair {other:?}"))),
        };
        Ok(Switch {
            pair,
            crossing: id.trim().to_string(),
        })
    }
}

impl fmt::Display for Switch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.pair, self.crossing)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct TwistSpec {
    pub x_twists: Vec<i64>,
    pub y_twists: Vec<i64>,
    pub switches: Vec<Switch>,
}

/// Parses a comma- or space-separated integer list; empty means no entries.
pub fn parse_twist_list(s: &str) -> Result<Vec<i64>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| Error::TwistSpec(format!("bad twist number {t:?}")))
        })
        .collect()
}

impl TwistSpec {
    pub fn new(x_twists: Vec<i64>, y_twists: Vec<i64>) -> Self {
        Self {
            x_twists,
            y_twists,
            switches: Vec::new(),
        }
    }

    pub fn with_switch(mut self, switch: Switch) -> Self {
        self.switches.push(switch);
        self
    }
}

impl FromStr for TwistSpec {
    type Err = Error;

    /// `(0, 0, 3 | 1)`: x twists, then y twists.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim();
        let body = body
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .unwrap_or(body);
        let (x, y) = body
            .split_once('|')
            .ok_or_else(|| Error::TwistSpec(format!("{s:?} has no '|' between x and y twists")))?;
        Ok(TwistSpec::new(parse_twist_list(x)?, parse_twist_list(y)?))
    }
}

impl fmt::Display for TwistSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "({}|{})", join(&self.x_twists), join(&self.y_twists))?;
        for s in &self.switches {
            write!(f, " switch {s}")?;
        }
        Ok(())
    }
}

/// An expanded template with the crossing involution realising the
/// rotation by π onto the mirror image.
#[derive(Debug, Clone)]
pub struct Expansion {
    pub diagram: Diagram,
    pub rho: Vec<usize>,
    pub partial: Diagram,
    /// Diagram crossing ids of each quarter crossing in quadrants I to IV.
    pub quadrants: Vec<[usize; 4]>,
}

impl Expansion {
    pub fn crossing_count(&self) -> usize {
        self.diagram.crossing_count()
    }
}

fn expand_raw(t: &QuarterTemplate, s: &TwistSpec) -> Result<Expansion> {
    if s.y_twists.len() != t.y_slots() {
        return Err(Error::TwistSpec(format!(
            "{}: {} y twists given for {} slots",
            t.name,
            s.y_twists.len(),
            t.y_slots()
        )));
    }
    let (half, sigma) = t.half(&s.x_twists)?;
    let mut all_y = s.y_twists.clone();
    all_y.extend(s.y_twists.iter().rev().map(|n| -n));
    let (tangle, layout) = half.assemble(&all_y)?;
    let diagram = tangle.close()?;
    diagram.ensure_knot()?;
    let m = layout.half_crossings;
    let mut rho = vec![usize::MAX; diagram.crossing_count()];
    for (i, &j) in sigma.iter().enumerate() {
        rho[i] = j + m;
        rho[i + m] = j;
    }
    let k = layout.columns.len();
    for (i, col) in layout.columns.iter().enumerate() {
        let partner = &layout.columns[k - 1 - i];
        for (j, &c) in col.iter().enumerate() {
            rho[c] = partner[col.len() - 1 - j];
        }
    }
    let nq = t.crossings.len();
    // Half crossings: quadrant II copies, then quadrant III copies.
    let quadrants = (0..nq).map(|q| [q + m, q, q + nq, q + nq + m]).collect();
    let expected = 4 * nq
        + 2 * s
            .x_twists
            .iter()
            .map(|n| n.unsigned_abs() as usize)
            .sum::<usize>()
        + 2 * s
            .y_twists
            .iter()
            .map(|n| n.unsigned_abs() as usize)
            .sum::<usize>();
    debug_assert_eq!(diagram.crossing_count(), expected);
    Ok(Expansion {
        diagram,
        rho,
        partial: half.partial_knot()?,
        quadrants,
    })
}

/// The doubly symmetric diagram `t(x_twists | y_twists)`.
pub fn expand_template(t: &QuarterTemplate, s: &TwistSpec) -> Result<Expansion> {
    if !s.switches.is_empty() {
        return Err(Error::TwistSpec("switches given; use expand_almost".into()));
    }
    expand_raw(t, s)
}

/// The expansion with one symmetric pair of quarter-crossing copies
/// switched.
pub fn expand_almost(t: &QuarterTemplate, s: &TwistSpec) -> Result<Expansion> {
    expand_almost_with(t, s, false)
}

/// As [`expand_almost`]; `allow_several` permits more than one switched pair.
pub fn expand_almost_with(t: &QuarterTemplate, s: &TwistSpec, allow_several: bool) -> Result<Expansion> {
    if s.switches.is_empty() || (s.switches.len() > 1 && !allow_several) {
        return Err(Error::TwistSpec(format!(
            "expected exactly one switch, got {}",
            s.switches.len()
        )));
    }
    let mut ids = Vec::new();
    for sw in &s.switches {
        let q = t
            .crossing_index(&sw.crossing)
            .ok_or_else(|| Error::TwistSpec(format!("no crossing {:?} in {}", sw.crossing, t.name)))?;
        ids.push((sw.pair, q));
    }
    let mut e = expand_raw(t, s)?;
    let mut crossings = e.diagram.crossings().to_vec();
    for (pair, q) in ids {
        let [c1, c2, c3, c4] = e.quadrants[q];
        let (a, b) = match pair {
            QuadrantPair::OneThree => (c1, c3),
            QuadrantPair::TwoFour => (c2, c4),
        };
        crossings[a] = crossings[a].switched();
        crossings[b] = crossings[b].switched();
    }
    e.diagram = Diagram::with_free_loops(crossings, e.diagram.free_loops());
    Ok(e)
}
