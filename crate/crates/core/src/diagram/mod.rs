//! Oriented planar diagrams in PD form.
//!
//! A crossing lists its four arcs counterclockwise starting at the incoming
//! under-strand: `X[a, b, c, d]` has the under-strand running `a -> c`. The
//! over-strand runs `d -> b` on a positive crossing and `b -> d` on a
//! negative one, which fixes the orientation of every arc.

mod codes;
mod file;
mod moves;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::union_find::UnionFind;

pub use codes::{parse_dt, parse_pd, DtCode, GaussCode, GaussEntry};
pub use file::DiagramFile;
pub use moves::{Kink, Move};

pub type ArcId = i64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Crossing {
    pub arcs: [ArcId; 4],
    pub sign: Sign,
}

impl Crossing {
    pub fn new(arcs: [ArcId; 4], sign: Sign) -> Self {
        Self { arcs, sign }
    }

    pub fn positive(a: ArcId, b: ArcId, c: ArcId, d: ArcId) -> Self {
        Self::new([a, b, c, d], Sign::Positive)
    }

    pub fn negative(a: ArcId, b: ArcId, c: ArcId, d: ArcId) -> Self {
        Self::new([a, b, c, d], Sign::Negative)
    }

    /// Slot through which the over-strand enters.
    pub fn over_in_slot(&self) -> usize {
        match self.sign {
            Sign::Positive => 3,
            Sign::Negative => 1,
        }
    }

    /// Whether the arc at `slot` points into this crossing.
    pub fn is_incoming(&self, slot: usize) -> bool {
        slot == 0 || slot == self.over_in_slot()
    }

    pub fn is_over(slot: usize) -> bool {
        slot % 2 == 1
    }

    /// The same crossing with over and under exchanged.
    pub fn switched(&self) -> Self {
        let [a, b, c, d] = self.arcs;
        match self.sign {
            Sign::Positive => Self::negative(d, a, b, c),
            Sign::Negative => Self::positive(b, c, d, a),
        }
    }

    /// The same crossing with both strands reversed.
    pub fn reversed(&self) -> Self {
        let [a, b, c, d] = self.arcs;
        Self::new([c, d, a, b], self.sign)
    }

    /// Orients a crossing given counterclockwise ends with the under-strand
    /// at positions 0 and 2: `under_in` and `over_in` are the positions where
    /// each strand enters.
    pub fn from_ccw(ends: [ArcId; 4], under_in: usize, over_in: usize) -> Self {
        assert!(
            under_in.is_multiple_of(2) && over_in % 2 == 1,
            "bad strand positions"
        );
        let r = |k: usize| ends[(under_in + k) % 4];
        let sign = if over_in == (under_in + 1) % 4 {
            Sign::Negative
        } else {
            Sign::Positive
        };
        Self::new([r(0), r(1), r(2), r(3)], sign)
    }

    fn relabeled(&self, f: impl Fn(ArcId) -> ArcId) -> Self {
        Self::new(self.arcs.map(f), self.sign)
    }
}

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.arcs;
        write!(f, "X[{a},{b},{c},{d}]")
    }
}

/// Position of an arc end: `(crossing index, slot)`.
pub type Slot = (usize, usize);

/// A knot or link diagram. Crossing ids are indices into `crossings`.
///
/// Components without crossings are counted in `free_loops`; a diagram with
/// no crossings always has at least one, so the empty diagram is the unknot.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    free_loops: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ValidationIssue {
    DanglingArc(ArcId),
    OddArcMultiplicity { arc: ArcId, count: usize },
    ArcMultiplicity { arc: ArcId, count: usize },
    InconsistentOrientation(ArcId),
    NonPlanar { euler: i64, expected: i64 },
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DanglingArc(a) => write!(f, "dangling arc {a}"),
            Self::OddArcMultiplicity { arc, count } => {
                write!(f, "odd arc multiplicity: arc {arc} appears {count} times")
            }
            Self::ArcMultiplicity { arc, count } => write!(f, "arc {arc} appears {count} times"),
            Self::InconsistentOrientation(a) => {
                write!(f, "inconsistent orientation on arc {a}")
            }
            Self::NonPlanar { euler, expected } => {
                write!(f, "non-planar pairing: V - E + F = {euler}, expected {expected}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
    pub components: usize,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edges as i64 + self.faces as i64
    }
}

impl Default for Diagram {
    fn default() -> Self {
        Self::unknot()
    }
}

impl Diagram {
    /// Wraps crossings without checking them; see [`Diagram::checked`].
    pub fn new(crossings: Vec<Crossing>) -> Self {
        let free_loops = usize::from(crossings.is_empty());
        Self {
            crossings,
            free_loops,
        }
    }

    pub fn with_free_loops(crossings: Vec<Crossing>, free_loops: usize) -> Self {
        let free_loops = if crossings.is_empty() {
            free_loops.max(1)
        } else {
            free_loops
        };
        Self {
            crossings,
            free_loops,
        }
    }

    /// Builds and validates.
    pub fn checked(crossings: Vec<Crossing>) -> Result<Self> {
        let d = Self::new(crossings);
        d.ensure_valid()?;
        Ok(d)
    }

    pub fn unknot() -> Self {
        Self::new(Vec::new())
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn is_crossingless(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign.value()).sum()
    }

    /// Both ends of every arc. Arcs that do not appear exactly twice are
    /// reported by [`Diagram::validate`]; here they keep whatever ends exist.
    pub fn arc_ends(&self) -> BTreeMap<ArcId, Vec<Slot>> {
        let mut ends: BTreeMap<ArcId, Vec<Slot>> = BTreeMap::new();
        for (i, c) in self.crossings.iter().enumerate() {
            for (s, &a) in c.arcs.iter().enumerate() {
                ends.entry(a).or_default().push((i, s));
            }
        }
        ends
    }

    /// Largest arc label, or 0 for a crossingless diagram.
    pub fn max_arc(&self) -> ArcId {
        self.crossings.iter().flat_map(|c| c.arcs).max().unwrap_or(0)
    }

    pub fn arc_count(&self) -> usize {
        self.arc_ends().len()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut issues = Vec::new();
        let ends = self.arc_ends();
        for (&arc, slots) in &ends {
            match slots.len() {
                2 => {
                    let incoming = slots
                        .iter()
                        .filter(|&&(c, s)| self.crossings[c].is_incoming(s))
                        .count();
                    if incoming != 1 {
                        issues.push(ValidationIssue::InconsistentOrientation(arc));
                    }
                }
                1 => issues.push(ValidationIssue::DanglingArc(arc)),
                n if n % 2 == 1 => issues.push(ValidationIssue::OddArcMultiplicity { arc, count: n }),
                n => issues.push(ValidationIssue::ArcMultiplicity { arc, count: n }),
            }
        }
        let vertices = self.crossings.len();
        let edges = ends.len();
        if !issues.is_empty() {
            return ValidationReport {
                issues,
                components: 0,
                vertices,
                edges,
                faces: 0,
            };
        }
        if vertices == 0 {
            return ValidationReport {
                issues,
                components: self.free_loops.max(1),
                vertices,
                edges,
                faces: 2,
            };
        }
        let faces = self.faces().len();
        let expected = 2 * self.graph_components() as i64;
        let euler = vertices as i64 - edges as i64 + faces as i64;
        if euler != expected {
            issues.push(ValidationIssue::NonPlanar { euler, expected });
        }
        ValidationReport {
            issues,
            components: self.component_arcs().len() + self.free_loops,
            vertices,
            edges,
            faces,
        }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidDiagram(
                report.issues.iter().map(|i| i.to_string()).collect(),
            ))
        }
    }

    /// Connected components of the underlying 4-valent graph (free loops
    /// excluded).
    fn graph_components(&self) -> usize {
        let mut uf = UnionFind::new(self.crossings.len());
        for slots in self.arc_ends().values() {
            if let [(a, _), (b, _)] = slots[..] {
                uf.union(a, b);
            }
        }
        uf.set_count()
    }

    /// The slot where `arc` enters a crossing. Requires a valid diagram.
    pub fn head(&self, arc: ArcId) -> Option<Slot> {
        self.crossings.iter().enumerate().find_map(|(i, c)| {
            c.arcs
                .iter()
                .enumerate()
                .find(|&(s, &a)| a == arc && c.is_incoming(s))
                .map(|(s, _)| (i, s))
        })
    }

    fn head_map(&self) -> HashMap<ArcId, Slot> {
        let mut m = HashMap::new();
        for (i, c) in self.crossings.iter().enumerate() {
            for (s, &a) in c.arcs.iter().enumerate() {
                if c.is_incoming(s) {
                    m.insert(a, (i, s));
                }
            }
        }
        m
    }

    /// Arcs of each component in traversal order. Components are listed in
    /// order of their smallest arc; each starts at that arc. Free loops are
    /// not included.
    pub fn component_arcs(&self) -> Vec<Vec<ArcId>> {
        let heads = self.head_map();
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        let mut arcs: Vec<ArcId> = heads.keys().copied().collect();
        arcs.sort_unstable();
        for start in arcs {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = Vec::new();
            let mut a = start;
            while seen.insert(a) {
                comp.push(a);
                let (c, s) = heads[&a];
                a = self.crossings[c].arcs[(s + 2) % 4];
            }
            out.push(comp);
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.component_arcs().len() + self.free_loops
    }

    pub fn is_knot(&self) -> bool {
        self.component_count() == 1
    }

    pub fn ensure_knot(&self) -> Result<()> {
        match self.component_count() {
            1 => Ok(()),
            components => Err(Error::NotAKnot { components }),
        }
    }

    /// Face boundaries as cycles of darts. A dart `(c, s)` leaves crossing
    /// `c` through slot `s` with the face on its left.
    pub fn faces(&self) -> Vec<Vec<Slot>> {
        let ends = self.arc_ends();
        let other_end = |(c, s): Slot| -> Slot {
            let arc = self.crossings[c].arcs[s];
            let e = &ends[&arc];
            if e[0] == (c, s) {
                e[1]
            } else {
                e[0]
            }
        };
        let n = self.crossings.len();
        let mut visited = vec![[false; 4]; n];
        let mut faces = Vec::new();
        for c in 0..n {
            for s in 0..4 {
                if visited[c][s] {
                    continue;
                }
                let mut face = Vec::new();
                let mut dart = (c, s);
                while !visited[dart.0][dart.1] {
                    visited[dart.0][dart.1] = true;
                    face.push(dart);
                    let (c2, s2) = other_end(dart);
                    dart = (c2, (s2 + 3) % 4);
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Every crossing switched. The shadow is unchanged.
    pub fn mirror(&self) -> Self {
        Self {
            crossings: self.crossings.iter().map(Crossing::switched).collect(),
            free_loops: self.free_loops,
        }
    }

    /// Every component's orientation reversed.
    pub fn reverse(&self) -> Self {
        Self {
            crossings: self.crossings.iter().map(Crossing::reversed).collect(),
            free_loops: self.free_loops,
        }
    }

    pub fn relabel(&self, f: impl Fn(ArcId) -> ArcId) -> Self {
        Self {
            crossings: self.crossings.iter().map(|c| c.relabeled(&f)).collect(),
            free_loops: self.free_loops,
        }
    }

    /// Relabels arcs `1..=2n` along the components, in [`component_arcs`]
    /// order.
    ///
    /// [`component_arcs`]: Diagram::component_arcs
    pub fn relabel_by_traversal(&self) -> Self {
        let mut map = HashMap::new();
        for a in self.component_arcs().into_iter().flatten() {
            let next = map.len() as ArcId + 1;
            map.insert(a, next);
        }
        self.relabel(|a| map[&a])
    }

    /// Connected sum of two knots along their smallest-labelled arcs.
    pub fn connected_sum(&self, other: &Diagram) -> Result<Diagram> {
        self.ensure_knot()?;
        other.ensure_knot()?;
        if self.is_crossingless() {
            return Ok(other.clone());
        }
        if other.is_crossingless() {
            return Ok(self.clone());
        }
        let offset = self.max_arc() - other.crossings.iter().flat_map(|c| c.arcs).min().unwrap_or(0) + 1;
        let b = other.relabel(|a| a + offset);
        let x = *self.arc_ends().keys().next().expect("nonempty");
        let y = *b.arc_ends().keys().next().expect("nonempty");
        let (xc, xs) = self.head(x).expect("valid knot");
        let (yc, ys) = b.head(y).expect("valid knot");
        let mut crossings = self.crossings.clone();
        crossings[xc].arcs[xs] = y;
        let base = crossings.len();
        crossings.extend(b.crossings.iter().copied());
        crossings[base + yc].arcs[ys] = x;
        Ok(Diagram::new(crossings))
    }

    /// Canonical form used for equality up to arc relabelling and crossing
    /// order: the lexicographically smallest sorted crossing list over every
    /// choice of starting arc, with arcs numbered in traversal order.
    pub fn canonical_form(&self) -> CanonicalForm {
        let heads = self.head_map();
        let mut starts: Vec<ArcId> = heads.keys().copied().collect();
        starts.sort_unstable();
        let mut best: Option<Vec<Crossing>> = None;
        for &start in &starts {
            let labels = self.traversal_labels(start, &heads);
            let mut cs: Vec<Crossing> = self
                .crossings
                .iter()
                .map(|c| c.relabeled(|a| labels[&a]))
                .collect();
            cs.sort_unstable();
            if best.as_ref().is_none_or(|b| cs < *b) {
                best = Some(cs);
            }
        }
        CanonicalForm {
            crossings: best.unwrap_or_default(),
            free_loops: self.free_loops,
        }
    }

    /// Numbers arcs by traversal from `start`. Further components start at
    /// the first unlabelled arc met when scanning crossings in order of first
    /// visit, so the numbering depends only on structure and `start`.
    fn traversal_labels(&self, start: ArcId, heads: &HashMap<ArcId, Slot>) -> HashMap<ArcId, ArcId> {
        let mut labels: HashMap<ArcId, ArcId> = HashMap::new();
        let mut visit_order: Vec<usize> = Vec::new();
        let mut visited = vec![false; self.crossings.len()];
        let mut next_start = Some(start);
        let mut scan = 0;
        while let Some(s) = next_start {
            let mut a = s;
            while !labels.contains_key(&a) {
                let n = labels.len() as ArcId + 1;
                labels.insert(a, n);
                let (c, slot) = heads[&a];
                if !visited[c] {
                    visited[c] = true;
                    visit_order.push(c);
                }
                a = self.crossings[c].arcs[(slot + 2) % 4];
            }
            next_start = None;
            while scan < visit_order.len() && next_start.is_none() {
                let c = &self.crossings[visit_order[scan]];
                // Slots in PD order; pick the first unlabelled arc that enters
                // here, else the first unlabelled one at all.
                let mut cand = None;
                for s in 0..4 {
                    if !labels.contains_key(&c.arcs[s]) && c.is_incoming(s) {
                        cand = Some(c.arcs[s]);
                        break;
                    }
                }
                if cand.is_none() {
                    cand = c.arcs.iter().copied().find(|a| !labels.contains_key(a));
                }
                if cand.is_some() {
                    next_start = cand;
                } else {
                    scan += 1;
                }
            }
        }
        labels
    }

    /// Equality up to relabelling of arcs and reordering of crossings.
    pub fn isomorphic(&self, other: &Diagram) -> bool {
        self.crossings.len() == other.crossings.len()
            && self.free_loops == other.free_loops
            && self.canonical_form() == other.canonical_form()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub crossings: Vec<Crossing>,
    pub free_loops: usize,
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd_string())
    }
}

/// The standard 3-crossing trefoil `X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]`
/// (all crossings negative).
pub fn trefoil() -> Diagram {
    Diagram::new(vec![
        Crossing::negative(1, 4, 2, 5),
        Crossing::negative(3, 6, 4, 1),
        Crossing::negative(5, 2, 6, 3),
    ])
}

/// Standard 4-crossing figure-eight knot.
pub fn figure_eight() -> Diagram {
    parse_dt("dt:(4 6 8 2)").expect("static code")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_validates_with_euler_two() {
        let r = trefoil().validate();
        assert!(r.is_valid(), "{:?}", r.issues);
        assert_eq!(r.components, 1);
        assert_eq!((r.vertices, r.edges, r.faces), (3, 6, 5));
        assert_eq!(r.euler_characteristic(), 2);
    }

    #[test]
    fn empty_diagram_is_unknot() {
        let r = Diagram::unknot().validate();
        assert!(r.is_valid());
        assert_eq!(r.components, 1);
        assert_eq!(r.faces, 2);
        assert!(Diagram::unknot().is_knot());
    }

    #[test]
    fn arc_three_times_is_odd_multiplicity() {
        let d = Diagram::new(vec![
            Crossing::negative(1, 1, 2, 1),
            Crossing::negative(3, 2, 3, 4),
        ]);
        let r = d.validate();
        assert!(r
            .issues
            .iter()
            .any(|i| matches!(i, ValidationIssue::OddArcMultiplicity { arc: 1, count: 3 })));
        assert!(r
            .issues
            .iter()
            .any(|i| matches!(i, ValidationIssue::DanglingArc(4))));
        let msg = d.ensure_valid().unwrap_err().to_string();
        assert!(msg.contains("odd arc multiplicity"), "{msg}");
    }

    #[test]
    fn non_planar_pairing_detected() {
        // Virtual trefoil: two classical crossings whose Gauss code O1 O2 U1 U2
        // only embeds on the torus.
        let d = Diagram::new(vec![
            Crossing::positive(3, 2, 4, 1),
            Crossing::positive(4, 3, 1, 2),
        ]);
        let r = d.validate();
        assert!(
            r.issues
                .iter()
                .any(|i| matches!(i, ValidationIssue::NonPlanar { .. })),
            "{:?}",
            r
        );
    }

    #[test]
    fn orientation_conflict_detected() {
        // Arc 1 would enter both crossings.
        let d = Diagram::new(vec![Crossing::positive(1, 2, 2, 1)]);
        let r = d.validate();
        assert!(r
            .issues
            .iter()
            .any(|i| matches!(i, ValidationIssue::InconsistentOrientation(_))));
    }

    #[test]
    fn mirror_is_crossing_involution() {
        let t = trefoil();
        let m = t.mirror();
        assert!(m.validate().is_valid());
        assert_eq!(m.writhe(), 3);
        assert_eq!(m.mirror(), t);
        assert_eq!(Diagram::unknot().mirror(), Diagram::unknot());
    }

    #[test]
    fn switched_crossing_keeps_strand_directions() {
        for c in [Crossing::positive(1, 2, 3, 4), Crossing::negative(1, 2, 3, 4)] {
            let s = c.switched();
            assert_eq!(s.sign, c.sign.flip());
            // The same arcs point inward before and after.
            let ins = |x: &Crossing| {
                let mut v: Vec<_> = (0..4).filter(|&i| x.is_incoming(i)).map(|i| x.arcs[i]).collect();
                v.sort();
                v
            };
            assert_eq!(ins(&c), ins(&s));
        }
    }

    #[test]
    fn reverse_keeps_writhe_and_validity() {
        let t = trefoil().reverse();
        assert!(t.validate().is_valid());
        assert_eq!(t.writhe(), -3);
    }

    #[test]
    fn components_and_faces() {
        let t = trefoil();
        assert_eq!(t.component_arcs(), vec![vec![1, 2, 3, 4, 5, 6]]);
        assert_eq!(t.faces().len(), 5);
    }

    #[test]
    fn connected_sum_is_additive() {
        let s = trefoil().connected_sum(&figure_eight()).unwrap();
        assert!(s.validate().is_valid(), "{:?}", s.validate());
        assert_eq!(s.crossing_count(), 7);
        assert!(s.is_knot());
        assert!(Diagram::unknot()
            .connected_sum(&trefoil())
            .unwrap()
            .isomorphic(&trefoil()));
        let hopf = Diagram::new(vec![
            Crossing::positive(1, 3, 2, 4),
            Crossing::positive(2, 4, 1, 3),
        ]);
        assert!(matches!(
            hopf.connected_sum(&trefoil()),
            Err(Error::NotAKnot { components: 2 })
        ));
    }

    #[test]
    fn canonical_form_ignores_labels_and_order() {
        let t = trefoil();
        let shuffled =
            Diagram::new(vec![t.crossings()[2], t.crossings()[0], t.crossings()[1]]).relabel(|a| 100 - 7 * a);
        assert!(t.isomorphic(&shuffled));
        assert!(!t.isomorphic(&t.mirror()));
    }
}
