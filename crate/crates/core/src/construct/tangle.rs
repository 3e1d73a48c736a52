//! Unoriented tangles assembled from crossings and wires, oriented only when
//! closed into a diagram.
//!
//! A crossing is four points listed counterclockwise with the under-strand
//! at positions 0 and 2. Wires join points; a closed tangle has every
//! crossing point on exactly one wire and every other point on two.

use std::collections::HashMap;

use crate::diagram::{ArcId, Crossing, Diagram};
use crate::error::{Error, Result};
use crate::union_find::UnionFind;

pub type Point = usize;

/// How crossings are transformed when one tangle is copied into another.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Placement {
    Identity,
    /// Reflection in a line of the plane; over and under are kept.
    Reflect,
    /// Every crossing switched.
    Switch,
    /// Reflection followed by switching.
    ReflectSwitch,
}

impl Placement {
    fn apply(self, [a, b, c, d]: [Point; 4]) -> [Point; 4] {
        match self {
            Placement::Identity => [a, b, c, d],
            Placement::Reflect => [a, d, c, b],
            Placement::Switch => [b, c, d, a],
            Placement::ReflectSwitch => [d, c, b, a],
        }
    }
}

/// Offsets of a copied tangle inside its host.
#[derive(Debug, Clone, Copy)]
pub struct Embedded {
    pub points: usize,
    pub crossings: usize,
}

impl Embedded {
    pub fn point(&self, p: Point) -> Point {
        p + self.points
    }

    pub fn crossing(&self, c: usize) -> usize {
        c + self.crossings
    }
}

#[derive(Debug, Clone, Default)]
pub struct Tangle {
    crossings: Vec<[Point; 4]>,
    points: usize,
    wires: Vec<(Point, Point)>,
    ports: Vec<(String, Point)>,
}

impl Tangle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn point(&mut self) -> Point {
        self.points += 1;
        self.points - 1
    }

    /// Adds a crossing with four fresh points.
    pub fn crossing(&mut self) -> [Point; 4] {
        let ends = [self.point(), self.point(), self.point(), self.point()];
        self.crossings.push(ends);
        ends
    }

    pub fn wire(&mut self, a: Point, b: Point) {
        self.wires.push((a, b));
    }

    pub fn set_port(&mut self, name: impl Into<String>, p: Point) {
        let name = name.into();
        self.ports.retain(|(n, _)| *n != name);
        self.ports.push((name, p));
    }

    pub fn port(&self, name: &str) -> Option<Point> {
        self.ports.iter().find(|(n, _)| n == name).map(|&(_, p)| p)
    }

    /// Port lookup that panics on unknown names; for tangles built here.
    pub fn expect_port(&self, name: &str) -> Point {
        self.port(name).unwrap_or_else(|| panic!("no port {name}"))
    }

    pub fn ports(&self) -> &[(String, Point)] {
        &self.ports
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn crossing_points(&self) -> &[[Point; 4]] {
        &self.crossings
    }

    /// Copies `other` in; its ports are not carried over.
    pub fn embed(&mut self, other: &Tangle, placement: Placement) -> Embedded {
        let e = Embedded {
            points: self.points,
            crossings: self.crossings.len(),
        };
        self.points += other.points;
        self.crossings.extend(
            other
                .crossings
                .iter()
                .map(|c| placement.apply(c.map(|p| e.point(p)))),
        );
        self.wires
            .extend(other.wires.iter().map(|&(a, b)| (e.point(a), e.point(b))));
        e
    }

    /// Switches crossing `c` in place.
    pub fn switch(&mut self, c: usize) {
        self.crossings[c] = Placement::Switch.apply(self.crossings[c]);
    }

    /// A vertical column of `|n|` crossings with ports `NW`, `NE`, `SW`,
    /// `SE`. Positive `n` puts the `/` strand over, giving positive crossings
    /// when both strands run the same way. `n = 0` joins `NW`-`SW` and
    /// `NE`-`SE`.
    pub fn twist_column(n: i64) -> Tangle {
        let mut t = Tangle::new();
        let (mut nw, mut ne) = (t.point(), t.point());
        t.set_port("NW", nw);
        t.set_port("NE", ne);
        for _ in 0..n.unsigned_abs() {
            let e = t.crossing();
            // Compass positions of the four ends.
            let (c_nw, c_sw, c_se, c_ne) = if n > 0 {
                (e[0], e[1], e[2], e[3])
            } else {
                (e[1], e[2], e[3], e[0])
            };
            t.wire(nw, c_nw);
            t.wire(ne, c_ne);
            nw = t.point();
            ne = t.point();
            t.wire(c_sw, nw);
            t.wire(c_se, ne);
        }
        t.set_port("SW", nw);
        t.set_port("SE", ne);
        t
    }

    /// A horizontal row of `|n|` crossings with ports `NW`, `NE`, `SW`,
    /// `SE`. Positive `n` puts the `\` strand over, giving positive crossings
    /// when both strands run the same way. `n = 0` joins `NW`-`NE` and
    /// `SW`-`SE`.
    pub fn twist_row(n: i64) -> Tangle {
        let mut t = Tangle::new();
        let (mut nw, mut sw) = (t.point(), t.point());
        t.set_port("NW", nw);
        t.set_port("SW", sw);
        for _ in 0..n.unsigned_abs() {
            let e = t.crossing();
            let (c_ne, c_nw, c_sw, c_se) = if n > 0 {
                (e[0], e[1], e[2], e[3])
            } else {
                (e[3], e[0], e[1], e[2])
            };
            t.wire(nw, c_nw);
            t.wire(sw, c_sw);
            nw = t.point();
            sw = t.point();
            t.wire(c_ne, nw);
            t.wire(c_se, sw);
        }
        t.set_port("NE", nw);
        t.set_port("SE", sw);
        t
    }

    /// `top` above `bottom`, both with compass ports.
    pub fn stack(top: &Tangle, bottom: &Tangle) -> Tangle {
        let mut t = Tangle::new();
        let a = t.embed(top, Placement::Identity);
        let b = t.embed(bottom, Placement::Identity);
        t.wire(a.point(top.expect_port("SW")), b.point(bottom.expect_port("NW")));
        t.wire(a.point(top.expect_port("SE")), b.point(bottom.expect_port("NE")));
        t.set_port("NW", a.point(top.expect_port("NW")));
        t.set_port("NE", a.point(top.expect_port("NE")));
        t.set_port("SW", b.point(bottom.expect_port("SW")));
        t.set_port("SE", b.point(bottom.expect_port("SE")));
        t
    }

    /// Joins `NW`-`NE` and `SW`-`SE`.
    pub fn numerator(&self) -> Result<Diagram> {
        let mut t = self.clone();
        t.wire(self.expect_port("NW"), self.expect_port("NE"));
        t.wire(self.expect_port("SW"), self.expect_port("SE"));
        t.close()
    }

    /// Joins `NW`-`SW` and `NE`-`SE`.
    pub fn denominator(&self) -> Result<Diagram> {
        let mut t = self.clone();
        t.wire(self.expect_port("NW"), self.expect_port("SW"));
        t.wire(self.expect_port("NE"), self.expect_port("SE"));
        t.close()
    }

    /// Orients every component and emits a PD diagram. Crossing `i` of the
    /// tangle becomes crossing `i` of the diagram.
    pub fn close(&self) -> Result<Diagram> {
        let bad = |m: String| Error::Template(format!("tangle does not close: {m}"));
        let mut degree = vec![0u8; self.points];
        let mut uf = UnionFind::new(self.points);
        for &(a, b) in &self.wires {
            degree[a] += 1;
            degree[b] += 1;
            uf.union(a, b);
        }
        let mut owner: HashMap<Point, (usize, usize)> = HashMap::new();
        for (c, ends) in self.crossings.iter().enumerate() {
            for (k, &p) in ends.iter().enumerate() {
                owner.insert(p, (c, k));
            }
        }
        for (p, &deg) in degree.iter().enumerate() {
            let want = if owner.contains_key(&p) { 1 } else { 2 };
            if deg != want {
                return Err(bad(format!("point {p} has {deg} wires, expected {want}")));
            }
        }
        let mut class_ends: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
        for p in 0..self.points {
            let root = uf.find(p);
            let entry = class_ends.entry(root).or_default();
            if let Some(&ck) = owner.get(&p) {
                entry.push(ck);
            }
        }
        let mut free_loops = 0;
        let mut partner: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
        for ends in class_ends.values() {
            match ends[..] {
                [] => free_loops += 1,
                [x, y] => {
                    partner.insert(x, y);
                    partner.insert(y, x);
                }
                _ => return Err(bad(format!("a wire meets {} crossing ends", ends.len()))),
            }
        }
        let n = self.crossings.len();
        let mut enter = vec![[usize::MAX; 2]; n];
        let mut label: HashMap<(usize, usize), ArcId> = HashMap::new();
        let mut next_label: ArcId = 1;
        for c0 in 0..n {
            for strand in 0..2 {
                if enter[c0][strand] != usize::MAX {
                    continue;
                }
                let (mut c, mut pos) = (c0, strand);
                while enter[c][pos % 2] == usize::MAX {
                    enter[c][pos % 2] = pos;
                    let exit = (c, (pos + 2) % 4);
                    let into = partner[&exit];
                    label.insert(exit, next_label);
                    label.insert(into, next_label);
                    next_label += 1;
                    (c, pos) = into;
                }
            }
        }
        let crossings = (0..n)
            .map(|c| Crossing::from_ccw([0, 1, 2, 3].map(|k| label[&(c, k)]), enter[c][0], enter[c][1]))
            .collect();
        Ok(Diagram::with_free_loops(crossings, free_loops))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Move;

    #[test]
    fn zero_twist_is_trivial() {
        assert_eq!(Tangle::twist_column(0).crossing_count(), 0);
        let d = Tangle::twist_column(0).numerator().unwrap();
        assert!(d.is_crossingless() && d.is_knot());
        assert_eq!(Tangle::twist_row(0).numerator().unwrap().free_loops(), 2);
        assert_eq!(Tangle::twist_column(0).denominator().unwrap().free_loops(), 2);
    }

    #[test]
    fn twist_closures() {
        // Capping a column top and bottom untwists it; closing its sides
        // gives the 2-strand torus knot or link.
        for n in -5i64..=5 {
            let col = Tangle::twist_column(n);
            assert_eq!(col.crossing_count(), n.unsigned_abs() as usize);
            let num = col.numerator().unwrap();
            assert!(num.validate().is_valid(), "{n}");
            assert!(num.is_knot());
            let den = col.denominator().unwrap();
            assert!(den.validate().is_valid());
            assert_eq!(den.component_count(), if n % 2 == 0 { 2 } else { 1 }, "{n}");
            if n % 2 != 0 {
                // Parallel strands: every crossing has the sign of n.
                assert_eq!(den.writhe(), n, "{n}");
            }
            let row = Tangle::twist_row(n);
            assert!(row.numerator().unwrap().validate().is_valid());
            assert_eq!(
                row.numerator().unwrap().component_count(),
                if n % 2 == 0 { 2 } else { 1 }
            );
        }
    }

    #[test]
    fn opposite_twists_cancel_by_r2() {
        let t = Tangle::stack(&Tangle::twist_column(1), &Tangle::twist_column(-1));
        let d = t.denominator().unwrap();
        assert_eq!(d.crossing_count(), 2);
        let reduced = d
            .available_moves()
            .into_iter()
            .filter(|m| matches!(m, Move::R2Remove { .. }))
            .map(|m| d.apply_move(m).unwrap())
            .find(|r| r.crossing_count() == 0);
        assert!(reduced.is_some());
    }

    #[test]
    fn twists_add() {
        for (a, b) in [(2, 3), (-1, -4), (1, 1)] {
            let t = Tangle::stack(&Tangle::twist_column(a), &Tangle::twist_column(b));
            let whole = Tangle::twist_column(a + b);
            assert_eq!(t.crossing_count(), whole.crossing_count());
            assert!(t.numerator().unwrap().isomorphic(&whole.numerator().unwrap()));
            assert!(t.denominator().unwrap().isomorphic(&whole.denominator().unwrap()));
        }
    }

    #[test]
    fn open_port_is_rejected() {
        let mut t = Tangle::twist_column(2);
        t.wire(t.expect_port("NW"), t.expect_port("NE"));
        assert!(matches!(t.close(), Err(Error::Template(_))));
    }
}
