//! Symmetric unions from a half-diagram on the left of a vertical axis.

use super::tangle::{Placement, Point, Tangle};
use crate::diagram::{ArcId, Diagram, Slot};
use crate::error::{Error, Result};

/// A place where the half-diagram meets the axis, listed top to bottom.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisPort {
    /// The strand crosses the axis without a crossing.
    Join(Point),
    /// A twist slot: two strands that meet a twist column on the axis.
    Slot { upper: Point, lower: Point },
}

/// The part of a symmetric union diagram left of the axis. It has exactly
/// two joins; closing every slot by joining its two ports and joining the
/// two joins to each other gives the partial knot.
#[derive(Debug, Clone)]
pub struct HalfDiagram {
    tangle: Tangle,
    axis: Vec<AxisPort>,
}

/// Crossing layout of an assembled symmetric union.
#[derive(Debug, Clone)]
pub(crate) struct UnionLayout {
    pub half_crossings: usize,
    /// Crossing ids of each twist column, top to bottom.
    pub columns: Vec<Vec<usize>>,
}

impl HalfDiagram {
    pub fn new(tangle: Tangle, axis: Vec<AxisPort>) -> Result<Self> {
        let joins = axis.iter().filter(|p| matches!(p, AxisPort::Join(_))).count();
        if joins != 2 {
            return Err(Error::Template(format!(
                "half-diagram needs 2 axis joins, found {joins}"
            )));
        }
        let h = Self { tangle, axis };
        h.partial_knot()?;
        Ok(h)
    }

    /// A single unknotted strand passing `slots` twist slots.
    pub fn trivial(slots: usize) -> Self {
        let mut t = Tangle::new();
        let mut axis = Vec::new();
        let mut prev = t.point();
        axis.push(AxisPort::Join(prev));
        for _ in 0..slots {
            let (upper, lower) = (t.point(), t.point());
            t.wire(prev, upper);
            axis.push(AxisPort::Slot { upper, lower });
            prev = lower;
        }
        let last = t.point();
        t.wire(prev, last);
        axis.push(AxisPort::Join(last));
        Self { tangle: t, axis }
    }

    /// Cuts a knot diagram open along arcs bounding face `face` (an index into
    /// [`Diagram::faces`]). `join_arc` supplies the two joins; each arc in
    /// `slot_arcs` becomes a twist slot. The axis runs through the face, so
    /// ports are ordered by the face boundary.
    pub fn from_diagram(d: &Diagram, face: usize, join_arc: ArcId, slot_arcs: &[ArcId]) -> Result<Self> {
        d.ensure_knot()?;
        let faces = d.faces();
        let boundary = faces
            .get(face)
            .ok_or_else(|| Error::Template(format!("no face {face}")))?;
        let arc_of = |(c, s): Slot| d.crossings()[c].arcs[s];
        let mut cut: Vec<ArcId> = vec![join_arc];
        cut.extend_from_slice(slot_arcs);
        for (i, a) in cut.iter().enumerate() {
            if cut[..i].contains(a) {
                return Err(Error::Template(format!("arc {a} listed twice")));
            }
            if !boundary.iter().any(|&dart| arc_of(dart) == *a) {
                return Err(Error::Template(format!("arc {a} does not bound face {face}")));
            }
        }
        let mut t = Tangle::new();
        let points: Vec<[Point; 4]> = (0..d.crossing_count()).map(|_| t.crossing()).collect();
        let pt = |(c, s): Slot| points[c][s];
        // PD order is counterclockwise with the under-strand at 0 and 2, as
        // the tangle expects.
        for (arc, ends) in d.arc_ends() {
            if !cut.contains(&arc) {
                t.wire(pt(ends[0]), pt(ends[1]));
            }
        }
        let ends = d.arc_ends();
        let other = |dart: Slot| {
            let e = &ends[&arc_of(dart)];
            if e[0] == dart {
                e[1]
            } else {
                e[0]
            }
        };
        // Walking the face boundary visits ports top to bottom; start just
        // past the join arc.
        let k = boundary
            .iter()
            .position(|&dart| arc_of(dart) == join_arc)
            .unwrap();
        let mut axis = Vec::new();
        let n = boundary.len();
        for step in 1..=n {
            let dart = boundary[(k + step) % n];
            let arc = arc_of(dart);
            if step == n {
                axis.insert(0, AxisPort::Join(pt(other(dart))));
                axis.push(AxisPort::Join(pt(dart)));
            } else if cut.contains(&arc) {
                if arc == join_arc {
                    return Err(Error::Template(format!("arc {arc} bounds face {face} twice")));
                }
                axis.push(AxisPort::Slot {
                    upper: pt(dart),
                    lower: pt(other(dart)),
                });
            }
        }
        HalfDiagram::new(t, axis)
    }

    /// Cuts `d` along the largest face, using its first boundary arcs.
    pub fn from_knot(d: &Diagram, slots: usize) -> Result<Self> {
        if d.is_crossingless() {
            d.ensure_knot()?;
            return Ok(Self::trivial(slots));
        }
        let faces = d.faces();
        let (face, boundary) = faces
            .iter()
            .enumerate()
            .max_by_key(|(i, f)| (f.len(), std::cmp::Reverse(*i)))
            .unwrap();
        let mut arcs: Vec<ArcId> = Vec::new();
        for &(c, s) in boundary {
            let a = d.crossings()[c].arcs[s];
            if !arcs.contains(&a) {
                arcs.push(a);
            }
        }
        if arcs.len() < slots + 1 {
            return Err(Error::Template(format!(
                "largest face has {} arcs, need {}",
                arcs.len(),
                slots + 1
            )));
        }
        HalfDiagram::from_diagram(d, face, arcs[0], &arcs[1..=slots])
    }

    pub fn tangle(&self) -> &Tangle {
        &self.tangle
    }

    pub fn axis(&self) -> &[AxisPort] {
        &self.axis
    }

    pub fn slot_count(&self) -> usize {
        self.axis
            .iter()
            .filter(|p| matches!(p, AxisPort::Slot { .. }))
            .count()
    }

    pub fn crossing_count(&self) -> usize {
        self.tangle.crossing_count()
    }

    fn joins(&self) -> (Point, Point) {
        let mut it = self.axis.iter().filter_map(|p| match p {
            AxisPort::Join(x) => Some(*x),
            AxisPort::Slot { .. } => None,
        });
        (it.next().unwrap(), it.next().unwrap())
    }

    /// Closes every slot and joins the two axis points.
    pub fn partial_knot(&self) -> Result<Diagram> {
        let mut t = self.tangle.clone();
        for p in &self.axis {
            if let AxisPort::Slot { upper, lower } = *p {
                t.wire(upper, lower);
            }
        }
        let (a, b) = self.joins();
        t.wire(a, b);
        t.close()
    }

    /// The half, its mirror image across the axis, and twist columns.
    /// Crossings `0..m` are the half, `m..2m` their mirror copies in the same
    /// order, then the columns.
    pub(crate) fn assemble(&self, y_twists: &[i64]) -> Result<(Tangle, UnionLayout)> {
        if y_twists.len() != self.slot_count() {
            return Err(Error::TwistSpec(format!(
                "{} twists given for {} slots",
                y_twists.len(),
                self.slot_count()
            )));
        }
        let mut t = Tangle::new();
        let left = t.embed(&self.tangle, Placement::Identity);
        let right = t.embed(&self.tangle, Placement::Reflect);
        let mut columns = Vec::new();
        let mut twists = y_twists.iter();
        for p in &self.axis {
            match *p {
                AxisPort::Join(x) => t.wire(left.point(x), right.point(x)),
                AxisPort::Slot { upper, lower } => {
                    let col = Tangle::twist_column(*twists.next().unwrap());
                    let c = t.embed(&col, Placement::Identity);
                    t.wire(left.point(upper), c.point(col.expect_port("NW")));
                    t.wire(left.point(lower), c.point(col.expect_port("SW")));
                    t.wire(right.point(upper), c.point(col.expect_port("NE")));
                    t.wire(right.point(lower), c.point(col.expect_port("SE")));
                    columns.push((0..col.crossing_count()).map(|k| c.crossing(k)).collect());
                }
            }
        }
        let layout = UnionLayout {
            half_crossings: self.crossing_count(),
            columns,
        };
        Ok((t, layout))
    }

    pub fn symmetric_union(&self, y_twists: &[i64]) -> Result<Diagram> {
        symmetric_union(self, y_twists)
    }
}

/// `h`, its mirror across the axis, and `y_twists[i]` crossings in slot `i`.
/// Links are rejected.
pub fn symmetric_union(h: &HalfDiagram, y_twists: &[i64]) -> Result<Diagram> {
    let (t, _) = h.assemble(y_twists)?;
    let d = t.close()?;
    d.ensure_knot()?;
    Ok(d)
}

pub fn partial_knot(h: &HalfDiagram) -> Result<Diagram> {
    h.partial_knot()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{figure_eight, trefoil};
    use crate::invariants::{alexander, determinant, goeritz};

    #[test]
    fn trivial_half() {
        let h = HalfDiagram::trivial(1);
        assert!(h.partial_knot().unwrap().is_crossingless());
        for n in -3..=3 {
            let d = symmetric_union(&h, &[n]).unwrap();
            assert!(d.validate().is_valid());
            assert_eq!(determinant(&d).unwrap(), 1);
        }
        let d = symmetric_union(&HalfDiagram::trivial(0), &[]).unwrap();
        assert!(d.is_crossingless() && d.is_knot());
    }

    #[test]
    fn cut_and_close_restores_the_knot() {
        for d in [trefoil(), figure_eight()] {
            for slots in 0..=2 {
                let h = HalfDiagram::from_knot(&d, slots).unwrap();
                assert_eq!(h.slot_count(), slots);
                let p = h.partial_knot().unwrap();
                assert!(p.isomorphic(&d), "{slots}: {p}");
            }
        }
    }

    #[test]
    fn trefoil_union_det_is_nine() {
        let h = HalfDiagram::from_knot(&trefoil(), 1).unwrap();
        for n in [-3, -1, 1, 3] {
            let d = symmetric_union(&h, &[n]).unwrap();
            assert!(d.validate().is_valid());
            assert_eq!(d.crossing_count(), 6 + n.unsigned_abs() as usize);
            assert_eq!(determinant(&d).unwrap(), 9);
            assert_eq!(goeritz(&d).unwrap().abs_determinant(), 9);
        }
    }

    #[test]
    fn even_twists_square_the_alexander_polynomial() {
        let h = HalfDiagram::from_knot(&figure_eight(), 1).unwrap();
        let j = alexander(&h.partial_knot().unwrap()).unwrap().delta;
        for n in [-2, 0, 2, 4] {
            let d = symmetric_union(&h, &[n]).unwrap();
            assert_eq!(alexander(&d).unwrap().delta, &j * &j, "{n}");
        }
    }

    #[test]
    fn wrong_twist_count() {
        let h = HalfDiagram::trivial(2);
        assert!(matches!(symmetric_union(&h, &[1]), Err(Error::TwistSpec(_))));
    }

    #[test]
    fn bad_cuts_rejected() {
        let t = trefoil();
        assert!(HalfDiagram::from_diagram(&t, 99, 1, &[]).is_err());
        assert!(HalfDiagram::from_diagram(&t, 0, 1, &[1]).is_err());
    }
}
