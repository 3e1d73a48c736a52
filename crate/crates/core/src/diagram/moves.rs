//! Reidemeister moves on PD diagrams.
//!
//! Sites are addressed by arcs, crossing indices and face indices (positions
//! in [`Diagram::faces`]). Every move keeps the diagram planar and oriented.

use std::collections::{BTreeMap, HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use super::{ArcId, Crossing, Diagram, Sign, Slot};
use crate::error::{Error, Result};
use crate::union_find::UnionFind;

/// The four kinks addable by R1: crossing sign and whether the strand meets
/// its own crossing over-first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Kink {
    pub sign: Sign,
    pub over_first: bool,
}

impl Kink {
    pub const ALL: [Kink; 4] = [
        Kink {
            sign: Sign::Positive,
            over_first: false,
        },
        Kink {
            sign: Sign::Positive,
            over_first: true,
        },
        Kink {
            sign: Sign::Negative,
            over_first: false,
        },
        Kink {
            sign: Sign::Negative,
            over_first: true,
        },
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Move {
    /// Add a kink on `arc`; ignored arc for a crossingless diagram.
    R1Add { arc: ArcId, kink: Kink },
    /// Remove the kink at a crossing.
    R1Remove { crossing: usize },
    /// Push a finger of the arc at dart `finger` across the arc at dart
    /// `target`; both darts must bound the same face.
    R2Add {
        finger: Slot,
        target: Slot,
        finger_over: bool,
    },
    /// Remove the bigon bounded by face `face`.
    R2Remove { face: usize },
    /// Slide a strand across the crossing opposite triangle face `face`.
    R3 { face: usize },
}

impl Move {
    /// Change in crossing count.
    pub fn crossing_delta(&self) -> i64 {
        match self {
            Move::R1Add { .. } => 1,
            Move::R1Remove { .. } => -1,
            Move::R2Add { .. } => 2,
            Move::R2Remove { .. } => -2,
            Move::R3 { .. } => 0,
        }
    }
}

impl Diagram {
    pub fn apply_move(&self, mv: Move) -> Result<Diagram> {
        match mv {
            Move::R1Add { arc, kink } => self.r1_add(arc, kink),
            Move::R1Remove { crossing } => self.r1_remove(crossing),
            Move::R2Add {
                finger,
                target,
                finger_over,
            } => self.r2_add(finger, target, finger_over),
            Move::R2Remove { face } => self.r2_remove(face),
            Move::R3 { face } => self.r3(face),
        }
    }

    /// Every applicable move. R2 additions are listed for each ordered pair
    /// of distinct arcs on a common face.
    pub fn available_moves(&self) -> Vec<Move> {
        let mut out = Vec::new();
        if self.is_crossingless() {
            out.extend(Kink::ALL.iter().map(|&kink| Move::R1Add { arc: 0, kink }));
            return out;
        }
        for &arc in self.arc_ends().keys() {
            out.extend(Kink::ALL.iter().map(|&kink| Move::R1Add { arc, kink }));
        }
        for c in 0..self.crossings.len() {
            if self.kink_loop(c).is_some() {
                out.push(Move::R1Remove { crossing: c });
            }
        }
        let faces = self.faces();
        for (f, face) in faces.iter().enumerate() {
            for &x in face {
                for &y in face {
                    if self.crossings[x.0].arcs[x.1] != self.crossings[y.0].arcs[y.1] {
                        for finger_over in [true, false] {
                            out.push(Move::R2Add {
                                finger: x,
                                target: y,
                                finger_over,
                            });
                        }
                    }
                }
            }
            if self.bigon(face).is_some() {
                out.push(Move::R2Remove { face: f });
            }
            if self.triangle(face).is_some() {
                out.push(Move::R3 { face: f });
            }
        }
        out
    }

    /// A move chosen uniformly among the move kinds that apply, then
    /// uniformly among sites of that kind. Additions that would exceed
    /// `max_crossings` are excluded.
    pub fn random_move<R: Rng + ?Sized>(&self, max_crossings: usize, rng: &mut R) -> Option<Move> {
        let mut by_kind: BTreeMap<u8, Vec<Move>> = BTreeMap::new();
        for m in self.available_moves() {
            if self.crossing_count() as i64 + m.crossing_delta() > max_crossings as i64 {
                continue;
            }
            let k = match m {
                Move::R1Add { .. } => 0,
                Move::R1Remove { .. } => 1,
                Move::R2Add { .. } => 2,
                Move::R2Remove { .. } => 3,
                Move::R3 { .. } => 4,
            };
            by_kind.entry(k).or_default().push(m);
        }
        let kinds: Vec<&Vec<Move>> = by_kind.values().collect();
        let group = kinds.choose(rng)?;
        group.choose(rng).copied()
    }

    /// Applies up to `steps` random moves, returning every intermediate
    /// diagram. Stops early if no move fits under `max_crossings`.
    pub fn random_walk<R: Rng + ?Sized>(
        &self,
        steps: usize,
        max_crossings: usize,
        rng: &mut R,
    ) -> Vec<(Move, Diagram)> {
        let mut out = Vec::with_capacity(steps);
        let mut d = self.clone();
        while out.len() < steps {
            let Some(mv) = d.random_move(max_crossings, rng) else {
                break;
            };
            d = d.apply_move(mv).expect("enumerated moves apply");
            out.push((mv, d.clone()));
        }
        out
    }

    fn fresh_label(&self) -> ArcId {
        self.max_arc().max(0) + 1
    }

    fn other_end(&self, at: Slot) -> Slot {
        let arc = self.crossings[at.0].arcs[at.1];
        for (i, c) in self.crossings.iter().enumerate() {
            for (s, &a) in c.arcs.iter().enumerate() {
                if a == arc && (i, s) != at {
                    return (i, s);
                }
            }
        }
        panic!("arc {arc} has a single end");
    }

    fn r1_add(&self, arc: ArcId, kink: Kink) -> Result<Diagram> {
        let l = self.fresh_label();
        let (p, q, mut crossings, loops) = if self.is_crossingless() {
            (l + 1, l + 1, Vec::new(), self.free_loops - 1)
        } else {
            let head = self
                .head(arc)
                .ok_or_else(|| Error::MoveNotApplicable(format!("R1: no arc {arc}")))?;
            let q = l + 1;
            let mut cs = self.crossings.clone();
            cs[head.0].arcs[head.1] = q;
            (arc, q, cs, self.free_loops)
        };
        let c = match (kink.sign, kink.over_first) {
            (Sign::Positive, false) => Crossing::positive(p, q, l, l),
            (Sign::Positive, true) => Crossing::positive(l, l, q, p),
            (Sign::Negative, false) => Crossing::negative(p, l, l, q),
            (Sign::Negative, true) => Crossing::negative(l, p, q, l),
        };
        crossings.push(c);
        Ok(Diagram::with_free_loops(crossings, loops))
    }

    /// The loop arc of a kink at crossing `c`: an arc joining two adjacent
    /// slots.
    fn kink_loop(&self, c: usize) -> Option<ArcId> {
        let a = self.crossings[c].arcs;
        (0..4).find(|&s| a[s] == a[(s + 1) % 4]).map(|s| a[s])
    }

    fn r1_remove(&self, c: usize) -> Result<Diagram> {
        if c >= self.crossings.len() || self.kink_loop(c).is_none() {
            return Err(Error::MoveNotApplicable(format!(
                "R1: crossing {c} is not a kink"
            )));
        }
        Ok(self.splice(&[c]))
    }

    /// Deletes crossings, joining the strands that passed through them.
    fn splice(&self, removed: &[usize]) -> Diagram {
        let mut labels: HashMap<ArcId, usize> = HashMap::new();
        for c in &self.crossings {
            for &a in &c.arcs {
                let n = labels.len();
                labels.entry(a).or_insert(n);
            }
        }
        let mut uf = UnionFind::new(labels.len());
        for &r in removed {
            let a = self.crossings[r].arcs;
            uf.union(labels[&a[0]], labels[&a[2]]);
            uf.union(labels[&a[1]], labels[&a[3]]);
        }
        let root: HashMap<ArcId, usize> = labels.iter().map(|(&a, &i)| (a, uf.find(i))).collect();
        let mut rep: HashMap<usize, ArcId> = HashMap::new();
        for (&a, &r) in &root {
            let e = rep.entry(r).or_insert(a);
            if a < *e {
                *e = a;
            }
        }
        let kept: Vec<Crossing> = self
            .crossings
            .iter()
            .enumerate()
            .filter(|(i, _)| !removed.contains(i))
            .map(|(_, c)| c.relabeled(|a| rep[&root[&a]]))
            .collect();
        let live: HashSet<usize> = kept.iter().flat_map(|c| c.arcs).map(|a| root[&a]).collect();
        let closed: HashSet<usize> = removed
            .iter()
            .flat_map(|&r| self.crossings[r].arcs)
            .map(|a| root[&a])
            .filter(|r| !live.contains(r))
            .collect();
        Diagram::with_free_loops(kept, self.free_loops + closed.len())
    }

    fn r2_add(&self, finger: Slot, target: Slot, finger_over: bool) -> Result<Diagram> {
        let bad = |m: &str| Error::MoveNotApplicable(format!("R2: {m}"));
        let n = self.crossings.len();
        if finger.0 >= n || target.0 >= n || finger.1 > 3 || target.1 > 3 {
            return Err(bad("dart out of range"));
        }
        let faces = self.faces();
        if !faces.iter().any(|f| f.contains(&finger) && f.contains(&target)) {
            return Err(bad("darts do not share a face"));
        }
        let x = self.crossings[finger.0].arcs[finger.1];
        let y = self.crossings[target.0].arcs[target.1];
        if x == y {
            return Err(bad("finger and target are the same arc"));
        }
        // Along the face boundary (face on the left) the target runs west to
        // east below the face and the finger runs east to west above it. The
        // finger dips down, crossing the target first at C_R then at C_L.
        let x_fwd = !self.crossings[finger.0].is_incoming(finger.1);
        let y_fwd = !self.crossings[target.0].is_incoming(target.1);
        let x_far = self.other_end(finger);
        let y_far = self.other_end(target);
        let base = self.fresh_label();
        let (x_a, x_u, x_b) = (x, base, base + 1);
        let (y_in, y_mid, y_out) = (y, base + 2, base + 3);
        let mut crossings = self.crossings.clone();
        crossings[x_far.0].arcs[x_far.1] = x_b;
        crossings[y_far.0].arcs[y_far.1] = y_out;
        // Compass order E, N, W, S is counterclockwise.
        const E: usize = 0;
        const N: usize = 1;
        const W: usize = 2;
        const S: usize = 3;
        let build = |ends: [ArcId; 4], y_in_dir: usize, x_in_dir: usize| -> Crossing {
            // Under-strand occupies E/W when the finger is over.
            let (under_in, over_in) = if finger_over {
                (y_in_dir, x_in_dir)
            } else {
                (x_in_dir, y_in_dir)
            };
            let rot = if finger_over { 0 } else { 1 };
            let ccw = [
                ends[rot],
                ends[(rot + 1) % 4],
                ends[(rot + 2) % 4],
                ends[(rot + 3) % 4],
            ];
            Crossing::from_ccw(ccw, (under_in + 4 - rot) % 4, (over_in + 4 - rot) % 4)
        };
        let c_r = build(
            [y_out, x_a, y_mid, x_u],
            if y_fwd { W } else { E },
            if x_fwd { N } else { S },
        );
        let c_l = build(
            [y_mid, x_b, y_in, x_u],
            if y_fwd { W } else { E },
            if x_fwd { S } else { N },
        );
        crossings.push(c_r);
        crossings.push(c_l);
        Ok(Diagram::with_free_loops(crossings, self.free_loops))
    }

    /// For a bigon face returns its two crossings.
    fn bigon(&self, face: &[Slot]) -> Option<(usize, usize)> {
        let [(c1, s1), (c2, s2)] = face[..] else {
            return None;
        };
        if c1 == c2 {
            return None;
        }
        let (_, t1) = self.other_end((c1, s1));
        let (_, t2) = self.other_end((c2, s2));
        let over1 = (s1 % 2, t1 % 2);
        let over2 = (s2 % 2, t2 % 2);
        let uniform = |p: (usize, usize)| p.0 == p.1;
        (uniform(over1) && uniform(over2) && over1 != over2).then_some((c1, c2))
    }

    fn r2_remove(&self, face: usize) -> Result<Diagram> {
        let faces = self.faces();
        let (c1, c2) = faces
            .get(face)
            .and_then(|f| self.bigon(f))
            .ok_or_else(|| Error::MoveNotApplicable(format!("R2: face {face} is not a removable bigon")))?;
        Ok(self.splice(&[c1, c2]))
    }

    /// For a triangle face admitting R3 returns its darts.
    fn triangle(&self, face: &[Slot]) -> Option<[Slot; 3]> {
        let [d0, d1, d2] = face[..] else {
            return None;
        };
        let darts = [d0, d1, d2];
        if d0.0 == d1.0 || d1.0 == d2.0 || d0.0 == d2.0 {
            return None;
        }
        let uniform = darts.iter().any(|&d| {
            let (_, t) = self.other_end(d);
            d.1 % 2 == t % 2
        });
        uniform.then_some(darts)
    }

    fn r3(&self, face: usize) -> Result<Diagram> {
        let faces = self.faces();
        let darts = faces
            .get(face)
            .and_then(|f| self.triangle(f))
            .ok_or_else(|| Error::MoveNotApplicable(format!("R3: face {face} is not a movable triangle")))?;
        let mut crossings = self.crossings.clone();
        let first = self.fresh_label();
        for (e, &(c, s)) in (first..).zip(&darts) {
            let (c2, t) = self.other_end((c, s));
            let p = self.crossings[c].arcs[(s + 2) % 4];
            let q = self.crossings[c2].arcs[(t + 2) % 4];
            crossings[c].arcs[(s + 2) % 4] = e;
            crossings[c].arcs[s] = q;
            crossings[c2].arcs[(t + 2) % 4] = e;
            crossings[c2].arcs[t] = p;
        }
        Ok(Diagram::with_free_loops(crossings, self.free_loops))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{figure_eight, trefoil};
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn kink_on_unknot_and_back() {
        for kink in Kink::ALL {
            let d = Diagram::unknot()
                .apply_move(Move::R1Add { arc: 0, kink })
                .unwrap();
            assert_eq!(d.crossing_count(), 1);
            assert!(d.validate().is_valid(), "{kink:?}: {:?}", d.validate());
            assert!(d.is_knot());
            assert_eq!(d.writhe(), kink.sign.value());
            let back = d.apply_move(Move::R1Remove { crossing: 0 }).unwrap();
            assert_eq!(back, Diagram::unknot());
        }
    }

    #[test]
    fn kinks_on_trefoil_stay_valid() {
        let t = trefoil();
        for arc in 1..=6 {
            for kink in Kink::ALL {
                let d = t.apply_move(Move::R1Add { arc, kink }).unwrap();
                assert!(d.validate().is_valid());
                assert_eq!(d.crossing_count(), 4);
                let back = d.apply_move(Move::R1Remove { crossing: 3 }).unwrap();
                assert!(back.isomorphic(&t));
            }
        }
    }

    #[test]
    fn r2_add_then_remove_restores() {
        let t = figure_eight();
        let mut checked = 0;
        for mv in t.available_moves() {
            if let Move::R2Add { .. } = mv {
                let d = t.apply_move(mv).unwrap();
                assert!(d.validate().is_valid(), "{mv:?}: {:?}", d.validate());
                assert_eq!(d.crossing_count(), 6);
                assert!(d.is_knot());
                let undo = d
                    .available_moves()
                    .into_iter()
                    .filter(|m| matches!(m, Move::R2Remove { .. }))
                    .map(|m| d.apply_move(m).unwrap())
                    .any(|u| u.isomorphic(&t));
                assert!(undo, "{mv:?}");
                checked += 1;
            }
        }
        assert!(checked > 20);
    }

    #[test]
    fn r3_keeps_validity_and_writhe() {
        let mut rng = StdRng::seed_from_u64(7);
        let mut found = 0;
        for (_, d) in trefoil().random_walk(60, 12, &mut rng) {
            for mv in d.available_moves() {
                if let Move::R3 { .. } = mv {
                    let e = d.apply_move(mv).unwrap();
                    assert!(e.validate().is_valid());
                    assert_eq!(e.crossing_count(), d.crossing_count());
                    assert_eq!(e.writhe(), d.writhe());
                    found += 1;
                }
            }
        }
        assert!(found > 0);
    }

    #[test]
    fn inapplicable_sites_rejected() {
        let t = trefoil();
        assert!(matches!(
            t.apply_move(Move::R1Remove { crossing: 0 }),
            Err(Error::MoveNotApplicable(_))
        ));
        assert!(t.apply_move(Move::R2Remove { face: 0 }).is_err());
        assert!(t.apply_move(Move::R3 { face: 99 }).is_err());
        assert!(t
            .apply_move(Move::R2Add {
                finger: (0, 0),
                target: (0, 0),
                finger_over: true
            })
            .is_err());
    }

    #[test]
    fn random_walks_stay_valid() {
        let mut rng = StdRng::seed_from_u64(1);
        for (mv, d) in figure_eight().random_walk(200, 14, &mut rng) {
            let r = d.validate();
            assert!(r.is_valid(), "{mv:?} -> {:?}", r.issues);
            assert!(d.is_knot());
        }
    }
}
