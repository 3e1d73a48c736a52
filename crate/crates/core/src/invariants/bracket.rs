//! Kauffman bracket: a brute-force state sum and a frontier contraction.
//!
//! At `X[a,b,c,d]` the A-smoothing joins `a`-`b` and `c`-`d`; the
//! B-smoothing joins `a`-`d` and `b`-`c`.

use std::collections::HashMap;

use crate::diagram::{ArcId, Diagram};
use crate::error::{Error, Result};
use crate::poly::LaurentPoly;
use crate::union_find::UnionFind;

pub const BRUTE_FORCE_LIMIT: usize = 20;

const A_PAIRS: [(usize, usize); 2] = [(0, 1), (2, 3)];
const B_PAIRS: [(usize, usize); 2] = [(0, 3), (1, 2)];

/// `-A^2 - A^-2`.
pub fn delta() -> LaurentPoly {
    LaurentPoly::from_pairs([(2, -1), (-2, -1)])
}

fn arc_index(d: &Diagram) -> HashMap<ArcId, usize> {
    let mut idx = HashMap::new();
    for c in d.crossings() {
        for &a in &c.arcs {
            let n = idx.len();
            idx.entry(a).or_insert(n);
        }
    }
    idx
}

/// Sums `A^(a-b) δ^(loops-1)` over all `2^n` states.
pub fn bracket_bruteforce(d: &Diagram) -> Result<LaurentPoly> {
    let n = d.crossing_count();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            crossings: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let idx = arc_index(d);
    let arcs: Vec<[usize; 4]> = d.crossings().iter().map(|c| c.arcs.map(|a| idx[&a])).collect();
    // (exponent, loops) -> number of states
    let mut tally: HashMap<(i64, usize), i64> = HashMap::new();
    for state in 0u64..(1u64 << n) {
        let mut uf = UnionFind::new(idx.len());
        let mut exp = 0i64;
        for (k, c) in arcs.iter().enumerate() {
            let pairs = if state >> k & 1 == 0 {
                exp += 1;
                A_PAIRS
            } else {
                exp -= 1;
                B_PAIRS
            };
            for (p, q) in pairs {
                uf.union(c[p], c[q]);
            }
        }
        *tally.entry((exp, uf.set_count() + d.free_loops())).or_default() += 1;
    }
    let dl = delta();
    let mut out = LaurentPoly::zero();
    for ((exp, loops), count) in tally {
        out += &(&LaurentPoly::monomial(exp, count) * &dl.pow(loops as u32 - 1));
    }
    Ok(out)
}

/// Greedy order: repeatedly absorb the crossing leaving the smallest
/// frontier, lowest index first on ties.
pub fn contraction_order(d: &Diagram) -> Vec<usize> {
    let n = d.crossing_count();
    let mut absorbed_ends: HashMap<ArcId, u8> = HashMap::new();
    let mut done = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut frontier = 0i64;
    for _ in 0..n {
        let mut best: Option<(i64, usize)> = None;
        for (i, c) in d.crossings().iter().enumerate() {
            if done[i] {
                continue;
            }
            let mut delta = 0i64;
            let mut local: HashMap<ArcId, u8> = HashMap::new();
            for &a in &c.arcs {
                *local.entry(a).or_default() += 1;
            }
            for (a, k) in local {
                let before = absorbed_ends.get(&a).copied().unwrap_or(0);
                let after = before + k;
                delta += i64::from(after == 1) - i64::from(before == 1);
            }
            if best.is_none_or(|(b, _)| frontier + delta < b) {
                best = Some((frontier + delta, i));
            }
        }
        let (size, i) = best.expect("crossings remain");
        done[i] = true;
        frontier = size;
        for &a in &d.crossings()[i].arcs {
            *absorbed_ends.entry(a).or_default() += 1;
        }
        order.push(i);
    }
    order
}

type Matching = Vec<(u32, u32)>;

/// Joins an edge into a set of paths given by their endpoint pairing.
/// Returns true when the edge closes a loop.
fn join(partner: &mut HashMap<u32, u32>, u: u32, v: u32) -> bool {
    if u == v {
        return true;
    }
    match (partner.get(&u).copied(), partner.get(&v).copied()) {
        (Some(pu), Some(pv)) => {
            partner.remove(&u);
            partner.remove(&v);
            if pu == v {
                return true;
            }
            partner.insert(pu, pv);
            partner.insert(pv, pu);
        }
        (Some(pu), None) => {
            partner.remove(&u);
            partner.insert(pu, v);
            partner.insert(v, pu);
        }
        (None, Some(pv)) => {
            partner.remove(&v);
            partner.insert(pv, u);
            partner.insert(u, pv);
        }
        (None, None) => {
            partner.insert(u, v);
            partner.insert(v, u);
        }
    }
    false
}

/// Absorbs crossings one at a time, keeping a map from the pairing of
/// frontier arcs to the accumulated coefficient.
pub fn bracket_contract(d: &Diagram) -> LaurentPoly {
    let dl = delta();
    if d.is_crossingless() {
        return dl.pow(d.free_loops() as u32 - 1);
    }
    let idx = arc_index(d);
    let mut powers = vec![LaurentPoly::one()];
    let mut states: HashMap<Matching, LaurentPoly> = HashMap::new();
    states.insert(Vec::new(), LaurentPoly::one());
    for i in contraction_order(d) {
        let arcs = d.crossings()[i].arcs.map(|a| idx[&a] as u32);
        let mut next: HashMap<Matching, LaurentPoly> = HashMap::with_capacity(states.len() * 2);
        for (key, coef) in &states {
            for (shift, pairs) in [(1, A_PAIRS), (-1, B_PAIRS)] {
                let mut partner: HashMap<u32, u32> = HashMap::with_capacity(key.len() * 2 + 4);
                for &(u, v) in key {
                    partner.insert(u, v);
                    partner.insert(v, u);
                }
                let mut loops = 0;
                for (p, q) in pairs {
                    loops += usize::from(join(&mut partner, arcs[p], arcs[q]));
                }
                let mut new_key: Matching = partner.into_iter().filter(|(u, v)| u < v).collect();
                new_key.sort_unstable();
                while powers.len() <= loops {
                    let last = powers.last().unwrap() * &dl;
                    powers.push(last);
                }
                let term = &coef.shift(shift) * &powers[loops];
                *next.entry(new_key).or_default() += &term;
            }
        }
        next.retain(|_, p| !p.is_zero());
        states = next;
    }
    let total = states.remove(&Vec::new()).unwrap_or_default();
    debug_assert!(states.is_empty());
    let total = &total * &dl.pow(d.free_loops() as u32);
    total
        .div_exact(&dl)
        .expect("closed diagram has at least one loop")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{figure_eight, trefoil, Crossing, Kink, Move};

    #[test]
    fn unknot_and_kink() {
        assert!(bracket_bruteforce(&Diagram::unknot()).unwrap().is_one());
        let kink = Diagram::new(vec![Crossing::positive(1, 1, 2, 2)]);
        let minus_a3 = LaurentPoly::monomial(3, -1);
        assert_eq!(bracket_bruteforce(&kink).unwrap(), minus_a3);
        assert_eq!(bracket_contract(&kink), minus_a3);
    }

    #[test]
    fn two_free_loops() {
        let d = Diagram::with_free_loops(vec![], 2);
        assert_eq!(bracket_bruteforce(&d).unwrap(), delta());
        assert_eq!(bracket_contract(&d), delta());
    }

    #[test]
    fn trefoil_bracket() {
        // Left-handed trefoil: A^7 - A^3 - A^-5.
        let expect = LaurentPoly::from_pairs([(7, 1), (3, -1), (-5, -1)]);
        assert_eq!(bracket_bruteforce(&trefoil()).unwrap(), expect);
        assert_eq!(bracket_contract(&trefoil()), expect);
    }

    #[test]
    fn engines_agree_on_kinked_diagrams() {
        let mut d = figure_eight();
        for (k, kink) in Kink::ALL.iter().enumerate() {
            d = d
                .apply_move(Move::R1Add {
                    arc: 1 + k as i64,
                    kink: *kink,
                })
                .unwrap();
            assert_eq!(bracket_bruteforce(&d).unwrap(), bracket_contract(&d));
        }
    }

    #[test]
    fn guard() {
        let big = Diagram::new(
            (0..21)
                .map(|i| Crossing::positive(2 * i + 1, 2 * i + 1, 2 * i + 2, 2 * i + 2))
                .collect(),
        );
        assert!(matches!(
            bracket_bruteforce(&big),
            Err(Error::TooLarge { crossings: 21, .. })
        ));
    }

    #[test]
    fn order_is_a_permutation() {
        let mut o = contraction_order(&figure_eight());
        o.sort();
        assert_eq!(o, vec![0, 1, 2, 3]);
    }
}
