//! Alexander polynomial from the Wirtinger presentation.

use std::collections::HashMap;

use num_traits::{One, Signed};
use serde::Serialize;

use super::matrix::determinant;
use crate::diagram::{Diagram, Sign};
use crate::error::{Error, Result};
use crate::poly::LaurentPoly;
use crate::union_find::UnionFind;

/// Δ(t) in symmetric form with Δ(1) = 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AlexanderResult {
    pub delta: LaurentPoly,
}

impl AlexanderResult {
    /// |Δ(-1)|.
    pub fn determinant(&self) -> u64 {
        let v = self.delta.eval(-1).abs();
        u64::try_from(v).expect("determinant exceeds u64")
    }
}

/// The Alexander matrix: one row per crossing, one column per over-arc.
/// Entries are polynomials in `t` with non-negative exponents.
pub fn alexander_matrix(d: &Diagram) -> Vec<Vec<LaurentPoly>> {
    let mut ids: HashMap<i64, usize> = HashMap::new();
    for c in d.crossings() {
        for &a in &c.arcs {
            let n = ids.len();
            ids.entry(a).or_insert(n);
        }
    }
    let mut uf = UnionFind::new(ids.len());
    for c in d.crossings() {
        uf.union(ids[&c.arcs[1]], ids[&c.arcs[3]]);
    }
    let mut gens: HashMap<usize, usize> = HashMap::new();
    let mut gen = |a: i64, uf: &mut UnionFind| -> usize {
        let root = uf.find(ids[&a]);
        let n = gens.len();
        *gens.entry(root).or_insert(n)
    };
    let n = d.crossing_count();
    let mut m = vec![vec![LaurentPoly::zero(); n]; n];
    let t = LaurentPoly::monomial(1, 1);
    let one_minus_t = &LaurentPoly::one() - &t;
    for (row, c) in d.crossings().iter().enumerate() {
        let [a, b, cc, _] = c.arcs;
        let (inc, out) = match c.sign {
            Sign::Positive => (t.clone(), LaurentPoly::constant(-1)),
            Sign::Negative => (LaurentPoly::constant(-1), t.clone()),
        };
        let (go, ga, gc) = (gen(b, &mut uf), gen(a, &mut uf), gen(cc, &mut uf));
        m[row][go] += &one_minus_t;
        m[row][ga] += &inc;
        m[row][gc] += &out;
    }
    assert!(gens.len() <= n, "more over-arcs than crossings");
    m
}

/// Multiplies by a unit `±t^k` so the result is symmetric with value one
/// at `t = 1`.
pub fn normalize_alexander(p: &LaurentPoly) -> Result<LaurentPoly> {
    let (lo, hi) = match (p.min_exp(), p.max_exp()) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => return Err(Error::Internal("Alexander polynomial vanished".into())),
    };
    if (lo + hi) % 2 != 0 {
        return Err(Error::Internal(format!("Alexander polynomial has odd span: {p}")));
    }
    let mut q = p.shift(-(lo + hi) / 2);
    let at_one = q.eval(1);
    if at_one == -num_bigint::BigInt::one() {
        q = -q;
    } else if !at_one.is_one() {
        return Err(Error::Internal(format!(
            "Alexander polynomial has Δ(1) = {at_one}"
        )));
    }
    Ok(q)
}

pub fn alexander(d: &Diagram) -> Result<AlexanderResult> {
    d.ensure_knot()?;
    if d.is_crossingless() {
        return Ok(AlexanderResult {
            delta: LaurentPoly::one(),
        });
    }
    let mut m = alexander_matrix(d);
    m.pop();
    for row in &mut m {
        row.pop();
    }
    let delta = normalize_alexander(&determinant(m))?;
    Ok(AlexanderResult { delta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{figure_eight, trefoil};

    #[test]
    fn unknot() {
        assert!(alexander(&Diagram::unknot()).unwrap().delta.is_one());
    }

    #[test]
    fn trefoil_and_figure_eight() {
        let tr = alexander(&trefoil()).unwrap();
        assert_eq!(tr.delta, LaurentPoly::from_dense(-1, &[1, -1, 1]));
        assert_eq!(tr.determinant(), 3);
        let fe = alexander(&figure_eight()).unwrap();
        assert_eq!(fe.delta, LaurentPoly::from_dense(-1, &[-1, 3, -1]));
        assert_eq!(fe.determinant(), 5);
    }

    #[test]
    fn normalization_fixes_units() {
        let p = LaurentPoly::from_dense(3, &[-1, 1, -1]);
        assert_eq!(
            normalize_alexander(&p).unwrap(),
            LaurentPoly::from_dense(-1, &[1, -1, 1])
        );
        assert!(normalize_alexander(&LaurentPoly::from_dense(0, &[1, 1])).is_err());
    }

    #[test]
    fn rejects_links() {
        let hopf = Diagram::new(vec![
            crate::diagram::Crossing::positive(1, 3, 2, 4),
            crate::diagram::Crossing::positive(2, 4, 1, 3),
        ]);
        assert!(matches!(alexander(&hopf), Err(Error::NotAKnot { components: 2 })));
    }
}
