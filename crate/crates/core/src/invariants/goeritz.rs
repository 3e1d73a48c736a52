//! Goeritz matrix from a checkerboard coloring.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use super::matrix::determinant;
use crate::diagram::{Diagram, Slot};
use crate::error::{Error, Result};

/// Goeritz form on the white faces, with the row and column of the first
/// white face already deleted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoeritzMatrix {
    pub entries: Vec<Vec<i64>>,
}

impl GoeritzMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..n).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn determinant(&self) -> BigInt {
        let m = self
            .entries
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        determinant(m)
    }

    pub fn abs_determinant(&self) -> u64 {
        u64::try_from(self.determinant().abs()).expect("determinant exceeds u64")
    }
}

/// Face index of every dart, and a two-coloring of the faces.
fn colored_faces(d: &Diagram) -> Result<(HashMap<Slot, usize>, Vec<u8>)> {
    let faces = d.faces();
    let mut face_of = HashMap::new();
    for (f, darts) in faces.iter().enumerate() {
        for &dart in darts {
            face_of.insert(dart, f);
        }
    }
    let ends = d.arc_ends();
    let mut adj = vec![Vec::new(); faces.len()];
    for slots in ends.values() {
        if let [x, y] = slots[..] {
            let (f, g) = (face_of[&x], face_of[&y]);
            adj[f].push(g);
            adj[g].push(f);
        }
    }
    let mut color = vec![u8::MAX; faces.len()];
    for start in 0..faces.len() {
        if color[start] != u8::MAX {
            continue;
        }
        color[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(f) = queue.pop_front() {
            for &g in &adj[f] {
                if color[g] == u8::MAX {
                    color[g] = 1 - color[f];
                    queue.push_back(g);
                } else if color[g] == color[f] {
                    return Err(Error::Internal("checkerboard coloring failed".into()));
                }
            }
        }
    }
    Ok((face_of, color))
}

pub fn goeritz(d: &Diagram) -> Result<GoeritzMatrix> {
    d.ensure_knot()?;
    if d.is_crossingless() {
        return Ok(GoeritzMatrix { entries: Vec::new() });
    }
    let (face_of, color) = colored_faces(d)?;
    let mut white: Vec<usize> = (0..color.len()).filter(|&f| color[f] == 0).collect();
    white.sort_unstable();
    let pos: HashMap<usize, usize> = white.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let n = white.len();
    let mut g = vec![vec![0i64; n]; n];
    for c in 0..d.crossing_count() {
        // Corner k lies between slots k and k+1.
        let corner = |k: usize| face_of[&(c, k)];
        let (eta, f, h) = if color[corner(1)] == 0 {
            (1, corner(1), corner(3))
        } else {
            (-1, corner(0), corner(2))
        };
        if f == h {
            continue;
        }
        let (i, j) = (pos[&f], pos[&h]);
        g[i][j] -= eta;
        g[j][i] -= eta;
        g[i][i] += eta;
        g[j][j] += eta;
    }
    g.remove(0);
    for row in &mut g {
        row.remove(0);
    }
    Ok(GoeritzMatrix { entries: g })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{figure_eight, trefoil};

    #[test]
    fn small_knots() {
        let t = goeritz(&trefoil()).unwrap();
        assert!(t.is_symmetric());
        assert_eq!(t.abs_determinant(), 3);
        assert_eq!(goeritz(&figure_eight()).unwrap().abs_determinant(), 5);
        assert_eq!(goeritz(&Diagram::unknot()).unwrap().abs_determinant(), 1);
    }
}
