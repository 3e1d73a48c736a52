use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::diagram::{ArcId, Crossing, Diagram};
use crate::error::{Error, ParseError, Result};

/// A braid word; letter `i` is `σ_|i|` with the sign of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i64>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i64>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::Braid(format!("need at least 2 strands, got {strands}")));
        }
        if let Some(&bad) = letters
            .iter()
            .find(|&&l| l == 0 || l.unsigned_abs() as usize >= strands)
        {
            return Err(Error::Braid(format!(
                "letter {bad} out of range for {strands} strands"
            )));
        }
        Ok(Self { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i64] {
        &self.letters
    }

    /// `w^n`.
    pub fn repeat(&self, n: usize) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.repeat(n),
        }
    }

    /// Where each starting position ends up.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize;
            at.swap(i - 1, i);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &strand) in at.iter().enumerate() {
            perm[strand] = pos;
        }
        perm
    }

    pub fn closure(&self) -> Diagram {
        braid_closure(self)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "braid:{}:", self.strands)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

/// Parses `braid:3: 1 -2 1 -2`; the `braid:` prefix is optional.
impl FromStr for BraidWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim();
        let body = body.strip_prefix("braid:").unwrap_or(body);
        let (n, rest) = body
            .split_once(':')
            .ok_or_else(|| ParseError::new(1, 1, "expected '<strands>: <letters>'"))?;
        let strands = n
            .trim()
            .parse()
            .map_err(|_| ParseError::new(1, 1, format!("bad strand count {:?}", n.trim())))?;
        let letters = rest
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| ParseError::new(1, 1, format!("bad braid letter {t:?}")))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        BraidWord::new(strands, letters)
    }
}

/// Closes the braid. Strands run upward; a positive letter puts the strand
/// coming from the left over and gives a positive crossing.
pub fn braid_closure(w: &BraidWord) -> Diagram {
    let mut next: ArcId = 1;
    let mut fresh = || {
        next += 1;
        next - 1
    };
    let start: Vec<ArcId> = (0..w.strands).map(|_| fresh()).collect();
    let mut cur = start.clone();
    let mut crossings = Vec::with_capacity(w.letters.len());
    for &l in &w.letters {
        let i = l.unsigned_abs() as usize;
        let (x, y) = (cur[i - 1], cur[i]);
        let (left, right) = (fresh(), fresh());
        crossings.push(if l > 0 {
            Crossing::positive(y, right, left, x)
        } else {
            Crossing::negative(x, y, right, left)
        });
        cur[i - 1] = left;
        cur[i] = right;
    }
    let rename: std::collections::HashMap<ArcId, ArcId> = cur
        .iter()
        .zip(&start)
        .filter(|(c, s)| c != s)
        .map(|(&c, &s)| (c, s))
        .collect();
    let free_loops = cur.iter().zip(&start).filter(|(c, s)| c == s).count();
    let d = Diagram::with_free_loops(crossings, free_loops);
    d.relabel(|a| rename.get(&a).copied().unwrap_or(a))
}

/// Closure of `(σ1 σ2^-1)^n`; a knot exactly when 3 does not divide `n`.
pub fn rosette(n: i64) -> Result<Diagram> {
    if n < 2 {
        return Err(Error::Braid(format!("rosette needs n >= 2, got {n}")));
    }
    if n % 3 == 0 {
        return Err(Error::MultiComponentRosette(n));
    }
    let w = BraidWord::new(3, vec![1, -2])?.repeat(n as usize);
    Ok(braid_closure(&w).relabel_by_traversal())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{determinant, goeritz, jones};
    use proptest::prelude::*;

    fn cycles(perm: &[usize]) -> usize {
        let mut seen = vec![false; perm.len()];
        let mut count = 0;
        for i in 0..perm.len() {
            if !seen[i] {
                count += 1;
                let mut j = i;
                while !seen[j] {
                    seen[j] = true;
                    j = perm[j];
                }
            }
        }
        count
    }

    #[test]
    fn trefoil_from_sigma_cubed() {
        let d = braid_closure(&"braid:2: 1 1 1".parse().unwrap());
        assert_eq!(d.crossing_count(), 3);
        assert!(d.validate().is_valid());
        assert!(d.is_knot());
        assert_eq!(d.writhe(), 3);
        assert_eq!(goeritz(&d).unwrap().abs_determinant(), 3);
        // Right-handed: V = t + t^3 - t^4.
        let v = jones(&d).unwrap().jones_in_t();
        assert_eq!(v, crate::poly::LaurentPoly::from_pairs([(1, 1), (3, 1), (4, -1)]));
    }

    #[test]
    fn empty_word_is_unlink() {
        let d = braid_closure(&BraidWord::new(3, vec![]).unwrap());
        assert_eq!(d.component_count(), 3);
        assert!(d.is_crossingless());
    }

    #[test]
    fn untouched_strand_is_free_loop() {
        let d = braid_closure(&BraidWord::new(3, vec![1, 1]).unwrap());
        assert_eq!(d.free_loops(), 1);
        assert_eq!(d.component_count(), 3);
    }

    #[test]
    fn rosettes() {
        assert!(matches!(rosette(3), Err(Error::MultiComponentRosette(3))));
        assert!(matches!(rosette(6), Err(Error::MultiComponentRosette(6))));
        assert!(rosette(1).is_err());
        let fe = rosette(2).unwrap();
        assert_eq!(determinant(&fe).unwrap(), 5);
        assert_eq!(goeritz(&fe).unwrap().abs_determinant(), 5);
        let r5 = rosette(5).unwrap();
        assert_eq!(r5.crossing_count(), 10);
        assert_eq!(determinant(&r5).unwrap(), 121);
        assert!(jones(&r5).unwrap().is_palindromic());
    }

    #[test]
    fn parse_errors() {
        assert!("braid:1: ".parse::<BraidWord>().is_err());
        assert!("braid:3: 1 3".parse::<BraidWord>().is_err());
        assert!("braid:3: 1 0".parse::<BraidWord>().is_err());
        assert!("braid:x: 1".parse::<BraidWord>().is_err());
        let w: BraidWord = "braid:3: 1 -2 1 -2".parse().unwrap();
        assert_eq!(w.to_string(), "braid:3: 1 -2 1 -2");
    }

    proptest! {
        #[test]
        fn components_follow_permutation(strands in 2usize..6, raw in proptest::collection::vec(-5i64..6, 0..12)) {
            let letters: Vec<i64> = raw
                .into_iter()
                .filter(|&l| l != 0 && (l.unsigned_abs() as usize) < strands)
                .collect();
            let w = BraidWord::new(strands, letters).unwrap();
            let d = braid_closure(&w);
            prop_assert!(d.validate().is_valid());
            prop_assert_eq!(d.component_count(), cycles(&w.permutation()));
            prop_assert_eq!(d.crossing_count(), w.letters().len());
        }
    }
}
