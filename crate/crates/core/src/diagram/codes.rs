//! Text codes: PD (`X[a,b,c,d]` terms), Dowker-Thistlethwaite and Gauss.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use super::{ArcId, Crossing, Diagram, Sign};
use crate::error::{Error, ParseError, Result};

/// DT realisation enumerates planar embeddings, so it is capped.
pub const DT_MAX_CROSSINGS: usize = 22;

impl Diagram {
    /// `X[a,b,c,d]` terms separated by spaces.
    pub fn to_pd_string(&self) -> String {
        self.crossings
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn to_gauss(&self) -> GaussCode {
        let heads = self.head_map();
        let components = self
            .component_arcs()
            .into_iter()
            .map(|arcs| {
                arcs.iter()
                    .map(|a| {
                        let (c, s) = heads[a];
                        GaussEntry {
                            crossing: c + 1,
                            over: s % 2 == 1,
                            sign: self.crossings[c].sign,
                        }
                    })
                    .collect()
            })
            .collect();
        GaussCode { components }
    }

    /// DT code read from the smallest arc along the orientation. An even
    /// entry is negative when that passage goes under.
    pub fn to_dt(&self) -> Result<DtCode> {
        self.ensure_knot()?;
        if self.is_crossingless() {
            return Ok(DtCode(Vec::new()));
        }
        let gauss = self.to_gauss();
        let seq = &gauss.components[0];
        let n = self.crossings.len();
        let mut odd = vec![0usize; n];
        let mut even = vec![(0usize, false); n];
        for (i, e) in seq.iter().enumerate() {
            let label = i + 1;
            if label % 2 == 1 {
                odd[e.crossing - 1] = label;
            } else {
                even[e.crossing - 1] = (label, e.over);
            }
        }
        if odd.contains(&0) || even.iter().any(|&(e, _)| e == 0) {
            return Err(Error::Internal(
                "crossing visited twice with the same parity (non-planar code)".into(),
            ));
        }
        let mut pairs: Vec<(usize, i64)> = (0..n)
            .map(|c| {
                let (e, over) = even[c];
                (odd[c], if over { e as i64 } else { -(e as i64) })
            })
            .collect();
        pairs.sort_unstable();
        Ok(DtCode(pairs.into_iter().map(|(_, e)| e).collect()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GaussEntry {
    /// 1-based crossing id.
    pub crossing: usize,
    pub over: bool,
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaussCode {
    pub components: Vec<Vec<GaussEntry>>,
}

impl GaussCode {
    /// Each crossing label appears exactly twice, once over and once under.
    pub fn is_well_formed(&self) -> bool {
        let mut seen: HashMap<usize, (usize, usize)> = HashMap::new();
        for e in self.components.iter().flatten() {
            let s = seen.entry(e.crossing).or_default();
            if e.over {
                s.0 += 1
            } else {
                s.1 += 1
            }
        }
        seen.values().all(|&v| v == (1, 1))
    }
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| {
                c.iter()
                    .map(|e| {
                        if e.over {
                            format!("{}", e.crossing)
                        } else {
                            format!("-{}", e.crossing)
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "{}", parts.join(" | "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DtCode(pub Vec<i64>);

impl fmt::Display for DtCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "dt:({})", parts.join(" "))
    }
}

impl DtCode {
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let body = t.strip_prefix("dt:").unwrap_or(t).trim();
        let col0 = text.find(body).unwrap_or(0) + 1;
        let inner = body
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .or_else(|| body.strip_prefix('[').and_then(|b| b.strip_suffix(']')))
            .ok_or_else(|| ParseError::new(1, col0, "expected dt:( ... )"))?;
        let mut out = Vec::new();
        for tok in inner.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let col = text.find(tok).unwrap_or(0) + 1;
            let v: i64 = tok
                .parse()
                .map_err(|_| ParseError::new(1, col, format!("bad DT entry '{tok}'")))?;
            if v == 0 || v % 2 != 0 {
                return Err(
                    ParseError::new(1, col, format!("DT entry {v} is not a nonzero even integer")).into(),
                );
            }
            out.push(v);
        }
        let n = out.len() as i64;
        let mut seen = vec![false; out.len()];
        for &v in &out {
            let k = v.abs();
            if k > 2 * n {
                return Err(ParseError::new(1, col0, format!("DT entry {v} out of range")).into());
            }
            let idx = (k / 2 - 1) as usize;
            if seen[idx] {
                return Err(ParseError::new(1, col0, format!("DT entry {v} repeated")).into());
            }
            seen[idx] = true;
        }
        Ok(DtCode(out))
    }

    /// Realises the code as a planar diagram. Among the two mirror-image
    /// embeddings the one whose first crossing has the form
    /// `X[u, o, u+1, o+1]` is returned; arcs are numbered so that arc `k`
    /// enters passage `k`.
    pub fn to_diagram(&self) -> Result<Diagram> {
        let n = self.0.len();
        if n == 0 {
            return Ok(Diagram::unknot());
        }
        if n > DT_MAX_CROSSINGS {
            return Err(Error::TooLarge {
                crossings: n,
                limit: DT_MAX_CROSSINGS,
            });
        }
        let m = 2 * n as i64;
        let next = |p: i64| if p == m { 1 } else { p + 1 };
        // (under passage, over passage) per crossing, ordered by odd label.
        let pairs: Vec<(i64, i64)> = self
            .0
            .iter()
            .enumerate()
            .map(|(i, &e)| {
                let odd = 2 * i as i64 + 1;
                if e > 0 {
                    (odd, e)
                } else {
                    (-e, odd)
                }
            })
            .collect();
        let build = |bits: u64| -> Diagram {
            let cs = pairs
                .iter()
                .enumerate()
                .map(|(i, &(u, o))| {
                    if bits >> i & 1 == 0 {
                        Crossing::negative(u, o, next(u), next(o))
                    } else {
                        Crossing::positive(u, next(o), next(u), o)
                    }
                })
                .collect();
            Diagram::new(cs)
        };
        for bits in 0..(1u64 << (n - 1)) {
            let d = build(bits << 1);
            if d.faces().len() == n + 2 {
                return Ok(d);
            }
        }
        Err(Error::InvalidDiagram(vec![format!(
            "DT code {self} is not realisable in the plane"
        )]))
    }
}

pub fn parse_dt(text: &str) -> Result<Diagram> {
    DtCode::parse(text)?.to_diagram()
}

/// Parses whitespace/comma separated `X[a,b,c,d]` terms; `#` starts a comment.
///
/// Plain PD text carries no crossing signs. They are recovered from the
/// under-strand directions; a component that never passes under falls back
/// to the usual label convention (positive when `b = d + 1` or `d - b > 1`).
pub fn parse_pd(text: &str) -> Result<Diagram> {
    let mut raw: Vec<[ArcId; 4]> = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line_no = ln + 1;
        let content = line.split('#').next().unwrap_or("");
        let bytes: Vec<char> = content.chars().collect();
        let mut i = 0;
        while i < bytes.len() {
            let ch = bytes[i];
            if ch.is_whitespace() || ch == ',' {
                i += 1;
                continue;
            }
            let col = i + 1;
            if ch != 'X' {
                return Err(ParseError::new(line_no, col, format!("unexpected '{ch}'")).into());
            }
            if bytes.get(i + 1) != Some(&'[') {
                return Err(ParseError::new(line_no, col + 1, "expected '['").into());
            }
            let close = bytes[i..]
                .iter()
                .position(|&c| c == ']')
                .map(|p| p + i)
                .ok_or_else(|| ParseError::new(line_no, col, "unterminated crossing"))?;
            let inner: String = bytes[i + 2..close].iter().collect();
            let nums: Vec<&str> = inner
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .collect();
            if nums.len() != 4 {
                return Err(ParseError::new(
                    line_no,
                    col,
                    format!("arity: crossing has {} arcs, expected 4", nums.len()),
                )
                .into());
            }
            let mut arcs = [0; 4];
            for (k, s) in nums.iter().enumerate() {
                arcs[k] = s
                    .parse()
                    .map_err(|_| ParseError::new(line_no, col, format!("bad arc label '{s}'")))?;
            }
            raw.push(arcs);
            i = close + 1;
        }
    }
    let signs = infer_signs(&raw);
    Ok(Diagram::new(
        raw.into_iter()
            .zip(signs)
            .map(|(arcs, sign)| Crossing::new(arcs, sign))
            .collect(),
    ))
}

fn infer_signs(raw: &[[ArcId; 4]]) -> Vec<Sign> {
    let mut ends: BTreeMap<ArcId, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, c) in raw.iter().enumerate() {
        for (s, &a) in c.iter().enumerate() {
            ends.entry(a).or_default().push((i, s));
        }
    }
    let mut sign: Vec<Option<Sign>> = vec![None; raw.len()];
    // Arc ends known to be outgoing at (crossing, slot).
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    let other = |a: ArcId, at: (usize, usize)| -> Option<(usize, usize)> {
        let e = ends.get(&a)?;
        if e.len() != 2 {
            return None;
        }
        Some(if e[0] == at { e[1] } else { e[0] })
    };
    for i in 0..raw.len() {
        queue.push_back((i, 0)); // incoming under-strand
        queue.push_back((i, 2)); // outgoing under-strand
    }
    let mut fallback = 0;
    loop {
        while let Some((c, s)) = queue.pop_front() {
            let incoming = match s {
                0 => true,
                2 => false,
                _ => match sign[c] {
                    Some(Sign::Positive) => s == 3,
                    Some(Sign::Negative) => s == 1,
                    None => continue,
                },
            };
            let Some((c2, s2)) = other(raw[c][s], (c, s)) else {
                continue;
            };
            if s2 % 2 == 1 && sign[c2].is_none() {
                // The far end has the opposite direction.
                let over_in_at_far = !incoming;
                sign[c2] = Some(match (s2, over_in_at_far) {
                    (3, true) | (1, false) => Sign::Positive,
                    _ => Sign::Negative,
                });
                queue.push_back((c2, 1));
                queue.push_back((c2, 3));
            }
        }
        while fallback < raw.len() && sign[fallback].is_some() {
            fallback += 1;
        }
        if fallback == raw.len() {
            break;
        }
        let [_, b, _, d] = raw[fallback];
        sign[fallback] = Some(if b == d + 1 || d - b > 1 {
            Sign::Positive
        } else {
            Sign::Negative
        });
        queue.push_back((fallback, 1));
        queue.push_back((fallback, 3));
    }
    sign.into_iter().map(|s| s.unwrap_or(Sign::Positive)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::trefoil;

    #[test]
    fn trefoil_dt_is_4_6_2() {
        assert_eq!(trefoil().to_dt().unwrap(), DtCode(vec![4, 6, 2]));
        assert_eq!(trefoil().to_dt().unwrap().to_string(), "dt:(4 6 2)");
    }

    #[test]
    fn dt_decodes_to_standard_trefoil() {
        let d = parse_dt("dt:(4 6 2)").unwrap();
        assert!(d.validate().is_valid());
        assert!(d.isomorphic(&trefoil()));
        let mut cs = d.crossings().to_vec();
        cs.sort();
        let mut expected = trefoil().crossings().to_vec();
        expected.sort();
        assert_eq!(cs, expected);
    }

    #[test]
    fn dt_parse_errors() {
        assert!(DtCode::parse("dt:(4 5 2)").is_err());
        assert!(DtCode::parse("dt:(4 4 2)").is_err());
        assert!(DtCode::parse("dt:(4 16 2)").is_err());
        assert!(DtCode::parse("dt 4 6 2").is_err());
        assert_eq!(DtCode::parse("dt:[4, 6, 2]").unwrap(), DtCode(vec![4, 6, 2]));
        assert_eq!(parse_dt("dt:()").unwrap(), Diagram::unknot());
    }

    #[test]
    fn dt_rejected_on_links() {
        let hopf = Diagram::new(vec![
            Crossing::positive(1, 3, 2, 4),
            Crossing::positive(2, 4, 1, 3),
        ]);
        assert!(matches!(hopf.to_dt(), Err(Error::NotAKnot { components: 2 })));
    }

    #[test]
    fn pd_parse_and_emit() {
        let text = "# trefoil\nX[1,4,2,5] X[3,6,4,1],\n X[5, 2, 6, 3]  # done\n";
        let d = parse_pd(text).unwrap();
        assert_eq!(d, trefoil());
        assert_eq!(parse_pd(&d.to_pd_string()).unwrap(), d);
        assert_eq!(parse_pd("").unwrap(), Diagram::unknot());
    }

    #[test]
    fn pd_arity_error_has_position() {
        let err = parse_pd("X[1,4,2,5]\n  X[1,2,3]").unwrap_err();
        match err {
            Error::Parse(p) => {
                assert_eq!((p.line, p.column), (2, 3));
                assert!(p.message.contains("arity"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_pd("Y[1,2,3,4]").is_err());
        assert!(parse_pd("X[1,2,3,a]").is_err());
    }

    #[test]
    fn signs_recovered_from_under_strands() {
        let m = trefoil().mirror();
        let back = parse_pd(&m.to_pd_string()).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.writhe(), 3);
    }

    #[test]
    fn gauss_code_well_formed() {
        let g = trefoil().to_gauss();
        assert!(g.is_well_formed());
        assert_eq!(g.to_string(), "-1 3 -2 1 -3 2");
    }
}
