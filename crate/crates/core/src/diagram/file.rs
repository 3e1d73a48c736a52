use std::fmt;
use std::path::Path;
use std::str::FromStr;

use super::{parse_pd, Diagram};
use crate::error::{Error, ParseError, Result};

/// A diagram on disk: PD text plus optional `# key: value` annotations.
///
/// Recognised keys are `free_loops`, `rho` (a crossing involution, one
/// 0-based index per crossing) and `partial` (PD text of the partial knot).
/// Other comment lines are ignored, so any annotated file is also plain PD.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramFile {
    pub diagram: Diagram,
    pub rho: Option<Vec<usize>>,
    pub partial: Option<Diagram>,
}

impl DiagramFile {
    pub fn plain(diagram: Diagram) -> Self {
        Self {
            diagram,
            rho: None,
            partial: None,
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        std::fs::read_to_string(path)?.parse()
    }
}

impl FromStr for DiagramFile {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (mut rho, mut partial, mut loops) = (None, None, 0);
        for (ln, line) in text.lines().enumerate() {
            let Some((_, note)) = line.split_once('#') else {
                continue;
            };
            let Some((key, value)) = note.split_once(':') else {
                continue;
            };
            let at = |msg: String| Error::Parse(ParseError::new(ln + 1, 1, msg));
            match key.trim() {
                "rho" => {
                    let v: std::result::Result<Vec<usize>, _> =
                        value.split_whitespace().map(str::parse).collect();
                    rho = Some(v.map_err(|_| at(format!("bad rho list {:?}", value.trim())))?);
                }
                "partial" => partial = Some(parse_pd(value)?),
                "free_loops" => {
                    loops = value
                        .trim()
                        .parse()
                        .map_err(|_| at(format!("bad loop count {:?}", value.trim())))?;
                }
                _ => {}
            }
        }
        let d = parse_pd(text)?;
        let diagram = Diagram::with_free_loops(d.crossings().to_vec(), d.free_loops() + loops);
        if let Some(r) = &rho {
            if r.len() != diagram.crossing_count() {
                return Err(Error::InvalidDiagram(vec![format!(
                    "rho has {} entries for {} crossings",
                    r.len(),
                    diagram.crossing_count()
                )]));
            }
        }
        Ok(Self {
            diagram,
            rho,
            partial,
        })
    }
}

impl fmt::Display for DiagramFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = &self.diagram;
        let extra = if d.is_crossingless() {
            d.free_loops().saturating_sub(1)
        } else {
            d.free_loops()
        };
        if extra > 0 {
            writeln!(f, "# free_loops: {extra}")?;
        }
        if let Some(r) = &self.rho {
            let s: Vec<String> = r.iter().map(usize::to_string).collect();
            writeln!(f, "# rho: {}", s.join(" "))?;
        }
        if let Some(p) = &self.partial {
            writeln!(f, "# partial: {p}")?;
        }
        writeln!(f, "{d}")
    }
}
