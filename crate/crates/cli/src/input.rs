use std::io::Read;
use std::path::Path;

use knotsym::analysis::Source;
use knotsym::{Diagram, DiagramFile, Result};

/// A diagram with whatever symmetry data its source carried.
pub struct Loaded {
    pub diagram: Diagram,
    pub rho: Option<Vec<usize>>,
    pub partial: Option<Diagram>,
}

impl From<DiagramFile> for Loaded {
    fn from(f: DiagramFile) -> Self {
        Self {
            diagram: f.diagram,
            rho: f.rho,
            partial: f.partial,
        }
    }
}

fn is_pd_text(text: &str) -> bool {
    let body: String = text
        .lines()
        .map(|l| l.split('#').next().unwrap())
        .collect::<Vec<_>>()
        .join(" ");
    let body = body.trim_start();
    body.is_empty() || body.starts_with("X[")
}

/// Reads `-` (standard input), a PD file, or any batch-style spec.
pub fn load(spec: &str) -> Result<Loaded> {
    if spec == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        return Ok(text.parse::<DiagramFile>()?.into());
    }
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path)?;
        if is_pd_text(&text) {
            return Ok(text.parse::<DiagramFile>()?.into());
        }
    }
    let built = Source::parse(spec, Path::new("."))?.build()?;
    Ok(Loaded {
        diagram: built.diagram,
        rho: built.rho,
        partial: built.partial,
    })
}
