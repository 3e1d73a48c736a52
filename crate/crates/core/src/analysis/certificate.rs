use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::diagram::{ArcId, Diagram};

/// A crossing involution `ρ` such that switching every crossing and then
/// renaming crossing `c` to `ρ(c)` gives back the same oriented diagram up to
/// arc relabeling: the combinatorial trace of a rotation by π onto the
/// mirror image that keeps the orientation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetryCertificate {
    pub involution: Vec<usize>,
    pub sign_flip: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum CertificateFailure {
    WrongLength { expected: usize, found: usize },
    OutOfRange { crossing: usize, image: usize },
    NotInvolution { crossing: usize },
    FixedCrossing { crossing: usize },
    SignNotFlipped { crossing: usize },
    ArcConflict { arc: ArcId },
    NotBijective,
}

impl fmt::Display for CertificateFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::WrongLength { expected, found } => {
                write!(f, "involution has {found} entries for {expected} crossings")
            }
            Self::OutOfRange { crossing, image } => write!(f, "rho({crossing}) = {image} is out of range"),
            Self::NotInvolution { crossing } => write!(f, "rho(rho({crossing})) != {crossing}"),
            Self::FixedCrossing { crossing } => write!(f, "crossing {crossing} is fixed"),
            Self::SignNotFlipped { crossing } => {
                write!(f, "crossing {crossing} and its image have the same sign")
            }
            Self::ArcConflict { arc } => write!(f, "arc {arc} would map to two different arcs"),
            Self::NotBijective => write!(f, "induced arc map is not a bijection"),
        }
    }
}

/// Checks a candidate involution. Every failed condition is reported.
pub fn certify_spa(d: &Diagram, rho: &[usize]) -> Result<SymmetryCertificate, Vec<CertificateFailure>> {
    use CertificateFailure::*;
    let n = d.crossing_count();
    if rho.len() != n {
        return Err(vec![WrongLength {
            expected: n,
            found: rho.len(),
        }]);
    }
    let mut fails = Vec::new();
    for (c, &r) in rho.iter().enumerate() {
        if r >= n {
            fails.push(OutOfRange {
                crossing: c,
                image: r,
            });
        }
    }
    if !fails.is_empty() {
        return Err(fails);
    }
    for (c, &r) in rho.iter().enumerate() {
        if r == c {
            fails.push(FixedCrossing { crossing: c });
        } else if rho[r] != c {
            fails.push(NotInvolution { crossing: c });
        }
    }
    let xs = d.crossings();
    let mut phi: HashMap<ArcId, ArcId> = HashMap::new();
    let mut conflict = false;
    for (c, &r) in rho.iter().enumerate() {
        let flipped = xs[c].switched();
        if xs[r].sign != flipped.sign {
            fails.push(SignNotFlipped { crossing: c });
        }
        for (a, b) in flipped.arcs.into_iter().zip(xs[r].arcs) {
            match phi.insert(a, b) {
                Some(prev) if prev != b => {
                    if !conflict {
                        fails.push(ArcConflict { arc: a });
                    }
                    conflict = true;
                }
                _ => {}
            }
        }
    }
    if !conflict {
        let mut images: Vec<ArcId> = phi.values().copied().collect();
        images.sort_unstable();
        images.dedup();
        if images.len() != phi.len() {
            fails.push(NotBijective);
        }
    }
    if fails.is_empty() {
        Ok(SymmetryCertificate {
            involution: rho.to_vec(),
            sign_flip: true,
        })
    } else {
        Err(fails)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::trefoil;

    #[test]
    fn identity_on_trefoil_rejected() {
        let fails = certify_spa(&trefoil(), &[0, 1, 2]).unwrap_err();
        assert!(fails.contains(&CertificateFailure::FixedCrossing { crossing: 0 }));
        assert!(fails
            .iter()
            .any(|f| matches!(f, CertificateFailure::SignNotFlipped { .. })));
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(
            certify_spa(&trefoil(), &[1, 0]).unwrap_err().as_slice(),
            [CertificateFailure::WrongLength { .. }]
        ));
        assert!(certify_spa(&trefoil(), &[1, 2, 0]).is_err());
        assert!(certify_spa(&trefoil(), &[5, 0, 1]).is_err());
    }

    #[test]
    fn empty_diagram_certifies() {
        assert!(certify_spa(&Diagram::unknot(), &[]).is_ok());
    }
}
