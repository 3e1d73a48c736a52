use serde::Serialize;

use super::sqrt::sqrt_up_to_units;
use crate::diagram::Diagram;
use crate::error::Result;
use crate::invariants::{alexander, determinant, jones};
use crate::poly::LaurentPoly;

/// `det(K) = det(J)^2`.
pub fn check_union_det(k: &Diagram, j: &Diagram) -> Result<bool> {
    let dj = determinant(j)?;
    Ok(determinant(k)? == dj * dj)
}

/// Necessary conditions for strong positive amphicheirality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AmphicheiralReport {
    pub jones: LaurentPoly,
    pub jones_palindromic: bool,
    pub alexander: LaurentPoly,
    /// A square root of Δ up to units, when one exists.
    pub alexander_root: Option<LaurentPoly>,
}

impl AmphicheiralReport {
    pub fn alexander_square(&self) -> bool {
        self.alexander_root.is_some()
    }

    pub fn passes(&self) -> bool {
        self.jones_palindromic && self.alexander_square()
    }
}

pub fn check_amphicheiral_necessary(d: &Diagram) -> Result<AmphicheiralReport> {
    let j = jones(d)?;
    let delta = alexander(d)?.delta;
    Ok(AmphicheiralReport {
        jones_palindromic: j.is_palindromic(),
        jones: j.jones,
        alexander_root: sqrt_up_to_units(&delta),
        alexander: delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::rosette;
    use crate::diagram::trefoil;

    #[test]
    fn rosette_and_trefoil() {
        let r = check_amphicheiral_necessary(&rosette(5).unwrap()).unwrap();
        assert!(r.jones_palindromic && r.alexander_square());
        let t = check_amphicheiral_necessary(&trefoil()).unwrap();
        assert!(!t.jones_palindromic);
        assert!(!t.passes());
    }

    #[test]
    fn union_det() {
        assert!(!check_union_det(&trefoil(), &Diagram::unknot()).unwrap());
        assert!(check_union_det(&Diagram::unknot(), &Diagram::unknot()).unwrap());
    }
}
