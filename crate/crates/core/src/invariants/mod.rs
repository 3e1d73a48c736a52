//! Exact knot invariants.

mod alexander;
mod bracket;
mod goeritz;
pub mod matrix;

pub use alexander::{alexander, alexander_matrix, normalize_alexander, AlexanderResult};
pub use bracket::{bracket_bruteforce, bracket_contract, contraction_order, delta, BRUTE_FORCE_LIMIT};
pub use goeritz::{goeritz, GoeritzMatrix};

use serde::Serialize;

use crate::diagram::Diagram;
use crate::error::Result;
use crate::poly::LaurentPoly;

/// Bracket in `A`, writhe, and the Jones polynomial in `q = t^(1/2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BracketResult {
    pub bracket: LaurentPoly,
    pub writhe: i64,
    pub jones: LaurentPoly,
}

impl BracketResult {
    pub fn from_bracket(bracket: LaurentPoly, writhe: i64) -> Self {
        // f = (-A^3)^(-w) <K>, then A = q^(-1/2).
        let sign = if writhe % 2 == 0 { 1 } else { -1 };
        let f = bracket.shift(-3 * writhe).scale(&sign.into());
        assert!(f.exponents_divisible_by(2), "half-integral q exponent in {f}");
        let jones = f.compress_exponents(2).invert_variable();
        Self {
            bracket,
            writhe,
            jones,
        }
    }

    /// The Jones polynomial in `t`; requires every q exponent to be even.
    pub fn jones_in_t(&self) -> LaurentPoly {
        self.jones.compress_exponents(2)
    }

    /// `V(q) = V(1/q)`.
    pub fn is_palindromic(&self) -> bool {
        self.jones.is_palindromic()
    }
}

/// Jones polynomial of a knot via the contraction engine.
pub fn jones(d: &Diagram) -> Result<BracketResult> {
    d.ensure_knot()?;
    Ok(BracketResult::from_bracket(bracket_contract(d), d.writhe()))
}

/// |Δ(-1)|.
pub fn determinant(d: &Diagram) -> Result<u64> {
    Ok(alexander(d)?.determinant())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{figure_eight, trefoil, Kink, Move};

    #[test]
    fn trefoil_jones() {
        let j = jones(&trefoil()).unwrap();
        assert_eq!(j.writhe, -3);
        assert_eq!(
            j.jones_in_t(),
            LaurentPoly::from_pairs([(-4, -1), (-3, 1), (-1, 1)])
        );
        assert_eq!(j.jones, LaurentPoly::from_pairs([(-8, -1), (-6, 1), (-2, 1)]));
    }

    #[test]
    fn kinked_unknot_has_trivial_jones() {
        let mut d = Diagram::unknot();
        for kink in [Kink::ALL[0], Kink::ALL[3], Kink::ALL[1]] {
            let arc = d.arc_ends().keys().next().copied().unwrap_or(0);
            d = d.apply_move(Move::R1Add { arc, kink }).unwrap();
        }
        assert_eq!(d.crossing_count(), 3);
        assert!(jones(&d).unwrap().jones.is_one());
        assert!(jones(&Diagram::unknot()).unwrap().jones.is_one());
    }

    #[test]
    fn figure_eight_is_palindromic() {
        let j = jones(&figure_eight()).unwrap();
        assert!(j.is_palindromic());
        assert_eq!(determinant(&figure_eight()).unwrap(), 5);
    }
}
