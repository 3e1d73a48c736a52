use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::poly::LaurentPoly;

/// `f` with `f * f == p` and positive lowest coefficient, or `None` when `p`
/// has no square root in the integer Laurent ring.
pub fn poly_sqrt(p: &LaurentPoly) -> Option<LaurentPoly> {
    if p.is_zero() {
        return Some(LaurentPoly::zero());
    }
    let lo = p.min_exp()?;
    let span = p.span();
    if lo % 2 != 0 || span % 2 != 0 {
        return None;
    }
    let p0 = p.lowest_coeff()?;
    if p0.is_negative() {
        return None;
    }
    let f0 = p0.sqrt();
    if &(&f0 * &f0) != p0 {
        return None;
    }
    let deg = (span / 2) as usize;
    let two_f0 = &f0 * 2;
    let mut f: Vec<BigInt> = vec![f0];
    for j in 1..=deg {
        let mut s = p.coeff(lo + j as i64);
        for i in 1..j {
            s -= &f[i] * &f[j - i];
        }
        let (q, r) = s.div_rem(&two_f0);
        if !r.is_zero() {
            return None;
        }
        f.push(q);
    }
    let root = LaurentPoly::from_pairs(f.into_iter().enumerate().map(|(i, c)| (lo / 2 + i as i64, c)));
    (&root * &root == *p).then_some(root)
}

/// Square root of `±t^k p` for whichever unit makes one exist.
pub fn sqrt_up_to_units(p: &LaurentPoly) -> Option<LaurentPoly> {
    let lo = p.min_exp()?;
    let q = p.shift(-lo);
    poly_sqrt(&q).or_else(|| poly_sqrt(&-q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_roots() {
        let f = LaurentPoly::from_dense(0, &[1, 0, -1, 0, 1]);
        assert_eq!(poly_sqrt(&(&f * &f)), Some(f));
        let g = LaurentPoly::from_dense(0, &[2, -4, 3, -4, 2]);
        assert_eq!(poly_sqrt(&(&g * &g)), Some(g));
        assert_eq!(poly_sqrt(&LaurentPoly::from_dense(-1, &[1, -1, 1])), None);
        assert_eq!(poly_sqrt(&LaurentPoly::constant(-4)), None);
        assert_eq!(poly_sqrt(&LaurentPoly::constant(2)), None);
    }

    #[test]
    fn units() {
        let f = LaurentPoly::from_dense(-1, &[1, -3, 1]);
        let sq = -(&f * &f).shift(3);
        assert!(poly_sqrt(&sq).is_none());
        let r = sqrt_up_to_units(&sq).unwrap();
        assert!(r == f.shift(1) || r == -f.shift(1));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn roundtrip(lo in -5i64..5, coeffs in proptest::collection::vec(-20i64..21, 1..8)) {
            let f = LaurentPoly::from_dense(lo, &coeffs);
            let sq = &f * &f;
            let r = poly_sqrt(&sq).unwrap();
            prop_assert!(r == f || r == -f.clone());
        }

        #[test]
        fn non_square_leading_coefficient(lo in -3i64..3, coeffs in proptest::collection::vec(-9i64..10, 1..6)) {
            let p = LaurentPoly::from_dense(2 * lo, &coeffs);
            if let Some(c) = p.lowest_coeff() {
                let s = c.abs().sqrt();
                if &s * &s != c.abs() || c.is_negative() {
                    prop_assert!(poly_sqrt(&p).is_none());
                }
            }
        }
    }
}
