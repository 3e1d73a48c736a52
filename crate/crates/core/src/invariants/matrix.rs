//! Fraction-free (Bareiss) determinants over integral domains.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::poly::LaurentPoly;

pub trait Domain: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Exact quotient; the divisor is known to divide.
    fn div_exact(&self, other: &Self) -> Self;
}

impl Domain for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Self {
        let (q, r) = self.div_rem(other);
        assert!(Zero::is_zero(&r), "inexact Bareiss division");
        q
    }
}

impl Domain for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, other: &Self) -> Self {
        LaurentPoly::div_exact(self, other).expect("inexact Bareiss division")
    }
}

/// Determinant of a square matrix. The empty matrix has determinant one.
pub fn determinant<T: Domain>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "matrix is not square");
    if n == 0 {
        return T::one();
    }
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = v.div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cofactor(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * cofactor(&minor)
            })
            .sum()
    }

    fn big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
        m.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(determinant::<BigInt>(vec![]), BigInt::from(1));
        assert_eq!(determinant(big(&[vec![0, 1], vec![1, 0]])), BigInt::from(-1));
        assert_eq!(determinant(big(&[vec![2, 4], vec![1, 2]])), BigInt::from(0));
    }

    #[test]
    fn polynomial_matrix() {
        // [[1-t, t], [-1, 1-t]] has determinant 1 - t + t^2.
        let t = LaurentPoly::monomial(1, 1);
        let one = LaurentPoly::one();
        let m = vec![vec![&one - &t, t.clone()], vec![-&one, &one - &t]];
        assert_eq!(determinant(m), LaurentPoly::from_dense(0, &[1, -1, 1]));
    }

    proptest! {
        #[test]
        fn matches_cofactor_expansion(n in 0usize..6, seed in proptest::collection::vec(-4i64..5, 36)) {
            let m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| seed[i * 6 + j]).collect()).collect();
            prop_assert_eq!(determinant(big(&m)), BigInt::from(cofactor(&m)));
        }
    }
}
