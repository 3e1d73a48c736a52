//! Sparse Laurent polynomials in one variable with arbitrary-precision integer
//! coefficients.
//!
//! Zero coefficients are never stored, so structural equality is polynomial
//! equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseError;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exp: i64, coef: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coef.into());
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_pairs<I, C>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in pairs {
            p.add_term(e, c.into());
        }
        p
    }

    /// Dense coefficients starting at exponent `lo`.
    pub fn from_dense(lo: i64, coeffs: &[i64]) -> Self {
        Self::from_pairs(coeffs.iter().enumerate().map(|(i, &c)| (lo + i as i64, c)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Width of the exponent range, 0 for constants and the zero polynomial.
    pub fn span(&self) -> i64 {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn lowest_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn add_term(&mut self, exp: i64, coef: BigInt) {
        if coef.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_default();
        *slot += coef;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, x)| (e, x * c)).collect(),
        }
    }

    /// Substitutes `t -> t^k` (k may be negative).
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k != 0, "substitution by t^0 collapses the polynomial");
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e * k, c.clone())).collect(),
        }
    }

    /// `p(1/t)`.
    pub fn invert_variable(&self) -> Self {
        self.substitute_power(-1)
    }

    /// True when every exponent is divisible by `k`.
    pub fn exponents_divisible_by(&self, k: i64) -> bool {
        self.terms.keys().all(|e| e % k == 0)
    }

    /// Divides every exponent by `k`; panics if some exponent is not a multiple.
    pub fn compress_exponents(&self, k: i64) -> Self {
        assert!(self.exponents_divisible_by(k), "exponent not divisible by {k}");
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e / k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Evaluates at an integer point. Negative exponents require `x = ±1`.
    pub fn eval(&self, x: i64) -> BigInt {
        let mut acc = BigInt::zero();
        for (&e, c) in &self.terms {
            if e < 0 {
                assert!(x == 1 || x == -1, "negative exponent evaluated at {x}");
            }
            let v = if x == 1 || x == -1 {
                if e.rem_euclid(2) == 1 && x == -1 {
                    -BigInt::one()
                } else {
                    BigInt::one()
                }
            } else {
                num_traits::pow(BigInt::from(x), e as usize)
            };
            acc += c * v;
        }
        acc
    }

    /// `p(t) == p(1/t)` coefficient-wise.
    pub fn is_palindromic(&self) -> bool {
        *self == self.invert_variable()
    }

    /// Exact division. Returns `None` when `divisor` does not divide `self`
    /// in the ring of integer Laurent polynomials.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (dlo, dhi) = (divisor.min_exp()?, divisor.max_exp()?);
        let dlead = divisor.leading_coeff()?.clone();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(rhi) = rem.max_exp() {
            let rlo = rem.min_exp()?;
            if rhi - rlo < dhi - dlo {
                return None;
            }
            let (q, r) = rem.leading_coeff()?.div_rem(&dlead);
            if !r.is_zero() {
                return None;
            }
            let e = rhi - dhi;
            for (de, dc) in divisor.terms() {
                rem.add_term(de + e, -(dc * &q));
            }
            quot.add_term(e, q);
        }
        Some(quot)
    }

    /// Sparse serialization: `exponent:coefficient` pairs in ascending
    /// exponent order, separated by single spaces. The zero polynomial
    /// serializes as `0:0`.
    pub fn to_sparse_string(&self) -> String {
        if self.is_zero() {
            return "0:0".to_string();
        }
        self.terms
            .iter()
            .map(|(e, c)| format!("{e}:{c}"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Human-readable form in the given variable, e.g. `-t^-4 + t^-3 + t^-1`.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }
}

impl FromStr for LaurentPoly {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = LaurentPoly::zero();
        for (i, tok) in s.split_whitespace().enumerate() {
            let bad = || ParseError::new(1, i + 1, format!("bad term '{tok}'"));
            let (e, c) = tok.split_once(':').ok_or_else(bad)?;
            let e: i64 = e.parse().map_err(|_| bad())?;
            let c: BigInt = c.parse().map_err(|_| bad())?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self.to_sparse_string())
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_sparse_string())
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(pairs: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_pairs(pairs.iter().copied())
    }

    #[test]
    fn no_zero_terms_stored() {
        let a = p(&[(1, 2), (3, -1)]);
        let b = p(&[(1, -2)]);
        let s = &a + &b;
        assert_eq!(s, p(&[(3, -1)]));
        assert_eq!(s.len(), 1);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn sparse_format() {
        let bracket = p(&[(-4, -1), (-12, -1), (-16, 1)]);
        assert_eq!(bracket.to_sparse_string(), "-16:1 -12:-1 -4:-1");
        let parsed: LaurentPoly = "-4:-1 -12:-1 -16:1".parse().unwrap();
        assert_eq!(parsed, bracket);
        assert!("1:x".parse::<LaurentPoly>().is_err());
        assert_eq!(LaurentPoly::zero().to_sparse_string(), "0:0");
        assert!("0:0".parse::<LaurentPoly>().unwrap().is_zero());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[(-1, 1), (0, -1), (1, 1)]).to_string(), "t^-1 - 1 + t");
        assert_eq!(p(&[(2, -3)]).display_in("q"), "-3*q^2");
        assert_eq!(LaurentPoly::one().to_string(), "1");
    }

    #[test]
    fn eval_at_minus_one() {
        // 4_1: -t^-1 + 3 - t  ->  -(-1) + 3 - (-1) = 5
        let fig8 = p(&[(-1, -1), (0, 3), (1, -1)]);
        assert_eq!(fig8.eval(-1), BigInt::from(5));
        assert_eq!(fig8.eval(1), BigInt::from(1));
        assert_eq!(p(&[(0, 1), (2, 1)]).eval(3), BigInt::from(10));
    }

    #[test]
    fn exact_division() {
        let a = p(&[(-1, 1), (0, -1), (1, 1)]);
        let b = p(&[(0, 2), (3, -5)]);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!(a.div_exact(&p(&[(0, 2)])), None);
        assert_eq!(a.div_exact(&p(&[(0, 1), (1, 1)])), None);
        assert_eq!(LaurentPoly::zero().div_exact(&a), Some(LaurentPoly::zero()));
    }

    #[test]
    fn pow_and_substitution() {
        let delta = p(&[(-2, -1), (2, -1)]);
        assert_eq!(delta.pow(2), p(&[(-4, 1), (0, 2), (4, 1)]));
        assert_eq!(delta.pow(0), LaurentPoly::one());
        assert_eq!(p(&[(1, 1), (3, 2)]).invert_variable(), p(&[(-1, 1), (-3, 2)]));
        assert!(p(&[(-2, 1), (0, 5), (2, 1)]).is_palindromic());
        assert!(!p(&[(1, 1)]).is_palindromic());
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-6i64..6, -5i64..5), 0..6).prop_map(LaurentPoly::from_pairs)
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn product_divides_back(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(prod.div_exact(&b), Some(a));
        }

        #[test]
        fn sparse_roundtrip(a in arb_poly()) {
            let s = a.to_sparse_string();
            prop_assert_eq!(s.parse::<LaurentPoly>().unwrap(), a);
        }
    }
}
