//! Integer Laurent polynomials with arbitrary-precision coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A Laurent polynomial in `X` with integer coefficients. No zero
/// coefficients are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: BTreeMap<i64, BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c X^k`
    pub fn monomial(c: impl Into<BigInt>, k: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(k, c.into());
        p
    }

    /// From ascending coefficients `c_0 + c_1 X + ...`.
    pub fn from_coeffs<T: Into<BigInt> + Copy>(coeffs: &[T]) -> Self {
        let mut p = Self::zero();
        for (k, &c) in coeffs.iter().enumerate() {
            p.add_term(k as i64, c.into());
        }
        p
    }

    fn add_term(&mut self, k: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(k).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i64) -> BigInt {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    /// `(degree, coefficient)` pairs in ascending degree.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    pub fn degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn low_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.values().next_back().cloned().unwrap_or_default()
    }

    /// No negative powers of `X`.
    pub fn is_polynomial(&self) -> bool {
        self.low_degree().is_none_or(|k| k >= 0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_one()
    }

    /// `X^k * self`
    pub fn shift(&self, k: i64) -> Self {
        IntPolynomial { coeffs: self.coeffs.iter().map(|(&e, c)| (e + k, c.clone())).collect() }
    }

    /// `self(X^{-1})`
    pub fn invert_variable(&self) -> Self {
        IntPolynomial { coeffs: self.coeffs.iter().map(|(&e, c)| (-e, c.clone())).collect() }
    }

    /// Coefficients read in reverse order equal the originals.
    pub fn is_palindromic(&self) -> bool {
        match (self.low_degree(), self.degree()) {
            (Some(lo), Some(hi)) => self.terms().all(|(k, c)| self.coeff(hi + lo - k) == *c),
            _ => true,
        }
    }

    pub fn eval(&self, x: i64) -> BigInt {
        let x = BigInt::from(x);
        self.terms()
            .map(|(k, c)| {
                assert!(k >= 0, "evaluation of a Laurent polynomial with negative powers");
                c * num_traits::pow(x.clone(), k as usize)
            })
            .sum()
    }

    /// Exact division by a polynomial whose lowest term is a unit (`±1`)
    /// constant; `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &IntPolynomial) -> Option<IntPolynomial> {
        let d_lo = divisor.low_degree()?;
        let d_lo_coeff = divisor.coeff(d_lo);
        let d_hi = divisor.degree()?;
        let mut rem = self.clone();
        let mut quot = IntPolynomial::zero();
        // Cancel from the low end; the quotient's degree is bounded by deg(self) - deg(divisor).
        let max_steps = match (self.degree(), self.low_degree()) {
            (Some(hi), Some(lo)) => hi - lo + 1,
            _ => return Some(quot),
        };
        for _ in 0..max_steps {
            let Some(lo) = rem.low_degree() else { break };
            let c = rem.coeff(lo);
            if (&c % &d_lo_coeff) != BigInt::zero() {
                return None;
            }
            let t = IntPolynomial::monomial(&c / &d_lo_coeff, lo - d_lo);
            if lo - d_lo + d_hi > self.degree().unwrap_or(lo) {
                return None;
            }
            rem = &rem - &(&t * divisor);
            quot = &quot + &t;
        }
        rem.is_zero().then_some(quot)
    }

    /// `{degree: coefficient}` with numbers when they fit in `i64`.
    pub fn to_json(&self) -> serde_json::Value {
        let map = self
            .coeffs
            .iter()
            .rev()
            .map(|(k, c)| {
                let v = c.to_i64().map(serde_json::Value::from).unwrap_or_else(|| c.to_string().into());
                (k.to_string(), v)
            })
            .collect();
        serde_json::Value::Object(map)
    }
}

impl fmt::Display for IntPolynomial {
    /// Descending degrees, e.g. `3X^4+4X^3+6X^2+3X+3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&k, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            if i > 0 {
                f.write_str(if neg { "-" } else { "+" })?;
            } else if neg {
                f.write_str("-")?;
            }
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}")?;
                    }
                    if k == 1 {
                        f.write_str("X")?;
                    } else {
                        write!(f, "X^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut out = self.clone();
        for (&k, c) in &rhs.coeffs {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial { coeffs: self.coeffs.iter().map(|(&k, c)| (k, -c)).collect() }
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut out = IntPolynomial::zero();
        for (&a, ca) in &self.coeffs {
            for (&b, cb) in &rhs.coeffs {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl std::iter::Sum for IntPolynomial {
    fn sum<I: Iterator<Item = IntPolynomial>>(iter: I) -> Self {
        iter.fold(IntPolynomial::zero(), |acc, p| &acc + &p)
    }
}
