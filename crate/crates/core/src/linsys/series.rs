//! Truncated power series over exact rationals. A series knows its
//! coefficients for exponents 0..truncation and nothing beyond.

use num::rational::BigRational;
use num::{One, Zero};

use super::LinsysError;

/// t-order of a truncated series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Finite(usize),
    /// No nonzero coefficient below the given truncation; stands in for
    /// "infinite" wherever the truncation is known to be large enough.
    ZeroThrough(usize),
}

impl Order {
    pub fn finite(self) -> Option<usize> {
        match self {
            Order::Finite(o) => Some(o),
            Order::ZeroThrough(_) => None,
        }
    }

    pub fn at_least(self, bound: usize) -> bool {
        match self {
            Order::Finite(o) => o >= bound,
            Order::ZeroThrough(t) => t >= bound,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    pub fn zero(truncation: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigRational::zero(); truncation],
        }
    }

    pub fn monomial(exp: usize, coef: BigRational, truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        if exp < truncation {
            s.coeffs[exp] = coef;
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        TruncatedSeries { coeffs }
    }

    pub fn one(truncation: usize) -> Self {
        Self::monomial(0, BigRational::one(), truncation)
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, exp: usize) -> &BigRational {
        &self.coeffs[exp]
    }

    pub fn order(&self) -> Order {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(o) => Order::Finite(o),
            None => Order::ZeroThrough(self.truncation()),
        }
    }

    pub fn is_zero_through_truncation(&self) -> bool {
        matches!(self.order(), Order::ZeroThrough(_))
    }

    fn shrink_to(&self, truncation: usize) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs[..truncation.min(self.coeffs.len())].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let t = self.truncation().min(other.truncation());
        let coeffs = (0..t).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect();
        TruncatedSeries { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let t = self.truncation().min(other.truncation());
        let coeffs = (0..t).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect();
        TruncatedSeries { coeffs }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let t = self.truncation().min(other.truncation());
        let mut coeffs = vec![BigRational::zero(); t];
        for (i, a) in self.coeffs.iter().enumerate().take(t) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(t - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        TruncatedSeries { coeffs }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(self.truncation());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divide by t^k, discarding the k lowest (necessarily zero) slots.
    /// Truncation drops by k.
    pub fn shift_down(&self, k: usize) -> Result<Self, LinsysError> {
        if self.coeffs[..k.min(self.coeffs.len())]
            .iter()
            .any(|c| !c.is_zero())
        {
            return Err(LinsysError::NotDivisible { power: k });
        }
        if k > self.coeffs.len() {
            return Err(LinsysError::TruncationExhausted);
        }
        Ok(TruncatedSeries {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// Multiplicative inverse of a unit (nonzero constant term).
    pub fn invert_unit(&self) -> Result<Self, LinsysError> {
        if self.truncation() == 0 {
            return Err(LinsysError::TruncationExhausted);
        }
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(LinsysError::NotAUnit);
        }
        let t = self.truncation();
        let mut inv = vec![BigRational::zero(); t];
        inv[0] = c0.recip();
        for n in 1..t {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * &inv[n - k];
                }
            }
            inv[n] = -acc / c0;
        }
        Ok(TruncatedSeries { coeffs: inv })
    }

    /// Exact quotient self / divisor where ord(divisor) <= ord(self).
    /// The result's truncation drops by ord(divisor).
    pub fn divide(&self, divisor: &Self) -> Result<Self, LinsysError> {
        let p = match divisor.order() {
            Order::Finite(p) => p,
            Order::ZeroThrough(_) => return Err(LinsysError::NotAUnit),
        };
        let t = self.truncation().min(divisor.truncation());
        let num = self.shrink_to(t).shift_down(p)?;
        let unit = divisor.shrink_to(t).shift_down(p)?;
        Ok(num.mul(&unit.invert_unit()?))
    }
}
