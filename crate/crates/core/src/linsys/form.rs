//! Homogeneous forms in X, Y, Z with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::rational::BigRational;
use num::{BigInt, One, Signed, Zero};

use super::series::TruncatedSeries;
use super::LinsysError;

/// Parse "p", "-p" or "p/q" into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational, LinsysError> {
    let t = text.trim();
    let parse_int =
        |s: &str| BigInt::from_str(s).map_err(|_| LinsysError::BadRational(text.to_owned()));
    match t.split_once('/') {
        Some((num, den)) => {
            let d = parse_int(den)?;
            if d.is_zero() {
                return Err(LinsysError::BadRational(text.to_owned()));
            }
            Ok(BigRational::new(parse_int(num)?, d))
        }
        None => Ok(BigRational::from(parse_int(t)?)),
    }
}

/// Exponent triple (i, j, k) for X^i Y^j Z^k.
pub type Exponent = (u32, u32, u32);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousForm {
    degree: u32,
    coeffs: BTreeMap<Exponent, BigRational>,
}

impl HomogeneousForm {
    pub fn zero(degree: u32) -> Self {
        HomogeneousForm {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn monomial(degree: u32, exp: Exponent, coef: BigRational) -> Result<Self, LinsysError> {
        let mut f = Self::zero(degree);
        f.add_term(exp, coef)?;
        Ok(f)
    }

    pub fn add_term(&mut self, exp: Exponent, coef: BigRational) -> Result<(), LinsysError> {
        if exp.0 + exp.1 + exp.2 != self.degree {
            return Err(LinsysError::ExponentDegreeMismatch {
                exp,
                degree: self.degree,
            });
        }
        if coef.is_zero() {
            return Ok(());
        }
        let slot = self.coeffs.entry(exp).or_insert_with(BigRational::zero);
        *slot += coef;
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
        Ok(())
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigRational)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, exp: Exponent) -> BigRational {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.degree);
        }
        HomogeneousForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinsysError> {
        if self.degree != other.degree {
            return Err(LinsysError::FormDegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        let mut out = self.clone();
        for (&e, c) in &other.coeffs {
            out.add_term(e, c.clone())?;
        }
        Ok(out)
    }

    /// True when the two forms span the same line.
    pub fn proportional_to(&self, other: &Self) -> bool {
        if self.degree != other.degree || self.is_zero() != other.is_zero() {
            return false;
        }
        if self.is_zero() {
            return true;
        }
        let (e, c) = self.coeffs.iter().next().unwrap();
        let d = other.coeff(*e);
        if d.is_zero() {
            return false;
        }
        other.scale(&(c / &d)) == *self
    }

    /// Substitute the local parametrization (x(t), y(t), 1).
    pub fn eval_param(&self, x: &TruncatedSeries, y: &TruncatedSeries) -> TruncatedSeries {
        let truncation = x.truncation().min(y.truncation());
        let mut x_pows = Vec::with_capacity(self.degree as usize + 1);
        let mut y_pows = Vec::with_capacity(self.degree as usize + 1);
        x_pows.push(TruncatedSeries::one(truncation));
        y_pows.push(TruncatedSeries::one(truncation));
        for i in 1..=self.degree as usize {
            x_pows.push(x_pows[i - 1].mul(x));
            y_pows.push(y_pows[i - 1].mul(y));
        }
        let mut acc = TruncatedSeries::zero(truncation);
        for (&(i, j, _), c) in &self.coeffs {
            acc = acc.add(&x_pows[i as usize].mul(&y_pows[j as usize]).scale(c));
        }
        acc
    }

    /// Coefficient grid of the dehomogenization F(x, y, 1):
    /// `grid[i][j]` multiplies x^i y^j.
    pub fn dehomogenize(&self) -> Vec<Vec<BigRational>> {
        let d = self.degree as usize;
        let mut grid = vec![vec![BigRational::zero(); d + 1]; d + 1];
        for (&(i, j, _), c) in &self.coeffs {
            grid[i as usize][j as usize] += c;
        }
        grid
    }

    /// Normalize so the leading term (largest exponent triple) has
    /// coefficient 1; for display and canonical output.
    pub fn monic(&self) -> Self {
        match self.coeffs.iter().next_back() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }
}

impl fmt::Display for HomogeneousForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j, k), c) in self.coeffs.iter().rev() {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let vars = [(i, "X"), (j, "Y"), (k, "Z")];
            let pure_var = vars.iter().any(|&(e, _)| e > 0);
            if !mag.is_one() || !pure_var {
                write!(f, "{}", mag)?;
                if pure_var {
                    write!(f, "*")?;
                }
            }
            let mut started = false;
            for (e, name) in vars {
                if e == 0 {
                    continue;
                }
                if started {
                    write!(f, "*")?;
                }
                started = true;
                if e == 1 {
                    write!(f, "{}", name)?;
                } else {
                    write!(f, "{}^{}", name, e)?;
                }
            }
            let _ = started;
        }
        Ok(())
    }
}
