//! Row echelon over truncated series, pivoting by t-order.

use num::rational::BigRational;
use num::Zero;

use super::form::{Exponent, HomogeneousForm};
use super::series::TruncatedSeries;
use super::LinsysError;

/// A linear combination of the monomial basis together with its series.
#[derive(Debug, Clone)]
pub struct EchelonRow {
    pub combo: Vec<BigRational>,
    pub series: TruncatedSeries,
}

impl EchelonRow {
    fn scale(&self, c: &BigRational) -> Self {
        EchelonRow {
            combo: self.combo.iter().map(|x| x * c).collect(),
            series: self.series.scale(c),
        }
    }

    fn sub_scaled(&self, other: &Self, c: &BigRational) -> Self {
        EchelonRow {
            combo: self
                .combo
                .iter()
                .zip(&other.combo)
                .map(|(a, b)| a - b * c)
                .collect(),
            series: self.series.sub(&other.series.scale(c)),
        }
    }

    pub fn form(&self, degree: u32, monomials: &[Exponent]) -> HomogeneousForm {
        let mut f = HomogeneousForm::zero(degree);
        for (coef, &exp) in self.combo.iter().zip(monomials) {
            f.add_term(exp, coef.clone()).expect("degree matches");
        }
        f
    }
}

/// Reduced order-echelon basis: pivot rows with strictly increasing t-orders
/// and unit leading coefficients, plus the rows that vanish through the
/// truncation (the kernel of the evaluation map).
#[derive(Debug, Clone)]
pub struct OrderEchelon {
    pub degree: u32,
    pub monomials: Vec<Exponent>,
    pub pivots: Vec<(usize, EchelonRow)>,
    pub kernel: Vec<EchelonRow>,
}

impl OrderEchelon {
    pub fn pivot_orders(&self) -> Vec<usize> {
        self.pivots.iter().map(|&(o, _)| o).collect()
    }

    pub fn pivot_at_order(&self, order: usize) -> Option<&EchelonRow> {
        self.pivots
            .iter()
            .find(|&&(o, _)| o == order)
            .map(|(_, r)| r)
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// All monomial exponents of the given degree, X-major.
pub fn monomials_of_degree(degree: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    for i in (0..=degree).rev() {
        for j in (0..=degree - i).rev() {
            out.push((i, j, degree - i - j));
        }
    }
    out
}

/// Eliminate by increasing t-order, then back-substitute to the reduced
/// (pivot-canonical) basis.
pub fn order_echelon(
    degree: u32,
    monomials: Vec<Exponent>,
    rows: Vec<EchelonRow>,
) -> Result<OrderEchelon, LinsysError> {
    let mut pool = rows;
    let mut pivots: Vec<(usize, EchelonRow)> = Vec::new();
    loop {
        let min_order = pool
            .iter()
            .filter_map(|r| r.series.order().finite())
            .min();
        let Some(o) = min_order else { break };
        let idx = pool
            .iter()
            .position(|r| r.series.order().finite() == Some(o))
            .expect("just found");
        let row = pool.remove(idx);
        let pivot = row.scale(&row.series.coeff(o).recip());
        for r in pool.iter_mut() {
            if r.series.order().finite() == Some(o) {
                let c = r.series.coeff(o).clone();
                *r = r.sub_scaled(&pivot, &c);
            }
        }
        pivots.push((o, pivot));
    }
    let kernel = pool;

    // reduced form: clear later pivot orders from earlier rows
    let mut reduced = pivots.clone();
    for i in 0..reduced.len() {
        for j in i + 1..reduced.len() {
            let o = reduced[j].0;
            let c = reduced[i].1.series.coeff(o).clone();
            if !c.is_zero() {
                let (qo, qrow) = reduced[j].clone();
                debug_assert_eq!(qo, o);
                reduced[i].1 = reduced[i].1.sub_scaled(&qrow, &c);
            }
        }
    }

    Ok(OrderEchelon {
        degree,
        monomials,
        pivots: reduced,
        kernel,
    })
}
