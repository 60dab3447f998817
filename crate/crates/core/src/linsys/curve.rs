//! A plane curve germ at (0:0:1): exact equation plus truncated
//! parametrization, and the contact/echelon operations built on it.

use std::collections::BTreeMap;

use num::rational::BigRational;
use num::{One, Zero};
use serde::Deserialize;

use super::echelon::{monomials_of_degree, order_echelon, EchelonRow, OrderEchelon};
use super::form::{parse_rational, HomogeneousForm};
use super::series::{Order, TruncatedSeries};
use super::LinsysError;

/// Degree-d form with a parametrization (x(t), y(t)) of the branch at
/// (0:0:1), valid modulo t^K with K > d^2.
#[derive(Debug, Clone)]
pub struct LocalCurve {
    f: HomogeneousForm,
    x: TruncatedSeries,
    y: TruncatedSeries,
}

/// K chosen so every degree-d computation, including the pencil basis with
/// its margin beyond d^2, stays certified.
pub fn default_truncation(degree: u32) -> usize {
    let d = degree as usize;
    d * d + d + 5
}

impl LocalCurve {
    pub fn new(
        f: HomogeneousForm,
        x: TruncatedSeries,
        y: TruncatedSeries,
    ) -> Result<Self, LinsysError> {
        let d = f.degree();
        if d == 0 || f.is_zero() {
            return Err(LinsysError::InvalidCurve(
                "the equation must be a nonzero form of positive degree".into(),
            ));
        }
        let k = x.truncation().min(y.truncation());
        if k <= (d as usize) * (d as usize) {
            return Err(LinsysError::TruncationTooSmall {
                need: (d as usize) * (d as usize),
                have: k,
            });
        }
        if !f.coeff((0, 0, d)).is_zero() {
            return Err(LinsysError::InvalidCurve(
                "the curve does not pass through (0:0:1)".into(),
            ));
        }
        if !x.order().at_least(1) || !y.order().at_least(1) {
            return Err(LinsysError::NotAParametrization);
        }
        if !f.eval_param(&x, &y).is_zero_through_truncation() {
            return Err(LinsysError::InvalidCurve(
                "the parametrization does not satisfy the equation within the truncation".into(),
            ));
        }
        Ok(LocalCurve { f, x, y })
    }

    pub fn equation(&self) -> &HomogeneousForm {
        &self.f
    }

    pub fn degree(&self) -> u32 {
        self.f.degree()
    }

    pub fn x_series(&self) -> &TruncatedSeries {
        &self.x
    }

    pub fn y_series(&self) -> &TruncatedSeries {
        &self.y
    }

    pub fn truncation(&self) -> usize {
        self.x.truncation().min(self.y.truncation())
    }

    /// t-order of G along the branch; ZeroThrough(K) certifies membership
    /// in the ideal of the curve for the degrees handled here.
    pub fn contact_order(&self, g: &HomogeneousForm) -> Result<Order, LinsysError> {
        let need = (g.degree() as usize) * (self.degree() as usize);
        if self.truncation() <= need {
            return Err(LinsysError::TruncationTooSmall {
                need,
                have: self.truncation(),
            });
        }
        Ok(g.eval_param(&self.x, &self.y).order())
    }

    /// Order echelon of all degree-ell monomials along the branch, with the
    /// kernel-dimension and contact-bound consequences asserted.
    pub fn echelon(&self, ell: u32) -> Result<OrderEchelon, LinsysError> {
        if ell == 0 {
            return Err(LinsysError::FormDegreeOutOfRange { got: 0, max: u32::MAX });
        }
        let d = self.degree();
        let bound = (ell as usize) * (d as usize);
        if self.truncation() <= bound {
            return Err(LinsysError::TruncationTooSmall {
                need: bound,
                have: self.truncation(),
            });
        }
        let monomials = monomials_of_degree(ell);
        let rows: Vec<EchelonRow> = monomials
            .iter()
            .enumerate()
            .map(|(idx, &exp)| {
                let mut combo = vec![BigRational::zero(); monomials.len()];
                combo[idx] = BigRational::one();
                let form = HomogeneousForm::monomial(ell, exp, BigRational::one())
                    .expect("degree matches");
                EchelonRow {
                    combo,
                    series: form.eval_param(&self.x, &self.y),
                }
            })
            .collect();
        let ech = order_echelon(ell, monomials, rows)?;

        let expected_kernel = if ell < d {
            0
        } else {
            let e = (ell - d) as usize;
            e * (e + 3) / 2 + 1
        };
        if ech.kernel.len() != expected_kernel {
            return Err(LinsysError::KernelDimension {
                form_degree: ell,
                expected: expected_kernel,
                got: ech.kernel.len(),
            });
        }
        if let Some(&worst) = ech.pivot_orders().iter().max() {
            if worst > bound {
                return Err(LinsysError::ContactBeyondBound {
                    order: worst,
                    bound,
                });
            }
        }
        Ok(ech)
    }

    /// The contact orders realized in degree d: exactly the semigroup
    /// elements up to d^2, of cardinality (d^2+3d)/2.
    pub fn semigroup_window(&self) -> Result<SemigroupWindow, LinsysError> {
        let d = self.degree() as usize;
        let ech = self.echelon(self.degree())?;
        let members = ech.pivot_orders();
        let expected = (d * d + 3 * d) / 2;
        if members.len() != expected {
            return Err(LinsysError::WindowSize {
                expected,
                got: members.len(),
            });
        }
        Ok(SemigroupWindow {
            bound: d * d,
            members,
        })
    }

    /// dim X_{ell,j}: forms of degree ell with contact at least j, as a
    /// projective linear system.
    pub fn system_dimension(&self, ell: u32, j: usize) -> Result<usize, LinsysError> {
        let bound = (ell as usize) * (self.degree() as usize);
        if j > bound {
            return Err(LinsysError::ContactThresholdTooLarge { j, max: bound });
        }
        let ech = self.echelon(ell)?;
        let monomial_count = ((ell as usize) + 1) * ((ell as usize) + 2) / 2;
        let below = ech.pivot_orders().iter().filter(|&&o| o < j).count();
        Ok(monomial_count - 1 - below)
    }

    /// For 0 < ell < d: the unique form of degree ell with maximal contact
    /// ell*d, when the echelon realizes that order.
    pub fn small_degree_system(&self, ell: u32) -> Result<Option<HomogeneousForm>, LinsysError> {
        let d = self.degree();
        if ell == 0 || ell >= d {
            return Err(LinsysError::FormDegreeOutOfRange {
                got: ell,
                max: d.saturating_sub(1),
            });
        }
        let ech = self.echelon(ell)?;
        let target = (ell as usize) * (d as usize);
        Ok(ech
            .pivot_at_order(target)
            .map(|row| row.form(ell, &ech.monomials)))
    }

    pub fn inequality_check(&self, ell: u32) -> Result<InequalityReport, LinsysError> {
        let d = self.degree();
        if ell == 0 || ell >= d {
            return Err(LinsysError::FormDegreeOutOfRange {
                got: ell,
                max: d.saturating_sub(1),
            });
        }
        let window = self.semigroup_window()?;
        let bound = (ell as usize) * (d as usize);
        let lhs = window.members.iter().filter(|&&g| g <= bound).count();
        let rhs = ((ell as usize) + 1) * ((ell as usize) + 2) / 2;
        let system = self.small_degree_system(ell)?;
        Ok(InequalityReport {
            form_degree: ell,
            lhs,
            rhs,
            ok: lhs >= rhs,
            equality: lhs == rhs,
            max_contact_in_semigroup: window.contains(bound),
            system_nonempty: system.is_some(),
        })
    }

    /// (F, G) spanning the forms of degree d with contact >= d^2: F is the
    /// curve itself, G the echelon's order-d^2 representative.
    pub fn pencil_basis(&self) -> Result<(HomogeneousForm, HomogeneousForm), LinsysError> {
        let d = self.degree() as usize;
        if self.truncation() <= d * d + d {
            return Err(LinsysError::TruncationTooSmall {
                need: d * d + d,
                have: self.truncation(),
            });
        }
        let ech = self.echelon(self.degree())?;
        let kernel_form = ech.kernel[0].form(self.degree(), &ech.monomials);
        if !kernel_form.proportional_to(&self.f) {
            return Err(LinsysError::InvalidCurve(
                "the echelon kernel is not spanned by the given equation".into(),
            ));
        }
        let g = ech
            .pivot_at_order(d * d)
            .ok_or(LinsysError::WindowSize {
                expected: d * d,
                got: 0,
            })?
            .form(self.degree(), &ech.monomials);
        Ok((self.f.clone(), g))
    }

    /// (F, G, H) spanning the forms of degree d with contact >= d^2 - 1.
    pub fn net_basis(
        &self,
    ) -> Result<(HomogeneousForm, HomogeneousForm, HomogeneousForm), LinsysError> {
        let d = self.degree() as usize;
        let (f, g) = self.pencil_basis()?;
        let ech = self.echelon(self.degree())?;
        let h = ech
            .pivot_at_order(d * d - 1)
            .ok_or(LinsysError::WindowSize {
                expected: d * d - 1,
                got: 0,
            })?
            .form(self.degree(), &ech.monomials);
        Ok((f, g, h))
    }

    /// Multiplicity sequence of the branch via series blow-ups.
    pub fn multiplicities(&self) -> Result<ParamMultiplicities, LinsysError> {
        multiplicity_sequence_from_param(&self.x, &self.y)
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct SemigroupWindow {
    pub bound: usize,
    pub members: Vec<usize>,
}

impl SemigroupWindow {
    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn count_in(&self, lo: usize, hi: usize) -> usize {
        self.members.iter().filter(|&&g| lo <= g && g <= hi).count()
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct InequalityReport {
    pub form_degree: u32,
    pub lhs: usize,
    pub rhs: usize,
    pub ok: bool,
    pub equality: bool,
    pub max_contact_in_semigroup: bool,
    pub system_nonempty: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ParamMultiplicities {
    pub minimal: Vec<u64>,
    pub embedded: Vec<u64>,
}

/// Record min(ord x, ord y) and divide out the smaller series, re-centering
/// after each step, until the germ is smooth; the embedded tail appends r_n
/// ones.
pub fn multiplicity_sequence_from_param(
    x0: &TruncatedSeries,
    y0: &TruncatedSeries,
) -> Result<ParamMultiplicities, LinsysError> {
    let mut x = x0.clone();
    let mut y = y0.clone();
    if x.order() == Order::Finite(0) || y.order() == Order::Finite(0) {
        return Err(LinsysError::NotAParametrization);
    }
    if x.is_zero_through_truncation() && y.is_zero_through_truncation() {
        return Err(LinsysError::NotAParametrization);
    }
    let mut recorded: Vec<u64> = Vec::new();
    loop {
        let (ox, oy) = (x.order().finite(), y.order().finite());
        match (ox, oy) {
            (None, None) => return Err(LinsysError::NotAParametrization),
            // one coordinate vanished: the germ is an axis, smooth and
            // transverse in this chart
            (Some(_), None) | (None, Some(_)) => break,
            (Some(a), Some(b)) => {
                if a == 0 || b == 0 {
                    return Err(LinsysError::NotAParametrization);
                }
                let r = a.min(b);
                if r == 1 {
                    break;
                }
                recorded.push(r as u64);
                if a > b {
                    std::mem::swap(&mut x, &mut y);
                }
                let quotient = y.divide(&x)?;
                if quotient.truncation() == 0 {
                    return Err(LinsysError::TruncationExhausted);
                }
                let center = quotient.coeff(0).clone();
                y = quotient.sub(&TruncatedSeries::monomial(
                    0,
                    center,
                    quotient.truncation(),
                ));
                if y.truncation() == 0 || x.truncation() == 0 {
                    return Err(LinsysError::TruncationExhausted);
                }
            }
        }
    }
    let embedded = match recorded.last() {
        Some(&rn) => {
            let mut e = recorded.clone();
            e.extend(std::iter::repeat_n(1, rn as usize));
            e
        }
        None => Vec::new(),
    };
    Ok(ParamMultiplicities {
        minimal: recorded,
        embedded,
    })
}

// ---------------------------------------------------------------------------
// JSON document
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
pub struct CurveDoc {
    pub degree: u32,
    #[serde(rename = "F")]
    pub f: Vec<TermDoc>,
    pub param: ParamDoc,
    #[serde(default)]
    pub truncation: Option<usize>,
}

#[derive(Debug, Deserialize)]
pub struct TermDoc {
    pub exp: [u32; 3],
    pub coef: CoefRepr,
}

#[derive(Debug, Deserialize)]
pub struct ParamDoc {
    pub x: BTreeMap<String, CoefRepr>,
    pub y: BTreeMap<String, CoefRepr>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum CoefRepr {
    Int(i64),
    Text(String),
}

impl CoefRepr {
    fn rational(&self) -> Result<BigRational, LinsysError> {
        match self {
            CoefRepr::Int(v) => Ok(BigRational::from_integer((*v).into())),
            CoefRepr::Text(t) => parse_rational(t),
        }
    }
}

impl CurveDoc {
    pub fn parse(text: &str) -> Result<Self, LinsysError> {
        serde_json::from_str(text).map_err(|e| LinsysError::InvalidCurve(e.to_string()))
    }

    pub fn build(&self) -> Result<LocalCurve, LinsysError> {
        let mut f = HomogeneousForm::zero(self.degree);
        for term in &self.f {
            f.add_term(
                (term.exp[0], term.exp[1], term.exp[2]),
                term.coef.rational()?,
            )?;
        }
        let truncation = self.truncation.unwrap_or_else(|| default_truncation(self.degree));
        let series_of = |map: &BTreeMap<String, CoefRepr>| -> Result<TruncatedSeries, LinsysError> {
            let mut s = TruncatedSeries::zero(truncation);
            for (exp, coef) in map {
                let e: usize = exp
                    .parse()
                    .map_err(|_| LinsysError::InvalidCurve(format!("bad exponent `{}`", exp)))?;
                s = s.add(&TruncatedSeries::monomial(e, coef.rational()?, truncation));
            }
            Ok(s)
        };
        LocalCurve::new(f, series_of(&self.param.x)?, series_of(&self.param.y)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::FromPrimitive;

    fn q(n: i64) -> BigRational {
        BigRational::from_i64(n).unwrap()
    }

    fn t_pow(e: usize, trunc: usize) -> TruncatedSeries {
        TruncatedSeries::monomial(e, q(1), trunc)
    }

    /// z y^(d-1) - x^d parametrized by (t^(d-1), t^d).
    pub fn cusp_family(d: u32) -> LocalCurve {
        let mut f = HomogeneousForm::zero(d);
        f.add_term((0, d - 1, 1), q(1)).unwrap();
        f.add_term((d, 0, 0), q(-1)).unwrap();
        let k = default_truncation(d);
        LocalCurve::new(f, t_pow(d as usize - 1, k), t_pow(d as usize, k)).unwrap()
    }

    pub fn line_curve() -> LocalCurve {
        let f = HomogeneousForm::monomial(1, (0, 1, 0), q(1)).unwrap();
        LocalCurve::new(f, t_pow(1, 7), TruncatedSeries::zero(7)).unwrap()
    }

    #[test]
    fn validation_rejects_bad_input() {
        // parametrization not on the curve
        let mut f = HomogeneousForm::zero(3);
        f.add_term((0, 2, 1), q(1)).unwrap();
        f.add_term((3, 0, 0), q(-1)).unwrap();
        let err = LocalCurve::new(f.clone(), t_pow(2, 20), t_pow(4, 20)).unwrap_err();
        assert!(matches!(err, LinsysError::InvalidCurve(_)));

        // truncation below d^2
        let err = LocalCurve::new(f.clone(), t_pow(2, 9), t_pow(3, 9)).unwrap_err();
        assert!(matches!(err, LinsysError::TruncationTooSmall { .. }));

        // curve missing the center
        let mut g = HomogeneousForm::zero(1);
        g.add_term((0, 0, 1), q(1)).unwrap();
        g.add_term((1, 0, 0), q(-1)).unwrap();
        assert!(LocalCurve::new(g, t_pow(1, 5), t_pow(1, 5)).is_err());
    }

    #[test]
    fn contact_orders_on_the_cubic() {
        let c = cusp_family(3);
        let y = HomogeneousForm::monomial(1, (0, 1, 0), q(1)).unwrap();
        let x = HomogeneousForm::monomial(1, (1, 0, 0), q(1)).unwrap();
        assert_eq!(c.contact_order(&y).unwrap(), Order::Finite(3));
        assert_eq!(c.contact_order(&x).unwrap(), Order::Finite(2));
        match c.contact_order(c.equation()).unwrap() {
            Order::ZeroThrough(k) => assert!(k > 9),
            other => panic!("expected the ideal marker, got {:?}", other),
        }
    }

    #[test]
    fn semigroup_windows() {
        let c = cusp_family(3);
        let w = c.semigroup_window().unwrap();
        assert_eq!(w.members, vec![0, 2, 3, 4, 5, 6, 7, 8, 9]);
        assert_eq!(w.members.len(), 9);

        let c = cusp_family(4);
        let w = c.semigroup_window().unwrap();
        // numerical semigroup <3,4> cut at 16
        assert_eq!(
            w.members,
            vec![0, 3, 4, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16]
        );
        assert_eq!(w.members.len(), 14);

        let w = line_curve().semigroup_window().unwrap();
        assert_eq!(w.members, vec![0, 1]);
    }

    #[test]
    fn dimension_table_for_the_cubic() {
        let c = cusp_family(3);
        assert_eq!(c.system_dimension(3, 9).unwrap(), 1);
        assert_eq!(c.system_dimension(3, 8).unwrap(), 2);
        for j in 2..=9 {
            assert_eq!(c.system_dimension(3, j).unwrap(), 10 - j, "j = {}", j);
        }
        assert_eq!(c.system_dimension(3, 0).unwrap(), 9);
        assert!(c.system_dimension(3, 10).is_err());
    }

    #[test]
    fn small_degree_systems() {
        let c = cusp_family(3);
        let tangent = c.small_degree_system(1).unwrap().unwrap();
        let y = HomogeneousForm::monomial(1, (0, 1, 0), q(1)).unwrap();
        assert!(tangent.proportional_to(&y));

        let conic = c.small_degree_system(2).unwrap().unwrap();
        let y2 = HomogeneousForm::monomial(2, (0, 2, 0), q(1)).unwrap();
        assert!(conic.proportional_to(&y2));
        assert_eq!(c.contact_order(&conic).unwrap(), Order::Finite(6));

        let c4 = cusp_family(4);
        let tangent = c4.small_degree_system(1).unwrap().unwrap();
        let y = HomogeneousForm::monomial(1, (0, 1, 0), q(1)).unwrap();
        assert!(tangent.proportional_to(&y));
    }

    #[test]
    fn inequality_reports() {
        let c = cusp_family(3);
        let r = c.inequality_check(1).unwrap();
        assert_eq!((r.lhs, r.rhs), (3, 3));
        assert!(r.equality && r.max_contact_in_semigroup && r.system_nonempty);
        let r = c.inequality_check(2).unwrap();
        assert_eq!((r.lhs, r.rhs), (6, 6));
        assert!(r.system_nonempty);

        let r = cusp_family(4).inequality_check(1).unwrap();
        assert_eq!((r.lhs, r.rhs), (3, 3));
    }

    #[test]
    fn pencil_and_net_bases() {
        let c = cusp_family(3);
        let (f, g) = c.pencil_basis().unwrap();
        assert!(f.proportional_to(c.equation()));
        let y3 = HomogeneousForm::monomial(3, (0, 3, 0), q(1)).unwrap();
        assert!(g.proportional_to(&y3));

        let (_, _, h) = c.net_basis().unwrap();
        let xy2 = HomogeneousForm::monomial(3, (1, 2, 0), q(1)).unwrap();
        assert!(h.proportional_to(&xy2));
        assert_eq!(c.contact_order(&h).unwrap(), Order::Finite(8));

        let c = cusp_family(4);
        let (_, g) = c.pencil_basis().unwrap();
        let y4 = HomogeneousForm::monomial(4, (0, 4, 0), q(1)).unwrap();
        assert!(g.proportional_to(&y4));
        let (_, _, h) = c.net_basis().unwrap();
        assert_eq!(c.contact_order(&h).unwrap(), Order::Finite(15));
    }

    #[test]
    fn multiplicity_sequences_from_series() {
        let m = multiplicity_sequence_from_param(&t_pow(2, 30), &t_pow(3, 30)).unwrap();
        assert_eq!(m.minimal, vec![2]);
        assert_eq!(m.embedded, vec![2, 1, 1]);

        let m = multiplicity_sequence_from_param(&t_pow(3, 30), &t_pow(4, 30)).unwrap();
        assert_eq!(m.minimal, vec![3]);
        assert_eq!(m.embedded, vec![3, 1, 1, 1]);

        let m = multiplicity_sequence_from_param(&t_pow(1, 30), &t_pow(1, 30)).unwrap();
        assert_eq!(m.minimal, Vec::<u64>::new());
        assert_eq!(m.embedded, Vec::<u64>::new());

        // two Puiseux pairs: x = t^4, y = t^6 + t^7 has delta = 8, so the
        // minimal sequence is (4,2,2) (6+1+1 = 8)
        let y = t_pow(6, 40).add(&t_pow(7, 40));
        let m = multiplicity_sequence_from_param(&t_pow(4, 40), &y).unwrap();
        assert_eq!(m.minimal, vec![4, 2, 2]);
        assert_eq!(m.embedded, vec![4, 2, 2, 1, 1]);
    }

    #[test]
    fn dimension_equals_window_tail_count() {
        // dim X_{d,j} computed two ways: the echelon formula and the
        // independent window count
        for d in [3u32, 4] {
            let c = cusp_family(d);
            let w = c.semigroup_window().unwrap();
            let d2 = (d as usize) * (d as usize);
            for j in 0..=d2 {
                let dim = c.system_dimension(d, j).unwrap();
                assert_eq!(dim, w.count_in(j, d2), "d = {}, j = {}", d, j);
            }
        }
    }

    #[test]
    fn dimensions_above_the_curve_degree() {
        // for ell = 4 on the cubic the evaluation kernel is F times the
        // 3-dimensional space of linear forms; with contact 12 the system
        // is F*lines plus the order-12 representative: projective dim 3
        let c = cusp_family(3);
        assert_eq!(c.system_dimension(4, 0).unwrap(), 14);
        assert_eq!(c.system_dimension(4, 12).unwrap(), 3);
    }

    #[test]
    fn quartic_net_probe_is_birational() {
        let c = cusp_family(4);
        let (f, g, h) = c.net_basis().unwrap();
        let rep = crate::linsys::map_degree_probe(
            &[f, g, h],
            crate::linsys::ProbeConfig {
                trials: 4,
                seed: 11,
                max_degree: 5,
            },
        )
        .unwrap();
        assert_eq!(rep.modal_count, 1);
        assert!(rep.stable);
    }

    #[test]
    fn dimension_is_monotone_and_full_at_zero() {
        let c = cusp_family(3);
        for ell in 1..=3u32 {
            let full = c.system_dimension(ell, 0).unwrap();
            assert_eq!(full, (ell as usize) * (ell as usize + 3) / 2);
            let mut prev = full;
            for j in 1..=(ell as usize * 3) {
                let dim = c.system_dimension(ell, j).unwrap();
                assert!(dim <= prev, "ell = {}, j = {}", ell, j);
                prev = dim;
            }
        }
    }

    #[test]
    fn window_is_closed_under_addition() {
        for d in 3..=5u32 {
            let w = cusp_family(d).semigroup_window().unwrap();
            for &a in &w.members {
                for &b in &w.members {
                    if a + b <= w.bound {
                        assert!(w.contains(a + b), "d = {}: {} + {}", d, a, b);
                    }
                }
            }
        }
    }

    #[test]
    fn pencil_members_have_maximal_contact() {
        // every lambda F + mu G with mu != 0 keeps contact >= d^2
        let c = cusp_family(3);
        let (f, g) = c.pencil_basis().unwrap();
        for (lam, mu) in [(1i64, 1i64), (2, -3), (0, 1), (-5, 7)] {
            let member = f.scale(&q(lam)).add(&g.scale(&q(mu))).unwrap();
            match c.contact_order(&member).unwrap() {
                Order::Finite(o) => assert!(o >= 9, "contact {} for ({},{})", o, lam, mu),
                Order::ZeroThrough(_) => {}
            }
        }
    }

    #[test]
    fn contact_order_needs_enough_truncation() {
        let c = cusp_family(3); // truncation 17
        let mut g = HomogeneousForm::zero(7);
        g.add_term((7, 0, 0), q(1)).unwrap();
        assert!(matches!(
            c.contact_order(&g),
            Err(LinsysError::TruncationTooSmall { .. })
        ));
    }

    #[test]
    fn curve_documents() {
        let doc = CurveDoc::parse(
            r#"{"degree":3,"F":[{"exp":[0,2,1],"coef":"1"},{"exp":[3,0,0],"coef":"-1"}],
                "param":{"x":{"2":"1"},"y":{"3":"1"}},"truncation":20}"#,
        )
        .unwrap();
        let curve = doc.build().unwrap();
        assert_eq!(curve.degree(), 3);
        assert_eq!(curve.truncation(), 20);
        assert_eq!(
            curve.semigroup_window().unwrap().members,
            vec![0, 2, 3, 4, 5, 6, 7, 8, 9]
        );
    }
}
