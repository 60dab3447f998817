//! Built-in curve fixtures: the line, the conic, and the z y^(d-1) = x^d
//! family. Expected values are re-derived at load time, never trusted.

use num::rational::BigRational;
use num::One;
use thiserror::Error;

use crate::cusp::CuspProfile;
use crate::linsys::curve::default_truncation;
use crate::linsys::{HomogeneousForm, LinsysError, LocalCurve, TruncatedSeries};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("catalog entry `{name}` failed validation: {detail}")]
    Validation { name: String, detail: String },
    #[error(transparent)]
    Linsys(#[from] LinsysError),
    #[error("no catalog entry named `{0}`")]
    NotFound(String),
}

pub struct CatalogEntry {
    pub name: String,
    pub summary: String,
    pub degree: u32,
    pub curve: LocalCurve,
    pub minseq: Vec<u64>,
    pub nu_tilde: i64,
    pub nu_emb: i64,
}

fn one_monomial(exp: usize, truncation: usize) -> TruncatedSeries {
    TruncatedSeries::monomial(exp, BigRational::one(), truncation)
}

fn family_curve(d: u32) -> Result<LocalCurve, LinsysError> {
    let mut f = HomogeneousForm::zero(d);
    f.add_term((0, d - 1, 1), BigRational::one())?;
    f.add_term((d, 0, 0), -BigRational::one())?;
    let k = default_truncation(d);
    LocalCurve::new(f, one_monomial(d as usize - 1, k), one_monomial(d as usize, k))
}

fn line_curve() -> Result<LocalCurve, LinsysError> {
    let f = HomogeneousForm::monomial(1, (0, 1, 0), BigRational::one())?;
    let k = default_truncation(1);
    LocalCurve::new(f, one_monomial(1, k), TruncatedSeries::zero(k))
}

fn validate(entry: CatalogEntry) -> Result<CatalogEntry, CatalogError> {
    let derived = entry
        .curve
        .multiplicities()
        .map_err(|e| CatalogError::Validation {
            name: entry.name.clone(),
            detail: e.to_string(),
        })?;
    if derived.minimal != entry.minseq {
        return Err(CatalogError::Validation {
            name: entry.name,
            detail: format!(
                "recorded minimal sequence {:?} but the series give {:?}",
                entry.minseq, derived.minimal
            ),
        });
    }
    let profile = CuspProfile::new(entry.degree as u64, derived.minimal.clone()).map_err(|e| {
        CatalogError::Validation {
            name: entry.name.clone(),
            detail: e.to_string(),
        }
    })?;
    if profile.nu_tilde() != entry.nu_tilde || profile.nu_emb() != entry.nu_emb {
        return Err(CatalogError::Validation {
            name: entry.name,
            detail: format!(
                "recorded nu ({}, {}) but the profile gives ({}, {})",
                entry.nu_tilde,
                entry.nu_emb,
                profile.nu_tilde(),
                profile.nu_emb()
            ),
        });
    }
    Ok(entry)
}

/// All fixtures, each revalidated against the series oracle.
pub fn load() -> Result<Vec<CatalogEntry>, CatalogError> {
    let mut out = Vec::new();
    out.push(validate(CatalogEntry {
        name: "line".into(),
        summary: "a line through the distinguished point".into(),
        degree: 1,
        curve: line_curve()?,
        minseq: vec![],
        nu_tilde: 1,
        nu_emb: 1,
    })?);
    out.push(validate(CatalogEntry {
        name: "conic".into(),
        summary: "smooth conic z*y = x^2 with distinguished point (0:0:1)".into(),
        degree: 2,
        curve: family_curve(2)?,
        minseq: vec![],
        nu_tilde: 4,
        nu_emb: 4,
    })?);
    for d in 3..=8u32 {
        out.push(validate(CatalogEntry {
            name: format!("cusp-{}", d),
            summary: format!(
                "z*y^{} = x^{} with the (t^{}, t^{}) branch at (0:0:1)",
                d - 1,
                d,
                d - 1,
                d
            ),
            degree: d,
            curve: family_curve(d)?,
            minseq: vec![d as u64 - 1],
            nu_tilde: 2 * d as i64 - 1,
            nu_emb: d as i64,
        })?);
    }
    Ok(out)
}

pub fn find(name: &str) -> Result<CatalogEntry, CatalogError> {
    load()?
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| CatalogError::NotFound(name.to_owned()))
}
