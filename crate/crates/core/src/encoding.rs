//! JSON encodings.
//!
//! A polynomial is written as
//! `{"nvars":n,"vars":["x1",...,"xl","z"],"terms":[{"coeff":"p/q","exps":[...]}]}`
//! with terms in descending degree-lex order (leading term first) and
//! coefficients in lowest terms, sign on the numerator, `"p"` when the
//! denominator is 1. Decoding rejects anything that would not re-encode to
//! the same bytes.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::derivation::Derivation;
use crate::poly::{parse_rational, var_names, Poly, PolyError, UniPoly, MAX_VARS};
use crate::rootsystem::{Arrangement, LinearForm};
use crate::Family;

#[derive(Debug, Error)]
pub enum EncodingError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{0}")]
    Schema(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub coeff: String,
    pub exps: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyJson {
    pub nvars: usize,
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl PolyJson {
    fn with_vars(p: &Poly, vars: Vec<String>) -> Self {
        let terms = p
            .terms()
            .rev()
            .map(|(m, c)| TermJson { coeff: c.to_string(), exps: m.exponents(p.nvars()) })
            .collect();
        Self { nvars: p.nvars(), vars, terms }
    }

    fn decode(&self, expected_vars: Vec<String>) -> Result<Poly, EncodingError> {
        if self.nvars == 0 || self.nvars > MAX_VARS {
            return Err(PolyError::TooManyVariables(self.nvars).into());
        }
        if self.vars != expected_vars {
            return Err(EncodingError::Schema(format!("expected vars {expected_vars:?}, found {:?}", self.vars)));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if t.exps.len() != self.nvars {
                return Err(EncodingError::Schema(format!("term has {} exponents, expected {}", t.exps.len(), self.nvars)));
            }
            if t.exps.iter().any(|&e| e > u32::from(u16::MAX)) {
                return Err(EncodingError::Schema("exponent out of range".into()));
            }
            terms.push((t.exps.clone(), parse_rational(&t.coeff)?));
        }
        let p = Poly::from_terms(self.nvars, terms);
        if PolyJson::with_vars(&p, self.vars.clone()) != *self {
            return Err(EncodingError::Schema("terms are not canonical (order, duplicates or zero coefficients)".into()));
        }
        Ok(p)
    }
}

pub fn poly_to_json(p: &Poly) -> PolyJson {
    PolyJson::with_vars(p, var_names(p.nvars()))
}

pub fn poly_from_json(j: &PolyJson) -> Result<Poly, EncodingError> {
    j.decode(var_names(j.nvars))
}

pub fn poly_to_string(p: &Poly) -> String {
    serde_json::to_string(&poly_to_json(p)).expect("serializable")
}

pub fn poly_from_str(s: &str) -> Result<Poly, EncodingError> {
    poly_from_json(&serde_json::from_str(s)?)
}

/// A univariate polynomial uses the same layout with `"vars":["x"]`.
pub fn unipoly_to_json(p: &UniPoly) -> PolyJson {
    let mut terms = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if !num_traits::Zero::is_zero(c) {
            terms.push(TermJson { coeff: c.to_string(), exps: vec![k as u32] });
        }
    }
    PolyJson { nvars: 1, vars: vec!["x".into()], terms }
}

pub fn unipoly_from_json(j: &PolyJson) -> Result<UniPoly, EncodingError> {
    if j.nvars != 1 || j.vars != ["x"] {
        return Err(EncodingError::Schema("univariate polynomial must have vars [\"x\"]".into()));
    }
    let degree = j.terms.iter().map(|t| t.exps.first().copied().unwrap_or(0)).max().unwrap_or(0) as usize;
    let mut coeffs = vec![num_traits::Zero::zero(); if j.terms.is_empty() { 0 } else { degree + 1 }];
    for t in &j.terms {
        if t.exps.len() != 1 {
            return Err(EncodingError::Schema("univariate term needs one exponent".into()));
        }
        coeffs[t.exps[0] as usize] = parse_rational(&t.coeff)?;
    }
    let p = UniPoly::new(coeffs);
    if unipoly_to_json(&p) != *j {
        return Err(EncodingError::Schema("terms are not canonical".into()));
    }
    Ok(p)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementJson {
    pub family: Family,
    pub rank: usize,
    pub forms: Vec<Vec<String>>,
}

pub fn form_to_json(f: &LinearForm) -> Vec<String> {
    f.coeffs().iter().map(ToString::to_string).collect()
}

pub fn arrangement_to_json(a: &Arrangement) -> ArrangementJson {
    ArrangementJson {
        family: a.family(),
        rank: a.rank(),
        forms: a.forms().iter().map(form_to_json).collect(),
    }
}

/// Decodes an arrangement and checks it against the generated cone of the
/// same family and rank.
pub fn arrangement_from_json(j: &ArrangementJson) -> Result<Arrangement, EncodingError> {
    let a = crate::rootsystem::shi_cone(j.family, j.rank).map_err(|e| EncodingError::Schema(e.to_string()))?;
    if arrangement_to_json(&a) != *j {
        return Err(EncodingError::Schema("forms do not match the cone over the Shi arrangement".into()));
    }
    Ok(a)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationJson {
    pub label: String,
    pub z_coeff: PolyJson,
    pub x_coeffs: Vec<PolyJson>,
}

pub fn derivation_to_json(d: &Derivation) -> DerivationJson {
    DerivationJson {
        label: d.label.clone(),
        z_coeff: poly_to_json(&d.z_coeff),
        x_coeffs: d.x_coeffs.iter().map(poly_to_json).collect(),
    }
}

pub fn derivation_from_json(j: &DerivationJson) -> Result<Derivation, EncodingError> {
    let z = poly_from_json(&j.z_coeff)?;
    let xs = j.x_coeffs.iter().map(poly_from_json).collect::<Result<Vec<_>, _>>()?;
    if z.nvars() != xs.len() + 1 || xs.iter().any(|p| p.nvars() != z.nvars()) {
        return Err(EncodingError::Schema("coefficient rings do not match the number of ∂ slots".into()));
    }
    Ok(Derivation::new(j.label.clone(), z, xs))
}
