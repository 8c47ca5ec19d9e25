//! Certification of the constructed basis.
//!
//! * membership: `θ(f)` must be divisible by `f` for every form `f` of the
//!   cone. Each check substitutes the hyperplane `f = 0` into `θ(f)` and
//!   tests for zero; the quotient (or remainder) from exact division is kept
//!   as the witness.
//! * Saito's criterion: `l + 1` homogeneous derivations in the module whose
//!   degrees sum to `deg Q` form a basis iff the determinant of their
//!   coefficient matrix is a nonzero constant multiple of `Q`.
//! * the two congruences satisfied by the homogenized Bernoulli-like
//!   polynomials modulo `x_p + εx_q` and `x_p + εx_q - z`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::bernoulli::{homogenize, BernoulliError, BernoulliKey};
use crate::derivation::{self, Derivation, DerivationError};
use crate::encoding::{form_to_json, poly_to_json, PolyJson};
use crate::poly::{det, int, Poly, PolyError, Rational};
use crate::rootsystem::{self, defining_poly, Arrangement, LinearForm, RootSystemError};
use crate::Family;

/// Default seed for probabilistic Saito checks.
pub const DEFAULT_SEED: u64 = 0;
/// Default number of sample points for probabilistic Saito checks.
pub const DEFAULT_TRIALS: usize = 8;
/// Sample coordinates are drawn uniformly from `[-SAMPLE_BOUND, SAMPLE_BOUND]`.
pub const SAMPLE_BOUND: i64 = 1_000_000;

const MAX_RESAMPLES: usize = 1_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("derivation has {derivation} variables but the arrangement has {arrangement}")]
    RingMismatch { derivation: usize, arrangement: usize },
    #[error("epsilon must be -1, 0 or 1, got {0}")]
    InvalidEpsilon(i8),
    #[error("indices p = {p}, q = {q} invalid for rank {rank} (need 1 <= p, q <= rank and p != q when epsilon != 0)")]
    InvalidIndices { p: usize, q: usize, rank: usize },
    #[error(transparent)]
    Bernoulli(#[from] BernoulliError),
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error(transparent)]
    Derivation(#[from] DerivationError),
}

#[derive(Debug, Clone)]
pub struct FormCheck {
    pub form: LinearForm,
    pub divisible: bool,
    /// The quotient `θ(f)/f` when divisible, otherwise the remainder.
    pub witness: Poly,
}

#[derive(Debug, Clone)]
pub struct MembershipReport {
    pub derivation_label: String,
    pub checks: Vec<FormCheck>,
}

impl MembershipReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.divisible)
    }

    pub fn failures(&self) -> impl Iterator<Item = &FormCheck> {
        self.checks.iter().filter(|c| !c.divisible)
    }
}

pub fn check_membership(d: &Derivation, a: &Arrangement) -> Result<MembershipReport, VerifyError> {
    if d.nvars() != a.nvars() {
        return Err(VerifyError::RingMismatch { derivation: d.nvars(), arrangement: a.nvars() });
    }
    let checks = a
        .forms()
        .iter()
        .map(|form| {
            let f = form.to_poly();
            let image = d.apply(&f);
            let (slot, value) = form.zero_locus();
            let reduced = image.substitute_var(slot, &value).expect("slot is a ring variable");
            let divisible = reduced.is_zero();
            let witness = match image.exact_divide(&f) {
                Ok(q) => {
                    debug_assert!(divisible, "division succeeded but {form} does not vanish");
                    q
                }
                Err(PolyError::NotDivisible { remainder }) => {
                    debug_assert!(!divisible, "substitution vanished but division left {remainder}");
                    remainder
                }
                Err(e) => unreachable!("linear forms are nonzero: {e}"),
            };
            FormCheck { form: form.clone(), divisible, witness }
        })
        .collect();
    Ok(MembershipReport { derivation_label: d.label.clone(), checks })
}

/// Checks both congruences for `B̄_{r,s}` at `x_p`, `x_q` (1-based) in the ring
/// of rank `rank`:
///
/// * `B̄(x_p,z) + εB̄(x_q,z) ≡ 0 (mod x_p + εx_q)`
/// * `B̄(x_p,z) + εB̄(x_q,z) ≡ (x_p + εx_q) · K · (x_p · εx_q)^s (mod x_p + εx_q - z)`
///
/// where `K = (x_p^r - (εx_q)^r)/(x_p - εx_q)` for type B and
/// `K = x_p^(r-1) + (εx_q)^(r-1)` for type C. When `ε = 0`, `q` only names
/// an unused slot.
pub fn congruence_check(family: Family, r: u32, s: u32, p: usize, q: usize, eps: i8, rank: usize) -> Result<bool, VerifyError> {
    if !(-1..=1).contains(&eps) {
        return Err(VerifyError::InvalidEpsilon(eps));
    }
    if p < 1 || q < 1 || p > rank || q > rank || (eps != 0 && p == q) {
        return Err(VerifyError::InvalidIndices { p, q, rank });
    }
    let key = BernoulliKey::new(family, r, s)?;
    let nvars = rank + 1;
    let (ps, qs, zs) = (p - 1, q - 1, rank);
    let e = int(i64::from(eps));
    let xp = Poly::var(nvars, ps);
    let eq = Poly::var(nvars, qs).scale(&e);
    let lhs = &homogenize(key, nvars, ps) + &homogenize(key, nvars, qs).scale(&e);

    // Modulo x_p + εx_q: x_p -> -εx_q.
    let first = lhs.substitute_var(ps, &-&eq).expect("slot in range");
    if !first.is_zero() {
        return Ok(false);
    }

    // Modulo x_p + εx_q - z: z -> x_p + εx_q.
    let sum = &xp + &eq;
    let reduced = lhs.substitute_var(zs, &sum).expect("slot in range");
    let kernel = match family {
        Family::B => (&xp.pow(r) - &eq.pow(r))
            .exact_divide(&(&xp - &eq))
            .expect("x^r - y^r is divisible by x - y"),
        Family::C => &xp.pow(r - 1) + &eq.pow(r - 1),
    };
    let expected = &(&sum * &kernel) * &(&xp * &eq).pow(s);
    Ok(reduced == expected)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SaitoMode {
    Exact,
    Probabilistic { seed: u64, trials: usize },
}

impl SaitoMode {
    pub fn probabilistic_default() -> Self {
        SaitoMode::Probabilistic { seed: DEFAULT_SEED, trials: DEFAULT_TRIALS }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SaitoMode::Exact => "exact",
            SaitoMode::Probabilistic { .. } => "probabilistic",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SaitoError {
    #[error("expected {expected} derivations, got {found}")]
    BasisSize { expected: usize, found: usize },
    #[error("degrees {degrees:?} cannot sum to deg Q = {degree_q}")]
    DegreeMismatch { degrees: Vec<Option<u32>>, degree_q: u32 },
    #[error("determinant is not a nonzero constant multiple of Q: {reason}")]
    NotProportional { reason: String },
    #[error("derivation ring does not match the arrangement")]
    RingMismatch,
    #[error("could not find a sample point off the arrangement")]
    Sampling,
}

#[derive(Debug, Clone)]
pub struct SaitoCertificate {
    pub mode: SaitoMode,
    /// The determinant (exact mode only).
    pub determinant: Option<Poly>,
    /// The expanded defining polynomial (exact mode only).
    pub q: Option<Poly>,
    pub constant_c: Rational,
    pub degree_det: u32,
    pub degree_q: u32,
}

fn coefficient_matrix(basis: &[Derivation]) -> Vec<Vec<Poly>> {
    basis.iter().map(Derivation::row).collect()
}

/// Saito's criterion. Rows are the derivations in the given order, columns
/// `(∂_z, ∂_1, ..., ∂_l)`; the sign of `c` follows from that layout.
pub fn saito_check(basis: &[Derivation], a: &Arrangement, mode: SaitoMode) -> Result<SaitoCertificate, SaitoError> {
    let n = a.nvars();
    if basis.len() != n {
        return Err(SaitoError::BasisSize { expected: n, found: basis.len() });
    }
    if basis.iter().any(|d| d.nvars() != n) {
        return Err(SaitoError::RingMismatch);
    }
    let degree_q = a.forms().len() as u32;
    let degrees: Vec<Option<u32>> = basis.iter().map(Derivation::degree).collect();
    let total: Option<u32> = degrees.iter().copied().sum();
    if total != Some(degree_q) {
        return Err(SaitoError::DegreeMismatch { degrees, degree_q });
    }
    let degree_det = degree_q;
    let matrix = coefficient_matrix(basis);
    match mode {
        SaitoMode::Exact => {
            let determinant = det(&matrix).expect("square matrix over one ring");
            if determinant.is_zero() {
                return Err(SaitoError::NotProportional { reason: "determinant is zero".into() });
            }
            let q = defining_poly(a);
            let quotient = determinant.exact_divide(&q).map_err(|e| SaitoError::NotProportional { reason: e.to_string() })?;
            let c = quotient
                .as_constant()
                .ok_or_else(|| SaitoError::NotProportional { reason: format!("quotient {quotient} is not constant") })?;
            Ok(SaitoCertificate { mode, determinant: Some(determinant), q: Some(q), constant_c: c, degree_det, degree_q })
        }
        SaitoMode::Probabilistic { seed, trials } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut ratio: Option<Rational> = None;
            for _ in 0..trials.max(1) {
                let (point, q_value) = sample_point(&mut rng, a)?;
                let numeric: Vec<Vec<Rational>> = matrix
                    .iter()
                    .map(|row| row.iter().map(|e| e.evaluate(&point).expect("point has one coordinate per variable")).collect())
                    .collect();
                let value = det_rational(numeric) / q_value;
                if value.is_zero() {
                    return Err(SaitoError::NotProportional { reason: "determinant vanishes at a sample point off the arrangement".into() });
                }
                match &ratio {
                    None => ratio = Some(value),
                    Some(prev) if *prev != value => {
                        return Err(SaitoError::NotProportional { reason: format!("ratios {prev} and {value} differ") });
                    }
                    _ => {}
                }
            }
            Ok(SaitoCertificate {
                mode,
                determinant: None,
                q: None,
                constant_c: ratio.expect("at least one trial"),
                degree_det,
                degree_q,
            })
        }
    }
}

/// Draws a point with integer coordinates off every hyperplane; returns it
/// together with `Q(point)`.
fn sample_point(rng: &mut ChaCha8Rng, a: &Arrangement) -> Result<(Vec<Rational>, Rational), SaitoError> {
    for _ in 0..MAX_RESAMPLES {
        let point: Vec<Rational> = (0..a.nvars()).map(|_| int(rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND))).collect();
        let mut q_value = Rational::one();
        for f in a.forms() {
            let v: Rational = f.coeffs().iter().zip(&point).map(|(c, x)| c * x).sum();
            q_value *= v;
        }
        if !q_value.is_zero() {
            return Ok((point, q_value));
        }
    }
    Err(SaitoError::Sampling)
}

/// Gaussian elimination over `Q`.
fn det_rational(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut acc = Rational::one();
    for k in 0..n {
        let Some(pivot) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Rational::zero();
        };
        if pivot != k {
            m.swap(pivot, k);
            acc = -acc;
        }
        let p = m[k][k].clone();
        acc *= &p;
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let factor = &m[i][k] / &p;
            for j in k..n {
                let delta = &factor * &m[k][j];
                m[i][j] -= delta;
            }
        }
    }
    acc
}

/// Result of verifying one claimed basis against one cone.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub family: Family,
    pub rank: usize,
    pub membership: Vec<MembershipReport>,
    pub saito: Result<SaitoCertificate, SaitoError>,
    pub restriction_identity: bool,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.membership.iter().all(MembershipReport::passed) && self.saito.is_ok() && self.restriction_identity
    }

    pub fn constant_c(&self) -> Option<&Rational> {
        self.saito.as_ref().ok().map(|s| &s.constant_c)
    }

    pub fn to_json(&self) -> CertificateJson {
        let membership = self
            .membership
            .iter()
            .map(|m| MembershipJson {
                label: m.derivation_label.clone(),
                pass: m.passed(),
                checks: m
                    .checks
                    .iter()
                    .map(|c| FormCheckJson {
                        form: form_to_json(&c.form),
                        divisible: c.divisible,
                        remainder: (!c.divisible).then(|| poly_to_json(&c.witness)),
                    })
                    .collect(),
            })
            .collect();
        let degree_q = self.membership.first().map_or(0, |m| m.checks.len() as u32);
        let saito = match &self.saito {
            Ok(s) => SaitoJson {
                mode: s.mode.name().to_string(),
                c: Some(s.constant_c.to_string()),
                degree_det: s.degree_det,
                degree_q: s.degree_q,
                trials: match s.mode {
                    SaitoMode::Probabilistic { trials, .. } => Some(trials),
                    SaitoMode::Exact => None,
                },
                seed: match s.mode {
                    SaitoMode::Probabilistic { seed, .. } => Some(seed),
                    SaitoMode::Exact => None,
                },
                error: None,
            },
            Err(e) => SaitoJson {
                mode: String::new(),
                c: None,
                degree_det: 0,
                degree_q,
                trials: None,
                seed: None,
                error: Some(e.to_string()),
            },
        };
        CertificateJson {
            family: self.family,
            rank: self.rank,
            membership,
            saito,
            restriction_identity: self.restriction_identity,
            status: if self.passed() { "PASS" } else { "FAIL" }.to_string(),
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "cone over the Shi arrangement of type {}{}", self.family, self.rank)?;
        for m in &self.membership {
            let failed: Vec<String> = m.failures().map(|c| c.form.to_string()).collect();
            if failed.is_empty() {
                writeln!(f, "  membership {}: pass ({} forms)", m.derivation_label, m.checks.len())?;
            } else {
                writeln!(f, "  membership {}: FAIL at {}", m.derivation_label, failed.join(", "))?;
            }
        }
        match &self.saito {
            Ok(s) => writeln!(f, "  saito ({}): det = c * Q with c = {}", s.mode.name(), s.constant_c)?,
            Err(e) => writeln!(f, "  saito: FAIL ({e})")?,
        }
        writeln!(f, "  restriction identity: {}", if self.restriction_identity { "pass" } else { "FAIL" })?;
        write!(f, "status: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FormCheckJson {
    pub form: Vec<String>,
    pub divisible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub remainder: Option<PolyJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MembershipJson {
    pub label: String,
    pub pass: bool,
    pub checks: Vec<FormCheckJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SaitoJson {
    pub mode: String,
    pub c: Option<String>,
    pub degree_det: u32,
    pub degree_q: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateJson {
    pub family: Family,
    pub rank: usize,
    pub membership: Vec<MembershipJson>,
    pub saito: SaitoJson,
    pub restriction_identity: bool,
    pub status: String,
}

/// True when `basis[j]` restricted to `z = 0` equals the closed form for
/// every `j = 1..l` (times 2 for type C).
pub fn restriction_identity(family: Family, rank: usize, basis: &[Derivation]) -> Result<bool, VerifyError> {
    let factor = match family {
        Family::B => int(1),
        Family::C => int(2),
    };
    for j in 1..=rank {
        let Some(d) = basis.get(j) else {
            return Ok(false);
        };
        if d.nvars() != rank + 1 {
            return Ok(false);
        }
        let expected = derivation::solomon_terao_restriction(j, rank)?.scale(&factor);
        let got = d.restrict_z0();
        if got.z_coeff != expected.z_coeff || got.x_coeffs != expected.x_coeffs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Runs membership for every derivation, the restriction identity and
/// Saito's criterion on a given candidate basis `[θ_E, phi_1, ..., phi_l]`.
pub fn verify_basis(family: Family, rank: usize, basis: &[Derivation], mode: SaitoMode) -> Result<Certificate, VerifyError> {
    let a = rootsystem::shi_cone(family, rank)?;
    let membership = basis
        .iter()
        .map(|d| check_membership(d, &a))
        .collect::<Result<Vec<_>, _>>()?;
    let restriction_identity = restriction_identity(family, rank, basis)?;
    let saito = saito_check(basis, &a, mode);
    Ok(Certificate { family, rank, membership, saito, restriction_identity })
}

/// Builds `θ_E, phi_1, ..., phi_l` for the family and rank and verifies it.
pub fn full_verify(family: Family, rank: usize, mode: SaitoMode) -> Result<Certificate, VerifyError> {
    let basis = derivation::basis(family, rank)?;
    verify_basis(family, rank, &basis, mode)
}

/// Runs [`congruence_check`] over `1 <= r <= max_r`, `0 <= s <= max_s`, every
/// `ε` and every admissible index pair of the given rank. Returns the failing
/// cases as `(r, s, p, q, ε)`.
pub fn congruence_sweep(family: Family, rank: usize, max_r: u32, max_s: u32) -> Result<(usize, Vec<(u32, u32, usize, usize, i8)>), VerifyError> {
    let mut cases = BTreeMap::new();
    for p in 1..=rank {
        cases.insert((p, p, 0i8), ());
        for q in p + 1..=rank {
            cases.insert((p, q, -1), ());
            cases.insert((p, q, 1), ());
        }
    }
    let mut checked = 0;
    let mut failures = Vec::new();
    for r in 1..=max_r {
        for s in 0..=max_s {
            for &(p, q, eps) in cases.keys() {
                checked += 1;
                if !congruence_check(family, r, s, p, q, eps, rank)? {
                    failures.push((r, s, p, q, eps));
                }
            }
        }
    }
    Ok((checked, failures))
}
