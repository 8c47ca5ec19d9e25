//! Exact rational arithmetic and sparse multivariate polynomials.
//!
//! A [`Poly`] lives in `Q[x1, ..., xl, z]`: the last slot is always `z`.
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! degree-lex, so two polynomials are equal exactly when their maps are.

mod det;
mod monomial;
mod uni;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use det::{det, det_bareiss, det_cofactor};
pub use monomial::{Monomial, MAX_VARS};
pub use uni::UniPoly;

/// Arbitrary-precision fraction, always in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses a canonical `"p/q"` (or `"p"` when `q = 1`) coefficient string.
/// Non-canonical spellings such as `"2/4"` or `"3/-1"` are rejected so the
/// textual form stays unique.
pub fn parse_rational(s: &str) -> Result<Rational, PolyError> {
    let bad = || PolyError::BadRational(s.to_string());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let numer: BigInt = n.parse().map_err(|_| bad())?;
    let denom: BigInt = match d {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if !denom.is_positive() {
        return Err(bad());
    }
    let value = Rational::new(numer, denom);
    if value.to_string() != s {
        return Err(bad());
    }
    Ok(value)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("variable count mismatch: {left} vs {right}")]
    VarCountMismatch { left: usize, right: usize },
    #[error("not divisible: nonzero remainder {remainder}")]
    NotDivisible { remainder: Poly },
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("unknown variable index {index} in a ring with {nvars} variables")]
    UnknownVariable { index: usize, nvars: usize },
    #[error("matrix is not square ({rows} rows, a row of length {cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("empty matrix")]
    EmptyMatrix,
    #[error("unsupported number of variables: {0}")]
    TooManyVariables(usize),
    #[error("malformed rational {0:?}")]
    BadRational(String),
}

/// Variable names of a ring with `nvars` slots: `x1, ..., x{nvars-1}, z`.
pub fn var_names(nvars: usize) -> Vec<String> {
    let mut names: Vec<String> = (1..nvars).map(|i| format!("x{i}")).collect();
    if nvars > 0 {
        names.push("z".to_string());
    }
    names
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables are supported");
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, Monomial::one(), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        debug_assert!(m.last_var().map_or(true, |v| v < nvars));
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// The variable in slot `index` (`nvars - 1` is `z`).
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index {index} out of range");
        Self::monomial(nvars, Monomial::var(index, 1), Rational::one())
    }

    /// `Σ coeffs[i] · var_i`.
    pub fn linear(coeffs: &[Rational]) -> Self {
        let nvars = coeffs.len();
        let mut p = Self::zero(nvars);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                p.terms.insert(Monomial::var(i, 1), c.clone());
            }
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, combining
    /// repeated monomials and dropping zeros.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), nvars, "exponent vector length must equal nvars");
            p.add_term(Monomial::from_exponents(&exps), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending degree-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.last_key_value()
    }

    /// The coefficient if this polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_same_ring(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(PolyError::VarCountMismatch { left: self.nvars, right: other.nvars })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c.clone());
        }
        Ok(out)
    }

    /// Ring product. Coefficients are cleared to integers first so the inner
    /// loop accumulates `BigInt`s without repeated gcd reduction.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_same_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        if let Some(c) = self.as_constant() {
            return Ok(other.scale(&c));
        }
        if let Some(c) = other.as_constant() {
            return Ok(self.scale(&c));
        }
        let (lhs, dl) = self.integer_terms();
        let (rhs, dr) = other.integer_terms();
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(lhs.len() * rhs.len().min(64));
        for (ma, ca) in &lhs {
            for (mb, cb) in &rhs {
                let prod = ca * cb;
                acc.entry(ma.mul(mb))
                    .and_modify(|v| *v += &prod)
                    .or_insert(prod);
            }
        }
        let denom = dl * dr;
        let terms = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m, Rational::new(c, denom.clone())))
            .collect();
        Ok(Self { nvars: self.nvars, terms })
    }

    /// Coefficients multiplied by the lcm of their denominators.
    fn integer_terms(&self) -> (Vec<(Monomial, BigInt)>, BigInt) {
        let denom = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (*m, c.numer() * (&denom / c.denom())))
            .collect();
        (terms, denom)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Largest total degree of a term; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// True when every term has total degree `d`; the zero polynomial is
    /// homogeneous of every degree.
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    /// The common degree of all terms, if there is one. `None` for zero or
    /// for a non-homogeneous polynomial.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.total_degree()?;
        self.is_homogeneous(d).then_some(d)
    }

    /// Partial derivative with respect to the variable in slot `index`.
    pub fn derivative(&self, index: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exp(index);
            if e == 0 {
                continue;
            }
            let mut q = *m;
            q.take_var(index);
            let q = q.mul(&Monomial::var(index, e - 1));
            out.terms.insert(q, c * int(i64::from(e)));
        }
        out
    }

    /// Simultaneous substitution `var_i -> assignments[i]`. Variables not in
    /// the map are left alone.
    pub fn substitute(&self, assignments: &BTreeMap<usize, Poly>) -> Result<Self, PolyError> {
        for (&index, p) in assignments {
            if index >= self.nvars {
                return Err(PolyError::UnknownVariable { index, nvars: self.nvars });
            }
            self.check_same_ring(p)?;
        }
        if assignments.is_empty() {
            return Ok(self.clone());
        }
        let vars: Vec<usize> = assignments.keys().copied().collect();
        // Group terms by the exponents of the substituted variables so each
        // product of powers is formed once.
        let mut groups: BTreeMap<Vec<u32>, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut rest = *m;
            let key: Vec<u32> = vars.iter().map(|&v| rest.take_var(v)).collect();
            groups
                .entry(key)
                .or_insert_with(|| Poly::zero(self.nvars))
                .add_term(rest, c.clone());
        }
        let mut powers: Vec<Vec<Poly>> = vars.iter().map(|_| vec![Poly::one(self.nvars)]).collect();
        let mut out = Poly::zero(self.nvars);
        for (key, rest) in groups {
            let mut factor = Poly::one(self.nvars);
            for (slot, &e) in key.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut powers[slot];
                let value = &assignments[&vars[slot]];
                while table.len() <= e as usize {
                    let next = table.last().expect("nonempty") * value;
                    table.push(next);
                }
                factor = &factor * &table[e as usize];
            }
            out = &out + &(&rest * &factor);
        }
        Ok(out)
    }

    /// Convenience wrapper for a single substitution.
    pub fn substitute_var(&self, index: usize, value: &Poly) -> Result<Self, PolyError> {
        let mut map = BTreeMap::new();
        map.insert(index, value.clone());
        self.substitute(&map)
    }

    /// Evaluates at a point with one rational coordinate per variable.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::VarCountMismatch { left: self.nvars, right: point.len() });
        }
        let max_deg = self.terms.keys().map(Monomial::degree).max().unwrap_or(0) as usize;
        let powers: Vec<Vec<Rational>> = point
            .iter()
            .map(|v| {
                let mut row = Vec::with_capacity(max_deg + 1);
                row.push(Rational::one());
                for k in 1..=max_deg {
                    let next = &row[k - 1] * v;
                    row.push(next);
                }
                row
            })
            .collect();
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, row) in powers.iter().enumerate() {
                let e = m.exp(i) as usize;
                if e > 0 {
                    t *= &row[e];
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Division by `d` with respect to the degree-lex order: returns the
    /// quotient and remainder with `self = q·d + r`, where no term of `r` is
    /// divisible by the leading monomial of `d`.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly), PolyError> {
        self.check_same_ring(d)?;
        let (lead_m, lead_c) = match d.leading_term() {
            Some((m, c)) => (*m, c.clone()),
            None => return Err(PolyError::DivisionByZeroPoly),
        };
        let inv_lead = lead_c.recip();
        let mut work = self.terms.clone();
        let mut quotient = Poly::zero(self.nvars);
        let mut remainder = Poly::zero(self.nvars);
        while let Some((m, c)) = work.pop_last() {
            if lead_m.divides(&m) {
                let qm = lead_m.quotient_of(&m);
                let qc = &c * &inv_lead;
                for (dm, dc) in d.terms.iter().rev().skip(1) {
                    let key = dm.mul(&qm);
                    let delta = dc * &qc;
                    match work.entry(key) {
                        std::collections::btree_map::Entry::Vacant(e) => {
                            e.insert(-delta);
                        }
                        std::collections::btree_map::Entry::Occupied(mut e) => {
                            *e.get_mut() -= delta;
                            if e.get().is_zero() {
                                e.remove();
                            }
                        }
                    }
                }
                quotient.terms.insert(qm, qc);
            } else {
                remainder.terms.insert(m, c);
            }
        }
        Ok((quotient, remainder))
    }

    /// Returns `q` with `q·d = self`, or [`PolyError::NotDivisible`] carrying
    /// the nonzero remainder.
    pub fn exact_divide(&self, d: &Poly) -> Result<Poly, PolyError> {
        let (q, r) = self.div_rem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::NotDivisible { remainder: r })
        }
    }

    /// Text rendering with the given variable names and factor separator.
    pub fn render(&self, names: &[String], sep: &str) -> String {
        let mut out = String::new();
        if self.terms.is_empty() {
            return "0".to_string();
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let numer = c.numer().abs();
            let denom = c.denom();
            if m.is_one() {
                out.push_str(&numer.to_string());
            } else {
                if !numer.is_one() {
                    out.push_str(&numer.to_string());
                    out.push_str(sep);
                }
                m.write_factors(names, sep, &mut out).expect("writing to a String");
            }
            if !denom.is_one() {
                out.push('/');
                out.push_str(&denom.to_string());
            }
        }
        out
    }

    pub fn to_latex(&self) -> String {
        let names: Vec<String> = (1..self.nvars).map(|i| format!("x_{{{i}}}")).chain(["z".to_string()]).collect();
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let numer = c.numer().abs();
            let denom = c.denom();
            if !denom.is_one() {
                out.push_str(&format!("\\frac{{{numer}}}{{{denom}}}"));
            } else if !numer.is_one() || m.is_one() {
                out.push_str(&numer.to_string());
            }
            for (i, name) in names.iter().enumerate() {
                match m.exp(i) {
                    0 => {}
                    1 => out.push_str(name),
                    e => out.push_str(&format!("{name}^{{{e}}}")),
                }
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&var_names(self.nvars), "*"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.nvars, self)
    }
}

// Operator forms panic on a ring mismatch; use the `checked_*` methods when
// the operands come from outside.
impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("polynomial ring mismatch")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomial ring mismatch")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomial ring mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// `σ_k(args)`; `σ_0 = 1` and `σ_k = 0` once `k` exceeds the argument count.
pub fn elementary_symmetric(k: usize, args: &[Poly], nvars: usize) -> Poly {
    if k > args.len() {
        return Poly::zero(nvars);
    }
    // e[i] holds σ_i of the arguments seen so far.
    let mut e: Vec<Poly> = vec![Poly::zero(nvars); k + 1];
    e[0] = Poly::one(nvars);
    for (seen, a) in args.iter().enumerate() {
        let top = k.min(seen + 1);
        for i in (1..=top).rev() {
            let next = &e[i] + &(&e[i - 1] * a);
            e[i] = next;
        }
    }
    e.swap_remove(k)
}
