use std::fmt;

/// Largest number of variables a [`Monomial`] can carry (`x1..x7` plus `z`).
pub const MAX_VARS: usize = 8;

/// Exponent vector over at most [`MAX_VARS`] variables.
///
/// The derived ordering compares total degree first and then the exponents
/// lexicographically with `x1 > x2 > ... > z`, which is the degree-lex order
/// every [`Poly`](super::Poly) is kept in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    degree: u32,
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    /// Builds a monomial from an exponent slice. Panics if the slice is longer
    /// than [`MAX_VARS`] or an exponent exceeds `u16::MAX`.
    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "at most {MAX_VARS} variables are supported");
        let mut m = Self::default();
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u16::try_from(e).expect("exponent out of range");
            m.degree += e;
        }
        m
    }

    pub fn var(index: usize, exp: u32) -> Self {
        let mut m = Self::default();
        m.exps[index] = u16::try_from(exp).expect("exponent out of range");
        m.degree = exp;
        m
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn exp(&self, index: usize) -> u32 {
        u32::from(self.exps[index])
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| u32::from(e)).collect()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Index of the highest-numbered variable with a nonzero exponent, if any.
    pub fn last_var(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e != 0)
    }

    #[inline]
    pub fn mul(&self, other: &Self) -> Self {
        let mut exps = self.exps;
        for (a, b) in exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        Self { degree: self.degree + other.degree, exps }
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(&self, other: &Self) -> Self {
        debug_assert!(self.divides(other));
        let mut exps = other.exps;
        for (a, b) in exps.iter_mut().zip(self.exps.iter()) {
            *a -= *b;
        }
        Self { degree: other.degree - self.degree, exps }
    }

    /// Sets the exponent of `index` to zero and returns the removed exponent.
    pub fn take_var(&mut self, index: usize) -> u32 {
        let e = self.exps[index];
        self.exps[index] = 0;
        self.degree -= u32::from(e);
        u32::from(e)
    }

    pub(crate) fn write_factors(&self, names: &[String], sep: &str, f: &mut impl fmt::Write) -> fmt::Result {
        let mut first = true;
        for (i, name) in names.iter().enumerate() {
            let e = self.exps[i];
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str(sep)?;
            }
            first = false;
            if e == 1 {
                f.write_str(name)?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.last_var().map_or(0, |i| i + 1);
        f.debug_list().entries(&self.exps[..last]).finish()
    }
}
