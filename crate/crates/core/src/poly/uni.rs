use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{int, Monomial, Poly, Rational};

/// Dense univariate polynomial in `x`, lowest degree first. The leading
/// coefficient is nonzero unless the polynomial is zero (empty vector).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    /// `a·x + b`.
    pub fn linear(a: i64, b: i64) -> Self {
        Self::new(vec![int(b), int(a)])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(Rational::one()), |acc, _| acc.mul(self))
    }

    /// Long division; `None` if `d` is zero.
    pub fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let lead = d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let c = &rem[top] / &lead;
            if !c.is_zero() {
                for (k, dc) in d.coeffs.iter().enumerate() {
                    rem[top - dd + k] -= &c * dc;
                }
                quot[top - dd] = c;
            }
            rem.pop();
        }
        Some((Self::new(quot), Self::new(rem)))
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `p(x + 1)`.
    pub fn shift_by_one(&self) -> Self {
        let step = Self::linear(1, 1);
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&step).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    /// `z^degree · p(x/z)` embedded in a ring with `nvars` slots, `x` placed in
    /// slot `x_slot` and `z` in the last slot. `degree` must be at least the
    /// degree of `p`.
    pub fn homogenize_into(&self, degree: u32, nvars: usize, x_slot: usize) -> Poly {
        assert!(x_slot + 1 < nvars, "x slot must precede the z slot");
        assert!(self.degree().map_or(true, |d| d as u32 <= degree));
        let z_slot = nvars - 1;
        let mut p = Poly::zero(nvars);
        for (k, c) in self.coeffs.iter().enumerate() {
            let k = k as u32;
            let m = Monomial::var(x_slot, k).mul(&Monomial::var(z_slot, degree - k));
            p.add_term(m, c.clone());
        }
        p
    }

    /// Embeds `p(x)` with `x` in slot `x_slot`.
    pub fn embed(&self, nvars: usize, x_slot: usize) -> Poly {
        let mut p = Poly::zero(nvars);
        for (k, c) in self.coeffs.iter().enumerate() {
            p.add_term(Monomial::var(x_slot, k as u32), c.clone());
        }
        p
    }

    pub fn to_latex(&self) -> String {
        self.as_poly().to_latex().replace("x_{1}", "x")
    }

    /// The same polynomial as a one-slot [`Poly`] (the slot is rendered as `x`
    /// by [`UniPoly`]'s own formatting).
    pub fn as_poly(&self) -> Poly {
        let mut p = Poly::zero(2);
        for (k, c) in self.coeffs.iter().enumerate() {
            p.add_term(Monomial::var(0, k as u32), c.clone());
        }
        p
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let numer = c.numer().abs();
            if k == 0 || !numer.is_one() {
                write!(f, "{numer}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
            if !c.denom().is_one() {
                write!(f, "/{}", c.denom())?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn trims_and_displays() {
        let p = UniPoly::new(vec![rat(0, 1), rat(2, 3), rat(0, 1), rat(1, 3), rat(0, 1)]);
        assert_eq!(p.degree(), Some(3));
        assert_eq!(p.to_string(), "x^3/3 + 2x/3");
        assert_eq!(UniPoly::from_ints(&[0, 2]).to_string(), "2x");
        assert_eq!(UniPoly::zero().to_string(), "0");
    }

    #[test]
    fn shift_and_division() {
        let p = UniPoly::from_ints(&[0, 0, 1]);
        assert_eq!(p.shift_by_one(), UniPoly::from_ints(&[1, 2, 1]));
        let num = UniPoly::linear(1, 1).pow(3).add(&UniPoly::x().pow(3));
        let (q, r) = num.div_rem(&UniPoly::linear(2, 1)).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, UniPoly::from_ints(&[1, 1, 1]));
        assert!(num.div_rem(&UniPoly::zero()).is_none());
    }

    #[test]
    fn homogenize_embeds() {
        let p = UniPoly::new(vec![rat(0, 1), rat(2, 3), rat(0, 1), rat(1, 3)]);
        let h = p.homogenize_into(3, 2, 0);
        assert_eq!(h.to_string(), "x1^3/3 + 2*x1*z^2/3");
    }
}
