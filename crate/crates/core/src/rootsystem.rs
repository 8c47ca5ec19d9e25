//! Positive roots of `B_l` / `C_l` and the cone over the Shi arrangement.
//!
//! Forms live in `Q[x1..xl, z]` and are stored as `l + 1` coefficients.
//! The cone is `{z} ∪ {α} ∪ {α - z}` over the positive roots `α`, with
//! defining polynomial `Q = z · ∏ α (α - z)`.

use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poly::{int, Poly, Rational};
use crate::Family;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootSystemError {
    #[error("rank must be at least 1, got {0}")]
    InvalidRank(usize),
    #[error("linear form has no nonzero coefficient")]
    ZeroForm,
}

/// A linear form `Σ c_i x_i + c_z z`, with its first nonzero coefficient
/// positive.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearForm {
    coeffs: Vec<Rational>,
}

impl LinearForm {
    /// Builds a form, flipping the overall sign if the first nonzero
    /// coefficient is negative.
    pub fn new(mut coeffs: Vec<Rational>) -> Result<Self, RootSystemError> {
        let lead = coeffs.iter().find(|c| !c.is_zero()).ok_or(RootSystemError::ZeroForm)?;
        if lead.is_negative() {
            for c in &mut coeffs {
                *c = -c.clone();
            }
        }
        Ok(Self { coeffs })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self, RootSystemError> {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    /// The scalar multiple whose first nonzero coefficient is 1.
    pub fn normalized(&self) -> Vec<Rational> {
        let lead = self.coeffs.iter().find(|c| !c.is_zero()).expect("nonzero form").clone();
        self.coeffs.iter().map(|c| c / &lead).collect()
    }

    pub fn is_proportional_to(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }

    pub fn to_poly(&self) -> Poly {
        Poly::linear(&self.coeffs)
    }

    /// Solves `form = 0` for its first variable with nonzero coefficient:
    /// returns that slot and the polynomial it equals on the hyperplane.
    pub fn zero_locus(&self) -> (usize, Poly) {
        let pivot = self.coeffs.iter().position(|c| !c.is_zero()).expect("nonzero form");
        let lead = &self.coeffs[pivot];
        let rest: Vec<Rational> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i == pivot { Rational::zero() } else { -(c / lead) })
            .collect();
        (pivot, Poly::linear(&rest))
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_poly().fmt(f)
    }
}

impl fmt::Debug for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearForm({self})")
    }
}

/// Positive roots in a fixed order: `x_i` (type B) or `2x_i` (type C) for
/// `i = 1..l`, then `x_p - x_q`, then `x_p + x_q` for `p < q`.
pub fn positive_roots(family: Family, rank: usize) -> Result<Vec<LinearForm>, RootSystemError> {
    if rank < 1 {
        return Err(RootSystemError::InvalidRank(rank));
    }
    let nvars = rank + 1;
    let short = match family {
        Family::B => 1,
        Family::C => 2,
    };
    let unit = |entries: &[(usize, i64)]| {
        let mut c = vec![0i64; nvars];
        for &(i, v) in entries {
            c[i] = v;
        }
        LinearForm::from_ints(&c).expect("root is nonzero")
    };
    let mut roots: Vec<LinearForm> = (0..rank).map(|i| unit(&[(i, short)])).collect();
    for sign in [-1, 1] {
        for p in 0..rank {
            for q in p + 1..rank {
                roots.push(unit(&[(p, 1), (q, sign)]));
            }
        }
    }
    Ok(roots)
}

/// The cone over the Shi arrangement of type `family` and rank `l`.
#[derive(Clone, Debug, PartialEq)]
pub struct Arrangement {
    family: Family,
    rank: usize,
    forms: Vec<LinearForm>,
}

impl Arrangement {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nvars(&self) -> usize {
        self.rank + 1
    }

    pub fn forms(&self) -> &[LinearForm] {
        &self.forms
    }

    /// `h = 2l` for both families.
    pub fn coxeter_number(&self) -> usize {
        2 * self.rank
    }
}

/// Forms `[z] ++ [α] ++ [α - z]` in the order of [`positive_roots`].
pub fn shi_cone(family: Family, rank: usize) -> Result<Arrangement, RootSystemError> {
    let roots = positive_roots(family, rank)?;
    let nvars = rank + 1;
    let mut z = vec![Rational::zero(); nvars];
    z[rank] = Rational::one();
    let mut forms = vec![LinearForm::new(z).expect("z is nonzero")];
    forms.extend(roots.iter().cloned());
    for root in &roots {
        let mut c = root.coeffs().to_vec();
        c[rank] = -Rational::one();
        forms.push(LinearForm::new(c).expect("translated root is nonzero"));
    }
    Ok(Arrangement { family, rank, forms })
}

/// `Q = ∏ forms`, homogeneous of degree `2l² + 1`.
pub fn defining_poly(a: &Arrangement) -> Poly {
    a.forms
        .iter()
        .fold(Poly::one(a.nvars()), |acc, f| &acc * &f.to_poly())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn forms_as_ints(forms: &[LinearForm]) -> Vec<Vec<i64>> {
        forms
            .iter()
            .map(|f| f.coeffs().iter().map(|c| i64::try_from(c.to_integer()).unwrap()).collect())
            .collect()
    }

    #[test]
    fn positive_root_examples() {
        let b2 = positive_roots(Family::B, 2).unwrap();
        assert_eq!(forms_as_ints(&b2), vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, -1, 0], vec![1, 1, 0]]);
        let c1 = positive_roots(Family::C, 1).unwrap();
        assert_eq!(forms_as_ints(&c1), vec![vec![2, 0]]);
        assert_eq!(positive_roots(Family::B, 4).unwrap().len(), 16);
        assert_eq!(positive_roots(Family::B, 0), Err(RootSystemError::InvalidRank(0)));
    }

    #[test]
    fn root_counts() {
        for family in Family::ALL {
            for rank in 1..=6 {
                assert_eq!(positive_roots(family, rank).unwrap().len(), rank * rank);
            }
        }
    }

    #[test]
    fn cone_examples() {
        let b1 = shi_cone(Family::B, 1).unwrap();
        assert_eq!(forms_as_ints(b1.forms()), vec![vec![0, 1], vec![1, 0], vec![1, -1]]);
        let c1 = shi_cone(Family::C, 1).unwrap();
        assert_eq!(forms_as_ints(c1.forms()), vec![vec![0, 1], vec![2, 0], vec![2, -1]]);
        assert_eq!(shi_cone(Family::B, 2).unwrap().forms().len(), 9);
        assert_eq!(b1.coxeter_number(), 2);
        assert!(shi_cone(Family::C, 0).is_err());
    }

    #[test]
    fn defining_poly_examples() {
        let x = Poly::var(2, 0);
        let z = Poly::var(2, 1);
        let q = defining_poly(&shi_cone(Family::B, 1).unwrap());
        assert_eq!(q, &(&x.pow(2) * &z) - &(&x * &z.pow(2)));
        let q = defining_poly(&shi_cone(Family::C, 1).unwrap());
        assert_eq!(q, &(&x.pow(2) * &z).scale(&int(4)) - &(&x * &z.pow(2)).scale(&int(2)));
        let q3 = defining_poly(&shi_cone(Family::B, 3).unwrap());
        assert_eq!(q3.total_degree(), Some(19));
    }

    #[test]
    fn arrangement_invariants() {
        for family in Family::ALL {
            for rank in 1..=4 {
                let a = shi_cone(family, rank).unwrap();
                assert_eq!(a.forms().len(), 2 * rank * rank + 1);
                for (i, f) in a.forms().iter().enumerate() {
                    for g in &a.forms()[i + 1..] {
                        assert!(!f.is_proportional_to(g), "{f} ~ {g}");
                    }
                }
                if rank <= 3 {
                    let q = defining_poly(&a);
                    assert!(q.is_homogeneous((2 * rank * rank + 1) as u32));
                    for f in a.forms() {
                        let (slot, value) = f.zero_locus();
                        assert!(q.substitute_var(slot, &value).unwrap().is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn sign_normalization() {
        let f = LinearForm::from_ints(&[0, -2, 1]).unwrap();
        assert_eq!(forms_as_ints(&[f.clone()]), vec![vec![0, 2, -1]]);
        assert!(f.is_proportional_to(&LinearForm::from_ints(&[0, 4, -2]).unwrap()));
        assert_eq!(LinearForm::from_ints(&[0, 0]), Err(RootSystemError::ZeroForm));
    }
}
