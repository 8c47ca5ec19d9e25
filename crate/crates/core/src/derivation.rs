//! Derivations of `Q[x1..xl, z]`: the Euler derivation and the homogeneous
//! degree-`2l` derivations `phi_j` built from the homogenized Bernoulli-like
//! polynomials.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;
use thiserror::Error;

use crate::bernoulli::{homogenize, BernoulliKey};
use crate::poly::{elementary_symmetric, int, rat, Poly, Rational};
use crate::Family;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationError {
    #[error("rank must be at least 1, got {0}")]
    InvalidRank(usize),
    #[error("index j = {j} out of range 1..={rank}")]
    IndexOutOfRange { j: usize, rank: usize },
}

/// `z_coeff ∂_z + Σ x_coeffs[i] ∂_{i+1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct Derivation {
    pub label: String,
    pub z_coeff: Poly,
    pub x_coeffs: Vec<Poly>,
}

impl Derivation {
    pub fn new(label: impl Into<String>, z_coeff: Poly, x_coeffs: Vec<Poly>) -> Self {
        let nvars = x_coeffs.len() + 1;
        assert_eq!(z_coeff.nvars(), nvars, "z coefficient lives in the wrong ring");
        assert!(x_coeffs.iter().all(|c| c.nvars() == nvars), "x coefficient lives in the wrong ring");
        Self { label: label.into(), z_coeff, x_coeffs }
    }

    pub fn rank(&self) -> usize {
        self.x_coeffs.len()
    }

    pub fn nvars(&self) -> usize {
        self.x_coeffs.len() + 1
    }

    /// Coefficients in matrix-column order `(∂_z, ∂_1, ..., ∂_l)`.
    pub fn row(&self) -> Vec<Poly> {
        std::iter::once(self.z_coeff.clone()).chain(self.x_coeffs.iter().cloned()).collect()
    }

    /// Common degree of all nonzero coefficients, if the derivation is
    /// homogeneous and nonzero.
    pub fn degree(&self) -> Option<u32> {
        let mut degree = None;
        for c in std::iter::once(&self.z_coeff).chain(&self.x_coeffs) {
            if c.is_zero() {
                continue;
            }
            let d = c.homogeneous_degree()?;
            match degree {
                None => degree = Some(d),
                Some(prev) if prev != d => return None,
                _ => {}
            }
        }
        degree
    }

    /// `θ(p) = z_coeff ∂p/∂z + Σ x_coeff_i ∂p/∂x_i`.
    pub fn apply(&self, p: &Poly) -> Poly {
        assert_eq!(p.nvars(), self.nvars(), "derivation applied in the wrong ring");
        let z = self.rank();
        let mut out = &self.z_coeff * &p.derivative(z);
        for (i, c) in self.x_coeffs.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &(c * &p.derivative(i));
            }
        }
        out
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, label: impl Into<String>, mut f: impl FnMut(&Poly) -> Poly) -> Self {
        Self::new(label, f(&self.z_coeff), self.x_coeffs.iter().map(&mut f).collect())
    }

    /// Restriction to `z = 0`.
    pub fn restrict_z0(&self) -> Self {
        let zero = Poly::zero(self.nvars());
        let z = self.rank();
        self.map_coeffs(format!("{}|z=0", self.label), |c| {
            c.substitute_var(z, &zero).expect("z is a ring variable")
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map_coeffs(self.label.clone(), |p| p.scale(c))
    }

    /// Action of a signed permutation `w` (`x_i -> signs[i] · x_{perm[i]}`) on
    /// the derivation: `(w·θ)(g) = w(θ(w⁻¹ g))`.
    pub fn act(&self, w: &SignedPermutation) -> Self {
        let nvars = self.nvars();
        let substitution = w.substitution(nvars);
        let image = |p: &Poly| p.substitute(&substitution).expect("substitution stays in the ring");
        let mut x_coeffs = vec![Poly::zero(nvars); self.rank()];
        for (i, c) in self.x_coeffs.iter().enumerate() {
            let moved = image(c);
            x_coeffs[w.perm[i]] = if w.signs[i] < 0 { -moved } else { moved };
        }
        Self::new(self.label.clone(), image(&self.z_coeff), x_coeffs)
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = ", self.label)?;
        let mut first = true;
        let slots = std::iter::once(("z".to_string(), &self.z_coeff))
            .chain(self.x_coeffs.iter().enumerate().map(|(i, c)| ((i + 1).to_string(), c)));
        for (name, c) in slots {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c}) d_{name}")?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Derivation({self})")
    }
}

/// An element of the hyperoctahedral group acting on `x1..xl`: sends `x_i` to
/// `signs[i] · x_{perm[i]}` and fixes `z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPermutation {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn swap(rank: usize, p: usize, q: usize) -> Self {
        let mut perm: Vec<usize> = (0..rank).collect();
        perm.swap(p, q);
        Self { perm, signs: vec![1; rank] }
    }

    pub fn flip(rank: usize, p: usize) -> Self {
        let mut signs = vec![1; rank];
        signs[p] = -1;
        Self { perm: (0..rank).collect(), signs }
    }

    fn substitution(&self, nvars: usize) -> BTreeMap<usize, Poly> {
        self.perm
            .iter()
            .zip(&self.signs)
            .enumerate()
            .map(|(i, (&to, &sign))| (i, Poly::var(nvars, to).scale(&int(i64::from(sign)))))
            .collect()
    }
}

fn check_indices(j: usize, rank: usize) -> Result<(), DerivationError> {
    if rank < 1 {
        return Err(DerivationError::InvalidRank(rank));
    }
    if j < 1 || j > rank {
        return Err(DerivationError::IndexOutOfRange { j, rank });
    }
    Ok(())
}

/// `θ_E = z ∂_z + Σ x_i ∂_i`.
pub fn euler(rank: usize) -> Result<Derivation, DerivationError> {
    if rank < 1 {
        return Err(DerivationError::InvalidRank(rank));
    }
    let nvars = rank + 1;
    Ok(Derivation::new(
        format!("theta_E(l={rank})"),
        Poly::var(nvars, rank),
        (0..rank).map(|i| Poly::var(nvars, i)).collect(),
    ))
}

/// For fixed `j`, `s` and target slot `i`:
/// `Σ_{k2 ∈ {0,1}, 0 ≤ k3 ≤ l-j} (-1)^(k2+k3) σ_k2(x_j) τ_k3 B̄_{r,s}(x_i, z)`
/// with `r = 2l - 2j - k2 - 2k3 + 2` and `τ_k3 = σ_k3(x_{j+1}², ..., x_l²)`.
fn kernel_sum(family: Family, j: usize, rank: usize, s: usize, i: usize, taus: &[Poly]) -> Poly {
    let nvars = rank + 1;
    let xj = Poly::var(nvars, j - 1);
    let mut acc = Poly::zero(nvars);
    for k2 in 0..=1usize {
        let sigma = if k2 == 0 { Poly::one(nvars) } else { xj.clone() };
        for (k3, tau) in taus.iter().enumerate() {
            let r = (2 * rank + 2) as i64 - (2 * j + k2 + 2 * k3) as i64;
            assert!(r >= 1, "r = {r} must be positive");
            let key = BernoulliKey::new(family, r as u32, s as u32).expect("r >= 1");
            let term = &(&sigma * tau) * &homogenize(key, nvars, i);
            acc = if (k2 + k3) % 2 == 0 { &acc + &term } else { &acc - &term };
        }
    }
    acc
}

fn taus(j: usize, rank: usize) -> Vec<Poly> {
    let nvars = rank + 1;
    let squares: Vec<Poly> = (j..rank).map(|t| Poly::var(nvars, t).pow(2)).collect();
    (0..=rank - j).map(|k| elementary_symmetric(k, &squares, nvars)).collect()
}

/// `phi_j` of type `family` in rank `l`.
///
/// Enumerates every disjoint pair `N1, N2 ⊆ {x_1, ..., x_{j-1}}` (each index
/// goes to `N1`, `N2` or neither), weights it by `∏_{N1} x_t² ∏_{N2} (-x_t z)`
/// and pairs it with the kernel sum at `s = (j-1) - |N1| - |N2|`. The overall
/// sign is `(-1)^j`.
pub fn phi(family: Family, j: usize, rank: usize) -> Result<Derivation, DerivationError> {
    check_indices(j, rank)?;
    let nvars = rank + 1;
    let z = Poly::var(nvars, rank);
    let taus = taus(j, rank);
    let kernels: Vec<Vec<Poly>> = (0..j)
        .map(|s| (0..rank).map(|i| kernel_sum(family, j, rank, s, i, &taus)).collect())
        .collect();
    let mut x_coeffs = vec![Poly::zero(nvars); rank];
    let before = j - 1;
    for code in 0..3usize.pow(before as u32) {
        let mut weight = Poly::one(nvars);
        let mut used = 0;
        let mut c = code;
        for t in 0..before {
            let xt = Poly::var(nvars, t);
            match c % 3 {
                1 => {
                    weight = &weight * &xt.pow(2);
                    used += 1;
                }
                2 => {
                    weight = &weight * &(-&(&xt * &z));
                    used += 1;
                }
                _ => {}
            }
            c /= 3;
        }
        let s = before - used;
        for (coeff, kernel) in x_coeffs.iter_mut().zip(&kernels[s]) {
            *coeff = &*coeff + &(&weight * kernel);
        }
    }
    if j % 2 == 1 {
        x_coeffs = x_coeffs.iter().map(|c| -c).collect();
    }
    Ok(Derivation::new(format!("phi_{j}^{family}(l={rank})"), Poly::zero(nvars), x_coeffs))
}

/// Independent route to [`phi`]: the weighted sum over `(N1, N2)` grouped by
/// `s` equals the coefficient of `y^s` in `∏_{t<j} (x_t² - x_t z + y)`.
pub fn phi_by_generating_function(family: Family, j: usize, rank: usize) -> Result<Derivation, DerivationError> {
    check_indices(j, rank)?;
    let nvars = rank + 1;
    let z = Poly::var(nvars, rank);
    // Polynomial in y with Poly coefficients, lowest power first.
    let mut product: Vec<Poly> = vec![Poly::one(nvars)];
    for t in 0..j - 1 {
        let xt = Poly::var(nvars, t);
        let constant = &xt.pow(2) - &(&xt * &z);
        let mut next = vec![Poly::zero(nvars); product.len() + 1];
        for (k, c) in product.iter().enumerate() {
            next[k] = &next[k] + &(c * &constant);
            next[k + 1] = &next[k + 1] + c;
        }
        product = next;
    }
    let taus = taus(j, rank);
    let sign = if j % 2 == 0 { Rational::one() } else { -Rational::one() };
    let x_coeffs = (0..rank)
        .map(|i| {
            let total = product
                .iter()
                .enumerate()
                .fold(Poly::zero(nvars), |acc, (s, weight)| &acc + &(weight * &kernel_sum(family, j, rank, s, i, &taus)));
            total.scale(&sign)
        })
        .collect();
    Ok(Derivation::new(format!("phi_{j}^{family}(l={rank})"), Poly::zero(nvars), x_coeffs))
}

/// `θ_E, phi_1, ..., phi_l`: the claimed basis, in Saito-matrix row order.
pub fn basis(family: Family, rank: usize) -> Result<Vec<Derivation>, DerivationError> {
    let mut out = vec![euler(rank)?];
    for j in 1..=rank {
        out.push(phi(family, j, rank)?);
    }
    Ok(out)
}

/// Closed form of `phi_j^B` at `z = 0`:
/// `x_j Σ_{k=0}^{l-1} (-1)^k σ_k(x_1², ..., x̂_j², ..., x_l²) Σ_i x_i^(2l-2k-1)/(2l-2k-1) ∂_i`.
pub fn solomon_terao_restriction(j: usize, rank: usize) -> Result<Derivation, DerivationError> {
    check_indices(j, rank)?;
    let nvars = rank + 1;
    let xj = Poly::var(nvars, j - 1);
    let squares: Vec<Poly> = (0..rank).filter(|&t| t != j - 1).map(|t| Poly::var(nvars, t).pow(2)).collect();
    let mut x_coeffs = vec![Poly::zero(nvars); rank];
    for k in 0..rank {
        let mut prefactor = &xj * &elementary_symmetric(k, &squares, nvars);
        if k % 2 == 1 {
            prefactor = -prefactor;
        }
        let e = (2 * rank - 2 * k - 1) as u32;
        for (i, coeff) in x_coeffs.iter_mut().enumerate() {
            let power = Poly::var(nvars, i).pow(e).scale(&rat(1, i64::from(e)));
            *coeff = &*coeff + &(&prefactor * &power);
        }
    }
    Ok(Derivation::new(format!("Xi(x_{j})(l={rank})"), Poly::zero(nvars), x_coeffs))
}
