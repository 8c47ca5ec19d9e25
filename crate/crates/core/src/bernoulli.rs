//! Bernoulli-like polynomials `B^B_{r,s}` and `B^C_{r,s}`.
//!
//! Each is the unique polynomial `F` with `F(0) = 0` whose forward difference
//! `F(x+1) - F(x)` equals a prescribed right-hand side:
//!
//! * type B: `((x+1)^r - (-x)^r) / (2x+1) · (x+1)^s (-x)^s`
//! * type C: `((x+1)^(r-1) + (-x)^(r-1)) · (x+1)^s (-x)^s`
//!
//! Results are cached by key since the derivation builder asks for the same
//! `(r, s)` pairs many times.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::{int, Poly, Rational, UniPoly};
use crate::Family;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BernoulliError {
    #[error("invalid index r = {0}; r must be at least 1")]
    InvalidR(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BernoulliKey {
    family: Family,
    r: u32,
    s: u32,
}

impl BernoulliKey {
    pub fn new(family: Family, r: u32, s: u32) -> Result<Self, BernoulliError> {
        if r == 0 {
            return Err(BernoulliError::InvalidR(r));
        }
        Ok(Self { family, r, s })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// Homogenization degree `r + 2s`.
    pub fn weight(&self) -> u32 {
        self.r + 2 * self.s
    }

    /// `r + 2s` for odd `r`, `r + 2s - 1` for even `r`.
    pub fn expected_degree(&self) -> u32 {
        if self.r % 2 == 1 {
            self.weight()
        } else {
            self.weight() - 1
        }
    }
}

/// Right-hand side of the defining difference equation.
pub fn rhs(key: BernoulliKey) -> UniPoly {
    let x1 = UniPoly::linear(1, 1);
    let neg_x = UniPoly::linear(-1, 0);
    let tail = x1.mul(&neg_x).pow(key.s);
    let head = match key.family {
        Family::B => {
            let num = x1.pow(key.r).sub(&neg_x.pow(key.r));
            let (q, rem) = num
                .div_rem(&UniPoly::linear(2, 1))
                .expect("2x+1 is nonzero");
            assert!(rem.is_zero(), "(x+1)^r - (-x)^r must be divisible by 2x+1");
            q
        }
        Family::C => x1.pow(key.r - 1).add(&neg_x.pow(key.r - 1)),
    };
    head.mul(&tail)
}

/// `C(x, k) = x(x-1)...(x-k+1) / k!`.
fn binomial_basis(k: usize) -> UniPoly {
    let mut p = UniPoly::constant(Rational::one());
    let mut fact = Rational::one();
    for i in 0..k {
        p = p.mul(&UniPoly::linear(1, -(i as i64)));
        fact *= int(i as i64 + 1);
    }
    p.scale(&fact.recip())
}

/// The unique `F` with `F(x+1) - F(x) = g(x)` and `F(0) = 0`.
///
/// Expands `g = Σ g_k C(x,k)` in the binomial basis, where `g_k = Δ^k g(0)`,
/// and returns `Σ g_k C(x,k+1)`. Since `ΔC(x,k+1) = C(x,k)` and every
/// `C(x,k+1)` vanishes at 0, both conditions hold by construction.
pub fn solve_difference(g: &UniPoly) -> UniPoly {
    let Some(deg) = g.degree() else {
        return UniPoly::zero();
    };
    let mut diffs: Vec<Rational> = (0..=deg).map(|n| g.eval(&int(n as i64))).collect();
    let mut forward = Vec::with_capacity(deg + 1);
    for k in 0..=deg {
        forward.push(diffs[0].clone());
        for i in 0..deg - k {
            diffs[i] = &diffs[i + 1] - &diffs[i];
        }
        diffs.pop();
    }
    forward
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(UniPoly::zero(), |acc, (k, c)| acc.add(&binomial_basis(k + 1).scale(c)))
}

type Cache = RwLock<HashMap<BernoulliKey, Arc<UniPoly>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `B^family_{r,s}(x)`, memoized.
pub fn bernoulli(key: BernoulliKey) -> Arc<UniPoly> {
    if let Some(hit) = cache().read().expect("bernoulli cache poisoned").get(&key) {
        return Arc::clone(hit);
    }
    let value = Arc::new(solve_difference(&rhs(key)));
    let mut guard = cache().write().expect("bernoulli cache poisoned");
    Arc::clone(guard.entry(key).or_insert(value))
}

/// `z^(r+2s) · B(x/z)` in a ring with `nvars` slots, `x` in `x_slot`.
pub fn homogenize(key: BernoulliKey, nvars: usize, x_slot: usize) -> Poly {
    bernoulli(key).homogenize_into(key.weight(), nvars, x_slot)
}

/// Closed form of the homogenization at `z = 0`: for type B,
/// `(-1)^s x^(r+2s) / (r+2s)` when `r` is odd and `0` when `r` is even; type C
/// is twice that.
pub fn restrict_z0(key: BernoulliKey) -> UniPoly {
    if key.r % 2 == 0 {
        return UniPoly::zero();
    }
    let w = key.weight() as usize;
    let sign = if key.s % 2 == 0 { 1 } else { -1 };
    let scale = match key.family {
        Family::B => 1,
        Family::C => 2,
    };
    let mut coeffs = vec![Rational::zero(); w + 1];
    coeffs[w] = Rational::new((sign * scale).into(), (w as i64).into());
    UniPoly::new(coeffs)
}
