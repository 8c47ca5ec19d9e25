//! Test-only oracles, independent of the library code paths they check.
#![allow(dead_code)]

use num_traits::{One, Zero};
use shi_basis::poly::{int, Poly, Rational, UniPoly};
use shi_basis::Family;

/// Right-hand side of the difference equation evaluated at an integer,
/// straight from its closed form.
pub fn rhs_at(family: Family, r: u32, s: u32, k: i64) -> Rational {
    let a = int(k + 1);
    let b = int(-k);
    let pow = |v: &Rational, e: u32| (0..e).fold(Rational::one(), |acc, _| acc * v);
    let head = match family {
        Family::B => (pow(&a, r) - pow(&b, r)) / (&a - &b),
        Family::C => pow(&a, r - 1) + pow(&b, r - 1),
    };
    head * pow(&(&a * &b), s)
}

/// `F(n) = Σ_{k<n} g(k)` at `n = 0..=count`, then Newton interpolation
/// through those points, expanded to monomial coefficients.
pub fn telescoping_oracle(family: Family, r: u32, s: u32) -> UniPoly {
    let degree = (r + 2 * s) as usize;
    let mut values = Vec::with_capacity(degree + 2);
    let mut acc = Rational::zero();
    for n in 0..=(degree + 1) as i64 {
        values.push(acc.clone());
        acc += rhs_at(family, r, s, n);
    }
    interpolate(&values)
}

/// Polynomial through `(n, values[n])` for `n = 0..values.len()`.
pub fn interpolate(values: &[Rational]) -> UniPoly {
    let n = values.len();
    // Divided differences on nodes 0, 1, ..., n-1.
    let mut table = values.to_vec();
    let mut newton = vec![table[0].clone()];
    for level in 1..n {
        for i in 0..n - level {
            table[i] = (&table[i + 1] - &table[i]) / int(level as i64);
        }
        newton.push(table[0].clone());
    }
    // Horner on the Newton basis (x)(x-1)...(x-k+1).
    let mut coeffs: Vec<Rational> = vec![Rational::zero(); n];
    for k in (0..n).rev() {
        // coeffs = coeffs * (x - k) + newton[k]
        let mut next = vec![Rational::zero(); n];
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i + 1 < n {
                next[i + 1] += c.clone();
            }
            next[i] -= c * int(k as i64);
        }
        next[0] += newton[k].clone();
        coeffs = next;
    }
    UniPoly::new(coeffs)
}

/// Plain recursive cofactor expansion along the first row.
pub fn naive_det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let nvars = m[0][0].nvars();
    let mut acc = Poly::zero(nvars);
    for j in 0..n {
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, e)| e.clone()).collect())
            .collect();
        let term = &m[0][j] * &naive_det(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}
