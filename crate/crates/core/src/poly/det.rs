use super::{Poly, PolyError};

fn check_square(m: &[Vec<Poly>]) -> Result<usize, PolyError> {
    let n = m.len();
    if n == 0 {
        return Err(PolyError::EmptyMatrix);
    }
    let nvars = m[0].first().map(Poly::nvars).unwrap_or(0);
    for row in m {
        if row.len() != n {
            return Err(PolyError::NonSquare { rows: n, cols: row.len() });
        }
        for e in row {
            if e.nvars() != nvars {
                return Err(PolyError::VarCountMismatch { left: nvars, right: e.nvars() });
            }
        }
    }
    Ok(n)
}

/// Exact determinant.
///
/// Matrices up to 4×4 go through cofactor expansion. Larger ones first peel
/// off any row or column with at most one nonzero entry (a cofactor step that
/// costs a single product), then fall back to Bareiss elimination.
pub fn det(m: &[Vec<Poly>]) -> Result<Poly, PolyError> {
    let n = check_square(m)?;
    Ok(det_dispatch(m.to_vec(), n))
}

fn det_dispatch(m: Vec<Vec<Poly>>, n: usize) -> Poly {
    let nvars = m[0][0].nvars();
    if n <= 4 {
        return cofactor_unchecked(&m);
    }
    for i in 0..n {
        let nonzero: Vec<usize> = (0..n).filter(|&j| !m[i][j].is_zero()).collect();
        if nonzero.len() <= 1 {
            let Some(&j) = nonzero.first() else {
                return Poly::zero(nvars);
            };
            return expand_at(&m, n, i, j);
        }
    }
    for j in 0..n {
        let nonzero: Vec<usize> = (0..n).filter(|&i| !m[i][j].is_zero()).collect();
        if nonzero.len() <= 1 {
            let Some(&i) = nonzero.first() else {
                return Poly::zero(nvars);
            };
            return expand_at(&m, n, i, j);
        }
    }
    bareiss_unchecked(m, n)
}

fn expand_at(m: &[Vec<Poly>], n: usize, i: usize, j: usize) -> Poly {
    let minor: Vec<Vec<Poly>> = (0..n)
        .filter(|&r| r != i)
        .map(|r| (0..n).filter(|&c| c != j).map(|c| m[r][c].clone()).collect())
        .collect();
    let sub = det_dispatch(minor, n - 1);
    let term = &m[i][j] * &sub;
    if (i + j) % 2 == 1 {
        -term
    } else {
        term
    }
}

/// Laplace expansion with every minor computed once.
///
/// Minors are indexed by the set of columns they use; the minor on columns
/// `S` occupies the last `|S|` rows. Cost is `Σ_k C(n,k)·k` products, and every
/// product pairs a matrix entry with a minor, never two large minors.
pub fn det_cofactor(m: &[Vec<Poly>]) -> Result<Poly, PolyError> {
    let n = check_square(m)?;
    if n > 20 {
        return det(m);
    }
    Ok(cofactor_unchecked(m))
}

fn cofactor_unchecked(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    let nvars = m[0][0].nvars();
    let full = (1usize << n) - 1;
    let mut minors: Vec<Option<Poly>> = vec![None; full + 1];
    minors[0] = Some(Poly::one(nvars));
    let mut by_size: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for mask in 1..=full {
        by_size[mask.count_ones() as usize].push(mask);
    }
    for size in 1..=n {
        let row = n - size;
        for &mask in &by_size[size] {
            let mut acc = Poly::zero(nvars);
            let mut pos = 0;
            for col in 0..n {
                if mask & (1 << col) == 0 {
                    continue;
                }
                let entry = &m[row][col];
                if !entry.is_zero() {
                    let sub = minors[mask & !(1 << col)].as_ref().expect("smaller minors are computed first");
                    if !sub.is_zero() {
                        let term = entry * sub;
                        acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
                    }
                }
                pos += 1;
            }
            minors[mask] = Some(acc);
        }
        // Minors two sizes down are no longer needed.
        if size >= 2 {
            for &mask in &by_size[size - 2] {
                if mask != 0 {
                    minors[mask] = None;
                }
            }
        }
    }
    minors[full].take().expect("full minor computed")
}

/// Fraction-free Gaussian elimination. Every interior division is exact and
/// carried out with [`Poly::exact_divide`].
pub fn det_bareiss(m: &[Vec<Poly>]) -> Result<Poly, PolyError> {
    let n = check_square(m)?;
    Ok(bareiss_unchecked(m.to_vec(), n))
}

fn bareiss_unchecked(mut a: Vec<Vec<Poly>>, n: usize) -> Poly {
    let nvars = a[0][0].nvars();
    let mut negate = false;
    let mut prev = Poly::one(nvars);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            // Prefer the sparsest nonzero pivot below.
            let swap = (k + 1..n).filter(|&i| !a[i][k].is_zero()).min_by_key(|&i| a[i][k].len());
            match swap {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return Poly::zero(nvars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let cross = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = cross
                    .exact_divide(&prev)
                    .expect("Bareiss interior division is exact");
            }
            a[i][k] = Poly::zero(nvars);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}
