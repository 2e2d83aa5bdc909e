//! Exact linear algebra over the rationals, on integer-normalized rows.
//!
//! Every subspace in this crate is spanned by vectors with integer entries
//! after clearing denominators, so elimination works on `BigInt` rows kept
//! primitive (content 1). Pivoting is magnitude-free: the pivot is the first
//! row with a nonzero entry in the current column.

use num::{BigInt, Signed, Zero};

pub type IntRow = Vec<BigInt>;

fn row_gcd(row: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for e in row {
        if !e.is_zero() {
            g = num::Integer::gcd(&g, e);
        }
    }
    g
}

/// Divides the row by its content and makes the leading entry positive.
pub fn normalize_row(row: &mut IntRow) {
    let g = row_gcd(row);
    if g.is_zero() {
        return;
    }
    let lead_negative = row
        .iter()
        .find(|e| !e.is_zero())
        .map(|e| e.is_negative())
        .unwrap_or(false);
    let g = if lead_negative { -g } else { g };
    for e in row.iter_mut() {
        *e = &*e / &g;
    }
}

/// In-place row echelon reduction (reduced form: pivots clear above and
/// below). Zero rows are dropped. Returns the pivot columns.
pub fn echelonize(rows: &mut Vec<IntRow>) -> Vec<usize> {
    if rows.is_empty() {
        return Vec::new();
    }
    let cols = rows[0].len();
    let mut pivots = Vec::new();
    let mut next = 0usize;
    for col in 0..cols {
        let Some(found) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        normalize_row(&mut rows[next]);
        let pivot_row = rows[next].clone();
        let pivot_val = pivot_row[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for c in 0..cols {
                let t = &row[c] * &pivot_val - &factor * &pivot_row[c];
                row[c] = t;
            }
            normalize_row(row);
        }
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    rows.truncate(next);
    pivots
}

pub fn rank(rows: &[IntRow]) -> usize {
    let mut work = rows.to_vec();
    echelonize(&mut work).len()
}

/// A primitive integer basis of `{x : A x = 0}` where `A` is given by rows.
pub fn null_space(a: &[IntRow], cols: usize) -> Vec<IntRow> {
    let mut work = a.to_vec();
    debug_assert!(work.iter().all(|r| r.len() == cols));
    let pivots = echelonize(&mut work);
    let pivot_set: Vec<Option<usize>> = {
        let mut v = vec![None; cols];
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = Some(r);
        }
        v
    };
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set[free].is_some() {
            continue;
        }
        // x[free] = 1, solve each pivot coordinate; clear denominators by
        // scaling with the product of the pivot values involved.
        let mut numer = vec![BigInt::zero(); cols];
        let mut denom = BigInt::from(1);
        for &c in pivots.iter() {
            denom *= &work[pivot_set[c].unwrap()][c];
        }
        numer[free] = denom.clone();
        for (r, &c) in pivots.iter().enumerate() {
            // pivot_val * x[c] + a[r][free] * x[free] = 0; other free cols are 0
            let scale = &denom / &work[r][c];
            numer[c] = -(&work[r][free] * &scale);
        }
        normalize_row(&mut numer);
        basis.push(numer);
    }
    basis
}

/// Row-reduced canonical basis of the span of the given rows.
pub fn row_basis(rows: &[IntRow]) -> Vec<IntRow> {
    let mut work = rows.to_vec();
    echelonize(&mut work);
    work
}

/// Basis of the intersection of two row spaces over the same coordinates.
pub fn intersect_row_spaces(a: &[IntRow], b: &[IntRow], cols: usize) -> Vec<IntRow> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // x = alpha.A = beta.B: solve [A^T | -B^T] (alpha, beta)^T = 0.
    let stacked: Vec<IntRow> = (0..cols)
        .map(|c| {
            let mut row = Vec::with_capacity(a.len() + b.len());
            row.extend(a.iter().map(|r| r[c].clone()));
            row.extend(b.iter().map(|r| -&r[c]));
            row
        })
        .collect();
    let kernel = null_space(&stacked, a.len() + b.len());
    let combos: Vec<IntRow> = kernel
        .iter()
        .map(|k| {
            let mut x = vec![BigInt::zero(); cols];
            for (i, arow) in a.iter().enumerate() {
                if k[i].is_zero() {
                    continue;
                }
                for (c, entry) in x.iter_mut().enumerate() {
                    *entry += &k[i] * &arow[c];
                }
            }
            x
        })
        .collect();
    row_basis(&combos)
}

/// Dimension of the intersection without materializing a basis:
/// `dim U + dim W - dim(U + W)`.
pub fn intersection_dim(a: &[IntRow], b: &[IntRow]) -> usize {
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let mut stacked: Vec<IntRow> = a.to_vec();
    stacked.extend(b.to_vec());
    let sum_dim = rank(&stacked);
    rank(a) + rank(b) - sum_dim
}
