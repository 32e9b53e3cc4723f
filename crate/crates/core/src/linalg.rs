//! Exact linear algebra over `RatN`.

use std::collections::BTreeMap;

use crate::expr::{Monomial, OperatorExpr};
use crate::scalars::RatN;

/// Solves `Σ_k x_k basis[k] = target` exactly. Returns `None` if `target` is
/// outside the span; free directions of a degenerate basis are set to zero.
pub fn solve_in_span(basis: &[OperatorExpr], target: &OperatorExpr) -> Option<Vec<RatN>> {
    let mut rows: BTreeMap<&Monomial, usize> = BTreeMap::new();
    for e in basis.iter().chain(std::iter::once(target)) {
        for (m, _) in e.terms() {
            let next = rows.len();
            rows.entry(m).or_insert(next);
        }
    }
    let cols = basis.len();
    let mut a = vec![vec![RatN::zero(); cols + 1]; rows.len()];
    for (k, e) in basis.iter().enumerate() {
        for (m, c) in e.terms() {
            a[rows[m]][k] = c.clone();
        }
    }
    for (m, c) in target.terms() {
        a[rows[m]][cols] = c.clone();
    }
    let pivots = row_reduce(&mut a, cols);
    if a.iter().skip(pivots.len()).any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![RatN::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = a[r][cols].clone();
    }
    Some(x)
}

/// Gauss-Jordan elimination on the first `cols` columns. Returns pivot
/// columns in row order.
pub fn row_reduce(a: &mut [Vec<RatN>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip().expect("nonzero pivot");
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}
