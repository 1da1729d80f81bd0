//! Invariant factors of integer matrices.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Invariant factors `d1 | d2 | ... | dr` (all positive, `r` the rank) of a
/// dense matrix given by rows.
pub fn smith_normal_form(rows: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let n_rows = a.len();
    let n_cols = a.first().map_or(0, |r| r.len());
    let mut factors = Vec::new();
    let mut t = 0;
    while t < n_rows.min(n_cols) {
        // pivot of least absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..n_rows {
            for j in t..n_cols {
                if !a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..n_rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = &a[i][t] / &a[t][t];
                for j in t..n_cols {
                    let sub = &q * &a[t][j];
                    a[i][j] -= sub;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..n_cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = &a[t][j] / &a[t][t];
                for row in a.iter_mut().skip(t) {
                    let sub = &q * &row[t];
                    row[j] -= sub;
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                // a nonzero remainder is smaller than the pivot: move it there
                let (mut bi, mut bj) = (t, t);
                for i in t + 1..n_rows {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[bi][bj].abs() {
                        (bi, bj) = (i, t);
                    }
                }
                for j in t + 1..n_cols {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[bi][bj].abs() {
                        (bi, bj) = (t, j);
                    }
                }
                a.swap(t, bi);
                for row in a.iter_mut() {
                    row.swap(t, bj);
                }
                continue;
            }
            let offender = (t + 1..n_rows).find(|&i| {
                (t + 1..n_cols).any(|j| !(&a[i][j] % &a[t][t]).is_zero())
            });
            match offender {
                Some(i) => {
                    for j in t..n_cols {
                        let add = a[i][j].clone();
                        a[t][j] += add;
                    }
                }
                None => break,
            }
        }
        factors.push(a[t][t].abs());
        t += 1;
    }
    factors
}

/// Invariant factors of a sparse matrix given by columns of `(row, value)`.
///
/// Unit pivots are eliminated first, preferring short rows; whatever is left
/// without a unit entry goes through [`smith_normal_form`]. Falls back to the
/// dense routine on `i64` overflow.
pub fn sparse_invariant_factors(n_rows: usize, columns: &[Vec<(usize, i64)>]) -> Vec<BigInt> {
    let mut rows: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); n_rows];
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); columns.len()];
    for (c, col) in columns.iter().enumerate() {
        for &(r, v) in col {
            if v != 0 {
                *rows[r].entry(c).or_insert(0) += v;
                col_rows[c].insert(r);
            }
        }
    }
    let mut units = 0usize;
    let mut progress = true;
    while progress {
        progress = false;
        for c in 0..columns.len() {
            let pivot = col_rows[c]
                .iter()
                .copied()
                .filter(|&r| rows[r][&c].abs() == 1)
                .min_by_key(|&r| (rows[r].len(), r));
            let Some(r) = pivot else { continue };
            let sign = rows[r][&c];
            let pivot_row = std::mem::take(&mut rows[r]);
            for (&cc, _) in &pivot_row {
                col_rows[cc].remove(&r);
            }
            let others: Vec<usize> = col_rows[c].iter().copied().collect();
            for r2 in others {
                let f = rows[r2][&c] * sign;
                let mut updated = rows[r2].clone();
                for (&cc, &v) in &pivot_row {
                    let entry = updated.entry(cc).or_insert(0);
                    match f.checked_mul(v).and_then(|d| entry.checked_sub(d)) {
                        Some(new) => *entry = new,
                        None => return smith_normal_form(&dense_of(n_rows, columns)),
                    }
                }
                for (&cc, _) in &pivot_row {
                    if updated.get(&cc) == Some(&0) {
                        updated.remove(&cc);
                        col_rows[cc].remove(&r2);
                    } else {
                        col_rows[cc].insert(r2);
                    }
                }
                rows[r2] = updated;
            }
            units += 1;
            progress = true;
        }
    }
    let live_rows: Vec<usize> = (0..n_rows).filter(|&r| !rows[r].is_empty()).collect();
    let live_cols: Vec<usize> = (0..columns.len()).filter(|&c| !col_rows[c].is_empty()).collect();
    let dense: Vec<Vec<BigInt>> = live_rows
        .iter()
        .map(|&r| {
            live_cols
                .iter()
                .map(|c| BigInt::from(rows[r].get(c).copied().unwrap_or(0)))
                .collect()
        })
        .collect();
    let mut factors = vec![BigInt::one(); units];
    factors.extend(smith_normal_form(&dense));
    factors
}

fn dense_of(n_rows: usize, columns: &[Vec<(usize, i64)>]) -> Vec<Vec<BigInt>> {
    let mut dense = vec![vec![BigInt::zero(); columns.len()]; n_rows];
    for (c, col) in columns.iter().enumerate() {
        for &(r, v) in col {
            dense[r][c] += v;
        }
    }
    dense
}
