//! Smith normal form of sparse integer matrices.
//!
//! Unit pivots are eliminated sparsely first (Schur complement); whatever
//! remains has no `±1` entries and is diagonalised densely over `BigInt`.
#![allow(clippy::needless_range_loop)]

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

/// A sparse integer matrix given by its nonzero entries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    /// `(row, col) -> value`, zero entries never stored.
    pub entries: BTreeMap<(usize, usize), i64>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn add(&mut self, row: usize, col: usize, value: i64) {
        debug_assert!(row < self.rows && col < self.cols);
        let slot = self.entries.entry((row, col)).or_insert(0);
        *slot += value;
        if *slot == 0 {
            self.entries.remove(&(row, col));
        }
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// `self · rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut by_row: HashMap<usize, Vec<(usize, i64)>> = HashMap::new();
        for (&(r, c), &v) in &rhs.entries {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut out = SparseMatrix::new(self.rows, rhs.cols);
        for (&(r, k), &a) in &self.entries {
            for &(c, b) in by_row.get(&k).map(Vec::as_slice).unwrap_or(&[]) {
                out.add(r, c, a * b);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Rank and the invariant factors larger than one.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SmithSummary {
    pub rank: usize,
    pub torsion: Vec<BigUint>,
}

pub fn smith(m: &SparseMatrix) -> SmithSummary {
    let mut rows: Vec<HashMap<usize, i64>> = vec![HashMap::new(); m.rows];
    let mut cols: Vec<HashSet<usize>> = vec![HashSet::new(); m.cols];
    for (&(r, c), &v) in &m.entries {
        rows[r].insert(c, v);
        cols[c].insert(r);
    }
    let mut live_rows: Vec<bool> = vec![true; m.rows];
    let mut live_cols: Vec<bool> = vec![true; m.cols];
    let mut units = 0;

    loop {
        // Cheapest unit pivot: short row first, then short column.
        let pivot = (0..m.rows)
            .filter(|&r| live_rows[r])
            .flat_map(|r| {
                let rows = &rows;
                let cols = &cols;
                rows[r]
                    .iter()
                    .filter(|(_, v)| v.abs() == 1)
                    .map(move |(&c, &v)| (rows[r].len() * cols[c].len(), r, c, v))
            })
            .min_by_key(|&(cost, r, c, _)| (cost, r, c));
        let Some((_, pr, pc, pv)) = pivot else { break };
        units += 1;
        let pivot_row: Vec<(usize, i64)> = rows[pr].iter().filter(|(&c, _)| c != pc).map(|(&c, &v)| (c, v)).collect();
        let others: Vec<usize> = cols[pc].iter().copied().filter(|&r| r != pr).collect();
        for r in others {
            let a = rows[r].remove(&pc).expect("column index out of sync");
            // row_r -= (a / pv) · row_p, and pv = ±1
            let factor = a * pv;
            for &(c, v) in &pivot_row {
                let delta = factor.checked_mul(v).expect("entry overflow in elimination");
                let slot = rows[r].entry(c).or_insert(0);
                *slot = slot.checked_sub(delta).expect("entry overflow in elimination");
                if *slot == 0 {
                    rows[r].remove(&c);
                    cols[c].remove(&r);
                } else {
                    cols[c].insert(r);
                }
            }
        }
        for (c, _) in rows[pr].drain() {
            cols[c].remove(&pr);
        }
        cols[pc].clear();
        live_rows[pr] = false;
        live_cols[pc] = false;
    }

    let rest_rows: Vec<usize> = (0..m.rows).filter(|&r| live_rows[r] && !rows[r].is_empty()).collect();
    let rest_cols: Vec<usize> = (0..m.cols).filter(|&c| live_cols[c] && !cols[c].is_empty()).collect();
    let col_at: HashMap<usize, usize> = rest_cols.iter().enumerate().map(|(j, &c)| (c, j)).collect();
    let mut dense = vec![vec![BigInt::zero(); rest_cols.len()]; rest_rows.len()];
    for (i, &r) in rest_rows.iter().enumerate() {
        for (&c, &v) in &rows[r] {
            dense[i][col_at[&c]] = BigInt::from(v);
        }
    }
    let diag = dense_smith(dense);
    SmithSummary {
        rank: units + diag.len(),
        torsion: diag.into_iter().map(|d| d.magnitude().clone()).filter(|d| *d != BigUint::from(1u32)).collect(),
    }
}

/// Nonzero diagonal of the Smith form, each entry dividing the next.
pub fn dense_smith(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()));
            let Some((pi, pj)) = pivot else {
                return diag;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = &a[i][t] / &a[t][t];
                for j in t..cols {
                    let delta = &q * &a[t][j];
                    a[i][j] -= delta;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = &a[t][j] / &a[t][t];
                for i in t..rows {
                    let delta = &q * &a[i][t];
                    a[i][j] -= delta;
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // The pivot must divide the rest of the block.
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero());
            match bad {
                Some((i, _)) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}
