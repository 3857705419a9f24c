//! Exact elimination: GF(2) systems on packed bit rows, and reduced row
//! echelon form / kernels over a field ring on sparse rows.

use std::collections::BTreeMap;

use crate::{ChainError, Coeff, Ring};

/// `Σ_{v ∈ vars} x_v = rhs (mod 2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Equation {
    pub vars: Vec<usize>,
    pub rhs: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Solution {
    pub values: Vec<bool>,
    pub rank: usize,
    pub free: usize,
}

fn words(n: usize) -> usize {
    n.div_ceil(64) + 1
}

/// Gaussian elimination; free variables are set to 0. `None` when the
/// system is inconsistent.
pub fn solve_gf2(num_vars: usize, eqs: &[Gf2Equation]) -> Option<Gf2Solution> {
    let w = words(num_vars);
    let rhs_bit = num_vars;
    let mut rows: Vec<Vec<u64>> = eqs
        .iter()
        .map(|e| {
            let mut r = vec![0u64; w];
            for &v in &e.vars {
                r[v / 64] ^= 1 << (v % 64);
            }
            if e.rhs {
                r[rhs_bit / 64] ^= 1 << (rhs_bit % 64);
            }
            r
        })
        .collect();
    let bit = |r: &[u64], c: usize| r[c / 64] >> (c % 64) & 1 == 1;
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..num_vars {
        let Some(p) = (rank..rows.len()).find(|&i| bit(&rows[i], col)) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (i, r) in rows.iter_mut().enumerate() {
            if i != rank && bit(r, col) {
                for (a, b) in r.iter_mut().zip(&pivot) {
                    *a ^= b;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if rows[rank..].iter().any(|r| bit(r, rhs_bit)) {
        return None;
    }
    let mut values = vec![false; num_vars];
    for (i, &c) in pivots.iter().enumerate() {
        values[c] = bit(&rows[i], rhs_bit);
    }
    Some(Gf2Solution {
        values,
        rank,
        free: num_vars - rank,
    })
}

pub type SparseRow = BTreeMap<usize, Coeff>;

/// Row-reduce over a field; returns the nonzero reduced rows together with
/// their pivot columns, in increasing pivot order.
pub fn rref(ring: &Ring, rows: Vec<SparseRow>) -> Result<Vec<(usize, SparseRow)>, ChainError> {
    if !ring.is_field() {
        return Err(ChainError::NotAField(ring.to_string()));
    }
    let mut reduced: BTreeMap<usize, SparseRow> = BTreeMap::new();
    for mut row in rows {
        // forward-reduce against existing pivots, lowest column first
        loop {
            row.retain(|_, v| !v.is_zero());
            let Some((&col, _)) = row.iter().find(|(c, _)| reduced.contains_key(c)) else {
                break;
            };
            let factor = row[&col].clone();
            let pivot_row = &reduced[&col];
            for (c, v) in pivot_row {
                let cur = row.remove(c).unwrap_or_default();
                let nv = ring.sub(&cur, &ring.mul(&factor, v));
                if !nv.is_zero() {
                    row.insert(*c, nv);
                }
            }
        }
        let Some((&col, lead)) = row.iter().next() else {
            continue;
        };
        let inv = ring.inv(lead).ok_or_else(|| ChainError::NotAField(ring.to_string()))?;
        let row: SparseRow = row
            .into_iter()
            .map(|(c, v)| (c, ring.mul(&v, &inv)))
            .collect();
        // back-substitute the new pivot into earlier rows
        for other in reduced.values_mut() {
            if let Some(f) = other.get(&col).cloned() {
                for (c, v) in &row {
                    let cur = other.remove(c).unwrap_or_default();
                    let nv = ring.sub(&cur, &ring.mul(&f, v));
                    if !nv.is_zero() {
                        other.insert(*c, nv);
                    }
                }
            }
        }
        reduced.insert(col, row);
    }
    Ok(reduced.into_iter().collect())
}

/// Basis of `{x : A x = 0}` for the sparse matrix `A` with `ncols` columns,
/// one vector per free column.
pub fn kernel(ring: &Ring, rows: Vec<SparseRow>, ncols: usize) -> Result<Vec<SparseRow>, ChainError> {
    let reduced = rref(ring, rows)?;
    let pivots: BTreeMap<usize, &SparseRow> = reduced.iter().map(|(c, r)| (*c, r)).collect();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains_key(c)) {
        let mut v = SparseRow::new();
        v.insert(free, ring.one());
        for (&pc, row) in &pivots {
            if let Some(a) = row.get(&free) {
                v.insert(pc, ring.neg(a));
            }
        }
        basis.push(v);
    }
    Ok(basis)
}
