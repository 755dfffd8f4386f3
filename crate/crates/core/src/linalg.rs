//! Small dense exact linear algebra: echelon forms, rank, kernels, solving.
//!
//! Matrices are row-major `Vec<Vec<FieldElement>>`; every routine takes the
//! field explicitly so empty inputs stay well typed.

use crate::field::{FieldElement, FieldSpec};

pub type Vector = Vec<FieldElement>;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut [Vector]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(k) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, k);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for k in 0..rows.len() {
            if k != r && !rows[k][c].is_zero() {
                let factor = rows[k][c].clone();
                for j in 0..ncols {
                    let delta = &factor * &rows[r][j];
                    rows[k][j] = &rows[k][j] - &delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Nonzero rows of the reduced echelon form: a canonical basis of the row span.
pub fn row_basis(rows: &[Vector]) -> Vec<Vector> {
    let mut work = rows.to_vec();
    let rank = rref(&mut work).len();
    work.truncate(rank);
    work
}

pub fn rank(rows: &[Vector]) -> usize {
    let mut work = rows.to_vec();
    rref(&mut work).len()
}

/// Basis of `{x : M x = 0}` for an `r x ncols` matrix `M`.
pub fn kernel(spec: FieldSpec, rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let mut work = rows.to_vec();
    let pivots = rref(&mut work);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![spec.zero(); ncols];
            x[f] = spec.one();
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = -&work[r][f];
            }
            x
        })
        .collect()
}

/// Some solution of `M x = b`, if the system is consistent.
pub fn solve(spec: FieldSpec, rows: &[Vector], rhs: &[FieldElement]) -> Option<Vector> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut aug: Vec<Vector> = rows
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut v = row.clone();
            v.push(b.clone());
            v
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![spec.zero(); ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[r][ncols].clone();
    }
    Some(x)
}

/// Determinant of a square matrix by elimination.
pub fn det(spec: FieldSpec, rows: &[Vector]) -> FieldElement {
    let n = rows.len();
    let mut work = rows.to_vec();
    let mut acc = spec.one();
    for c in 0..n {
        let Some(k) = (c..n).find(|&k| !work[k][c].is_zero()) else {
            return spec.zero();
        };
        if k != c {
            work.swap(k, c);
            acc = -acc;
        }
        acc = &acc * &work[c][c];
        let inv = work[c][c].inv().expect("pivot is nonzero");
        for k in c + 1..n {
            if work[k][c].is_zero() {
                continue;
            }
            let factor = &work[k][c] * &inv;
            for j in c..n {
                let delta = &factor * &work[c][j];
                work[k][j] = &work[k][j] - &delta;
            }
        }
    }
    acc
}
