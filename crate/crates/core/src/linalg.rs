//! Exact rank of sparse matrices over a [`Field`].

use std::collections::HashMap;

use crate::field::Field;

/// Row-major sparse matrix; each row holds `(column, value)` pairs with
/// strictly increasing columns and no explicit zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix<E> {
    ncols: usize,
    rows: Vec<Vec<(usize, E)>>,
}

impl<E: Clone> SparseMatrix<E> {
    pub fn new(ncols: usize) -> Self {
        SparseMatrix { ncols, rows: Vec::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<(usize, E)>] {
        &self.rows
    }

    /// Appends a row given as unordered `(column, value)` pairs; zero values
    /// and repeated columns are combined by the field.
    pub fn push_row<F: Field<Elem = E>>(&mut self, field: &F, entries: impl IntoIterator<Item = (usize, E)>) {
        let mut row: Vec<(usize, E)> = entries.into_iter().collect();
        row.sort_by_key(|(c, _)| *c);
        let mut merged: Vec<(usize, E)> = Vec::with_capacity(row.len());
        for (c, v) in row {
            assert!(c < self.ncols, "column {c} out of range");
            match merged.last_mut() {
                Some((lc, lv)) if *lc == c => *lv = field.add(lv, &v),
                _ => merged.push((c, v)),
            }
        }
        merged.retain(|(_, v)| !field.is_zero(v));
        self.rows.push(merged);
    }

    pub fn from_dense<F: Field<Elem = E>>(field: &F, dense: &[Vec<E>]) -> Self {
        let ncols = dense.first().map_or(0, Vec::len);
        let mut m = SparseMatrix::new(ncols);
        for row in dense {
            m.push_row(field, row.iter().cloned().enumerate());
        }
        m
    }
}

/// `target -= factor * pivot` for sorted sparse rows.
fn axpy<F: Field>(field: &F, target: &[(usize, F::Elem)], factor: &F::Elem, pivot: &[(usize, F::Elem)]) -> Vec<(usize, F::Elem)> {
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < pivot.len() {
        let tc = target.get(i).map(|e| e.0);
        let pc = pivot.get(j).map(|e| e.0);
        match (tc, pc) {
            (Some(a), Some(b)) if a == b => {
                let v = field.sub(&target[i].1, &field.mul(factor, &pivot[j].1));
                if !field.is_zero(&v) {
                    out.push((a, v));
                }
                i += 1;
                j += 1;
            }
            (Some(a), Some(b)) if a < b => {
                out.push(target[i].clone());
                i += 1;
            }
            (Some(_), None) => {
                out.push(target[i].clone());
                i += 1;
            }
            (_, Some(b)) => {
                out.push((b, field.neg(&field.mul(factor, &pivot[j].1))));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Exact rank by row reduction to echelon form.
///
/// Each incoming row is reduced against the pivot rows collected so far
/// (keyed by leading column, leading coefficient normalized to one); a row
/// that does not vanish becomes a new pivot.
pub fn rank<F: Field>(field: &F, matrix: &SparseMatrix<F::Elem>) -> usize {
    let mut pivots: HashMap<usize, Vec<(usize, F::Elem)>> = HashMap::new();
    for row in matrix.rows() {
        let mut current = row.clone();
        while let Some((lead, coeff)) = current.first().cloned() {
            match pivots.get(&lead) {
                Some(p) => current = axpy(field, &current, &coeff, p),
                None => {
                    let inv = field.inv(&coeff);
                    let normalized = current.iter().map(|(c, v)| (*c, field.mul(&inv, v))).collect();
                    pivots.insert(lead, normalized);
                    break;
                }
            }
        }
    }
    pivots.len()
}
