//! Exact elimination over a [`Field`].
//!
//! Rows are inserted one at a time into an [`Echelon`] basis kept sorted by
//! pivot column. Pivots are the first nonzero column of each reduced row, so
//! results depend only on the row order. Over the rationals rows are kept as
//! primitive integer vectors (fraction-free); over `GF(p)` they are plain
//! residues with unit pivots.

use crate::field::Field;

/// Row-echelon basis of a growing row space.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    ncols: usize,
    basis: Vec<(usize, F::Row)>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        Echelon {
            field,
            ncols,
            basis: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|(c, _)| *c).collect()
    }

    fn remainder(&self, row: &[F::Elem]) -> F::Row {
        assert_eq!(row.len(), self.ncols, "row length");
        let mut r = self.field.row_from(row);
        self.field.row_reduce(&mut r, &self.basis);
        r
    }

    /// Insert a row; returns `true` when it was independent of the basis.
    pub fn insert(&mut self, row: &[F::Elem]) -> bool {
        let r = self.remainder(row);
        self.insert_reduced(r)
    }

    fn insert_reduced(&mut self, mut r: F::Row) -> bool {
        match self.field.row_leading(&r) {
            None => false,
            Some(c) => {
                self.field.row_normalize(&mut r, c);
                let at = self.basis.partition_point(|(p, _)| *p < c);
                self.basis.insert(at, (c, r));
                true
            }
        }
    }

    /// The row reduced against the basis: zero at every pivot column, and
    /// equal to the row modulo the row space (up to a nonzero scalar).
    pub fn reduce(&self, row: &[F::Elem]) -> Vec<F::Elem> {
        let r = self.remainder(row);
        (0..self.ncols).map(|j| self.field.row_entry(&r, j)).collect()
    }

    pub fn contains(&self, row: &[F::Elem]) -> bool {
        self.field.row_leading(&self.remainder(row)).is_none()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut pivots = self.basis.iter().map(|(c, _)| *c).peekable();
        (0..self.ncols)
            .filter(|j| {
                if pivots.peek() == Some(j) {
                    pivots.next();
                    false
                } else {
                    true
                }
            })
            .collect()
    }

    /// The null vector with value 1 at free column `free` and 0 at every
    /// other free column, by back-substitution.
    pub fn null_vector(&self, free: usize) -> Vec<F::Elem> {
        let f = &self.field;
        let mut x = vec![f.zero(); self.ncols];
        x[free] = f.one();
        let mut support = vec![free];
        for (c, row) in self.basis.iter().rev() {
            let mut acc = f.zero();
            for &j in &support {
                if j > *c {
                    let e = f.row_entry(row, j);
                    if !f.is_zero(&e) {
                        acc = f.add(&acc, &f.mul(&e, &x[j]));
                    }
                }
            }
            if f.is_zero(&acc) {
                continue;
            }
            let pivot = f.row_entry(row, *c);
            x[*c] = f.neg(&f.div(&acc, &pivot).expect("pivot is nonzero"));
            support.push(*c);
        }
        x
    }

    /// Basis of the right null space, one vector per free column (ascending).
    pub fn null_space(&self) -> Vec<Vec<F::Elem>> {
        self.free_columns()
            .into_iter()
            .map(|j| self.null_vector(j))
            .collect()
    }

    /// A vector `x` with `row . x = rhs` for every inserted row, if the
    /// system restricted to the pivots is consistent; free variables are 0.
    fn back_substitute(&self, rhs_col: usize) -> Option<Vec<F::Elem>> {
        let f = &self.field;
        if self.basis.iter().any(|(c, _)| *c == rhs_col) {
            return None;
        }
        let mut x = vec![f.zero(); rhs_col];
        for (c, row) in self.basis.iter().rev() {
            let mut acc = f.row_entry(row, rhs_col);
            for j in c + 1..rhs_col {
                if !f.is_zero(&x[j]) {
                    acc = f.sub(&acc, &f.mul(&f.row_entry(row, j), &x[j]));
                }
            }
            x[*c] = f.div(&acc, &f.row_entry(row, *c)).expect("pivot is nonzero");
        }
        Some(x)
    }

    /// Rows of the reduced row-echelon form, pivots equal to 1.
    pub fn rref(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let mut rows: Vec<(usize, Vec<F::Elem>)> = self
            .basis
            .iter()
            .map(|(c, r)| {
                let inv = f.inv(&f.row_entry(r, *c)).expect("pivot is nonzero");
                (*c, (0..self.ncols).map(|j| f.mul(&f.row_entry(r, j), &inv)).collect())
            })
            .collect();
        for i in (0..rows.len()).rev() {
            let (c, pivot_row) = rows[i].clone();
            for (_, other) in rows[..i].iter_mut() {
                let factor = other[c].clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..self.ncols {
                    if !f.is_zero(&pivot_row[j]) {
                        other[j] = f.sub(&other[j], &f.mul(&factor, &pivot_row[j]));
                    }
                }
            }
        }
        rows.into_iter().map(|(_, r)| r).collect()
    }
}

/// Rank of a list of rows.
pub fn rank<F: Field>(field: &F, ncols: usize, rows: &[Vec<F::Elem>]) -> usize {
    let mut ech = Echelon::new(field.clone(), ncols);
    for r in rows {
        ech.insert(r);
    }
    ech.rank()
}

/// Basis of `{x : A x = 0}` for the matrix with the given rows.
pub fn null_space<F: Field>(field: &F, ncols: usize, rows: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let mut ech = Echelon::new(field.clone(), ncols);
    for r in rows {
        ech.insert(r);
    }
    ech.null_space()
}

/// Canonical basis of the span of `vectors`: reduced row-echelon rows, each
/// with leading coordinate 1.
pub fn canonical_basis<F: Field>(field: &F, ncols: usize, vectors: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let mut ech = Echelon::new(field.clone(), ncols);
    for v in vectors {
        ech.insert(v);
    }
    ech.rref()
}

/// Some solution of `A x = b`, or `None` if the system is inconsistent.
pub fn solve<F: Field>(
    field: &F,
    ncols: usize,
    rows: &[Vec<F::Elem>],
    rhs: &[F::Elem],
) -> Option<Vec<F::Elem>> {
    assert_eq!(rows.len(), rhs.len(), "one right-hand side per row");
    let mut ech = Echelon::new(field.clone(), ncols + 1);
    for (r, b) in rows.iter().zip(rhs) {
        let mut aug = r.clone();
        aug.push(b.clone());
        ech.insert(&aug);
    }
    ech.back_substitute(ncols)
}
