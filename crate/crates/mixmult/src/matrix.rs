//! Dense exact linear algebra over the runtime field: just enough to take
//! ranks deterministically.

use crate::field::{Coeff, FieldSpec};

/// A dense row-major matrix with entries in a fixed field.
#[derive(Clone, Debug)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Coeff>,
}

impl Matrix {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Coeff {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Coeff) {
        self.data[r * self.cols + c] = v;
    }

    /// Rank by Gaussian elimination with first-nonzero pivoting (the field
    /// is exact, so no pivot-size considerations arise and the result is
    /// deterministic). Consumes the matrix.
    pub fn rank(mut self) -> usize {
        let f = self.field;
        let mut rank = 0usize;
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            if pivot != rank {
                for c in col..self.cols {
                    self.data.swap(rank * self.cols + c, pivot * self.cols + c);
                }
            }
            let inv = f.inv(self.at(rank, col)).expect("pivot is nonzero");
            for c in col..self.cols {
                let v = f.mul(self.at(rank, c), &inv);
                self.set(rank, c, v);
            }
            for r in rank + 1..self.rows {
                let factor = self.at(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..self.cols {
                    let v = f.sub(self.at(r, c), &f.mul(self.at(rank, c), &factor));
                    self.set(r, c, v);
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// A basis of the right kernel `{v : Av = 0}`, via reduced row echelon
    /// form: one vector per free column, deterministic in column order.
    /// Consumes the matrix.
    pub fn kernel_basis(mut self) -> Vec<Vec<Coeff>> {
        let f = self.field;
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut row = 0usize;
        for col in 0..self.cols {
            let Some(pivot) = (row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            if pivot != row {
                for c in 0..self.cols {
                    self.data.swap(row * self.cols + c, pivot * self.cols + c);
                }
            }
            let inv = f.inv(self.at(row, col)).expect("pivot is nonzero");
            for c in 0..self.cols {
                let v = f.mul(self.at(row, c), &inv);
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.at(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in 0..self.cols {
                    let v = f.sub(self.at(r, c), &f.mul(self.at(row, c), &factor));
                    self.set(r, c, v);
                }
            }
            pivot_cols.push(col);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = f.neg(self.at(r, free));
            }
            basis.push(v);
        }
        basis
    }
}
