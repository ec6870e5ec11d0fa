//! Dense exact matrices with reduced row echelon form, rank and kernels.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{CoreError, Result};
use crate::field::Field;

/// Row-major dense matrix over a fixed field.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix<F: Field> {
    rows: usize,
    cols: usize,
    entries: Vec<F::Elem>,
    field: F,
}

impl<F: Field> ExactMatrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
            field: field.clone(),
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(field: &F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(CoreError::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(ExactMatrix {
            rows: n,
            cols,
            entries,
            field: field.clone(),
        })
    }

    pub fn from_i64(field: &F, rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            field,
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: Vec<F::Elem>) -> Result<()> {
        if row.len() != self.cols {
            return Err(CoreError::DimensionMismatch {
                expected: self.cols,
                found: row.len(),
            });
        }
        self.entries.extend(row);
        self.rows += 1;
        Ok(())
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(CoreError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Image of every entry in another field (e.g. reduction of a rational matrix mod p).
    pub fn map_field<G: Field>(
        &self,
        target: &G,
        f: impl Fn(&F::Elem) -> Option<G::Elem>,
    ) -> Option<ExactMatrix<G>> {
        let entries = self.entries.iter().map(f).collect::<Option<Vec<_>>>()?;
        Some(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
            field: target.clone(),
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

/// Result of row reduction.
#[derive(Clone, Debug, PartialEq)]
pub struct Rref<F: Field> {
    pub matrix: ExactMatrix<F>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Reduced row echelon form by exact Gaussian elimination.
///
/// Among the candidate pivots in a column the cheapest entry (fewest bits for
/// rationals) is chosen; the output is unique regardless.
pub fn rref<F: Field>(m: &ExactMatrix<F>) -> Rref<F> {
    let f = m.field.clone();
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let pick = (row..a.rows)
            .filter(|&r| !f.is_zero(a.get(r, col)))
            .min_by_key(|&r| f.pivot_cost(a.get(r, col)));
        let Some(p) = pick else { continue };
        a.swap_rows(row, p);
        let inv = f.inv(a.get(row, col)).unwrap();
        for c in col..a.cols {
            let v = f.mul(a.get(row, c), &inv);
            a.set(row, c, v);
        }
        let pivot_row: Vec<F::Elem> = a.row(row).to_vec();
        for r in 0..a.rows {
            if r == row {
                continue;
            }
            let factor = a.get(r, col).clone();
            if f.is_zero(&factor) {
                continue;
            }
            for c in col..a.cols {
                let v = f.sub(a.get(r, c), &f.mul(&factor, &pivot_row[c]));
                a.set(r, c, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    Rref {
        matrix: a,
        rank: pivots.len(),
        pivots,
    }
}

pub fn rank<F: Field>(m: &ExactMatrix<F>) -> usize {
    rref(m).rank
}

/// Basis of the right kernel `{v : m v = 0}`, one vector per free column.
///
/// The basis is read off the RREF, so it depends only on the kernel itself.
/// Each vector is checked against `m` before being returned.
pub fn kernel_basis<F: Field>(m: &ExactMatrix<F>) -> Vec<Vec<F::Elem>> {
    let f = &m.field;
    let red = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &red.pivots {
        is_pivot[p] = true;
    }
    let basis: Vec<Vec<F::Elem>> = (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![f.zero(); m.cols];
            v[free] = f.one();
            for (r, &p) in red.pivots.iter().enumerate() {
                v[p] = f.neg(red.matrix.get(r, free));
            }
            v
        })
        .collect();
    for v in &basis {
        let image = m.mul_vec(v).expect("kernel vector length");
        assert!(
            image.iter().all(|x| f.is_zero(x)),
            "kernel vector failed m*v = 0"
        );
    }
    basis
}

/// Determinant of a square matrix.
pub fn determinant<F: Field>(m: &ExactMatrix<F>) -> Result<F::Elem> {
    if m.rows != m.cols {
        return Err(CoreError::DimensionMismatch {
            expected: m.rows,
            found: m.cols,
        });
    }
    let f = &m.field;
    let mut a = m.clone();
    let mut det = f.one();
    for col in 0..a.cols {
        let Some(p) = (col..a.rows).find(|&r| !f.is_zero(a.get(r, col))) else {
            return Ok(f.zero());
        };
        if p != col {
            a.swap_rows(p, col);
            det = f.neg(&det);
        }
        let piv = a.get(col, col).clone();
        det = f.mul(&det, &piv);
        let inv = f.inv(&piv).unwrap();
        for r in col + 1..a.rows {
            let factor = f.mul(a.get(r, col), &inv);
            if f.is_zero(&factor) {
                continue;
            }
            for c in col..a.cols {
                let v = f.sub(a.get(r, c), &f.mul(&factor, a.get(col, c)));
                a.set(r, c, v);
            }
        }
    }
    Ok(det)
}
