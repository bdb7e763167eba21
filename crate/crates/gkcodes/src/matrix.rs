//! Dense matrices over a Galois field with exact Gaussian elimination.
//!
//! Entries are stored as raw element encodings. Elimination uses
//! first-nonzero pivoting with no heuristics, so the reduced form of a given
//! matrix is identical across runs and thread counts.

use std::sync::Arc;

use rayon::prelude::*;

use crate::gf::GaloisField;

/// Row updates during elimination are parallelized once a matrix has at
/// least this many entries below the pivot row.
const PAR_THRESHOLD: usize = 1 << 20;

#[derive(Clone)]
pub struct GfMatrix {
    field: Arc<GaloisField>,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl std::fmt::Debug for GfMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "GfMatrix({} x {} over GF({}))",
            self.rows,
            self.cols,
            self.field.order()
        )
    }
}

impl GfMatrix {
    pub fn zeros(field: Arc<GaloisField>, rows: usize, cols: usize) -> GfMatrix {
        GfMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(field: Arc<GaloisField>, rows: Vec<Vec<u32>>) -> GfMatrix {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in &rows {
            assert_eq!(r.len(), ncols, "ragged rows");
            data.extend_from_slice(r);
        }
        GfMatrix {
            field,
            rows: nrows,
            cols: ncols,
            data,
        }
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Reduce in place to the canonical reduced row echelon form and return
    /// the pivot columns. Zero rows are dropped.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = Arc::clone(&self.field);
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..self.cols {
            if next_row == self.rows {
                break;
            }
            // first row at or below next_row with a nonzero entry in col
            let Some(pivot_row) = (next_row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            self.swap_rows(next_row, pivot_row);
            let pv = self.get(next_row, col);
            if pv != 1 {
                let inv = f.raw_inv(pv);
                self.scale_row(next_row, inv, col);
            }
            self.eliminate_column(next_row, col);
            pivots.push(col);
            next_row += 1;
        }
        self.rows = next_row;
        self.data.truncate(self.rows * self.cols);
        pivots
    }

    /// Rank by forward elimination on a copy.
    pub fn rank(&self) -> usize {
        let mut copy = self.clone();
        copy.rref().len()
    }

    /// A basis of the right null space { v : self * v = 0 }, returned in
    /// canonical reduced row echelon form. `self` must already be in reduced
    /// row echelon form with the given pivot columns.
    pub fn null_space(&self, pivots: &[usize]) -> GfMatrix {
        let f = &self.field;
        let k = self.rows;
        let n = self.cols;
        debug_assert_eq!(pivots.len(), k);
        let mut is_pivot = vec![false; n];
        for &p in pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let mut out = GfMatrix::zeros(Arc::clone(&self.field), free.len(), n);
        for (row, &fc) in free.iter().enumerate() {
            out.set(row, fc, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                let v = self.get(i, fc);
                if v != 0 {
                    out.set(row, pc, f.raw_neg(v));
                }
            }
        }
        out.rref();
        out
    }

    /// True iff self * other^T is the zero matrix.
    pub fn product_with_transpose_is_zero(&self, other: &GfMatrix) -> bool {
        assert_eq!(self.cols, other.cols);
        let f = &self.field;
        (0..self.rows).all(|i| {
            let a = self.row(i);
            (0..other.rows).all(|j| {
                let b = other.row(j);
                let mut acc = 0u32;
                for (&x, &y) in a.iter().zip(b) {
                    if x != 0 && y != 0 {
                        acc = f.raw_add(acc, f.raw_mul(x, y));
                    }
                }
                acc == 0
            })
        })
    }

    /// Copy of the matrix with the listed columns removed.
    pub fn drop_columns(&self, cols: &[usize]) -> GfMatrix {
        let mut drop = vec![false; self.cols];
        for &c in cols {
            drop[c] = true;
        }
        let keep: Vec<usize> = (0..self.cols).filter(|&c| !drop[c]).collect();
        let mut out = GfMatrix::zeros(Arc::clone(&self.field), self.rows, keep.len());
        for r in 0..self.rows {
            for (nc, &c) in keep.iter().enumerate() {
                out.set(r, nc, self.get(r, c));
            }
        }
        out
    }

    /// Copy of the matrix keeping only rows in `range`.
    pub fn take_rows(&self, range: std::ops::Range<usize>) -> GfMatrix {
        let data = self.data[range.start * self.cols..range.end * self.cols].to_vec();
        GfMatrix {
            field: Arc::clone(&self.field),
            rows: range.len(),
            cols: self.cols,
            data,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (a, b) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(b * self.cols);
        head[a * self.cols..(a + 1) * self.cols].swap_with_slice(&mut tail[..self.cols]);
    }

    fn scale_row(&mut self, r: usize, factor: u32, from_col: usize) {
        let f = &self.field;
        for c in from_col..self.cols {
            let v = self.data[r * self.cols + c];
            if v != 0 {
                self.data[r * self.cols + c] = f.raw_mul(v, factor);
            }
        }
    }

    /// Zero out `col` in every row except `pivot_row`, whose entry is 1.
    fn eliminate_column(&mut self, pivot_row: usize, col: usize) {
        let cols = self.cols;
        let f = Arc::clone(&self.field);
        let pivot_start = pivot_row * cols;
        let pivot: Vec<u32> = self.data[pivot_start + col..pivot_start + cols].to_vec();
        let work = self.rows * (cols - col);
        let update = |r_idx: usize, row: &mut [u32]| {
            if r_idx == pivot_row {
                return;
            }
            let factor = row[col];
            if factor == 0 {
                return;
            }
            for (dst, &pv) in row[col..].iter_mut().zip(&pivot) {
                if pv != 0 {
                    *dst = f.raw_sub(*dst, f.raw_mul(factor, pv));
                }
            }
        };
        if work >= PAR_THRESHOLD {
            self.data
                .par_chunks_mut(cols)
                .enumerate()
                .for_each(|(r, row)| update(r, row));
        } else {
            for (r, row) in self.data.chunks_mut(cols).enumerate() {
                update(r, row);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::GaloisField;

    fn gf64() -> Arc<GaloisField> {
        Arc::new(GaloisField::new(2, 6).unwrap())
    }

    #[test]
    fn rref_identity() {
        let f = gf64();
        let mut m = GfMatrix::from_rows(
            Arc::clone(&f),
            vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]],
        );
        let pivots = m.rref();
        // rows 1+2 sum to row 3 over GF(2), so rank is 2
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(m.rows(), 2);
    }

    #[test]
    fn null_space_annihilates() {
        let f = Arc::new(GaloisField::new(3, 2).unwrap());
        let mut m = GfMatrix::from_rows(
            Arc::clone(&f),
            vec![
                vec![1, 2, 3, 4, 5],
                vec![5, 4, 3, 2, 1],
                vec![2, 2, 0, 1, 7],
            ],
        );
        let before = m.clone();
        let pivots = m.rref();
        let ns = m.null_space(&pivots);
        assert_eq!(ns.rows(), 5 - pivots.len());
        assert!(before.product_with_transpose_is_zero(&ns));
        assert_eq!(ns.rank(), ns.rows());
    }

    #[test]
    fn rank_of_random_full_rank() {
        let f = gf64();
        let mut m = GfMatrix::zeros(Arc::clone(&f), 4, 6);
        // rows of a Vandermonde-style matrix over distinct nonzero points
        for (r, x) in [2u32, 3, 4, 5].iter().enumerate() {
            let mut acc = 1u32;
            for c in 0..6 {
                m.set(r, c, acc);
                acc = f.raw_mul(acc, *x);
            }
        }
        assert_eq!(m.rank(), 4);
    }

    #[test]
    fn drop_and_take() {
        let f = gf64();
        let m = GfMatrix::from_rows(Arc::clone(&f), vec![vec![1, 2, 3], vec![4, 5, 6]]);
        let d = m.drop_columns(&[1]);
        assert_eq!(d.cols(), 2);
        assert_eq!(d.row(0), &[1, 3]);
        let t = m.take_rows(1..2);
        assert_eq!(t.rows(), 1);
        assert_eq!(t.row(0), &[4, 5, 6]);
    }
}
