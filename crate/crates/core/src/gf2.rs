//! Dense matrices over GF(2).

use crate::bits::BitVec;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GF2Matrix {
    cols: usize,
    rows: Vec<BitVec>,
}

impl GF2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        GF2Matrix {
            cols,
            rows: vec![BitVec::zeros(cols); rows],
        }
    }

    /// Builds a matrix from rows of equal length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged GF(2) rows");
        GF2Matrix { cols, rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, b: bool) {
        self.rows[r].set(c, b)
    }

    /// Reduced row-echelon form with zero rows removed, plus pivot columns.
    pub fn rref(&self) -> (GF2Matrix, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
                continue;
            };
            rows.swap(r, p);
            let pivot = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row.get(c) {
                    row.xor_assign(&pivot);
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        (GF2Matrix::from_rows(self.cols, rows), pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : M v = 0}`, one vector per free column in increasing
    /// column order.
    pub fn nullspace(&self) -> Vec<BitVec> {
        let (red, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitVec::zeros(self.cols);
                v.set(free, true);
                for (i, &p) in pivots.iter().enumerate() {
                    if red.get(i, free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Finds `s` with `Σ_i s_i · row_i = target`, if any.
    pub fn solve_left(&self, target: &BitVec) -> Option<BitVec> {
        assert_eq!(target.len(), self.cols);
        let m = self.rows.len();
        // Eliminate on [row | e_i] so each reduced row remembers its combination.
        let mut rows: Vec<(BitVec, BitVec)> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), BitVec::from_indices(m, [i])))
            .collect();
        let mut piv: Vec<(usize, usize)> = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..rows.len()).find(|&i| rows[i].0.get(c)) else {
                continue;
            };
            rows.swap(r, p);
            let (pr, pc) = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row.0.get(c) {
                    row.0.xor_assign(&pr);
                    row.1.xor_assign(&pc);
                }
            }
            piv.push((c, r));
            r += 1;
        }
        let mut rest = target.clone();
        let mut sel = BitVec::zeros(m);
        for &(c, i) in &piv {
            if rest.get(c) {
                rest.xor_assign(&rows[i].0);
                sel.xor_assign(&rows[i].1);
            }
        }
        rest.is_zero().then_some(sel)
    }

    /// Matrix restricted to the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> GF2Matrix {
        let rows = self
            .rows
            .iter()
            .map(|r| BitVec::from_bools(&cols.iter().map(|&c| r.get(c)).collect::<Vec<_>>()))
            .collect();
        GF2Matrix::from_rows(cols.len(), rows)
    }
}
