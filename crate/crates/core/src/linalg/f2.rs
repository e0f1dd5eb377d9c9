use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

/// Matrix over F₂ with bit-packed rows.
#[derive(Clone, Debug)]
pub struct F2Matrix {
    cols: usize,
    rows: Vec<FixedBitSet>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        F2Matrix { cols, rows: vec![FixedBitSet::with_capacity(cols); rows] }
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        self.rows[i].set(j, v);
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i][j]
    }

    pub fn flip(&mut self, i: usize, j: usize) {
        self.rows[i].toggle(j);
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..rows.len()).find(|&r| rows[r][col]) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[col] {
                    row.symmetric_difference_with(&pivot);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Some `x` with `self · x = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &[bool]) -> Option<Vec<bool>> {
        assert_eq!(b.len(), self.rows.len());
        // augmented column sits at index `cols`
        let mut rows: Vec<FixedBitSet> = self
            .rows
            .iter()
            .zip(b)
            .map(|(r, &bit)| {
                let mut a = FixedBitSet::with_capacity(self.cols + 1);
                a.union_with(r);
                a.set(self.cols, bit);
                a
            })
            .collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..rows.len()).find(|&r| rows[r][col]) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[col] {
                    row.symmetric_difference_with(&pivot);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        if rows[rank..].iter().any(|r| r[self.cols]) {
            return None;
        }
        let mut x = vec![false; self.cols];
        for (r, &col) in pivots.iter().enumerate() {
            x[col] = rows[r][self.cols];
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_solve() {
        let mut m = F2Matrix::zeros(3, 3);
        for (i, j) in [(0, 0), (0, 1), (1, 1), (1, 2), (2, 0), (2, 2)] {
            m.set(i, j, true);
        }
        // rows sum to zero
        assert_eq!(m.rank(), 2);
        let x = m.solve(&[true, true, false]).unwrap();
        let image: Vec<bool> = (0..3)
            .map(|i| (0..3).filter(|&j| m.get(i, j) && x[j]).count() % 2 == 1)
            .collect();
        assert_eq!(image, vec![true, true, false]);
        assert!(m.solve(&[true, false, false]).is_none());
    }
}
