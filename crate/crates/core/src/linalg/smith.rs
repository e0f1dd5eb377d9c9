use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use super::int::Scalar;
use super::IntMatrix;

/// Nonzero diagonal of the Smith normal form, normalized positive and
/// ordered as a divisor chain `d1 | d2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub invariants: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    /// The invariants different from one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariants.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

/// `left * m * right = diag(invariants)` with unimodular `left` and `right`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub left: Vec<Vec<BigInt>>,
    pub right: Vec<Vec<BigInt>>,
    pub invariants: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }
}

struct Work<T> {
    rows: usize,
    cols: usize,
    a: Vec<T>,
    left: Option<Vec<T>>,
    right: Option<Vec<T>>,
    rank: usize,
}

impl<T: Scalar> Work<T> {
    fn new(m: &IntMatrix, track: bool) -> Self {
        let (rows, cols) = (m.rows(), m.cols());
        let a = m.data().iter().map(|&v| T::from_i64(v)).collect();
        let identity = |n: usize| {
            let mut id = vec![T::zero(); n * n];
            for i in 0..n {
                id[i * n + i] = T::one();
            }
            id
        };
        Work {
            rows,
            cols,
            a,
            left: track.then(|| identity(rows)),
            right: track.then(|| identity(cols)),
            rank: 0,
        }
    }

    fn at(&self, i: usize, j: usize) -> &T {
        &self.a[i * self.cols + j]
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        for j in 0..self.cols {
            self.a.swap(i * self.cols + j, k * self.cols + j);
        }
        if let Some(l) = self.left.as_mut() {
            for j in 0..self.rows {
                l.swap(i * self.rows + j, k * self.rows + j);
            }
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j == k {
            return;
        }
        for i in 0..self.rows {
            self.a.swap(i * self.cols + j, i * self.cols + k);
        }
        if let Some(r) = self.right.as_mut() {
            for i in 0..self.cols {
                r.swap(i * self.cols + j, i * self.cols + k);
            }
        }
    }

    /// row_i <- row_i - q * row_t, touching only columns >= `from`.
    fn row_axpy(&mut self, i: usize, t: usize, q: &T, from: usize) -> Option<()> {
        let c = self.cols;
        for j in from..c {
            let src = &self.a[t * c + j];
            if src.is_zero() {
                continue;
            }
            let v = self.a[i * c + j].sub(&q.mul(src)?)?;
            self.a[i * c + j] = v;
        }
        if let Some(l) = self.left.as_mut() {
            let n = self.rows;
            for j in 0..n {
                let src = &l[t * n + j];
                if src.is_zero() {
                    continue;
                }
                let v = l[i * n + j].sub(&q.mul(src)?)?;
                l[i * n + j] = v;
            }
        }
        Some(())
    }

    /// col_j <- col_j - q * col_t, touching only rows >= `from`.
    fn col_axpy(&mut self, j: usize, t: usize, q: &T, from: usize) -> Option<()> {
        let c = self.cols;
        for i in from..self.rows {
            let src = &self.a[i * c + t];
            if src.is_zero() {
                continue;
            }
            let v = self.a[i * c + j].sub(&q.mul(src)?)?;
            self.a[i * c + j] = v;
        }
        if let Some(r) = self.right.as_mut() {
            for i in 0..c {
                let src = &r[i * c + t];
                if src.is_zero() {
                    continue;
                }
                let v = r[i * c + j].sub(&q.mul(src)?)?;
                r[i * c + j] = v;
            }
        }
        Some(())
    }

    fn negate_row(&mut self, t: usize) -> Option<()> {
        let c = self.cols;
        for j in 0..c {
            self.a[t * c + j] = self.a[t * c + j].neg()?;
        }
        if let Some(l) = self.left.as_mut() {
            let n = self.rows;
            for j in 0..n {
                l[t * n + j] = l[t * n + j].neg()?;
            }
        }
        Some(())
    }

    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let v = self.at(i, j);
                if v.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if !v.abs_lt(self.at(bi, bj)) => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn reduce(&mut self) -> Option<()> {
        let limit = self.rows.min(self.cols);
        let mut t = 0;
        while t < limit {
            let Some((pi, pj)) = self.min_pivot(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..self.rows {
                    if self.at(i, t).is_zero() {
                        continue;
                    }
                    let q = self.at(i, t).quot(self.at(t, t))?;
                    self.row_axpy(i, t, &q, t)?;
                    if !self.at(i, t).is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..self.cols {
                    if self.at(t, j).is_zero() {
                        continue;
                    }
                    let q = self.at(t, j).quot(self.at(t, t))?;
                    self.col_axpy(j, t, &q, t)?;
                    if !self.at(t, j).is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    // move the smallest remainder in row/column t onto the pivot
                    let mut best = (t, t);
                    for i in t + 1..self.rows {
                        let v = self.at(i, t);
                        if !v.is_zero() && v.abs_lt(self.at(best.0, best.1)) {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..self.cols {
                        let v = self.at(t, j);
                        if !v.is_zero() && v.abs_lt(self.at(best.0, best.1)) {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                let pivot = self.at(t, t).clone();
                let mut offender = None;
                'scan: for i in t + 1..self.rows {
                    for j in t + 1..self.cols {
                        if !self.at(i, j).is_multiple_of(&pivot) {
                            offender = Some(i);
                            break 'scan;
                        }
                    }
                }
                match offender {
                    Some(i) => {
                        let minus_one = T::one().neg()?;
                        self.row_axpy(t, i, &minus_one, t)?;
                    }
                    None => break,
                }
            }
            if self.at(t, t).is_negative() {
                self.negate_row(t)?;
            }
            t += 1;
        }
        self.rank = t;
        Some(())
    }

    fn invariants(&self) -> Vec<BigInt> {
        (0..self.rank).map(|t| self.at(t, t).to_big()).collect()
    }

    fn square_big(m: &[T], n: usize) -> Vec<Vec<BigInt>> {
        (0..n)
            .map(|i| (0..n).map(|j| m[i * n + j].to_big()).collect())
            .collect()
    }
}

fn run<T: Scalar>(m: &IntMatrix, track: bool) -> Option<Work<T>> {
    let mut w = Work::<T>::new(m, track);
    w.reduce()?;
    Some(w)
}

/// Smith normal form invariants of an integer matrix.
pub fn smith_form(m: &IntMatrix) -> SmithForm {
    let invariants = match run::<i64>(m, false) {
        Some(w) => w.invariants(),
        None => run::<BigInt>(m, false).expect("big integers do not overflow").invariants(),
    };
    SmithForm { invariants }
}

/// Smith normal form together with its unimodular transforms.
pub fn smith_decomposition(m: &IntMatrix) -> SmithDecomposition {
    fn finish<T: Scalar>(w: Work<T>) -> SmithDecomposition {
        SmithDecomposition {
            invariants: w.invariants(),
            left: Work::square_big(w.left.as_ref().unwrap(), w.rows),
            right: Work::square_big(w.right.as_ref().unwrap(), w.cols),
        }
    }
    match run::<i64>(m, true) {
        Some(w) => finish(w),
        None => finish(run::<BigInt>(m, true).expect("big integers do not overflow")),
    }
}

/// An integral basis of `{x : m x = 0}`.
pub fn kernel_basis(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let d = smith_decomposition(m);
    let cols = m.cols();
    (d.rank()..cols)
        .map(|j| (0..cols).map(|i| d.right[i][j].clone()).collect())
        .collect()
}

/// Rank of an integer matrix.
pub fn rank(m: &IntMatrix) -> usize {
    smith_form(m).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Flips the sign so that the first nonzero entry is positive.
    fn normalize_sign(v: &mut [BigInt]) {
        if let Some(first) = v.iter().find(|x| !num_traits::Zero::is_zero(*x)) {
            if num_traits::Signed::is_negative(first) {
                for x in v.iter_mut() {
                    *x = -x.clone();
                }
            }
        }
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn diagonal_divisor_chain() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(smith_form(&m).invariants, big(&[1, 6]));
    }

    #[test]
    fn klein_bottle_relator() {
        // exponent sums of a b a b^-1
        let m = IntMatrix::from_rows(&[vec![2, 0]]);
        let s = smith_form(&m);
        assert_eq!(s.invariants, big(&[2]));
        assert_eq!(s.torsion(), big(&[2]));
    }

    #[test]
    fn decomposition_reproduces_diagonal() {
        let m = IntMatrix::from_rows(&[vec![4, 6, 2], vec![2, -2, 8], vec![1, 1, 1]]);
        let d = smith_decomposition(&m);
        let n = 3;
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigInt::from(0);
                for k in 0..n {
                    for l in 0..n {
                        acc += &d.left[i][k] * BigInt::from(m.get(k, l)) * &d.right[l][j];
                    }
                }
                let expected = if i == j && i < d.rank() { d.invariants[i].clone() } else { BigInt::from(0) };
                assert_eq!(acc, expected, "entry {i},{j}");
            }
        }
    }

    #[test]
    fn kernel_of_boundary_of_triangle() {
        // edges ab, ac, bc -> vertices a, b, c
        let m = IntMatrix::from_rows(&[vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        let mut v = k[0].clone();
        normalize_sign(&mut v);
        assert_eq!(v, big(&[1, -1, 1]));
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let huge = i64::MAX / 2;
        let m = IntMatrix::from_rows(&[vec![huge, huge - 1], vec![huge - 1, huge - 2]]);
        let s = smith_form(&m);
        // determinant is -1
        assert_eq!(s.invariants, big(&[1, 1]));
    }
}
