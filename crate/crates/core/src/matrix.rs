//! Dense matrices over an exact ring.
//!
//! Determinants use Laplace expansion memoised over column subsets, so they
//! need only ring operations and work for polynomial entries. Elimination
//! (rank, nullspace, inverse) requires a [`Field`].

use std::collections::HashMap;
use std::fmt;
use std::ops::{Index, IndexMut};

use crate::scalar::{Field, Ring};

#[derive(Clone, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = R::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn diagonal(d: &[R]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> Vec<R> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn mul(&self, other: &Matrix<R>) -> Matrix<R> {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(R::zero(), |acc, k| {
                acc + self[(i, k)].clone() * other[(k, j)].clone()
            })
        })
    }

    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        assert_eq!(self.cols, v.len(), "shape mismatch in product");
        (0..self.rows)
            .map(|i| {
                (0..self.cols).fold(R::zero(), |acc, k| acc + self[(i, k)].clone() * v[k].clone())
            })
            .collect()
    }

    /// `xᵀ · self · y`.
    pub fn bilinear(&self, x: &[R], y: &[R]) -> R {
        let my = self.mul_vec(y);
        x.iter()
            .zip(&my)
            .fold(R::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    /// `Sᵀ · self · S`.
    pub fn congruence(&self, s: &Matrix<R>) -> Matrix<R> {
        s.transpose().mul(self).mul(s)
    }

    pub fn scale(&self, c: &R) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    pub fn det(&self) -> R {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return R::one();
        }
        // memo[mask] = det of rows 0..popcount(mask) against the columns in mask
        let mut memo: HashMap<u32, R> = HashMap::new();
        memo.insert(0, R::one());
        for size in 1..=n {
            let row = size - 1;
            let masks: Vec<u32> = (0u32..(1 << n)).filter(|m| m.count_ones() as usize == size).collect();
            for mask in masks {
                let mut acc = R::zero();
                for j in 0..n {
                    if mask & (1 << j) == 0 {
                        continue;
                    }
                    let sub = &memo[&(mask & !(1 << j))];
                    let entry = &self[(row, j)];
                    if !entry.is_zero() && !sub.is_zero() {
                        let term = entry.clone() * sub.clone();
                        // sign from the position of column j among the selected ones
                        let later = (mask >> (j + 1)).count_ones();
                        acc = if later % 2 == 0 { acc + term } else { acc - term };
                    }
                }
                memo.insert(mask, acc);
            }
            memo.retain(|m, _| m.count_ones() as usize >= size);
        }
        memo.remove(&((1u32 << n) - 1)).expect("full mask present")
    }

    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> R {
        self.submatrix(rows, cols).det()
    }

    /// Transpose of the cofactor matrix.
    pub fn adjugate(&self) -> Self {
        assert!(self.is_square(), "adjugate of a non-square matrix");
        let n = self.rows;
        if n == 1 {
            return Self::identity(1);
        }
        Self::from_fn(n, n, |i, j| {
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let m = self.minor(&rows, &cols);
            if (i + j) % 2 == 0 {
                m
            } else {
                -m
            }
        })
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(R::is_zero)
    }
}

impl<F: Field> Matrix<F> {
    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv();
            for j in 0..m.cols {
                m[(r, j)] = m[(r, j)].clone() * inv.clone();
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in 0..m.cols {
                        let v = m[(i, j)].clone() - f.clone() * m[(r, j)].clone();
                        m[(i, j)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right nullspace `{x : self·x = 0}`, one vector per free
    /// column, with a 1 in that column.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(i, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Matrix<F>> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                F::one()
            } else {
                F::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| r[(i, j + n)].clone()))
    }

    /// Some solution of `self·x = b`, if one exists.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let aug = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r[(i, self.cols)].clone();
        }
        Some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<R> Index<(usize, usize)> for Matrix<R> {
    type Output = R;
    fn index(&self, (i, j): (usize, usize)) -> &R {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.data[i * self.cols + j]
    }
}

impl<R> IndexMut<(usize, usize)> for Matrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl<R: fmt::Debug> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[R]> = self.data.chunks(self.cols.max(1)).collect();
        f.debug_list().entries(rows).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::poly;
    use crate::{Poly, Rat};
    use num_rational::Rational64;
    use num_traits::Zero;

    fn q(rows: &[&[i64]]) -> Matrix<Rat> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rat::from_i64(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn determinant_small() {
        assert_eq!(q(&[&[1, 2], &[3, 4]]).det(), Rat::from_i64(-2));
        assert_eq!(
            q(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]]).det(),
            Rat::from_i64(2 * (3 - 2) + (1 - 3))
        );
    }

    #[test]
    fn determinant_of_permutation_signs() {
        let p = q(&[&[0, 0, 1, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 1, 0, 0]]);
        // cycle (0 2 3 1) of length 4 is odd
        assert_eq!(p.det(), Rat::from_i64(-1));
    }

    #[test]
    fn symbolic_determinant() {
        let m = Matrix::from_rows(vec![
            vec![poly("a").unwrap(), poly("b").unwrap()],
            vec![poly("c").unwrap(), poly("d").unwrap()],
        ]);
        assert_eq!(m.det(), poly("a*d - b*c").unwrap());
        let adj = m.adjugate();
        assert_eq!(adj[(0, 1)], poly("-b").unwrap());
        let prod = m.mul(&adj);
        assert_eq!(prod, Matrix::<Poly>::identity(2).scale(&m.det()));
    }

    #[test]
    fn rank_nullspace_inverse() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).iter().all(|x| x.is_zero()));
        assert!(m.inverse().is_none());
        let a = q(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
    }

    #[test]
    fn generic_over_machine_rationals() {
        let m: Matrix<Rational64> = Matrix::from_rows(vec![
            vec![Rational64::new(1, 2), Rational64::from_integer(1)],
            vec![Rational64::from_integer(3), Rational64::from_integer(4)],
        ]);
        assert_eq!(m.det(), Rational64::from_integer(-1));
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = q(&[&[1, 1], &[2, 2]]);
        assert!(m.solve(&[Rat::from_i64(1), Rat::from_i64(3)]).is_none());
        let x = m.solve(&[Rat::from_i64(1), Rat::from_i64(2)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![Rat::from_i64(1), Rat::from_i64(2)]);
    }
}
