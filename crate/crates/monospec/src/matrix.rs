//! Exact dense matrices over the rationals: rank, kernel, determinant via
//! fraction-preserving Gaussian elimination.

use crate::rat::Rational;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<Rational>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Row echelon form; returns (echelon matrix, pivot columns).
    fn echelon(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let pivot_row = (row..m.rows).find(|&r| !m[(r, col)].is_zero());
            let Some(p) = pivot_row else { continue };
            if p != row {
                for j in 0..m.cols {
                    let a = m[(row, j)].clone();
                    let b = m[(p, j)].clone();
                    m[(row, j)] = b;
                    m[(p, j)] = a;
                }
            }
            let inv = m[(row, col)].clone().recip();
            for j in col..m.cols {
                let v = &m[(row, j)] * &inv;
                m[(row, j)] = v;
            }
            for r in 0..m.rows {
                if r != row && !m[(r, col)].is_zero() {
                    let f = m[(r, col)].clone();
                    for j in col..m.cols {
                        let v = &m[(r, j)] - &(&m[(row, j)] * &f);
                        m[(r, j)] = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    /// Rank over the rational field. Deterministic and exact.
    pub fn rank(&self) -> usize {
        self.echelon().1.len()
    }

    /// Basis of the right kernel, one vector per free column, in ascending
    /// free-column order.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (e, pivots) = self.echelon();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -e[(r, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Determinant of a square matrix by elimination with exact division.
    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Rational::one();
        for col in 0..n {
            let pivot_row = (col..n).find(|&r| !m[(r, col)].is_zero());
            let Some(p) = pivot_row else {
                return Rational::zero();
            };
            if p != col {
                det = -det;
                for j in 0..n {
                    let a = m[(col, j)].clone();
                    let b = m[(p, j)].clone();
                    m[(col, j)] = b;
                    m[(p, j)] = a;
                }
            }
            let pivot = m[(col, col)].clone();
            det *= &pivot;
            let inv = pivot.recip();
            for r in col + 1..n {
                if !m[(r, col)].is_zero() {
                    let f = &m[(r, col)] * &inv;
                    for j in col..n {
                        let v = &m[(r, j)] - &(&m[(col, j)] * &f);
                        m[(r, j)] = v;
                    }
                }
            }
        }
        det
    }

    /// Applies the matrix to a vector.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for j in 0..self.cols {
                    acc += &self[(i, j)] * &v[j];
                }
                acc
            })
            .collect()
    }

    /// Stacks another matrix (same column count) below this one.
    pub fn stack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rint};

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rint(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_identity_and_proportional_rows() {
        assert_eq!(Matrix::identity(3).rank(), 3);
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn rank_vandermonde_nodes_0_1_2() {
        // Determinant is the product of node differences, hence nonzero.
        let v = m(&[&[1, 0, 0], &[1, 1, 1], &[1, 2, 4]]);
        assert_eq!(v.rank(), 3);
        assert_eq!(v.determinant(), rint(2));
    }

    #[test]
    fn rank_equals_transpose_rank() {
        let samples = [
            m(&[&[1, 2, 3], &[4, 5, 6]]),
            m(&[&[0, 0], &[0, 0]]),
            m(&[&[2, 4], &[1, 2], &[3, 6]]),
            m(&[&[1, 0, 2], &[0, 1, 3], &[1, 1, 5]]),
        ];
        for s in &samples {
            assert_eq!(s.rank(), s.transpose().rank());
        }
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 1, 1]]);
        let kernel = a.kernel_basis();
        assert_eq!(kernel.len(), 3 - a.rank());
        for v in kernel {
            assert!(a.apply(&v).iter().all(|c| c.is_zero()));
        }
    }

    #[test]
    fn fractional_elimination_stays_exact() {
        let a = Matrix::from_rows(vec![
            vec![rat(1, 3), rat(1, 7)],
            vec![rat(2, 3), rat(2, 7)],
        ]);
        assert_eq!(a.rank(), 1);
        assert!(a.determinant().is_zero());
    }
}
