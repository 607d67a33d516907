//! Small dense matrices over [`Real`] for the sl₂ oracle.

use std::ops::{Index, IndexMut};

use crate::real::{self, Precision, Real};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Real>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize, p: Precision) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![p.from_int(0); rows * cols],
        }
    }

    pub fn identity(n: usize, p: Precision) -> Self {
        let mut m = Matrix::zeros(n, n, p);
        for i in 0..n {
            m[(i, i)] = p.from_int(1);
        }
        m
    }

    pub fn diagonal(entries: Vec<Real>, p: Precision) -> Self {
        let n = entries.len();
        let mut m = Matrix::zeros(n, n, p);
        for (i, e) in entries.into_iter().enumerate() {
            m[(i, i)] = e;
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

    pub fn transpose(&self) -> Matrix {
        let mut t = self.clone();
        t.rows = self.cols;
        t.cols = self.rows;
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = self.clone();
        out.cols = other.cols;
        out.data.clear();
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = self[(i, 0)].clone() * other[(0, j)].clone();
                for k in 1..self.cols {
                    let a = &self[(i, k)];
                    if *a != Real::ZERO {
                        acc += a.clone() * other[(k, j)].clone();
                    }
                }
                out.data.push(acc);
            }
        }
        out
    }

    pub fn scaled(&self, c: &Real) -> Matrix {
        let mut out = self.clone();
        for x in &mut out.data {
            *x = x.clone() * c.clone();
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x = x.clone() - y.clone();
        }
        out
    }

    pub fn add_assign(&mut self, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (x, y) in self.data.iter_mut().zip(&other.data) {
            *x += y.clone();
        }
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = self.clone();
        out.rows = self.rows * other.rows;
        out.cols = self.cols * other.cols;
        out.data = Vec::with_capacity(out.rows * out.cols);
        for i in 0..out.rows {
            for j in 0..out.cols {
                let a = &self[(i / other.rows, j / other.cols)];
                let b = &other[(i % other.rows, j % other.cols)];
                out.data.push(a.clone() * b.clone());
            }
        }
        out
    }

    pub fn frobenius(&self) -> Real {
        let mut acc = self.data[0].clone() * self.data[0].clone();
        for x in &self.data[1..] {
            acc += x.clone() * x.clone();
        }
        if acc == Real::ZERO {
            acc
        } else {
            acc.sqrt()
        }
    }

    /// The submatrix on rows and columns `idx`.
    pub fn principal_submatrix(&self, idx: &[usize]) -> Matrix {
        let mut out = self.clone();
        out.rows = idx.len();
        out.cols = idx.len();
        out.data = Vec::with_capacity(idx.len() * idx.len());
        for &i in idx {
            for &j in idx {
                out.data.push(self[(i, j)].clone());
            }
        }
        out
    }

    /// Gauss–Jordan with partial pivoting; `None` when a pivot vanishes.
    pub fn inverse(&self, p: Precision) -> Option<Matrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n, p);
        for col in 0..n {
            let pivot = (col..n).max_by(|&x, &y| {
                real::abs(&a[(x, col)])
                    .partial_cmp(&real::abs(&a[(y, col)]))
                    .expect("ordered reals")
            })?;
            if a[(pivot, col)] == Real::ZERO {
                return None;
            }
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let d = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] = a[(col, j)].clone() / d.clone();
                inv[(col, j)] = inv[(col, j)].clone() / d.clone();
            }
            for r in 0..n {
                if r == col || a[(r, col)] == Real::ZERO {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let x = a[(col, j)].clone() * f.clone();
                    a[(r, j)] -= x;
                    let y = inv[(col, j)].clone() * f.clone();
                    inv[(r, j)] -= y;
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn off_diagonal_sq(&self) -> Real {
        let mut acc = self.data[0].clone() * Real::ZERO;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j {
                    acc += self[(i, j)].clone() * self[(i, j)].clone();
                }
            }
        }
        acc
    }

    /// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
    pub fn symmetric_eigenvalues(&self, p: Precision) -> Vec<Real> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let eps = p.epsilon();
        let target = {
            let f = self.frobenius() * eps.clone();
            f.clone() * f
        };
        let one = p.from_int(1);
        let two = p.from_int(2);
        for _sweep in 0..100 {
            if a.off_diagonal_sq() <= target {
                break;
            }
            for i in 0..n {
                for j in i + 1..n {
                    if a[(i, j)] == Real::ZERO {
                        continue;
                    }
                    let theta =
                        (a[(j, j)].clone() - a[(i, i)].clone()) / (two.clone() * a[(i, j)].clone());
                    let root = (theta.clone() * theta.clone() + one.clone()).sqrt();
                    let t = if theta >= Real::ZERO {
                        one.clone() / (theta.clone() + root)
                    } else {
                        -(one.clone() / (root - theta.clone()))
                    };
                    let c = one.clone() / (t.clone() * t.clone() + one.clone()).sqrt();
                    let s = t * c.clone();
                    for k in 0..n {
                        let (x, y) = (a[(k, i)].clone(), a[(k, j)].clone());
                        a[(k, i)] = c.clone() * x.clone() - s.clone() * y.clone();
                        a[(k, j)] = s.clone() * x + c.clone() * y;
                    }
                    for k in 0..n {
                        let (x, y) = (a[(i, k)].clone(), a[(j, k)].clone());
                        a[(i, k)] = c.clone() * x.clone() - s.clone() * y.clone();
                        a[(j, k)] = s.clone() * x + c.clone() * y;
                    }
                }
            }
        }
        let mut ev: Vec<Real> = (0..n).map(|i| a[(i, i)].clone()).collect();
        ev.sort_by(|x, y| x.partial_cmp(y).expect("ordered reals"));
        ev
    }

    /// Dominant eigenvalue by power iteration with Rayleigh quotients.
    /// Returns the estimate and the iteration count.
    pub fn power_iteration(&self, p: Precision, max_iter: usize) -> (Real, usize) {
        assert!(self.is_square());
        let n = self.rows;
        let mut v = Matrix {
            rows: n,
            cols: 1,
            data: (0..n).map(|i| p.from_int(1 + i as i64)).collect(),
        };
        let stop = p.epsilon();
        let mut estimate = p.from_int(0);
        for it in 1..=max_iter {
            let w = self.mul(&v);
            let num = v.transpose().mul(&w)[(0, 0)].clone();
            let den = v.transpose().mul(&v)[(0, 0)].clone();
            let next = num / den;
            let norm = w.frobenius();
            if norm == Real::ZERO {
                return (p.from_int(0), it);
            }
            v = w.scaled(&(p.from_int(1) / norm));
            let change = real::abs(&(next.clone() - estimate.clone()));
            let settled = change <= stop.clone() * real::abs(&next);
            estimate = next;
            if settled {
                return (estimate, it);
            }
        }
        (estimate, max_iter)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Real;
    fn index(&self, (i, j): (usize, usize)) -> &Real {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Real {
        &mut self.data[i * self.cols + j]
    }
}
