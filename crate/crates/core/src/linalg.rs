//! Dense exact linear algebra over Q(q).

use crate::error::{Error, Result};
use crate::ring::QCoeff;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<QCoeff>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![QCoeff::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, QCoeff::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &QCoeff {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: QCoeff) {
        self.data[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let v = out.get(r, c) + &(a * b);
                        out.set(r, c, v);
                    }
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            // prefer the simplest nonzero pivot to limit coefficient growth
            let pick = (row..self.rows)
                .filter(|&r| !self.get(r, col).is_zero())
                .min_by_key(|&r| complexity(self.get(r, col)));
            let Some(p) = pick else { continue };
            self.swap_rows(row, p);
            let inv = self.get(row, col).inv().expect("nonzero pivot");
            for c in col..self.cols {
                let v = self.get(row, c) * &inv;
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let f = self.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for c in col..self.cols {
                    let a = self.get(row, c);
                    if a.is_zero() {
                        continue;
                    }
                    let v = self.get(r, c) - &(&f * a);
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// A basis of `{x : self * x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<QCoeff>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![QCoeff::zero(); self.cols];
                v[f] = QCoeff::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m.get(r, f);
                }
                v
            })
            .collect()
    }

    /// The inverse of a square matrix.
    pub fn inverse(&self) -> Result<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, QCoeff::one());
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::SingularSystem);
        }
        let mut inv = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, aug.get(r, n + c).clone());
            }
        }
        Ok(inv)
    }

    /// Inverse of a lower-triangular matrix by forward substitution.
    pub fn lower_triangular_inverse(&self) -> Result<Matrix> {
        let n = self.rows;
        let mut inv = Matrix::zeros(n, n);
        for c in 0..n {
            for r in c..n {
                let mut acc = if r == c { QCoeff::one() } else { QCoeff::zero() };
                for k in c..r {
                    let a = self.get(r, k);
                    if !a.is_zero() && !inv.get(k, c).is_zero() {
                        acc -= &(a * inv.get(k, c));
                    }
                }
                let d = self.get(r, r);
                if d.is_zero() {
                    return Err(Error::SingularSystem);
                }
                inv.set(r, c, acc.checked_div(d)?);
            }
        }
        Ok(inv)
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self.get(r, c).is_zero()))
    }
}

fn complexity(c: &QCoeff) -> usize {
    c.numerator_terms().len() * 4 + c.denominator_terms().len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> QCoeff {
        s.parse().unwrap()
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let mut m = Matrix::zeros(2, 2);
        m.set(0, 0, c("q"));
        m.set(0, 1, c("1"));
        m.set(1, 0, c("1"));
        m.set(1, 1, c("q^-1 + 1"));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
    }

    #[test]
    fn rank_and_kernel() {
        let mut m = Matrix::zeros(2, 3);
        m.set(0, 0, c("1"));
        m.set(0, 1, c("q"));
        m.set(1, 0, c("q^-1"));
        m.set(1, 1, c("1"));
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            for r in 0..2 {
                let s = (0..3).fold(QCoeff::zero(), |acc, j| &acc + &(m.get(r, j) * &v[j]));
                assert!(s.is_zero());
            }
        }
    }

    #[test]
    fn singular_inverse_errors() {
        let m = Matrix::zeros(2, 2);
        assert_eq!(m.inverse(), Err(Error::SingularSystem));
        assert_eq!(m.lower_triangular_inverse(), Err(Error::SingularSystem));
    }

    #[test]
    fn triangular_inverse_agrees() {
        let mut m = Matrix::identity(3);
        m.set(1, 0, c("q - q^-1"));
        m.set(2, 0, c("2"));
        m.set(2, 2, c("1/2"));
        assert!(m.is_lower_triangular());
        assert_eq!(m.lower_triangular_inverse().unwrap(), m.inverse().unwrap());
    }
}
