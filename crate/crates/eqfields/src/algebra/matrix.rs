//! Exact linear algebra over field elements: determinants, adjugates,
//! null spaces, row reduction, and Wronskians.

use std::sync::Arc;

use super::field::{FieldDescriptor, FieldElement};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<FieldElement>,
    pub desc: Arc<FieldDescriptor>,
}

impl Matrix {
    pub fn new(desc: &Arc<FieldDescriptor>, rows: usize, cols: usize, entries: Vec<FieldElement>) -> Self {
        assert_eq!(entries.len(), rows * cols, "matrix shape mismatch");
        assert!(entries.iter().all(|e| e.desc == *desc), "matrix entries share one descriptor");
        Matrix { rows, cols, entries, desc: desc.clone() }
    }

    pub fn zero(desc: &Arc<FieldDescriptor>, rows: usize, cols: usize) -> Self {
        Matrix::new(desc, rows, cols, vec![FieldElement::zero(desc); rows * cols])
    }

    pub fn identity(desc: &Arc<FieldDescriptor>, n: usize) -> Self {
        let mut m = Matrix::zero(desc, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = FieldElement::one(desc);
        }
        m
    }

    pub fn from_rows(desc: &Arc<FieldDescriptor>, rows: &[Vec<FieldElement>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "rectangular");
        Matrix::new(desc, r, c, rows.iter().flatten().cloned().collect())
    }

    pub fn at(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut FieldElement {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> Vec<FieldElement> {
        (0..self.cols).map(|j| self.at(i, j).clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zero(&self.desc, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *m.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        m
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut m = Matrix::zero(&self.desc, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = FieldElement::zero(&self.desc);
                for k in 0..self.cols {
                    acc = acc.add(&self.at(i, k).mul(other.at(k, j)));
                }
                *m.at_mut(i, j) = acc;
            }
        }
        m
    }

    pub fn scale(&self, c: &FieldElement) -> Matrix {
        Matrix::new(&self.desc, self.rows, self.cols, self.entries.iter().map(|e| e.mul(c)).collect())
    }

    /// Determinant by exact Gaussian elimination (pivot = first nonzero
    /// row in each column, scanning columns left to right).
    pub fn det(&self) -> Result<FieldElement> {
        if self.rows != self.cols {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = FieldElement::one(&self.desc);
        let mut sign_flip = false;
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m.at(r, col).is_zero());
            let Some(pr) = pivot else {
                return Ok(FieldElement::zero(&self.desc));
            };
            if pr != col {
                for j in 0..n {
                    let a = m.at(pr, j).clone();
                    let b = m.at(col, j).clone();
                    *m.at_mut(pr, j) = b;
                    *m.at_mut(col, j) = a;
                }
                sign_flip = !sign_flip;
            }
            let p = m.at(col, col).clone();
            det = det.mul(&p);
            for r in col + 1..n {
                if m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col).div(&p).unwrap();
                for j in col..n {
                    let v = m.at(r, j).sub(&factor.mul(m.at(col, j)));
                    *m.at_mut(r, j) = v;
                }
            }
        }
        Ok(if sign_flip { det.neg() } else { det })
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> Matrix {
        let mut entries = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in 0..self.rows {
            if i == skip_row {
                continue;
            }
            for j in 0..self.cols {
                if j == skip_col {
                    continue;
                }
                entries.push(self.at(i, j).clone());
            }
        }
        Matrix::new(&self.desc, self.rows - 1, self.cols - 1, entries)
    }

    /// Classical adjugate: m * adjugate(m) = det(m) * I.
    pub fn adjugate(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        if n == 1 {
            let mut m = Matrix::zero(&self.desc, 1, 1);
            *m.at_mut(0, 0) = FieldElement::one(&self.desc);
            return Ok(m);
        }
        let mut adj = Matrix::zero(&self.desc, n, n);
        for i in 0..n {
            for j in 0..n {
                let c = self.minor(i, j).det()?;
                let signed = if (i + j) % 2 == 0 { c } else { c.neg() };
                // adjugate = transpose of cofactor matrix
                *adj.at_mut(j, i) = signed;
            }
        }
        Ok(adj)
    }

    /// Reduced row echelon form; returns (rref, pivot column indices).
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..m.cols {
            if r >= m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.at(i, col).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    let a = m.at(pr, j).clone();
                    let b = m.at(r, j).clone();
                    *m.at_mut(pr, j) = b;
                    *m.at_mut(r, j) = a;
                }
            }
            let p = m.at(r, col).clone();
            let pinv = p.inv().unwrap();
            for j in 0..m.cols {
                let v = m.at(r, j).mul(&pinv);
                *m.at_mut(r, j) = v;
            }
            for i in 0..m.rows {
                if i == r || m.at(i, col).is_zero() {
                    continue;
                }
                let f = m.at(i, col).clone();
                for j in 0..m.cols {
                    let v = m.at(i, j).sub(&f.mul(m.at(r, j)));
                    *m.at_mut(i, j) = v;
                }
            }
            pivots.push(col);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space. Each free column (in ascending
    /// index order) yields one vector with a 1 in that coordinate.
    pub fn kernel_basis(&self) -> Vec<Vec<FieldElement>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut pivot_of_col = vec![None; self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            pivot_of_col[pc] = Some(row);
        }
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![FieldElement::zero(&self.desc); self.cols];
            v[free] = FieldElement::one(&self.desc);
            for (col, slot) in pivot_of_col.iter().enumerate() {
                if let Some(row) = slot {
                    v[col] = r.at(*row, free).neg();
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Canonical basis of the row space: nonzero rows of the RREF.
    pub fn row_space_basis(&self) -> Vec<Vec<FieldElement>> {
        let (r, pivots) = self.rref();
        (0..pivots.len()).map(|i| r.row(i)).collect()
    }
}

/// Wronskian matrix with rows delta^i(a_j), 0 <= i < k.
pub fn wronskian_matrix(elems: &[FieldElement]) -> Result<Matrix> {
    assert!(!elems.is_empty());
    let desc = elems[0].desc.clone();
    let k = elems.len();
    let mut rows = Vec::with_capacity(k);
    let mut current: Vec<FieldElement> = elems.to_vec();
    for i in 0..k {
        if i > 0 {
            current = current.iter().map(FieldElement::derive).collect::<Result<_>>()?;
        }
        rows.push(current.clone());
    }
    Ok(Matrix::from_rows(&desc, &rows))
}

/// W(a_1..a_k): determinant of the iterated-derivative matrix.
pub fn wronskian(elems: &[FieldElement]) -> Result<FieldElement> {
    wronskian_matrix(elems)?.det()
}

/// True iff the elements are linearly dependent over the constants,
/// decided by vanishing of the Wronskian.
pub fn constants_linear_dependent(elems: &[FieldElement]) -> Result<bool> {
    Ok(wronskian(elems)?.is_zero())
}
