//! Dense matrices over F_{q²}.

use crate::error::{Error, Result};
use crate::field::{FElem, FieldSpec};

/// Row-major dense matrix over F_{q²}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FElem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![FElem::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FElem::ONE);
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<FElem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Builds a matrix from rows of wire indices.
    pub fn from_indices(field: &FieldSpec, rows: &[&[u32]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for &x in r.iter() {
                data.push(field.element(x as u64)?);
            }
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FElem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn as_slice(&self) -> &[FElem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix, f: &FieldSpec) -> Result<Matrix> {
        self.check_same_shape(other)?;
        Ok(self.zip_with(other, |a, b| f.add(a, b)))
    }

    pub fn sub(&self, other: &Matrix, f: &FieldSpec) -> Result<Matrix> {
        self.check_same_shape(other)?;
        Ok(self.zip_with(other, |a, b| f.sub(a, b)))
    }

    pub(crate) fn zip_with(&self, other: &Matrix, op: impl Fn(FElem, FElem) -> FElem) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        }
    }

    pub fn map(&self, op: impl Fn(FElem) -> FElem) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| op(a)).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix, f: &FieldSpec) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, f.add(cur, f.mul(a, other.get(l, j))));
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// `conj(M)ᵀ`.
    pub fn conj_transpose(&self, f: &FieldSpec) -> Matrix {
        self.transpose().map(|x| f.conj(x))
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "hcat of {} and {} rows",
                self.rows, other.rows
            )));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(&self.data[i * self.cols..(i + 1) * self.cols]);
            data.extend_from_slice(&other.data[i * other.cols..(i + 1) * other.cols]);
        }
        Ok(Matrix {
            rows: self.rows,
            cols,
            data,
        })
    }

    /// Row rank by Gaussian elimination with first-nonzero pivoting.
    pub fn rank(&self, f: &FieldSpec) -> usize {
        rank_of(self.rows, self.cols, &mut self.data.clone(), f)
    }
}

/// Rank of a row-major buffer; the buffer is destroyed.
pub(crate) fn rank_of(rows: usize, cols: usize, m: &mut [FElem], f: &FieldSpec) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| !m[r * cols + c].is_zero()) else {
            continue;
        };
        if piv != rank {
            for j in c..cols {
                m.swap(piv * cols + j, rank * cols + j);
            }
        }
        let inv = f.inv(m[rank * cols + c]).expect("pivot is nonzero");
        for r in rank + 1..rows {
            let x = m[r * cols + c];
            if x.is_zero() {
                continue;
            }
            let factor = f.mul(x, inv);
            for j in c..cols {
                let t = f.mul(factor, m[rank * cols + j]);
                m[r * cols + j] = f.sub(m[r * cols + j], t);
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_basics() {
        let f = FieldSpec::new(2, 1).unwrap();
        assert_eq!(Matrix::zeros(3, 3).rank(&f), 0);
        assert_eq!(Matrix::identity(4).rank(&f), 4);
        let m = Matrix::from_indices(&f, &[&[1, 1], &[1, 0]]).unwrap();
        assert_eq!(m.rank(&f), 2);
        let m = Matrix::from_indices(&f, &[&[1, 2], &[3, 1]]).unwrap();
        // second row is ω² times the first
        assert_eq!(m.rank(&f), 1);
    }

    #[test]
    fn rectangular_rank_and_hcat() {
        let f = FieldSpec::new(3, 1).unwrap();
        let a = Matrix::from_indices(&f, &[&[1], &[0], &[2]]).unwrap();
        let b = Matrix::from_indices(&f, &[&[2], &[0], &[1]]).unwrap();
        assert_eq!(a.hcat(&b).unwrap().rank(&f), 1);
        let c = Matrix::from_indices(&f, &[&[0], &[1], &[0]]).unwrap();
        assert_eq!(a.hcat(&c).unwrap().rank(&f), 2);
        assert_eq!(a.hcat(&c).unwrap().transpose().rank(&f), 2);
    }

    #[test]
    fn shape_errors() {
        let f = FieldSpec::new(2, 1).unwrap();
        let a = Matrix::zeros(2, 2);
        let b = Matrix::zeros(3, 3);
        assert!(a.add(&b, &f).is_err());
        assert!(a.mul(&b, &f).is_err());
        assert!(Matrix::from_vec(2, 2, vec![FElem::ZERO; 3]).is_err());
        assert!(Matrix::from_indices(&f, &[&[4]]).is_err());
    }
}
