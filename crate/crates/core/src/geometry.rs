//! The matrix ↔ subspace correspondence in PG(2n−1, q²).
//!
//! An n×n matrix `A` defines the (n−1)-space `S_A` spanned by the columns of
//! `[I; A]`. Two such spaces meet in projective dimension
//! `n − rank(A − B) − 1`, and `S_A` is totally isotropic for the hermitian
//! form with Gram matrix `[[0, aI], [−aI, 0]]` exactly when `A` is hermitian.

use crate::error::{Error, Result};
use crate::field::{FElem, FieldSpec};
use crate::matrix::Matrix;

/// The 2n×n basis `[I; A]` of `S_A`.
pub fn subspace_of(a: &Matrix) -> Result<Matrix> {
    let n = a.rows();
    if a.cols() != n {
        return Err(Error::DimensionMismatch("S_A needs a square matrix".into()));
    }
    let mut basis = Matrix::zeros(2 * n, n);
    for i in 0..n {
        basis.set(i, i, FElem::ONE);
        for j in 0..n {
            basis.set(n + i, j, a.get(i, j));
        }
    }
    Ok(basis)
}

/// Projective dimension of `S_A ∩ S_B` computed from the spans
/// (−1 for the empty intersection).
pub fn intersection_dim(a: &Matrix, b: &Matrix, f: &FieldSpec) -> Result<i64> {
    let sa = subspace_of(a)?;
    let sb = subspace_of(b)?;
    if sa.rows() != sb.rows() {
        return Err(Error::DimensionMismatch(
            "matrices of different sizes".into(),
        ));
    }
    let n = a.rows() as i64;
    let sum = sa.hcat(&sb)?.rank(f) as i64;
    Ok(2 * n - sum - 1)
}

/// Whether `S_A` is totally isotropic for the form `[[0, aI], [−aI, 0]]`
/// with `a = f.form_scalar()`.
pub fn is_isotropic_in_hermitian_space(m: &Matrix, f: &FieldSpec) -> Result<bool> {
    let basis = subspace_of(m)?;
    let n = m.rows();
    let a = f.form_scalar();
    let minus_a = f.neg(a);
    // form(x, y) = conj(x)ᵀ G y with G = [[0, aI], [−aI, 0]]
    for i in 0..n {
        for j in 0..n {
            let mut acc = FElem::ZERO;
            for t in 0..n {
                let x_top = f.conj(basis.get(t, i));
                let x_bot = f.conj(basis.get(n + t, i));
                let y_top = basis.get(t, j);
                let y_bot = basis.get(n + t, j);
                acc = f.add(acc, f.mul(f.mul(x_top, a), y_bot));
                acc = f.add(acc, f.mul(f.mul(x_bot, minus_a), y_top));
            }
            if !acc.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// An (r−1)-space of PG(n−1, q²) given by an n×r basis of full column rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PGSubspace {
    basis: Matrix,
}

impl PGSubspace {
    pub fn new(basis: Matrix, f: &FieldSpec) -> Result<Self> {
        let r = basis.rank(f);
        if r != basis.cols() {
            return Err(Error::Usage(format!(
                "basis has rank {r} but {} columns",
                basis.cols()
            )));
        }
        Ok(PGSubspace { basis })
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// Ambient vector dimension n.
    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    /// Vector dimension r.
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }
}
