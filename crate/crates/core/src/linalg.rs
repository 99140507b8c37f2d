//! Minimal dense Hermitian linear algebra: Cholesky factorization with
//! leading-principal-block solves.
//!
//! Horizons stay small (a few thousand at most), so plain dense loops are the
//! right tool here.
#![allow(clippy::needless_range_loop)]

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{Scalar, C};

/// Lower-triangular Cholesky factor `L` of a Hermitian positive definite
/// matrix `G = L L^H`.
///
/// The leading `k x k` block of `L` is the Cholesky factor of the leading
/// `k x k` block of `G`, so one factorization serves every truncation level.
#[derive(Debug, Clone)]
pub(crate) struct HermitianCholesky<T: Scalar> {
    dim: usize,
    /// Row-major lower triangle (entries above the diagonal stay zero).
    factor: Vec<C<T>>,
}

impl<T: Scalar> HermitianCholesky<T> {
    /// Factors a row-major Hermitian matrix of dimension `dim`.
    pub fn factor(entries: &[C<T>], dim: usize) -> Result<Self> {
        assert_eq!(entries.len(), dim * dim, "matrix storage size mismatch");
        let zero = Complex::new(T::zero(), T::zero());
        let mut l = vec![zero; dim * dim];
        for j in 0..dim {
            let mut diag = entries[j * dim + j].re;
            for k in 0..j {
                diag -= l[j * dim + k].norm_sqr();
            }
            if diag <= T::zero() || !diag.is_finite() {
                return Err(Error::NotPositiveDefinite {
                    index: j,
                    pivot: diag.to_f64().unwrap_or(f64::NAN),
                });
            }
            let pivot = diag.sqrt();
            l[j * dim + j] = Complex::new(pivot, T::zero());
            for i in (j + 1)..dim {
                let mut s = entries[i * dim + j];
                for k in 0..j {
                    s = s - l[i * dim + k] * l[j * dim + k].conj();
                }
                l[i * dim + j] = s / pivot;
            }
        }
        Ok(Self { dim, factor: l })
    }

    /// Solves `G_k x = b` where `G_k` is the leading `k x k` block,
    /// `k = rhs.len()`.
    pub fn solve_leading(&self, rhs: &[C<T>]) -> Result<Vec<C<T>>> {
        let k = rhs.len();
        if k > self.dim {
            return Err(Error::SingularGram { size: k });
        }
        let mut x = rhs.to_vec();
        // forward: L y = b
        for i in 0..k {
            let mut s = x[i];
            for j in 0..i {
                s = s - self.factor[i * self.dim + j] * x[j];
            }
            x[i] = s / self.factor[i * self.dim + i];
        }
        // backward: L^H x = y
        for i in (0..k).rev() {
            let mut s = x[i];
            for j in (i + 1)..k {
                s = s - self.factor[j * self.dim + i].conj() * x[j];
            }
            x[i] = s / self.factor[i * self.dim + i];
        }
        Ok(x)
    }

    /// Applies `L_k^H` (conjugate transpose of the leading block) to a vector.
    pub fn apply_factor_adjoint(&self, v: &[C<T>]) -> Vec<C<T>> {
        let k = v.len();
        assert!(k <= self.dim);
        let mut out = Vec::with_capacity(k);
        for i in 0..k {
            let mut s = Complex::new(T::zero(), T::zero());
            for j in i..k {
                s = s + self.factor[j * self.dim + i].conj() * v[j];
            }
            out.push(s);
        }
        out
    }
}

/// Checks that row-major `entries` is Hermitian within `tol` (largest
/// deviation `|G[j][k] - conj(G[k][j])|`).
pub(crate) fn hermitian_deviation<T: Scalar>(entries: &[C<T>], dim: usize) -> (usize, usize, T) {
    let mut worst = (0, 0, T::zero());
    for j in 0..dim {
        for k in j..dim {
            let d = (entries[j * dim + k] - entries[k * dim + j].conj()).norm();
            if d > worst.2 {
                worst = (j, k, d);
            }
        }
    }
    worst
}
