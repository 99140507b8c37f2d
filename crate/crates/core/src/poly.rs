//! Complex polynomial / truncated power-series arithmetic and circle sampling.
//!
//! Every function handled by the crate enters as a finite Taylor polynomial
//! `f = sum c_k z^k`. Coefficient storage is dense; trailing zeros are allowed
//! in storage but never affect `degree` or equality.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{unit_phase, Scalar, C};

/// Dense Taylor polynomial with complex coefficients `c_0..c_d`.
#[derive(Debug, Clone)]
pub struct TaylorPoly<T: Scalar> {
    coeffs: Vec<C<T>>,
}

impl<T: Scalar> TaylorPoly<T> {
    /// Builds a polynomial from coefficients `c_0..c_d`.
    ///
    /// Rejects NaN/infinite coefficients; this is the only gate, all arithmetic
    /// below assumes finite inputs.
    pub fn new(coeffs: Vec<C<T>>) -> Result<Self> {
        for (index, c) in coeffs.iter().enumerate() {
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::NonFiniteCoefficient { index });
            }
        }
        Ok(Self { coeffs })
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    /// The constant polynomial `c`.
    pub fn constant(c: C<T>) -> Result<Self> {
        Self::new(vec![c])
    }

    /// The monomial `z^n`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![Complex::new(T::zero(), T::zero()); n + 1];
        coeffs[n] = Complex::new(T::one(), T::zero());
        Self { coeffs }
    }

    /// Convenience constructor from real coefficients.
    pub fn from_real(coeffs: &[T]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&x| Complex::new(x, T::zero())).collect())
    }

    /// Raw coefficient storage (may carry trailing zeros).
    pub fn coeffs(&self) -> &[C<T>] {
        &self.coeffs
    }

    /// Coefficient `c_k`, zero beyond storage.
    pub fn coeff(&self, k: usize) -> C<T> {
        self.coeffs
            .get(k)
            .copied()
            .unwrap_or_else(|| Complex::new(T::zero(), T::zero()))
    }

    /// Largest index with a nonzero coefficient, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .rposition(|c| c.re != T::zero() || c.im != T::zero())
    }

    /// Degree with the zero polynomial counting as 0 (for horizon checks).
    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    /// Coefficientwise sum.
    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for k in 0..len {
            coeffs.push(self.coeff(k) + other.coeff(k));
        }
        Self { coeffs }
    }

    /// Coefficientwise difference `self - other`.
    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(len);
        for k in 0..len {
            coeffs.push(self.coeff(k) - other.coeff(k));
        }
        Self { coeffs }
    }

    /// Coefficientwise multiple `c * self`.
    pub fn scale(&self, c: C<T>) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&a| c * a).collect(),
        }
    }

    /// Cauchy product.
    pub fn multiply(&self, other: &Self) -> Self {
        let (dp, dq) = match (self.degree(), other.degree()) {
            (Some(dp), Some(dq)) => (dp, dq),
            _ => return Self::zero(),
        };
        let mut coeffs = vec![Complex::new(T::zero(), T::zero()); dp + dq + 1];
        for j in 0..=dp {
            let a = self.coeffs[j];
            if a.re == T::zero() && a.im == T::zero() {
                continue;
            }
            for k in 0..=dq {
                coeffs[j + k] = coeffs[j + k] + a * other.coeffs[k];
            }
        }
        Self { coeffs }
    }

    /// Horner evaluation of `sum c_k z^k`.
    pub fn evaluate(&self, z: C<T>) -> C<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Values at all nodes of the grid, by direct Horner evaluation per node.
    pub fn sample_on_circle(&self, grid: &CircleGrid) -> Vec<C<T>> {
        (0..grid.len()).map(|j| self.evaluate(grid.node(j))).collect()
    }

    /// Truncation `sum_{k<=n} c_k z^k`.
    pub fn truncate(&self, n: usize) -> Self {
        let len = self.coeffs.len().min(n + 1);
        Self {
            coeffs: self.coeffs[..len].to_vec(),
        }
    }

    /// Largest coefficientwise absolute difference against `other`.
    pub fn max_coeff_distance(&self, other: &Self) -> T {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut worst = T::zero();
        for k in 0..len {
            let d = (self.coeff(k) - other.coeff(k)).norm();
            if d > worst {
                worst = d;
            }
        }
        worst
    }
}

impl<T: Scalar> PartialEq for TaylorPoly<T> {
    /// Equality up to trailing zeros.
    fn eq(&self, other: &Self) -> bool {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len).all(|k| self.coeff(k) == other.coeff(k))
    }
}

/// The `m` equally spaced points `exp(2 pi i j / m)` on the unit circle.
///
/// Nodes are computed on demand, not stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CircleGrid {
    m: usize,
}

impl CircleGrid {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter {
                message: "circle grid needs at least one node".into(),
            });
        }
        Ok(Self { m })
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Node `j = exp(2 pi i j / m)`.
    pub fn node<T: Scalar>(&self, j: usize) -> C<T> {
        unit_phase(self.angle(j))
    }

    /// Angle of node `j`.
    pub fn angle<T: Scalar>(&self, j: usize) -> T {
        let two_pi = T::PI() + T::PI();
        two_pi * T::of_usize(j % self.m) / T::of_usize(self.m)
    }
}
