//! Function-space handles: each space kind supplies a norm (and an inner
//! product where one exists) on Taylor polynomials up to a fixed degree
//! horizon.
//!
//! Kinds:
//! - weighted coefficient spaces `||f|| = (sum (|c_n| alpha_n)^p)^(1/p)`,
//! - Hilbert spaces presented by a monomial Gram matrix,
//! - the sampled sup norm on the unit circle,
//! - de Branges-Rovnyak spaces (a Gram matrix built by the [`crate::hb`]
//!   module).

use std::sync::Arc;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::hb::HbDescriptor;
use crate::linalg::{hermitian_deviation, HermitianCholesky};
use crate::poly::{CircleGrid, TaylorPoly};
use crate::scalar::{tol, Scalar, C};

/// Default degree horizon for spaces that do not carry one structurally.
pub const DEFAULT_HORIZON: usize = 512;

/// Default pass threshold for [`check_weight_admissible`].
pub const DEFAULT_ADMISSIBILITY_THRESHOLD: f64 = 0.05;

/// Positive weight sequence `alpha_0..alpha_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSequence<T: Scalar> {
    alpha: Vec<T>,
    /// Optional nonincreasing bounds `delta_n` with `|alpha_n^(1/n) - 1| <= delta_n`.
    certificate: Option<Vec<T>>,
}

impl<T: Scalar> WeightSequence<T> {
    pub fn new(alpha: Vec<T>) -> Result<Self> {
        validate_positive(&alpha)?;
        Ok(Self {
            alpha,
            certificate: None,
        })
    }

    /// Attaches a claimed-limit certificate; the bounds are checked against
    /// the stored weights and must be nonincreasing.
    pub fn with_certificate(alpha: Vec<T>, delta: Vec<T>) -> Result<Self> {
        validate_positive(&alpha)?;
        if delta.len() != alpha.len() {
            return Err(Error::InvalidParameter {
                message: "certificate length must match the weight sequence".into(),
            });
        }
        for pair in delta.windows(2) {
            if pair[1] > pair[0] {
                return Err(Error::InvalidParameter {
                    message: "certificate bounds must be nonincreasing".into(),
                });
            }
        }
        for (n, (&a, &d)) in alpha.iter().zip(delta.iter()).enumerate().skip(1) {
            if nth_root_deviation(a, n) > d {
                return Err(Error::InvalidParameter {
                    message: format!("certificate bound at index {n} is violated by the weights"),
                });
            }
        }
        Ok(Self {
            alpha,
            certificate: Some(delta),
        })
    }

    /// Constant weight `alpha = 1` up to `horizon` (the H^2 profile).
    pub fn ones(horizon: usize) -> Self {
        Self {
            alpha: vec![T::one(); horizon + 1],
            certificate: None,
        }
    }

    pub fn alpha(&self) -> &[T] {
        &self.alpha
    }

    pub fn certificate(&self) -> Option<&[T]> {
        self.certificate.as_deref()
    }

    pub fn horizon(&self) -> usize {
        self.alpha.len() - 1
    }
}

fn validate_positive<T: Scalar>(alpha: &[T]) -> Result<()> {
    if alpha.is_empty() {
        return Err(Error::InvalidParameter {
            message: "weight sequence must have at least one entry".into(),
        });
    }
    for (index, &a) in alpha.iter().enumerate() {
        if a <= T::zero() || !a.is_finite() {
            return Err(Error::NonpositiveWeight {
                index,
                value: a.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    Ok(())
}

fn nth_root_deviation<T: Scalar>(alpha_n: T, n: usize) -> T {
    // |alpha_n^(1/n) - 1| via exp(ln(alpha)/n)
    ((alpha_n.ln() / T::of_usize(n)).exp() - T::one()).abs()
}

/// Trend report of [`check_weight_admissible`].
///
/// A pure finite-horizon diagnostic: no finite computation can decide the true
/// limit `alpha_n^(1/n) -> 1`, so `pass` only says the tail deviation stays
/// under the threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightAdmissibility<T: Scalar> {
    /// `max_n |alpha_n^(1/n) - 1|` over the last half of the stored indices.
    pub max_tail_deviation: T,
    /// First index of the inspected tail.
    pub tail_start: usize,
    pub threshold: T,
    pub pass: bool,
    pub has_certificate: bool,
}

/// Tail trend check for the hypothesis `alpha_n^(1/n) -> 1`.
pub fn check_weight_admissible<T: Scalar>(
    weights: &WeightSequence<T>,
    threshold: T,
) -> Result<WeightAdmissibility<T>> {
    validate_positive(weights.alpha())?;
    let horizon = weights.horizon();
    let tail_start = (horizon / 2).max(1);
    let mut max_tail_deviation = T::zero();
    for n in tail_start..=horizon {
        if n == 0 {
            continue;
        }
        let d = nth_root_deviation(weights.alpha()[n], n);
        if d > max_tail_deviation {
            max_tail_deviation = d;
        }
    }
    Ok(WeightAdmissibility {
        max_tail_deviation,
        tail_start,
        threshold,
        pass: max_tail_deviation <= threshold,
        has_certificate: weights.certificate.is_some(),
    })
}

/// Hermitian positive definite monomial Gram matrix `G[j][k] = <z^j, z^k>`,
/// `0 <= j,k <= N`, with its Cholesky factorization cached at construction.
#[derive(Clone)]
pub struct GramMatrix<T: Scalar> {
    dim: usize,
    entries: Arc<Vec<C<T>>>,
    chol: Arc<HermitianCholesky<T>>,
}

impl<T: Scalar> std::fmt::Debug for GramMatrix<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GramMatrix").field("dim", &self.dim).finish()
    }
}

impl<T: Scalar> GramMatrix<T> {
    /// Validates Hermitian symmetry (within `1e-12` relative to the largest
    /// entry) and positive definiteness, then caches the factorization.
    pub fn new(entries: Vec<C<T>>, dim: usize) -> Result<Self> {
        if entries.len() != dim * dim || dim == 0 {
            return Err(Error::InvalidParameter {
                message: format!(
                    "gram storage has {} entries, expected {} for dimension {}",
                    entries.len(),
                    dim * dim,
                    dim
                ),
            });
        }
        for (index, e) in entries.iter().enumerate() {
            if !e.re.is_finite() || !e.im.is_finite() {
                return Err(Error::NonFiniteCoefficient { index });
            }
        }
        let scale = entries
            .iter()
            .map(|e| e.norm())
            .fold(T::one(), |a, b| a.max(b));
        let (row, col, dev) = hermitian_deviation(&entries, dim);
        if dev > tol::<T>(1e-12, 16.0) * scale {
            return Err(Error::NotHermitian {
                row,
                col,
                deviation: dev.to_f64().unwrap_or(f64::NAN),
            });
        }
        // Symmetrize exactly so the factorization sees a Hermitian matrix.
        let mut sym = entries;
        for j in 0..dim {
            for k in (j + 1)..dim {
                let avg = (sym[j * dim + k] + sym[k * dim + j].conj()).unscale(T::of(2.0));
                sym[j * dim + k] = avg;
                sym[k * dim + j] = avg.conj();
            }
            sym[j * dim + j] = Complex::new(sym[j * dim + j].re, T::zero());
        }
        let chol = HermitianCholesky::factor(&sym, dim)?;
        Ok(Self {
            dim,
            entries: Arc::new(sym),
            chol: Arc::new(chol),
        })
    }

    /// Diagonal Gram matrix with the given diagonal.
    pub fn diagonal(diag: &[T]) -> Result<Self> {
        let dim = diag.len();
        let zero = Complex::new(T::zero(), T::zero());
        let mut entries = vec![zero; dim * dim];
        for (j, &d) in diag.iter().enumerate() {
            entries[j * dim + j] = Complex::new(d, T::zero());
        }
        Self::new(entries, dim)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, j: usize, k: usize) -> C<T> {
        self.entries[j * self.dim + k]
    }

    pub fn entries(&self) -> &[C<T>] {
        &self.entries
    }

    pub(crate) fn cholesky(&self) -> &HermitianCholesky<T> {
        &self.chol
    }

    /// `<f, g> = sum_{j,k} f_j conj(g_k) G[j][k]`.
    pub fn inner_product(&self, f: &TaylorPoly<T>, g: &TaylorPoly<T>) -> C<T> {
        let df = f.degree().map_or(0, |d| d.min(self.dim - 1));
        let dg = g.degree().map_or(0, |d| d.min(self.dim - 1));
        let mut acc = Complex::new(T::zero(), T::zero());
        for j in 0..=df {
            let fj = f.coeff(j);
            if fj.re == T::zero() && fj.im == T::zero() {
                continue;
            }
            for k in 0..=dg {
                acc = acc + fj * g.coeff(k).conj() * self.entry(j, k);
            }
        }
        acc
    }

    /// `||f||^2` through the Cholesky factor (guaranteed nonnegative).
    pub fn norm_sq(&self, f: &TaylorPoly<T>) -> T {
        let d = match f.degree() {
            Some(d) => d,
            None => return T::zero(),
        };
        let conj_coeffs: Vec<C<T>> = (0..=d).map(|k| f.coeff(k).conj()).collect();
        let v = self.chol.apply_factor_adjoint(&conj_coeffs);
        v.iter().map(|x| x.norm_sqr()).sum()
    }
}

/// Internal view of the Hilbert structure behind a space, used by Gram
/// projections.
pub(crate) enum HilbertData<'a, T: Scalar> {
    /// Diagonal Gram `diag(alpha_n^2)`.
    Diagonal(&'a [T]),
    Gram(&'a GramMatrix<T>),
}

/// A function space on the disk, truncated at a degree horizon.
#[derive(Debug, Clone)]
pub enum SpaceHandle<T: Scalar> {
    /// `||f|| = (sum (|c_n| alpha_n)^p)^(1/p)`, `p` in `[1, oo)`.
    Weighted { p: T, weights: WeightSequence<T> },
    /// Hilbert space presented by its monomial Gram matrix.
    Gram(GramMatrix<T>),
    /// Sampled sup norm over the circle, `m = oversampling * (deg f + 1)`
    /// nodes. An estimate: the documented sampling gap at oversampling 16 is
    /// under 0.5% for polynomials within the horizon.
    Sup { oversampling: usize, horizon: usize },
    /// de Branges-Rovnyak space H(b); norms delegate to the stored Gram data.
    Hb(HbDescriptor<T>),
}

impl<T: Scalar> SpaceHandle<T> {
    pub fn weighted(p: T, weights: WeightSequence<T>) -> Result<Self> {
        if p < T::one() || !p.is_finite() {
            return Err(Error::InvalidParameter {
                message: format!("exponent p = {p} must lie in [1, oo)"),
            });
        }
        Ok(Self::Weighted { p, weights })
    }

    /// The Hardy space H^2 profile: `p = 2`, unit weights.
    pub fn hardy(horizon: usize) -> Self {
        Self::Weighted {
            p: T::of(2.0),
            weights: WeightSequence::ones(horizon),
        }
    }

    pub fn gram(gram: GramMatrix<T>) -> Self {
        Self::Gram(gram)
    }

    pub fn sup_circle(oversampling: usize, horizon: usize) -> Result<Self> {
        if oversampling == 0 {
            return Err(Error::InvalidParameter {
                message: "oversampling factor must be positive".into(),
            });
        }
        Ok(Self::Sup {
            oversampling,
            horizon,
        })
    }

    pub fn hb(descriptor: HbDescriptor<T>) -> Self {
        Self::Hb(descriptor)
    }

    /// Largest admissible polynomial degree.
    pub fn horizon(&self) -> usize {
        match self {
            Self::Weighted { weights, .. } => weights.horizon(),
            Self::Gram(g) => g.dim() - 1,
            Self::Sup { horizon, .. } => *horizon,
            Self::Hb(d) => d.horizon(),
        }
    }

    /// Whether the space carries an inner product.
    pub fn is_hilbert(&self) -> bool {
        match self {
            Self::Weighted { p, .. } => *p == T::of(2.0),
            Self::Gram(_) | Self::Hb(_) => true,
            Self::Sup { .. } => false,
        }
    }

    fn check_horizon(&self, f: &TaylorPoly<T>) -> Result<()> {
        match f.degree() {
            Some(d) if d > self.horizon() => Err(Error::DegreeExceedsHorizon {
                degree: d,
                horizon: self.horizon(),
            }),
            _ => Ok(()),
        }
    }

    /// Norm of `f` in this space.
    pub fn norm(&self, f: &TaylorPoly<T>) -> Result<T> {
        self.check_horizon(f)?;
        match self {
            Self::Weighted { p, weights } => Ok(weighted_norm(*p, weights.alpha(), f)),
            Self::Gram(g) => Ok(g.norm_sq(f).sqrt()),
            Self::Hb(d) => Ok(d.gram().norm_sq(f).sqrt()),
            Self::Sup {
                oversampling,
                ..
            } => {
                let nodes = oversampling * (f.degree_or_zero() + 1);
                let grid = CircleGrid::new(nodes.max(1))?;
                let mut max = T::zero();
                for v in f.sample_on_circle(&grid) {
                    max = max.max(v.norm());
                }
                Ok(max)
            }
        }
    }

    /// Inner product; errors with `NotAHilbertSpace` on sup-norm spaces and
    /// weighted spaces with `p != 2`.
    pub fn inner_product(&self, f: &TaylorPoly<T>, g: &TaylorPoly<T>) -> Result<C<T>> {
        self.check_horizon(f)?;
        self.check_horizon(g)?;
        match self {
            Self::Weighted { p, weights } => {
                if *p != T::of(2.0) {
                    return Err(Error::NotAHilbertSpace {
                        context: "inner_product on weighted space with p != 2",
                    });
                }
                let alpha = weights.alpha();
                let len = f.coeffs().len().min(alpha.len());
                let mut acc = Complex::new(T::zero(), T::zero());
                for j in 0..len.max(g.coeffs().len().min(alpha.len())) {
                    if j >= alpha.len() {
                        break;
                    }
                    let w = alpha[j] * alpha[j];
                    acc = acc + f.coeff(j) * g.coeff(j).conj() * Complex::new(w, T::zero());
                }
                Ok(acc)
            }
            Self::Gram(gram) => Ok(gram.inner_product(f, g)),
            Self::Hb(d) => Ok(d.gram().inner_product(f, g)),
            Self::Sup { .. } => Err(Error::NotAHilbertSpace {
                context: "inner_product on sup-norm space",
            }),
        }
    }

    /// `||z^n||` for `n = 0..=up_to`.
    pub fn monomial_norms(&self, up_to: usize) -> Result<Vec<T>> {
        if up_to > self.horizon() {
            return Err(Error::DegreeExceedsHorizon {
                degree: up_to,
                horizon: self.horizon(),
            });
        }
        match self {
            // single-term norms reduce to |c| * alpha_n for every p
            Self::Weighted { weights, .. } => Ok(weights.alpha()[..=up_to].to_vec()),
            Self::Gram(g) => Ok((0..=up_to).map(|n| g.entry(n, n).re.sqrt()).collect()),
            Self::Hb(d) => Ok((0..=up_to).map(|n| d.gram().entry(n, n).re.sqrt()).collect()),
            Self::Sup { .. } => Ok(vec![T::one(); up_to + 1]),
        }
    }

    pub(crate) fn hilbert_data(&self) -> Option<HilbertData<'_, T>> {
        match self {
            Self::Weighted { p, weights } if *p == T::of(2.0) => {
                Some(HilbertData::Diagonal(weights.alpha()))
            }
            Self::Gram(g) => Some(HilbertData::Gram(g)),
            Self::Hb(d) => Some(HilbertData::Gram(d.gram())),
            _ => None,
        }
    }
}

fn weighted_norm<T: Scalar>(p: T, alpha: &[T], f: &TaylorPoly<T>) -> T {
    let d = match f.degree() {
        Some(d) => d,
        None => return T::zero(),
    };
    // single-term fast path keeps monomial norms exact for every p
    let support: Vec<usize> = (0..=d)
        .filter(|&k| {
            let c = f.coeff(k);
            c.re != T::zero() || c.im != T::zero()
        })
        .collect();
    if support.len() == 1 {
        let k = support[0];
        return f.coeff(k).norm() * alpha[k];
    }
    let two = T::of(2.0);
    if p == two {
        let mut acc = T::zero();
        for &k in &support {
            let t = f.coeff(k).norm() * alpha[k];
            acc += t * t;
        }
        acc.sqrt()
    } else {
        let mut acc = T::zero();
        for &k in &support {
            acc += (f.coeff(k).norm() * alpha[k]).powf(p);
        }
        acc.powf(T::one() / p)
    }
}
