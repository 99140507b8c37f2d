//! Linear polynomial approximation schemes: for each degree budget `n` an
//! operator `T_n` sending a function to a polynomial of degree at most `n`.
//!
//! Shipped kinds: partial sums, Cesaro means, triangular summability arrays
//! `T_n(f) = sum_k a_{nk} s_k(f)`, orthogonal projections in a Hilbert space's
//! Gram geometry, and a scheme assembled from projection approximants of a
//! dense sample (with a per-step residual certificate).

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::poly::TaylorPoly;
use crate::scalar::{Scalar, C};
use crate::spaces::{HilbertData, SpaceHandle};

/// Truncation `s_n(f) = sum_{k<=n} c_k z^k`.
pub fn partial_sum<T: Scalar>(n: usize, f: &TaylorPoly<T>) -> TaylorPoly<T> {
    f.truncate(n)
}

/// Cesaro mean in coefficient form:
/// `sigma_n(f) = sum_{k<=n} (n+1-k)/(n+1) c_k z^k`.
pub fn cesaro<T: Scalar>(n: usize, f: &TaylorPoly<T>) -> TaylorPoly<T> {
    let len = f.coeffs().len().min(n + 1);
    let denom = T::of_usize(n + 1);
    let coeffs = (0..len)
        .map(|k| f.coeff(k).scale(T::of_usize(n + 1 - k) / denom))
        .collect();
    TaylorPoly::new(coeffs).expect("finite input")
}

/// Cesaro mean as the literal average of the partial sums `s_0..s_n`.
pub fn cesaro_by_averaging<T: Scalar>(n: usize, f: &TaylorPoly<T>) -> TaylorPoly<T> {
    let mut acc = TaylorPoly::zero();
    for k in 0..=n {
        acc = acc.add(&partial_sum(k, f));
    }
    acc.scale(Complex::new(T::one() / T::of_usize(n + 1), T::zero()))
}

/// Triangular summability array `a_{nk}`, `0 <= k <= n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangularArray<T: Scalar> {
    rows: Vec<Vec<C<T>>>,
}

impl<T: Scalar> TriangularArray<T> {
    /// Row `n` must have exactly `n + 1` entries.
    pub fn new(rows: Vec<Vec<C<T>>>) -> Result<Self> {
        for (n, row) in rows.iter().enumerate() {
            if row.len() != n + 1 {
                return Err(Error::InvalidParameter {
                    message: format!("row {n} has {} entries, expected {}", row.len(), n + 1),
                });
            }
            for (index, c) in row.iter().enumerate() {
                if !c.re.is_finite() || !c.im.is_finite() {
                    return Err(Error::NonFiniteCoefficient { index });
                }
            }
        }
        Ok(Self { rows })
    }

    /// Identity array: `T_n = s_n`.
    pub fn partial_sums(rows: usize) -> Self {
        let rows = (0..rows)
            .map(|n| {
                let mut row = vec![Complex::new(T::zero(), T::zero()); n + 1];
                row[n] = Complex::new(T::one(), T::zero());
                row
            })
            .collect();
        Self { rows }
    }

    /// Cesaro array: `a_{nk} = 1/(n+1)`.
    pub fn cesaro(rows: usize) -> Self {
        let rows = (0..rows)
            .map(|n| {
                let w = Complex::new(T::one() / T::of_usize(n + 1), T::zero());
                vec![w; n + 1]
            })
            .collect();
        Self { rows }
    }

    /// de la Vallee Poussin array: row `n` averages `s_k` for
    /// `ceil(n/2) <= k <= n`, so `T_n` reproduces polynomials of degree up to
    /// `ceil(n/2)` exactly (row `2n+1` is `2 sigma_{2n+1} - sigma_n`).
    pub fn vallee_poussin(rows: usize) -> Self {
        let rows = (0..rows)
            .map(|n| {
                let h = n.div_ceil(2);
                let w = T::one() / T::of_usize(n - h + 1);
                (0..=n)
                    .map(|k| {
                        if k >= h {
                            Complex::new(w, T::zero())
                        } else {
                            Complex::new(T::zero(), T::zero())
                        }
                    })
                    .collect()
            })
            .collect();
        Self { rows }
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, n: usize) -> Option<&[C<T>]> {
        self.rows.get(n).map(|r| r.as_slice())
    }
}

/// `T_n(f) = sum_{k<=n} a_{nk} s_k(f)`.
pub fn apply_array<T: Scalar>(
    array: &TriangularArray<T>,
    n: usize,
    f: &TaylorPoly<T>,
) -> Result<TaylorPoly<T>> {
    let row = array.row(n).ok_or(Error::MissingRow {
        row: n,
        rows: array.rows(),
    })?;
    // coefficient c_k picks up the weight sum_{j>=k} a_{nj}
    let len = f.coeffs().len().min(n + 1);
    let mut suffix = Complex::new(T::zero(), T::zero());
    let mut weights = vec![suffix; n + 1];
    for j in (0..=n).rev() {
        suffix = suffix + row[j];
        weights[j] = suffix;
    }
    let coeffs = (0..len).map(|k| f.coeff(k) * weights[k]).collect();
    TaylorPoly::new(coeffs)
}

/// Orthogonal projection of `f` onto polynomials of degree `<= n` in the
/// space's inner product, by solving the leading Gram system.
pub fn gram_projection<T: Scalar>(
    space: &SpaceHandle<T>,
    n: usize,
    f: &TaylorPoly<T>,
) -> Result<TaylorPoly<T>> {
    if n > space.horizon() {
        return Err(Error::DegreeExceedsHorizon {
            degree: n,
            horizon: space.horizon(),
        });
    }
    if let Some(d) = f.degree() {
        if d > space.horizon() {
            return Err(Error::DegreeExceedsHorizon {
                degree: d,
                horizon: space.horizon(),
            });
        }
    }
    let data = space.hilbert_data().ok_or(Error::NotAHilbertSpace {
        context: "gram_projection",
    })?;
    match data {
        // diagonal Gram: projection is exact coefficient truncation
        HilbertData::Diagonal(_) => Ok(f.truncate(n)),
        HilbertData::Gram(gram) => {
            let deg = match f.degree() {
                Some(d) => d,
                None => return Ok(TaylorPoly::zero()),
            };
            // rhs_j = <z^j, f> = sum_k conj(f_k) G[j][k]
            let mut rhs = Vec::with_capacity(n + 1);
            for j in 0..=n {
                let mut s = Complex::new(T::zero(), T::zero());
                for k in 0..=deg {
                    s = s + f.coeff(k).conj() * gram.entry(j, k);
                }
                rhs.push(s);
            }
            let y = gram.cholesky().solve_leading(&rhs)?;
            TaylorPoly::new(y.into_iter().map(|c| c.conj()).collect())
        }
    }
}

/// Scheme certificate: per-step residuals on the dense sample.
#[derive(Debug, Clone)]
pub struct SchemeCertificate<T: Scalar> {
    /// Uniform norm bound: projections are contractions, so 1 <= M works.
    pub norm_bound: T,
    /// The dense sample the scheme was built against.
    pub dense_sample: Vec<TaylorPoly<T>>,
    /// `residuals[m] = max_j ||P_{d(m)}(y_j) - y_j||` over the first
    /// `min(m, sample size)` sample elements; at most `1/(m+1)` by
    /// construction.
    pub residuals: Vec<T>,
    /// Projection degree `d(m)` chosen at step `m` (nondecreasing).
    pub degrees: Vec<usize>,
}

/// Scheme built by [`build_scheme_from_approximants`].
#[derive(Debug, Clone)]
pub struct ApproximantScheme<T: Scalar> {
    space: SpaceHandle<T>,
    degrees: Vec<usize>,
}

impl<T: Scalar> ApproximantScheme<T> {
    /// Degree used at budget `n`: the deepest certified step whose projection
    /// degree fits under `n` (steps repeat so that `deg T_n(f) <= n` always).
    fn degree_for(&self, n: usize) -> usize {
        let step = self.degrees.partition_point(|&d| d <= n);
        // degrees[0] = 0, so step >= 1
        self.degrees[step.saturating_sub(1)].min(n)
    }
}

/// A linear polynomial approximation scheme.
///
/// `apply(n, f)` is linear in `f` and always returns a polynomial of degree
/// at most `n`.
#[derive(Debug, Clone)]
pub enum Scheme<T: Scalar> {
    PartialSum,
    Cesaro,
    Array(TriangularArray<T>),
    GramProjection(SpaceHandle<T>),
    FromApproximants(ApproximantScheme<T>),
}

impl<T: Scalar> Scheme<T> {
    pub fn apply(&self, n: usize, f: &TaylorPoly<T>) -> Result<TaylorPoly<T>> {
        match self {
            Self::PartialSum => Ok(partial_sum(n, f)),
            Self::Cesaro => Ok(cesaro(n, f)),
            Self::Array(array) => apply_array(array, n, f),
            Self::GramProjection(space) => gram_projection(space, n, f),
            Self::FromApproximants(s) => gram_projection(&s.space, s.degree_for(n), f),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::PartialSum => "partial",
            Self::Cesaro => "cesaro",
            Self::Array(_) => "array",
            Self::GramProjection(_) => "projection",
            Self::FromApproximants(_) => "from-approximants",
        }
    }
}

/// Builds a scheme from Gram-projection approximants of a dense sample.
///
/// Step `m` greedily selects the smallest degree `d(m)` whose projection
/// brings the first `min(m, J)` sample elements within `1/(m+1)`; the
/// returned scheme replays `P_{d(m)}` at the largest step fitting the degree
/// budget, and the certificate records the per-step residuals and the
/// uniform bound (projections are contractions, so `||T_n|| <= 1 <= M`).
pub fn build_scheme_from_approximants<T: Scalar>(
    space: &SpaceHandle<T>,
    dense_sample: &[TaylorPoly<T>],
    norm_bound: T,
    n_max: usize,
) -> Result<(Scheme<T>, SchemeCertificate<T>)> {
    if dense_sample.is_empty() {
        return Err(Error::EmptySample);
    }
    if norm_bound < T::one() || norm_bound.is_nan() {
        return Err(Error::InvalidBound {
            m: norm_bound.to_f64().unwrap_or(f64::NAN),
        });
    }
    if space.hilbert_data().is_none() {
        return Err(Error::NotAHilbertSpace {
            context: "build_scheme_from_approximants",
        });
    }
    for y in dense_sample {
        if y.degree_or_zero() > space.horizon() {
            return Err(Error::DegreeExceedsHorizon {
                degree: y.degree_or_zero(),
                horizon: space.horizon(),
            });
        }
    }

    let horizon = space.horizon();
    let mut degrees = Vec::with_capacity(n_max + 1);
    let mut residuals = Vec::with_capacity(n_max + 1);
    let mut d = 0usize;
    for m in 0..=n_max {
        let constrained = m.min(dense_sample.len());
        let target = T::one() / T::of_usize(m + 1);
        loop {
            let worst = worst_residual(space, &dense_sample[..constrained], d)?;
            if worst <= target {
                degrees.push(d);
                residuals.push(worst);
                break;
            }
            if d >= horizon {
                return Err(Error::HorizonExhausted {
                    horizon,
                    step: m + 1,
                });
            }
            d += 1;
        }
    }

    let certificate = SchemeCertificate {
        norm_bound,
        dense_sample: dense_sample.to_vec(),
        residuals,
        degrees: degrees.clone(),
    };
    let scheme = Scheme::FromApproximants(ApproximantScheme {
        space: space.clone(),
        degrees,
    });
    Ok((scheme, certificate))
}

fn worst_residual<T: Scalar>(
    space: &SpaceHandle<T>,
    sample: &[TaylorPoly<T>],
    d: usize,
) -> Result<T> {
    let mut worst = T::zero();
    for y in sample {
        let p = gram_projection(space, d, y)?;
        let r = space.norm(&p.sub(y))?;
        worst = worst.max(r);
    }
    Ok(worst)
}

/// Per-`n` measurement record from [`scheme_error_curve`].
#[derive(Debug, Clone, PartialEq)]
pub struct SchemeReport<T: Scalar> {
    pub n: usize,
    /// `||T_n(f) - f||` in the given space.
    pub error_norm: T,
    /// `||T_n(f)||`.
    pub image_norm: T,
    /// Degree of `T_n(f)` (`None` for the zero polynomial).
    pub degree: Option<usize>,
}

/// Measures `||T_n(f) - f||` and `||T_n(f)||` for `n = 0..=n_max`.
///
/// Pure measurement; no convergence claim.
pub fn scheme_error_curve<T: Scalar>(
    scheme: &Scheme<T>,
    space: &SpaceHandle<T>,
    f: &TaylorPoly<T>,
    n_max: usize,
) -> Result<Vec<SchemeReport<T>>> {
    if n_max > space.horizon() {
        return Err(Error::DegreeExceedsHorizon {
            degree: n_max,
            horizon: space.horizon(),
        });
    }
    let mut reports = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let image = scheme.apply(n, f)?;
        reports.push(SchemeReport {
            n,
            error_norm: space.norm(&image.sub(f))?,
            image_norm: space.norm(&image)?,
            degree: image.degree(),
        });
    }
    Ok(reports)
}
