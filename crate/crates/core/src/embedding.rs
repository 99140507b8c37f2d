//! Weighted coefficient-model constructor: from a weight sequence and an
//! l^p model with the unit-vector biorthogonal system, build the function
//! space whose monomial norms are exactly the weights, together with the
//! finite-horizon inclusion and membership bounds that make the construction
//! checkable at the desk.

use num_complex::Complex;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::TaylorPoly;
use crate::scalar::{unit_phase, Scalar, C};
use crate::spaces::{
    check_weight_admissible, SpaceHandle, WeightSequence, DEFAULT_ADMISSIBILITY_THRESHOLD,
};

/// Specification of the coefficient model: weights `alpha_n`, exponent `p`,
/// and the biorthogonal bound `M` (exactly 1 for the unit-vector system; kept
/// abstract so renormalized systems can be represented).
#[derive(Debug, Clone)]
pub struct EmbeddingSpec<T: Scalar> {
    weights: WeightSequence<T>,
    p: T,
    norm_bound: T,
}

impl<T: Scalar> EmbeddingSpec<T> {
    pub fn new(weights: WeightSequence<T>, p: T, norm_bound: T) -> Result<Self> {
        Self::with_admissibility_threshold(
            weights,
            p,
            norm_bound,
            T::of(DEFAULT_ADMISSIBILITY_THRESHOLD),
        )
    }

    pub fn with_admissibility_threshold(
        weights: WeightSequence<T>,
        p: T,
        norm_bound: T,
        threshold: T,
    ) -> Result<Self> {
        if p < T::one() || !p.is_finite() {
            return Err(Error::InvalidParameter {
                message: format!("exponent p = {p} must lie in [1, oo)"),
            });
        }
        if norm_bound < T::one() || norm_bound.is_nan() {
            return Err(Error::InvalidBound {
                m: norm_bound.to_f64().unwrap_or(f64::NAN),
            });
        }
        let report = check_weight_admissible(&weights, threshold)?;
        if !report.pass {
            return Err(Error::InvalidParameter {
                message: format!(
                    "weights fail the admissibility trend check: tail deviation {} exceeds {}",
                    report.max_tail_deviation, report.threshold
                ),
            });
        }
        Ok(Self {
            weights,
            p,
            norm_bound,
        })
    }

    pub fn weights(&self) -> &WeightSequence<T> {
        &self.weights
    }

    pub fn p(&self) -> T {
        self.p
    }

    pub fn norm_bound(&self) -> T {
        self.norm_bound
    }

    pub fn horizon(&self) -> usize {
        self.weights.horizon()
    }

    /// The built function space: weighted coefficients with these weights.
    pub fn space(&self) -> SpaceHandle<T> {
        SpaceHandle::weighted(self.p, self.weights.clone()).expect("validated parameters")
    }
}

/// A model vector `y` in the coefficient basis.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector<T: Scalar> {
    entries: Vec<C<T>>,
}

impl<T: Scalar> CoefficientVector<T> {
    pub fn new(entries: Vec<C<T>>) -> Result<Self> {
        for (index, c) in entries.iter().enumerate() {
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::NonFiniteCoefficient { index });
            }
        }
        Ok(Self { entries })
    }

    /// Unit vector `e_n`.
    pub fn unit(n: usize) -> Self {
        let mut entries = vec![Complex::new(T::zero(), T::zero()); n + 1];
        entries[n] = Complex::new(T::one(), T::zero());
        Self { entries }
    }

    pub fn entries(&self) -> &[C<T>] {
        &self.entries
    }

    /// l^p norm of the entries.
    pub fn model_norm(&self, p: T) -> T {
        let two = T::of(2.0);
        if p == two {
            self.entries
                .iter()
                .map(|c| c.norm_sqr())
                .sum::<T>()
                .sqrt()
        } else {
            self.entries
                .iter()
                .map(|c| c.norm().powf(p))
                .sum::<T>()
                .powf(T::one() / p)
        }
    }
}

/// The embedding `J`: coefficient `n` of `Jy` is `y_n / alpha_n`, so the
/// monomial images carry norm exactly `alpha_n` and `||Jy||_X = ||y||_Y`.
pub fn embed_j<T: Scalar>(spec: &EmbeddingSpec<T>, y: &CoefficientVector<T>) -> Result<TaylorPoly<T>> {
    let alpha = spec.weights.alpha();
    if y.entries.len() > alpha.len() {
        return Err(Error::DegreeExceedsHorizon {
            degree: y.entries.len() - 1,
            horizon: spec.horizon(),
        });
    }
    let coeffs = y
        .entries
        .iter()
        .enumerate()
        .map(|(n, &c)| c.unscale(alpha[n]))
        .collect();
    TaylorPoly::new(coeffs)
}

/// Finite-horizon evaluation of the inclusion constant
/// `C_r = sum_n M r^n / alpha_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct InclusionConstant<T: Scalar> {
    /// Partial sum plus the geometric tail bound.
    pub value: T,
    pub partial: T,
    pub tail_bound: T,
    /// Whether the tail bound stays under 1% of the partial sum.
    pub tail_negligible: bool,
    pub r: T,
}

/// Partial sum of `sum M r^n / alpha_n` with a geometric tail bound taken
/// from the smallest weight over the last quarter of the horizon.
pub fn inclusion_constant<T: Scalar>(spec: &EmbeddingSpec<T>, r: T) -> Result<InclusionConstant<T>> {
    if r.is_nan() || r <= T::zero() || r >= T::one() {
        return Err(Error::InvalidParameter {
            message: format!("radius r = {r} must lie in (0, 1)"),
        });
    }
    let alpha = spec.weights.alpha();
    let horizon = spec.horizon();
    let m = spec.norm_bound;
    let mut partial = T::zero();
    let mut power = T::one();
    for &a in alpha {
        partial += m * power / a;
        power *= r;
    }
    // power is now r^(horizon+1)
    let tail_start = horizon - horizon / 4;
    let inf_tail = alpha[tail_start..]
        .iter()
        .copied()
        .fold(T::infinity(), |a, b| a.min(b));
    let tail_bound = m * power / ((T::one() - r) * inf_tail);
    if tail_bound > T::of(0.1) * partial {
        return Err(Error::TailNotControlled {
            tail: tail_bound.to_f64().unwrap_or(f64::NAN),
            partial: partial.to_f64().unwrap_or(f64::NAN),
            r: r.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(InclusionConstant {
        value: partial + tail_bound,
        partial,
        tail_bound,
        tail_negligible: tail_bound < T::of(0.01) * partial,
        r,
    })
}

/// Outcome of [`verify_inclusion_bound`].
#[derive(Debug, Clone, PartialEq)]
pub struct InclusionBoundReport<T: Scalar> {
    pub c_r: T,
    pub samples: usize,
    /// Largest observed `sup_{|z|=r} |Jy| / ||y||_Y`.
    pub max_ratio: T,
    pub bound_respected: bool,
    pub r: T,
}

/// Samples random model vectors and checks the sampled sup of `|Jy|` on
/// `|z| = r` against `C_r ||y||_Y`.
pub fn verify_inclusion_bound<T: Scalar>(
    spec: &EmbeddingSpec<T>,
    samples: usize,
    r: T,
    seed: u64,
) -> Result<InclusionBoundReport<T>> {
    let c_r = inclusion_constant(spec, r)?.value;
    let horizon = spec.horizon();
    let mut max_ratio = T::zero();
    for trial in 0..samples {
        let mut rng =
            ChaCha8Rng::seed_from_u64(seed ^ (trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let len = rng.gen_range(1..=horizon + 1);
        let entries: Vec<C<T>> = (0..len)
            .map(|_| {
                Complex::new(
                    T::of(rng.gen_range(-1.0f64..1.0)),
                    T::of(rng.gen_range(-1.0f64..1.0)),
                )
            })
            .collect();
        let y = CoefficientVector::new(entries)?;
        let norm = y.model_norm(spec.p);
        if norm <= T::of(1e-12) {
            continue;
        }
        let jy = embed_j(spec, &y)?;
        let nodes = (4 * (jy.degree_or_zero() + 1)).max(256);
        let mut sup = T::zero();
        for j in 0..nodes {
            let theta = (T::PI() + T::PI()) * T::of_usize(j) / T::of_usize(nodes);
            let z = unit_phase(theta).scale(r);
            sup = sup.max(jy.evaluate(z).norm());
        }
        max_ratio = max_ratio.max(sup / norm);
    }
    Ok(InclusionBoundReport {
        c_r,
        samples,
        max_ratio,
        bound_respected: max_ratio <= c_r,
        r,
    })
}

/// Largest relative deviation `| ||Jy||_X - ||y||_Y | / ||y||_Y` over seeded
/// random model vectors (the finite-horizon isometry check).
pub fn isometry_spot_check<T: Scalar>(
    spec: &EmbeddingSpec<T>,
    samples: usize,
    seed: u64,
) -> Result<T> {
    let space = spec.space();
    let mut worst = T::zero();
    for trial in 0..samples {
        let mut rng =
            ChaCha8Rng::seed_from_u64(seed ^ (trial as u64).wrapping_mul(0x517C_C1B7_2722_0A95));
        let len = rng.gen_range(1..=spec.horizon() + 1);
        let entries: Vec<C<T>> = (0..len)
            .map(|_| {
                Complex::new(
                    T::of(rng.gen_range(-1.0f64..1.0)),
                    T::of(rng.gen_range(-1.0f64..1.0)),
                )
            })
            .collect();
        let y = CoefficientVector::new(entries)?;
        let norm_y = y.model_norm(spec.p);
        if norm_y <= T::of(1e-12) {
            continue;
        }
        let norm_x = space.norm(&embed_j(spec, &y)?)?;
        worst = worst.max((norm_x - norm_y).abs() / norm_y);
    }
    Ok(worst)
}

/// Coefficient rule for a function given by its Taylor coefficients.
#[derive(Debug, Clone, PartialEq)]
pub enum CoefficientRule<T: Scalar> {
    /// `c_n = ratio^n` (radius of convergence `1/|ratio|`).
    Geometric { ratio: C<T> },
    /// `c_n = 1` at `n = degree`, else 0 (an entire function).
    Monomial { degree: usize },
    /// Explicit finite coefficient list.
    Explicit(TaylorPoly<T>),
}

impl<T: Scalar> CoefficientRule<T> {
    pub fn coefficient(&self, n: usize) -> C<T> {
        match self {
            Self::Geometric { ratio } => ratio.powu(n as u32),
            Self::Monomial { degree } => {
                if n == *degree {
                    Complex::new(T::one(), T::zero())
                } else {
                    Complex::new(T::zero(), T::zero())
                }
            }
            Self::Explicit(p) => p.coeff(n),
        }
    }

    /// Truncation of the function to the given degree.
    pub fn truncate(&self, degree: usize) -> TaylorPoly<T> {
        let coeffs = (0..=degree).map(|n| self.coefficient(n)).collect();
        TaylorPoly::new(coeffs).expect("finite rule values")
    }
}

/// Outcome of [`membership_beyond_disk`].
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipReport<T: Scalar> {
    /// Partial sum of `sum |c_n| alpha_n` over the horizon.
    pub partial: T,
    /// Geometric tail estimate fitted from the trailing quarter.
    pub tail_bound: T,
    /// X-norm upper bound `partial + tail_bound`.
    pub bound: T,
    /// Whether the tail estimate is controlled (fit decayed geometrically).
    pub tail_controlled: bool,
}

/// Absolute-convergence evidence for a function with claimed radius of
/// convergence `radius > 1`: partial sums of `sum |c_n| alpha_n` must be
/// Cauchy over the horizon, and the tail is majorized through
/// `|c_n| <= C rho^{-n}` with `rho` sampled between 1 and the claimed radius.
pub fn membership_beyond_disk<T: Scalar>(
    spec: &EmbeddingSpec<T>,
    rule: &CoefficientRule<T>,
    radius: T,
) -> Result<MembershipReport<T>> {
    if radius <= T::one() || radius.is_nan() {
        return Err(Error::InvalidParameter {
            message: format!("claimed radius {radius} must exceed 1"),
        });
    }
    let alpha = spec.weights.alpha();
    let horizon = spec.horizon();
    let window_start = horizon - horizon / 4;

    let mut partial = T::zero();
    let mut partial_at_window = T::zero();
    for (n, &a) in alpha.iter().enumerate() {
        partial += rule.coefficient(n).norm() * a;
        if n + 1 == window_start {
            partial_at_window = partial;
        }
    }
    let growth = partial - partial_at_window;
    if growth > T::of(0.01) * partial.max(T::of(1e-12)) {
        return Err(Error::DivergentEvidence {
            increment: growth.to_f64().unwrap_or(f64::NAN),
        });
    }

    // fit |c_n| <= C rho^{-n} on the trailing quarter at rho = (1 + radius)/2
    let rho = (T::one() + radius) / T::of(2.0);
    let mut c_fit = T::zero();
    let mut beta = T::zero();
    for (n, &a) in alpha.iter().enumerate().skip(window_start) {
        c_fit = c_fit.max(rule.coefficient(n).norm() * rho.powi(n as i32));
        beta = beta.max(a.powf(T::one() / T::of_usize(n.max(1))));
    }
    let q = beta / rho;
    let (tail_bound, tail_controlled) = if c_fit == T::zero() {
        (T::zero(), true)
    } else if q < T::one() {
        (
            c_fit * q.powi(horizon as i32 + 1) / (T::one() - q),
            true,
        )
    } else {
        (T::infinity(), false)
    };

    Ok(MembershipReport {
        partial,
        tail_bound,
        bound: partial + tail_bound,
        tail_controlled,
    })
}
