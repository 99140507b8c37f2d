//! Quantitative misbehavior witnesses: Lebesgue constants for partial sums,
//! operator-norm estimates for schemes, gliding-hump inputs with spiking
//! partial sums, and fitted divergence trends.
//!
//! Everything here measures finite-horizon behavior; nothing claims a limit.

use num_complex::Complex;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::TaylorPoly;
use crate::quad::{composite_gauss, gauss_legendre};
use crate::scalar::{Scalar, C};
use crate::schemes::{scheme_error_curve, Scheme, SchemeReport};
use crate::spaces::{HilbertData, SpaceHandle};

/// Lower/upper operator-norm estimates with the method that produced them.
///
/// On sampled sup-norm spaces both sides carry the documented ~1% sampling
/// slack; `lower <= upper` is then only guaranteed within that slack.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorNormEstimate<T: Scalar> {
    /// Witnessed by an explicit input (always a genuine attained ratio).
    pub lower: T,
    /// Structural bound, when one is known.
    pub upper: Option<T>,
    pub method: &'static str,
}

impl<T: Scalar> OperatorNormEstimate<T> {
    fn new(lower: T, upper: Option<T>, method: &'static str) -> Self {
        if let Some(u) = upper {
            debug_assert!(
                lower <= u * T::of(1.01) + T::of(1e-9),
                "lower estimate {lower} exceeds structural upper bound {u}"
            );
        }
        Self {
            lower,
            upper,
            method,
        }
    }
}

/// `(1/2pi) int |sum_{k=0}^n e^{ik theta}| d theta`: the L^1 mean of the
/// analytic Dirichlet kernel, an upper bound for the sup-norm operator norm
/// of the degree-`n` partial sum on continuous boundary data.
///
/// Integration splits the circle at the kernel zeros `2 pi j/(n+1)` and runs
/// composite Gauss-Legendre inside each panel, so doubling the point budget
/// moves the value well below 1e-6.
pub fn lebesgue_constant<T: Scalar>(n: usize, quadrature_points: usize) -> Result<T> {
    let required = 64 * (n + 1);
    if quadrature_points < required {
        return Err(Error::InsufficientQuadrature {
            points: quadrature_points,
            required,
            n,
        });
    }
    let rule = gauss_legendre::<T>(12);
    let panels = n + 1;
    let chunks = (quadrature_points / (panels * rule.len())).max(2);
    let two_pi = T::PI() + T::PI();
    let width = two_pi / T::of_usize(panels);
    let half_order = T::of_usize(n + 1) / T::of(2.0);
    let kernel = move |theta: T| -> T {
        let s = (theta / T::of(2.0)).sin();
        if s.abs() < T::epsilon() {
            T::of_usize(n + 1)
        } else {
            ((half_order * theta).sin() / s).abs()
        }
    };
    let mut total = T::zero();
    for j in 0..panels {
        let a = width * T::of_usize(j);
        total += composite_gauss(&kernel, a, a + width, chunks, &rule);
    }
    Ok(total / two_pi)
}

/// Operator-norm estimate for `T_n` on the given space.
///
/// The lower bound is the best ratio `||T_n f|| / ||f||` over seeded random
/// trials plus (on sup spaces) a Fejer-block witness; on Hilbert spaces the
/// trials are replaced by a converged power iteration in the Gram geometry
/// over the degree-`<= D` domain, `D = min(horizon, 2(n+1))`. Structural
/// upper bounds are attached where known: coefficient damping on weighted
/// spaces, Fejer-kernel positivity for Cesaro means on the circle, and the
/// Lebesgue constant for partial sums on the circle.
pub fn scheme_norm_estimate<T: Scalar>(
    scheme: &Scheme<T>,
    space: &SpaceHandle<T>,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<OperatorNormEstimate<T>> {
    if n > space.horizon() {
        return Err(Error::DegreeExceedsHorizon {
            degree: n,
            horizon: space.horizon(),
        });
    }
    let domain_degree = space.horizon().min(2 * (n + 1));

    let upper = structural_upper(scheme, space, n)?;

    if space.hilbert_data().is_some() {
        let lower = hilbert_operator_norm(scheme, space, n, domain_degree, seed)?;
        return Ok(OperatorNormEstimate::new(lower, upper, "exact-hilbert"));
    }

    let mut lower = T::zero();
    let mut method = "random-trials";
    // the constant function is the cheapest sharp witness for averaging
    // kernels (ratio exactly 1)
    let ones = TaylorPoly::constant(Complex::new(T::one(), T::zero()))?;
    let n1 = space.norm(&ones)?;
    if n1 > T::of(1e-9) {
        lower = lower.max(space.norm(&scheme.apply(n, &ones)?)? / n1);
    }
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial as u64);
        let f = random_poly::<T>(&mut rng, domain_degree);
        let nf = space.norm(&f)?;
        if nf > T::of(1e-9) {
            lower = lower.max(space.norm(&scheme.apply(n, &f)?)? / nf);
        }
    }
    if matches!(space, SpaceHandle::Sup { .. }) {
        let m = n.min(domain_degree.saturating_sub(n));
        if m >= 2 {
            let witness = fejer_block_witness::<T>(n - m, m);
            let nw = space.norm(&witness)?;
            if nw > T::of(1e-9) {
                let ratio = space.norm(&scheme.apply(n, &witness)?)? / nw;
                if ratio > lower {
                    lower = ratio;
                    method = "random-trials+fejer-witness";
                }
            }
        }
    }
    Ok(OperatorNormEstimate::new(lower, upper, method))
}

fn structural_upper<T: Scalar>(
    scheme: &Scheme<T>,
    space: &SpaceHandle<T>,
    n: usize,
) -> Result<Option<T>> {
    Ok(match (scheme, space) {
        // truncation and Cesaro damping act coefficientwise with factors in
        // [0, 1]: contractions on every weighted coefficient space
        (Scheme::PartialSum | Scheme::Cesaro, SpaceHandle::Weighted { .. }) => Some(T::one()),
        // Fejer kernel positivity
        (Scheme::Cesaro, SpaceHandle::Sup { .. }) => Some(T::one()),
        // Lebesgue constant bounds the partial-sum operator on boundary data
        (Scheme::PartialSum, SpaceHandle::Sup { .. }) => {
            Some(lebesgue_constant(n, 64 * (n + 1))?)
        }
        _ => None,
    })
}

fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn random_poly<T: Scalar>(rng: &mut ChaCha8Rng, degree: usize) -> TaylorPoly<T> {
    let coeffs = (0..=degree)
        .map(|_| {
            Complex::new(
                T::of(rng.gen_range(-1.0f64..1.0)),
                T::of(rng.gen_range(-1.0f64..1.0)),
            )
        })
        .collect();
    TaylorPoly::new(coeffs).expect("finite random coefficients")
}

/// `z^offset F_m(z)` with `F_m(z) = sum_{k=1}^m (z^{m-k} - z^{m+k})/k`:
/// bounded on the circle while its partial sum cut at the center reaches the
/// harmonic sum at `z = 1`.
fn fejer_block_witness<T: Scalar>(offset: usize, m: usize) -> TaylorPoly<T> {
    let mut coeffs = vec![Complex::new(T::zero(), T::zero()); offset + 2 * m + 1];
    for k in 1..=m {
        let w = T::one() / T::of_usize(k);
        coeffs[offset + m - k] = Complex::new(w, T::zero());
        coeffs[offset + m + k] = Complex::new(-w, T::zero());
    }
    TaylorPoly::new(coeffs).expect("finite block")
}

/// Largest singular value of `T_n` restricted to polynomials of degree
/// `<= domain_degree`, in the space's own geometry, by power iteration.
///
/// The returned value is the Rayleigh quotient of an explicit input, hence
/// always a genuine lower bound; at convergence (relative change below
/// 1e-13) it is the operator norm on that domain.
fn hilbert_operator_norm<T: Scalar>(
    scheme: &Scheme<T>,
    space: &SpaceHandle<T>,
    n: usize,
    domain_degree: usize,
    seed: u64,
) -> Result<T> {
    let dim = domain_degree + 1;
    let columns: Vec<TaylorPoly<T>> = (0..dim)
        .map(|k| scheme.apply(n, &TaylorPoly::monomial(k)))
        .collect::<Result<_>>()?;

    // work in conjugated coefficient space: ||g||^2 = y^H G y, y = conj(g)
    let gram_matvec = |x: &[C<T>]| -> Vec<C<T>> {
        match space.hilbert_data().expect("checked hilbert") {
            HilbertData::Diagonal(alpha) => x
                .iter()
                .enumerate()
                .map(|(i, &v)| v.scale(alpha[i] * alpha[i]))
                .collect(),
            HilbertData::Gram(g) => (0..x.len())
                .map(|i| {
                    let mut s = Complex::new(T::zero(), T::zero());
                    for (j, &v) in x.iter().enumerate() {
                        s = s + g.entry(i, j) * v;
                    }
                    s
                })
                .collect(),
        }
    };
    let gram_solve = |x: &[C<T>]| -> Result<Vec<C<T>>> {
        match space.hilbert_data().expect("checked hilbert") {
            HilbertData::Diagonal(alpha) => Ok(x
                .iter()
                .enumerate()
                .map(|(i, &v)| v.unscale(alpha[i] * alpha[i]))
                .collect()),
            HilbertData::Gram(g) => g.cholesky().solve_leading(x),
        }
    };
    let gram_norm_sq = |x: &[C<T>]| -> T {
        let gx = gram_matvec(x);
        x.iter()
            .zip(gx.iter())
            .map(|(a, b)| (a.conj() * b).re)
            .sum()
    };
    // image of the conjugated operator: v_i = sum_k conj(A[i][k]) u_k
    let apply_conj = |u: &[C<T>]| -> Vec<C<T>> {
        let mut v = vec![Complex::new(T::zero(), T::zero()); dim];
        for (k, col) in columns.iter().enumerate() {
            let uk = u[k];
            if uk.re == T::zero() && uk.im == T::zero() {
                continue;
            }
            for (i, slot) in v.iter_mut().enumerate() {
                *slot = *slot + col.coeff(i).conj() * uk;
            }
        }
        v
    };

    let mut rng = trial_rng(seed, 0xD1A6);
    let mut u: Vec<C<T>> = (0..dim)
        .map(|_| {
            Complex::new(
                T::of(rng.gen_range(-1.0f64..1.0)),
                T::of(rng.gen_range(-1.0f64..1.0)),
            )
        })
        .collect();
    let nu = gram_norm_sq(&u).sqrt();
    for x in u.iter_mut() {
        *x = x.unscale(nu);
    }

    let mut lambda = T::zero();
    for _ in 0..500 {
        let w = apply_conj(&u);
        let new_lambda = gram_norm_sq(&w); // ||A u||_G^2 over ||u||_G^2 = 1
        if new_lambda <= T::of(1e-28) {
            return Ok(T::zero());
        }
        // u <- normalize( G^{-1} A^H G A u )
        let t = gram_matvec(&w);
        let mut s = vec![Complex::new(T::zero(), T::zero()); dim];
        for (k, slot) in s.iter_mut().enumerate() {
            let mut acc = Complex::new(T::zero(), T::zero());
            for (i, &ti) in t.iter().enumerate() {
                acc = acc + columns[k].coeff(i) * ti;
            }
            *slot = acc;
        }
        let mut next = gram_solve(&s)?;
        let norm = gram_norm_sq(&next).sqrt();
        for x in next.iter_mut() {
            *x = x.unscale(norm);
        }
        u = next;
        let done = (new_lambda - lambda).abs() <= T::of(1e-13) * new_lambda.max(T::one());
        lambda = new_lambda;
        if done {
            break;
        }
    }
    Ok(lambda.sqrt())
}

/// Metadata for one block of a gliding-hump function.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockInfo<T: Scalar> {
    /// Block half-size `m`: the block spans `2m + 1` coefficients.
    pub size: usize,
    /// First occupied exponent.
    pub offset: usize,
    /// Weight after normalization.
    pub weight: T,
    /// Partial-sum cut index at which this block's spike appears.
    pub spike_cut: usize,
}

/// A gliding-hump function with its block layout.
#[derive(Debug, Clone)]
pub struct GlidingHump<T: Scalar> {
    pub poly: TaylorPoly<T>,
    pub blocks: Vec<BlockInfo<T>>,
}

/// Builds a bounded function whose partial sums spike.
///
/// Block `j` (for `j = 1..=blocks`) is the Fejer block `F_m` with
/// `m = base_degree^(j+1)`, shifted to a fresh coefficient range and weighted
/// by `base_degree^(2j)`; the whole sum is normalized by the total weight.
/// Completed blocks vanish at `z = 1`, so the partial sum cut at the center
/// of the last block sees its harmonic-sum spike undiluted, while the sup
/// norm of the function stays below the uniform Fejer-block bound.
pub fn gliding_hump<T: Scalar>(
    blocks: usize,
    base_degree: usize,
    max_degree: usize,
) -> Result<GlidingHump<T>> {
    if blocks < 1 {
        return Err(Error::InvalidParameter {
            message: "need at least one block".into(),
        });
    }
    if base_degree < 2 {
        return Err(Error::InvalidParameter {
            message: "base degree must be at least 2".into(),
        });
    }
    // layout first, so oversize requests fail before allocation
    let mut sizes = Vec::with_capacity(blocks);
    let mut offsets = Vec::with_capacity(blocks);
    let mut offset = 0u128;
    let base = base_degree as u128;
    for j in 1..=blocks {
        let m = base.checked_pow(j as u32 + 1).ok_or(Error::HorizonExceeded {
            degree: usize::MAX,
            max_degree,
        })?;
        let degree = offset + 2 * m;
        if degree > max_degree as u128 {
            return Err(Error::HorizonExceeded {
                degree: degree.min(usize::MAX as u128) as usize,
                max_degree,
            });
        }
        sizes.push(m as usize);
        offsets.push(offset as usize);
        offset = degree + 1;
    }

    let weights: Vec<T> = (1..=blocks)
        .map(|j| T::of_usize(base_degree).powi(2 * j as i32))
        .collect();
    let total_weight: T = weights.iter().copied().sum();

    let degree = offsets[blocks - 1] + 2 * sizes[blocks - 1];
    let mut coeffs = vec![Complex::new(T::zero(), T::zero()); degree + 1];
    let mut infos = Vec::with_capacity(blocks);
    for j in 0..blocks {
        let m = sizes[j];
        let d = offsets[j];
        let w = weights[j] / total_weight;
        for k in 1..=m {
            let v = w / T::of_usize(k);
            coeffs[d + m - k] = coeffs[d + m - k] + Complex::new(v, T::zero());
            coeffs[d + m + k] = coeffs[d + m + k] - Complex::new(v, T::zero());
        }
        infos.push(BlockInfo {
            size: m,
            offset: d,
            weight: w,
            spike_cut: d + m,
        });
    }
    Ok(GlidingHump {
        poly: TaylorPoly::new(coeffs)?,
        blocks: infos,
    })
}

/// Fitted growth classification of a norm sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthTag {
    Bounded,
    LogLike,
    PowerLike,
}

impl GrowthTag {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Bounded => "bounded",
            Self::LogLike => "log-like",
            Self::PowerLike => "power-like",
        }
    }
}

/// Divergence-trend report: the per-`n` measurements plus a descriptive
/// growth tag. A finite-horizon trend, never a proof.
#[derive(Debug, Clone)]
pub struct TrendReport<T: Scalar> {
    pub reports: Vec<SchemeReport<T>>,
    pub tag: GrowthTag,
    /// Relative growth of the running-max envelope over the fitted window.
    pub envelope_growth: T,
}

/// Measures `||T_n f||` and `||T_n f - f||` for `n = 0..=n_max` and fits the
/// running maximum of `||T_n f||` on the last half of the range against
/// constant, `a + b ln n`, and `a + b sqrt(n)` models.
///
/// Every polynomial input saturates once `n` passes its degree, so the
/// informative window ends near the region of interest (for spiking inputs,
/// the last spike), not at the full degree.
pub fn divergence_trend<T: Scalar>(
    space: &SpaceHandle<T>,
    scheme: &Scheme<T>,
    f: &TaylorPoly<T>,
    n_max: usize,
) -> Result<TrendReport<T>> {
    let reports = scheme_error_curve(scheme, space, f, n_max)?;
    let mut envelope = Vec::with_capacity(reports.len());
    let mut running = T::zero();
    for r in &reports {
        running = running.max(r.image_norm);
        envelope.push(running);
    }
    let start = envelope.len() / 2;
    let window = &envelope[start..];
    let tag;
    let envelope_growth;
    if window.len() < 4 {
        tag = GrowthTag::Bounded;
        envelope_growth = T::zero();
    } else {
        let head = window[0];
        let tail = *window.last().unwrap();
        let scale = tail.abs().max(T::of(1e-12));
        envelope_growth = (tail - head) / scale;
        if envelope_growth <= T::of(0.02) {
            tag = GrowthTag::Bounded;
        } else {
            let r_log = fit_residual(window, start, |n| T::of_usize(n + 2).ln());
            let r_sqrt = fit_residual(window, start, |n| T::of_usize(n).sqrt());
            tag = if r_log <= r_sqrt {
                GrowthTag::LogLike
            } else {
                GrowthTag::PowerLike
            };
        }
    }
    Ok(TrendReport {
        reports,
        tag,
        envelope_growth,
    })
}

/// RMS residual of the least-squares fit `y ~ a + b phi(n)`.
fn fit_residual<T: Scalar, F: Fn(usize) -> T>(window: &[T], start: usize, phi: F) -> T {
    let m = T::of_usize(window.len());
    let mut sx = T::zero();
    let mut sy = T::zero();
    let mut sxx = T::zero();
    let mut sxy = T::zero();
    for (i, &y) in window.iter().enumerate() {
        let x = phi(start + i);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    let det = m * sxx - sx * sx;
    let (a, b) = if det.abs() <= T::epsilon() {
        (sy / m, T::zero())
    } else {
        ((sxx * sy - sx * sxy) / det, (m * sxy - sx * sy) / det)
    };
    let mut rss = T::zero();
    for (i, &y) in window.iter().enumerate() {
        let r = y - a - b * phi(start + i);
        rss += r * r;
    }
    (rss / m).sqrt()
}
