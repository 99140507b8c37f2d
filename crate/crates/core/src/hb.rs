//! de Branges-Rovnyak spaces H(b) for polynomial symbols b.
//!
//! For a non-extreme contractive symbol the norm follows Sarason's formula
//! `||f||_b^2 = ||f||_{H^2}^2 + ||f+||_{H^2}^2`, where the companion `f+`
//! solves the Toeplitz equation `T_conj(a) f+ = T_conj(b) f` and `a` is the
//! outer Pythagorean mate with `|a|^2 + |b|^2 = 1` on the circle.
//!
//! For polynomial `b` everything here is finite: the mate comes from a
//! spectral (Fejer-Riesz) factorization of the trigonometric polynomial
//! `1 - |b|^2`, the Toeplitz operator is upper-triangular and banded, and the
//! companion of a polynomial is again a polynomial, so the truncated solve on
//! the working horizon reproduces it without truncation error.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::poly::TaylorPoly;
use crate::roots::{find_roots, polish_root};
use crate::scalar::{tol, unit_phase, Scalar, C};
use crate::spaces::GramMatrix;

/// Default ratio of working horizon to Gram horizon.
pub const DEFAULT_WORKING_FACTOR: usize = 4;

/// Condition-estimate ceiling for the truncated Toeplitz solve.
const CONDITION_LIMIT: f64 = 1e12;

/// Floor below which the log-integrability diagnostic reports non-density.
pub const DENSITY_FLOOR: f64 = -1e6;

/// A polynomial symbol `b` with sampled `|b| <= 1` on the circle.
#[derive(Debug, Clone)]
pub struct SymbolB<T: Scalar> {
    b: TaylorPoly<T>,
    max_modulus: T,
    max_defect: T,
}

impl<T: Scalar> SymbolB<T> {
    /// Validates contractivity on a dense circle grid.
    ///
    /// Inner-like symbols (`1 - |b|^2` vanishing identically) are accepted
    /// here so the density diagnostic can inspect them; the mate construction
    /// rejects them.
    pub fn new(b: TaylorPoly<T>) -> Result<Self> {
        let nodes = check_grid_size(b.degree_or_zero());
        let mut max_modulus = T::zero();
        let mut max_defect = T::zero();
        for j in 0..nodes {
            let theta = two_pi::<T>() * T::of_usize(j) / T::of_usize(nodes);
            let v = b.evaluate(unit_phase(theta)).norm();
            max_modulus = max_modulus.max(v);
            max_defect = max_defect.max(T::one() - v * v);
        }
        if max_modulus > T::one() + tol::<T>(1e-12, 16.0) {
            return Err(Error::NotContractive {
                max_modulus: max_modulus.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self {
            b,
            max_modulus,
            max_defect,
        })
    }

    pub fn poly(&self) -> &TaylorPoly<T> {
        &self.b
    }

    pub fn degree(&self) -> usize {
        self.b.degree_or_zero()
    }

    pub fn max_modulus(&self) -> T {
        self.max_modulus
    }

    /// Largest sampled value of `1 - |b|^2`.
    pub fn max_defect(&self) -> T {
        self.max_defect
    }
}

/// Outer polynomial `a` with `|a|^2 + |b|^2 = 1` on the circle and `a(0) > 0`.
#[derive(Debug, Clone)]
pub struct PythagoreanMate<T: Scalar> {
    a: TaylorPoly<T>,
}

impl<T: Scalar> PythagoreanMate<T> {
    pub fn poly(&self) -> &TaylorPoly<T> {
        &self.a
    }

    pub fn degree(&self) -> usize {
        self.a.degree_or_zero()
    }
}

fn two_pi<T: Scalar>() -> T {
    T::PI() + T::PI()
}

fn check_grid_size(degree: usize) -> usize {
    (64 * (degree + 1)).max(2048)
}

/// Laurent coefficients `r_m`, `m = 0..=d`, of `1 - |b(e^{i theta})|^2`
/// (`r_{-m} = conj(r_m)`).
fn defect_laurent<T: Scalar>(b: &TaylorPoly<T>) -> Vec<C<T>> {
    let d = b.degree_or_zero();
    let mut r = Vec::with_capacity(d + 1);
    for m in 0..=d {
        let mut s = Complex::new(T::zero(), T::zero());
        for j in m..=d {
            s = s + b.coeff(j) * b.coeff(j - m).conj();
        }
        r.push(if m == 0 {
            Complex::new(T::one() - s.re, T::zero())
        } else {
            -s
        });
    }
    r
}

/// Constructs the outer Pythagorean mate by spectral factorization of
/// `1 - |b|^2`.
///
/// Roots of the lifted polynomial pair up as `(zeta, 1/conj(zeta))`; the mate
/// takes the outside root of each pair, and clusters straddling the circle
/// (even multiplicity there) are averaged and split evenly.
pub fn fejer_riesz_mate<T: Scalar>(b: &SymbolB<T>) -> Result<PythagoreanMate<T>> {
    if b.max_defect <= tol::<T>(1e-12, 64.0) {
        return Err(Error::DegenerateSymbol);
    }
    let r = defect_laurent(b.poly());
    let scale = r.iter().map(|c| c.norm()).fold(T::one(), |a, b| a.max(b));
    let band = r
        .iter()
        .enumerate()
        .skip(1)
        .rev()
        .find(|(_, c)| c.norm() > tol::<T>(1e-13, 8.0) * scale)
        .map(|(m, _)| m)
        .unwrap_or(0);

    let a = if band == 0 {
        // constant defect: a = sqrt(r_0)
        if r[0].re <= tol::<T>(1e-12, 64.0) {
            return Err(Error::DegenerateSymbol);
        }
        TaylorPoly::constant(Complex::new(r[0].re.sqrt(), T::zero()))?
    } else {
        // q(z) = z^band * (1 - |b|^2) as a polynomial of degree 2*band
        let mut q = Vec::with_capacity(2 * band + 1);
        for i in 0..=(2 * band) {
            let m = i as isize - band as isize;
            q.push(if m >= 0 {
                r[m as usize]
            } else {
                r[(-m) as usize].conj()
            });
        }
        factor_from_roots(&q, band)?
    };

    // verify |a|^2 + |b|^2 = 1 on the grid
    let nodes = check_grid_size(b.degree().max(a.degree_or_zero()));
    let mut deviation = T::zero();
    for j in 0..nodes {
        let theta = two_pi::<T>() * T::of_usize(j) / T::of_usize(nodes);
        let z = unit_phase(theta);
        let v = a.evaluate(z).norm_sqr() + b.poly().evaluate(z).norm_sqr();
        deviation = deviation.max((v - T::one()).abs());
    }
    if deviation > tol::<T>(1e-8, 512.0) {
        return Err(Error::MateIdentityViolated {
            deviation: deviation.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(PythagoreanMate { a })
}

/// Builds the outer factor of the lifted defect polynomial `q` (degree
/// `2 * band`).
fn factor_from_roots<T: Scalar>(q: &[C<T>], band: usize) -> Result<TaylorPoly<T>> {
    let roots = find_roots(q);
    let circle_tol = T::of(1e-6);
    let mut outside: Vec<C<T>> = Vec::new();
    let mut inside_count = 0usize;
    let mut on_circle: Vec<C<T>> = Vec::new();
    for z in roots {
        let m = z.norm();
        if (m - T::one()).abs() <= circle_tol {
            on_circle.push(z);
        } else if m > T::one() {
            outside.push(z);
        } else {
            inside_count += 1;
        }
    }
    let _ = inside_count;

    // Circle roots carry even multiplicity; cluster by angle, polish the
    // cluster centroid as a multiple root, and assign half the multiplicity
    // to the mate.
    let mut selected: Vec<C<T>> = outside
        .iter()
        .map(|&z| polish_root(q, z, 1))
        .collect();
    if !on_circle.is_empty() {
        on_circle.sort_by(|x, y| x.arg().partial_cmp(&y.arg()).unwrap());
        let mut clusters: Vec<Vec<C<T>>> = Vec::new();
        let angle_tol = T::of(1e-4);
        for z in on_circle {
            match clusters.last_mut() {
                Some(cluster) if (cluster[0].arg() - z.arg()).abs() <= angle_tol => {
                    cluster.push(z)
                }
                _ => clusters.push(vec![z]),
            }
        }
        for cluster in clusters {
            let mut centroid = Complex::new(T::zero(), T::zero());
            for z in &cluster {
                centroid = centroid + z;
            }
            centroid = centroid.unscale(T::of_usize(cluster.len()));
            centroid = polish_root(q, centroid, cluster.len());
            centroid = centroid.unscale(centroid.norm()); // project to the circle
            for _ in 0..(cluster.len() / 2) {
                selected.push(centroid);
            }
        }
    }

    // |c|^2 = |lead(q)| / prod |outside roots|
    let lead = q[q.len() - 1].norm();
    let mut prod = T::one();
    for z in &selected[..outside.len()] {
        prod *= z.norm();
    }
    let magnitude = (lead / prod).sqrt();

    // expand prod (z - root)
    let mut coeffs: Vec<C<T>> = vec![Complex::new(T::one(), T::zero())];
    for root in &selected {
        let mut next = vec![Complex::new(T::zero(), T::zero()); coeffs.len() + 1];
        for (k, &c) in coeffs.iter().enumerate() {
            next[k + 1] = next[k + 1] + c;
            next[k] = next[k] - *root * c;
        }
        coeffs = next;
    }
    // rotate so a(0) is real and positive, then scale
    let a0 = coeffs[0];
    if a0.norm() == T::zero() {
        return Err(Error::MateIdentityViolated { deviation: f64::NAN });
    }
    let phase = a0.conj().unscale(a0.norm());
    let factor = phase * magnitude;
    let _ = band;
    TaylorPoly::new(coeffs.into_iter().map(|c| c * factor).collect())
}

/// Back-substitution for the banded upper-triangular Toeplitz system
/// `T_conj(a) u = rhs` truncated at `rhs.len()` unknowns.
fn toeplitz_solve<T: Scalar>(a: &[C<T>], rhs: &[C<T>]) -> Vec<C<T>> {
    let w = rhs.len();
    let d = a.len() - 1;
    let a0 = a[0].conj();
    let mut u = vec![Complex::new(T::zero(), T::zero()); w];
    for i in (0..w).rev() {
        let mut s = rhs[i];
        for t in 1..=d.min(w - 1 - i) {
            s = s - a[t].conj() * u[i + t];
        }
        u[i] = s / a0;
    }
    u
}

/// LINPACK-style condition estimate for the truncated solve: greedy
/// unit-modulus right-hand side maximizing growth, times the row-sum norm.
fn toeplitz_condition_estimate<T: Scalar>(a: &[C<T>], w: usize) -> T {
    let d = a.len() - 1;
    let a0 = a[0].conj();
    let mut x = vec![Complex::new(T::zero(), T::zero()); w];
    let mut worst = T::zero();
    for i in (0..w).rev() {
        let mut t = Complex::new(T::zero(), T::zero());
        for s in 1..=d.min(w - 1 - i) {
            t = t + a[s].conj() * x[i + s];
        }
        let rhs = if t.norm() > T::zero() {
            -t.unscale(t.norm())
        } else {
            Complex::new(T::one(), T::zero())
        };
        x[i] = (rhs - t) / a0;
        worst = worst.max(x[i].norm());
        if !worst.is_finite() {
            break;
        }
    }
    let row_sum: T = a.iter().map(|c| c.norm()).sum();
    if worst.is_finite() {
        row_sum * worst
    } else {
        T::infinity()
    }
}

/// H(b) descriptor: symbol, mate, and the monomial Gram matrix up to the
/// horizon.
#[derive(Debug, Clone)]
pub struct HbDescriptor<T: Scalar> {
    symbol: SymbolB<T>,
    mate: PythagoreanMate<T>,
    horizon: usize,
    working_horizon: usize,
    gram: GramMatrix<T>,
}

impl<T: Scalar> HbDescriptor<T> {
    pub fn symbol(&self) -> &SymbolB<T> {
        &self.symbol
    }

    pub fn mate(&self) -> &PythagoreanMate<T> {
        &self.mate
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn working_horizon(&self) -> usize {
        self.working_horizon
    }

    pub fn gram(&self) -> &GramMatrix<T> {
        &self.gram
    }

    /// The companion `f+` solving `T_conj(a) f+ = T_conj(b) f`.
    pub fn plus_part(&self, f: &TaylorPoly<T>) -> Result<TaylorPoly<T>> {
        let deg = f.degree_or_zero();
        if deg > self.horizon {
            return Err(Error::DegreeExceedsHorizon {
                degree: deg,
                horizon: self.horizon,
            });
        }
        Ok(plus_part_raw(
            self.symbol.poly(),
            self.mate.poly(),
            f,
            self.working_horizon,
        ))
    }

    /// `||f||_b^2` through the mate formula, independent of the Gram matrix.
    pub fn norm_sq_via_mate(&self, f: &TaylorPoly<T>) -> Result<T> {
        let plus = self.plus_part(f)?;
        let h2: T = f.coeffs().iter().map(|c| c.norm_sqr()).sum();
        let extra: T = plus.coeffs().iter().map(|c| c.norm_sqr()).sum();
        Ok(h2 + extra)
    }
}

fn plus_part_raw<T: Scalar>(
    b: &TaylorPoly<T>,
    a: &TaylorPoly<T>,
    f: &TaylorPoly<T>,
    working: usize,
) -> TaylorPoly<T> {
    let db = b.degree_or_zero();
    let mut rhs = vec![Complex::new(T::zero(), T::zero()); working];
    for (i, slot) in rhs.iter_mut().enumerate() {
        let mut s = Complex::new(T::zero(), T::zero());
        for t in 0..=db {
            s = s + b.coeff(t).conj() * f.coeff(i + t);
        }
        *slot = s;
    }
    let a_coeffs: Vec<C<T>> = (0..=a.degree_or_zero()).map(|k| a.coeff(k)).collect();
    let u = toeplitz_solve(&a_coeffs, &rhs);
    TaylorPoly::new(u).expect("finite solve")
}

/// Builds the H(b) monomial Gram matrix with the default working factor.
pub fn hb_gram<T: Scalar>(symbol: SymbolB<T>, horizon: usize) -> Result<HbDescriptor<T>> {
    hb_gram_with_working_factor(symbol, horizon, DEFAULT_WORKING_FACTOR)
}

/// Builds the H(b) monomial Gram matrix from companions of the monomials.
///
/// `G[j][k] = delta_jk + <u_j, u_k>` with `u_j` the companion of `z^j`; the
/// polarization identity for the mate-formula norm gives the same entries
/// (cross-checked in tests).
pub fn hb_gram_with_working_factor<T: Scalar>(
    symbol: SymbolB<T>,
    horizon: usize,
    working_factor: usize,
) -> Result<HbDescriptor<T>> {
    if working_factor < 1 {
        return Err(Error::InvalidParameter {
            message: "working factor must be at least 1".into(),
        });
    }
    let mate = fejer_riesz_mate(&symbol)?;
    let da = mate.degree();
    let working = (working_factor * (horizon + 1)).max(horizon + da + 2);

    let a_coeffs: Vec<C<T>> = (0..=da).map(|k| mate.poly().coeff(k)).collect();
    let estimate = toeplitz_condition_estimate(&a_coeffs, working);
    if estimate > T::of(CONDITION_LIMIT) {
        return Err(Error::IllConditionedMate {
            estimate: estimate.to_f64().unwrap_or(f64::INFINITY),
            working_horizon: working,
        });
    }

    let companions: Vec<TaylorPoly<T>> = (0..=horizon)
        .map(|j| plus_part_raw(symbol.poly(), mate.poly(), &TaylorPoly::monomial(j), working))
        .collect();

    let dim = horizon + 1;
    let zero = Complex::new(T::zero(), T::zero());
    let mut entries = vec![zero; dim * dim];
    for j in 0..dim {
        for k in j..dim {
            let mut s = Complex::new(T::zero(), T::zero());
            for i in 0..working {
                s = s + companions[j].coeff(i) * companions[k].coeff(i).conj();
            }
            if j == k {
                s = s + Complex::new(T::one(), T::zero());
            }
            entries[j * dim + k] = s;
            entries[k * dim + j] = s.conj();
        }
    }
    let gram = GramMatrix::new(entries, dim)?;

    // H(b) norms dominate H^2 norms: G - I must be positive semidefinite
    // (within 1e-8). The companion construction gives this structurally; the
    // shifted factorization here guards against data corruption.
    let mut shifted = gram.entries().to_vec();
    let slack = tol::<T>(1e-8, 512.0);
    for j in 0..dim {
        shifted[j * dim + j] = shifted[j * dim + j] - Complex::new(T::one() - slack, T::zero());
    }
    if crate::linalg::HermitianCholesky::factor(&shifted, dim).is_err() {
        return Err(Error::NotPositiveDefinite {
            index: 0,
            pivot: f64::NAN,
        });
    }

    Ok(HbDescriptor {
        symbol,
        mate,
        horizon,
        working_horizon: working,
        gram,
    })
}

/// Report of the log-integrability density diagnostic.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityReport<T: Scalar> {
    /// Midpoint-quadrature value of `int_0^{2pi} log(1 - |b|^2) d theta`.
    pub integral: T,
    /// Same integral at doubled resolution.
    pub refined_integral: T,
    /// Whether refinement moved the value by less than 2% (or 1e-6 absolute).
    pub stable: bool,
    /// Finite, above the floor, and stable under refinement.
    pub likely_dense: bool,
}

/// Numerically integrates `log(1 - |b|^2)` over the circle.
///
/// A trend diagnostic, not a decision procedure: it reports likely-dense when
/// the quadrature value is finite, above [`DENSITY_FLOOR`], and stable under
/// grid refinement. Defects below the measurement floor (1e-13) count as
/// vanishing.
pub fn hb_density_diagnostic<T: Scalar>(b: &SymbolB<T>) -> DensityReport<T> {
    let base = check_grid_size(b.degree()).max(4096);
    let integral = log_defect_integral(b, base);
    let refined_integral = log_defect_integral(b, base * 2);
    let stable = integral.is_finite()
        && refined_integral.is_finite()
        && (refined_integral - integral).abs()
            <= (T::of(0.02) * integral.abs()).max(T::of(1e-6));
    let likely_dense = stable && integral > T::of(DENSITY_FLOOR);
    DensityReport {
        integral,
        refined_integral,
        stable,
        likely_dense,
    }
}

fn log_defect_integral<T: Scalar>(b: &SymbolB<T>, nodes: usize) -> T {
    // midpoint nodes avoid hitting zeros of the defect head-on
    let mut sum = T::zero();
    for j in 0..nodes {
        let theta =
            two_pi::<T>() * (T::of_usize(j) + T::of(0.5)) / T::of_usize(nodes);
        let defect = T::one() - b.poly().evaluate(unit_phase(theta)).norm_sqr();
        if defect < tol::<T>(1e-13, 32.0) {
            return T::neg_infinity();
        }
        sum += defect.ln();
    }
    sum * two_pi::<T>() / T::of_usize(nodes)
}
