//! Durand-Kerner root finding for modest-degree complex polynomials.
//!
//! Used by the spectral factorization in [`crate::hb`]; degrees stay small
//! (twice the symbol degree), so simultaneous iteration is plenty.

use num_complex::Complex;

use crate::scalar::{Scalar, C};

/// All roots (with multiplicity) of `sum coeffs[k] z^k`.
///
/// `coeffs` must have a nonzero leading coefficient. Multiple roots come back
/// as clusters of nearby simple roots; callers that expect clusters should
/// average them.
pub(crate) fn find_roots<T: Scalar>(coeffs: &[C<T>]) -> Vec<C<T>> {
    let degree = coeffs.len() - 1;
    if degree == 0 {
        return Vec::new();
    }
    let lead = coeffs[degree];
    let monic: Vec<C<T>> = coeffs.iter().map(|&c| c / lead).collect();
    if degree == 1 {
        return vec![-monic[0]];
    }

    // Cauchy bound keeps the initial ring outside no root.
    let bound = monic[..degree]
        .iter()
        .map(|c| c.norm())
        .fold(T::zero(), |a, b| a.max(b))
        + T::one();
    let seed = Complex::new(T::of(0.4), T::of(0.9));
    let mut roots: Vec<C<T>> = Vec::with_capacity(degree);
    let mut w = Complex::new(T::one(), T::zero());
    for _ in 0..degree {
        w = w * seed;
        roots.push(w * bound.min(T::of(1.5)));
    }

    let tol = T::epsilon() * T::of(64.0);
    for _ in 0..400 {
        let mut largest_step = T::zero();
        for i in 0..degree {
            let zi = roots[i];
            let mut denom = Complex::new(T::one(), T::zero());
            for (j, &zj) in roots.iter().enumerate() {
                if j != i {
                    denom = denom * (zi - zj);
                }
            }
            if denom.norm() == T::zero() {
                // coincident iterates: nudge apart
                roots[i] = zi + Complex::new(tol, tol);
                largest_step = largest_step.max(tol);
                continue;
            }
            let step = eval_monic(&monic, zi) / denom;
            roots[i] = zi - step;
            largest_step = largest_step.max(step.norm() / (T::one() + zi.norm()));
        }
        if largest_step < tol {
            break;
        }
    }
    roots
}

fn eval_monic<T: Scalar>(monic: &[C<T>], z: C<T>) -> C<T> {
    let mut acc = Complex::new(T::zero(), T::zero());
    for &c in monic.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Newton-polishes a root of known multiplicity: a root of multiplicity `m`
/// is a simple root of the `(m-1)`-th derivative, where Newton converges
/// quadratically again. Returns the start point if the iteration wanders.
pub(crate) fn polish_root<T: Scalar>(coeffs: &[C<T>], start: C<T>, multiplicity: usize) -> C<T> {
    let mut work = coeffs.to_vec();
    for _ in 1..multiplicity {
        work = derivative(&work);
    }
    if work.len() < 2 {
        return start;
    }
    let dwork = derivative(&work);
    let mut z = start;
    for _ in 0..60 {
        let p = eval_monic(&work, z);
        let dp = eval_monic(&dwork, z);
        if dp.norm() == T::zero() {
            break;
        }
        let step = p / dp;
        z = z - step;
        if step.norm() <= T::epsilon() * (T::one() + z.norm()) {
            break;
        }
    }
    if (z - start).norm() > T::of(0.1) * (T::one() + start.norm()) {
        start
    } else {
        z
    }
}

fn derivative<T: Scalar>(coeffs: &[C<T>]) -> Vec<C<T>> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c.scale(T::of_usize(k)))
        .collect()
}
