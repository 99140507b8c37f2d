//! Composite Gauss-Legendre quadrature on panels.

use crate::scalar::Scalar;

/// Gauss-Legendre nodes and weights of the given order on `[-1, 1]`,
/// computed by Newton iteration on the Legendre recurrence.
pub(crate) fn gauss_legendre<T: Scalar>(order: usize) -> Vec<(T, T)> {
    assert!(order >= 2);
    let mut rule = Vec::with_capacity(order);
    let n = T::of_usize(order);
    for i in 1..=order {
        // Chebyshev-flavored initial guess
        let mut x = (T::PI() * (T::of_usize(i) - T::of(0.25)) / (n + T::of(0.5))).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative::<T>(order, x);
            let step = p / dp;
            x -= step;
            if step.abs() <= T::epsilon() * T::of(4.0) {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative::<T>(order, x);
        let w = T::of(2.0) / ((T::one() - x * x) * dp * dp);
        rule.push((x, w));
    }
    rule
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative<T: Scalar>(order: usize, x: T) -> (T, T) {
    let mut p_prev = T::one();
    let mut p = x;
    for k in 2..=order {
        let kf = T::of_usize(k);
        let next = ((T::of(2.0) * kf - T::one()) * x * p - (kf - T::one()) * p_prev) / kf;
        p_prev = p;
        p = next;
    }
    let dp = T::of_usize(order) * (x * p - p_prev) / (x * x - T::one());
    (p, dp)
}

/// Integrates `f` over `[a, b]` split into `chunks` equal pieces, each handled
/// by the supplied Gauss-Legendre rule.
pub(crate) fn composite_gauss<T: Scalar, F: Fn(T) -> T>(
    f: &F,
    a: T,
    b: T,
    chunks: usize,
    rule: &[(T, T)],
) -> T {
    let h = (b - a) / T::of_usize(chunks);
    let half = h / T::of(2.0);
    let mut total = T::zero();
    for c in 0..chunks {
        let mid = a + h * T::of_usize(c) + half;
        let mut acc = T::zero();
        for &(x, w) in rule {
            acc += w * f(mid + half * x);
        }
        total += acc * half;
    }
    total
}
