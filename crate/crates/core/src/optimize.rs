//! One-dimensional search: bracketed bisection and golden-section maximization.

use crate::scalar::{lit, Real};

/// Outcome of a bracketed bisection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bisection<T> {
    pub root: T,
    pub residual: T,
    pub iterations: usize,
}

/// Root of an increasing function on `[lo, hi]` with `f(lo) <= 0 <= f(hi)`.
///
/// Iterates until the midpoint coincides with an endpoint, i.e. the bracket
/// is one ulp wide, or `max_iter` is reached.
pub fn bisect_increasing<T: Real, F: Fn(T) -> T>(f: F, mut lo: T, mut hi: T, max_iter: usize) -> Bisection<T> {
    let mut iterations = 0;
    while iterations < max_iter {
        let mid = lo + (hi - lo) / lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    let (flo, fhi) = (f(lo), f(hi));
    let (root, residual) = if flo.abs() <= fhi.abs() {
        (lo, flo.abs())
    } else {
        (hi, fhi.abs())
    };
    Bisection {
        root,
        residual,
        iterations,
    }
}

/// Golden-section search for a maximum of `f` on `[a, b]`.
///
/// Returns the best abscissa visited and its value; a unimodal `f` is
/// assumed, otherwise a local maximum is found.
pub fn golden_max<T: Real, F: Fn(T) -> T>(f: F, mut a: T, mut b: T, iterations: usize) -> (T, T, T) {
    let inv_phi = (lit::<T>(5.0).sqrt() - T::one()) / lit(2.0);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let (mut best_x, mut best_f) = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    for _ in 0..iterations {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
            if f1 > best_f {
                best_x = x1;
                best_f = f1;
            }
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
            if f2 > best_f {
                best_x = x2;
                best_f = f2;
            }
        }
    }
    (best_x, best_f, b - a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisection_finds_sqrt2() {
        let r = bisect_increasing(|x: f64| x * x - 2.0, 0.0, 2.0, 200);
        assert!((r.root - 2f64.sqrt()).abs() < 1e-15);
        assert!(r.iterations <= 64);
    }

    #[test]
    fn golden_section_on_parabola() {
        let (x, fx, width) = golden_max(|x: f64| -(x - 0.3) * (x - 0.3) + 1.0, 0.0, 1.0, 60);
        assert!((x - 0.3).abs() < 1e-7);
        assert!((fx - 1.0).abs() < 1e-14);
        assert!(width < 1e-12);
    }
}
