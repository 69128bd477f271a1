//! Gauss-Legendre rules, adaptive bisection and dyadic integration toward
//! the right endpoint of `[0, 1)`.

use num_complex::Complex;

use crate::scalar::{lit, Real};

/// An `n`-point Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    /// Nodes by Newton iteration on `P_n`, carried out in `f64`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "rule needs at least one node");
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        let nf = n as f64;
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            nodes.push(lit(x));
            weights.push(lit(2.0 / ((1.0 - x * x) * dp * dp)));
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate<F: Fn(T) -> T>(&self, f: F, a: T, b: T) -> T {
        let half = (b - a) / lit(2.0);
        let mid = (a + b) / lit(2.0);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum::<T>()
            * half
    }

    pub fn integrate_complex<F: Fn(T) -> Complex<T>>(&self, f: F, a: T, b: T) -> Complex<T> {
        let half = (b - a) / lit(2.0);
        let mid = (a + b) / lit(2.0);
        let mut acc = Complex::new(T::zero(), T::zero());
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + f(mid + half * x) * w;
        }
        acc * half
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

/// Tolerances for adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct AdaptiveOptions<T> {
    pub rel_tol: T,
    pub abs_tol: T,
    pub max_depth: u32,
}

impl<T: Real> Default for AdaptiveOptions<T> {
    fn default() -> Self {
        Self {
            rel_tol: lit(1e-10),
            abs_tol: lit(1e-300),
            max_depth: 40,
        }
    }
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Integral<V> {
    pub value: V,
    pub evaluations: usize,
    pub converged: bool,
}

/// Pair of embedded rules used by the adaptive routines.
#[derive(Debug, Clone)]
pub struct RulePair<T> {
    coarse: GaussLegendre<T>,
    fine: GaussLegendre<T>,
}

impl<T: Real> Default for RulePair<T> {
    fn default() -> Self {
        Self {
            coarse: GaussLegendre::new(10),
            fine: GaussLegendre::new(20),
        }
    }
}

impl<T: Real> RulePair<T> {
    /// Adaptive bisection of a complex-valued integrand on `[a, b]`.
    pub fn adaptive_complex<F>(&self, f: &F, a: T, b: T, opts: AdaptiveOptions<T>) -> Integral<Complex<T>>
    where
        F: Fn(T) -> Complex<T>,
    {
        let whole = self.fine.integrate_complex(f, a, b);
        let mut evals = self.fine.len();
        let mut converged = true;
        let value = self.refine(f, a, b, whole, opts, 0, &mut evals, &mut converged, whole.norm());
        Integral {
            value,
            evaluations: evals,
            converged,
        }
    }

    pub fn adaptive<F>(&self, f: &F, a: T, b: T, opts: AdaptiveOptions<T>) -> Integral<T>
    where
        F: Fn(T) -> T,
    {
        let g = |x: T| Complex::new(f(x), T::zero());
        let r = self.adaptive_complex(&g, a, b, opts);
        Integral {
            value: r.value.re,
            evaluations: r.evaluations,
            converged: r.converged,
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn refine<F>(
        &self,
        f: &F,
        a: T,
        b: T,
        fine: Complex<T>,
        opts: AdaptiveOptions<T>,
        depth: u32,
        evals: &mut usize,
        converged: &mut bool,
        scale: T,
    ) -> Complex<T>
    where
        F: Fn(T) -> Complex<T>,
    {
        let coarse = self.coarse.integrate_complex(f, a, b);
        *evals += self.coarse.len();
        let err = (fine - coarse).norm();
        let target = (opts.rel_tol * fine.norm().max(scale * lit(1e-3))).max(opts.abs_tol);
        if err <= target {
            return fine;
        }
        if depth >= opts.max_depth {
            *converged = false;
            return fine;
        }
        let mid = (a + b) / lit(2.0);
        let left = self.fine.integrate_complex(f, a, mid);
        let right = self.fine.integrate_complex(f, mid, b);
        *evals += 2 * self.fine.len();
        let scale = scale.max(fine.norm());
        self.refine(f, a, mid, left, opts, depth + 1, evals, converged, scale)
            + self.refine(f, mid, b, right, opts, depth + 1, evals, converged, scale)
    }

    /// Integrals of `f` over the dyadic pieces `[R_{k-1}, R_k]` with
    /// `R_0 = 0` and `R_k = 1 - 2^-k`, `k = 1..=k_max`.
    pub fn dyadic_pieces<F>(&self, f: &F, k_max: usize, opts: AdaptiveOptions<T>) -> (Vec<T>, usize, bool)
    where
        F: Fn(T) -> T,
    {
        let mut pieces = Vec::with_capacity(k_max);
        let mut evals = 0;
        let mut ok = true;
        let mut lo = T::zero();
        for k in 1..=k_max {
            let hi = dyadic_rung::<T>(k);
            let r = self.adaptive(f, lo, hi, opts);
            evals += r.evaluations;
            ok &= r.converged;
            pieces.push(r.value);
            lo = hi;
        }
        (pieces, evals, ok)
    }
}

/// `1 - 2^-k`.
#[inline]
pub fn dyadic_rung<T: Real>(k: usize) -> T {
    T::one() - lit::<T>(2.0).powi(-(k as i32))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_is_exact_for_polynomials() {
        let rule = GaussLegendre::<f64>::new(10);
        let wsum: f64 = rule.weights.iter().sum();
        assert!((wsum - 2.0).abs() < 1e-14);
        // degree 19 integrated exactly: int_0^1 x^19 = 1/20
        let v = rule.integrate(|x| x.powi(19), 0.0, 1.0);
        assert!((v - 0.05).abs() < 1e-15);
    }

    #[test]
    fn adaptive_handles_peaks() {
        let pair = RulePair::<f64>::default();
        let f = |x: f64| 1.0 / (1e-4 + (x - 0.3) * (x - 0.3));
        let r = pair.adaptive(&f, 0.0, 1.0, AdaptiveOptions::default());
        let want = 100.0 * ((0.7f64 / 1e-2).atan() + (0.3f64 / 1e-2).atan());
        assert!(r.converged);
        assert!((r.value - want).abs() / want < 1e-10);
    }

    #[test]
    fn dyadic_pieces_sum_to_integral() {
        let pair = RulePair::<f64>::default();
        // int_0^R (1 - r) dr = R - R^2/2
        let (pieces, _, ok) = pair.dyadic_pieces(&|r: f64| 1.0 - r, 10, AdaptiveOptions::default());
        assert!(ok);
        let r = dyadic_rung::<f64>(10);
        let s: f64 = pieces.iter().sum();
        assert!((s - (r - r * r / 2.0)).abs() < 1e-15);
    }
}
