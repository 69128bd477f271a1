//! Pseudo-hyperbolic and hyperbolic distances, disk automorphisms.

use num_complex::Complex;

use crate::analytic::AnalyticMap;
use crate::disk::DiskPoint;
use crate::scalar::{lit, Real};

/// `|(z - w) / (1 - conj(w) z)|`; exactly zero when `z == w`.
pub fn rho<T: Real>(z: &DiskPoint<T>, w: &DiskPoint<T>) -> T {
    rho_at(z.value(), w.value())
}

pub fn rho_at<T: Real>(z: Complex<T>, w: Complex<T>) -> T {
    if z == w {
        return T::zero();
    }
    let d = Complex::new(T::one(), T::zero()) - w.conj() * z;
    ((z - w) / d).norm().min(T::one())
}

/// `arctanh(rho)` computed as `log1p(2 rho / (1 - rho)) / 2`.
pub fn sigma<T: Real>(z: &DiskPoint<T>, w: &DiskPoint<T>) -> T {
    artanh(rho(z, w))
}

pub(crate) fn artanh<T: Real>(r: T) -> T {
    (lit::<T>(2.0) * r / (T::one() - r)).ln_1p() / lit(2.0)
}

/// The involutive automorphism `phi_a(z) = (a - z) / (1 - conj(a) z)`.
pub fn mobius<T: Real>(a: DiskPoint<T>) -> AnalyticMap<T> {
    AnalyticMap::mobius(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(re: f64, im: f64) -> DiskPoint<f64> {
        DiskPoint::from_parts(re, im).unwrap()
    }

    #[test]
    fn rho_examples() {
        let w = p(0.3, -0.4);
        assert!((rho(&DiskPoint::origin(), &w) - 0.5).abs() < 1e-15);
        assert_eq!(rho(&w, &w), 0.0);
        assert!((rho(&p(0.5, 0.0), &p(-0.5, 0.0)) - 0.8).abs() < 1e-15);
    }

    #[test]
    fn sigma_examples() {
        let z = p(0.2, 0.1);
        assert_eq!(sigma(&z, &z), 0.0);
        // arctanh(x) = sum x^(2k+1)/(2k+1), independent of the log1p route
        let series = |x: f64| (0..200).map(|k| x.powi(2 * k + 1) / (2 * k + 1) as f64).sum::<f64>();
        let o = DiskPoint::origin();
        assert!((sigma(&o, &p(0.5, 0.0)) - series(0.5)).abs() < 1e-15);
        assert!((sigma(&o, &p(0.5, 0.0)) - 0.549_306_1).abs() < 1e-7);
        assert!((sigma(&o, &p(0.8, 0.0)) - 0.5 * 9f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn mobius_examples() {
        let m0 = mobius(DiskPoint::<f64>::origin());
        assert!((m0.eval(&p(0.3, 0.0)).re + 0.3).abs() < 1e-16);
        let m = mobius(p(0.5, 0.0));
        assert!(m.eval(&p(0.5, 0.0)).norm() < 1e-16);
        assert!((m.eval(&DiskPoint::origin()).re - 0.5).abs() < 1e-16);
    }

    #[test]
    fn sigma_stays_accurate_near_boundary() {
        let o = DiskPoint::origin();
        let r = 1.0 - 1e-12;
        let s = sigma(&o, &p(r, 0.0));
        let want = 0.5 * ((1.0 + r) / (1.0 - r)).ln();
        assert!((s - want).abs() / want < 1e-9);
    }
}
