use num_complex::Complex;

use crate::analytic::AnalyticMap;
use crate::disk::DiskPoint;
use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real};

/// `f = h + conj(g)` with `g(0) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicMap<T> {
    h: AnalyticMap<T>,
    g: AnalyticMap<T>,
}

impl<T: Real> HarmonicMap<T> {
    /// Rejects decompositions with `|g(0)| > 1e-12`.
    pub fn new(h: AnalyticMap<T>, g: AnalyticMap<T>) -> Result<Self> {
        let g0 = g.eval_at(Complex::new(T::zero(), T::zero())).norm();
        if g0 > lit(1e-12) {
            return Err(Error::NonCanonical(to_f64(g0)));
        }
        Ok(Self { h, g })
    }

    /// Moves `g(0)` into `h` so that the decomposition becomes canonical.
    pub fn normalized(h: AnalyticMap<T>, g: AnalyticMap<T>) -> Self {
        let g0 = g.eval_at(Complex::new(T::zero(), T::zero()));
        if g0.norm() == T::zero() {
            return Self { h, g };
        }
        Self {
            h: h.shifted(g0.conj()),
            g: g.shifted(-g0),
        }
    }

    pub fn analytic(h: AnalyticMap<T>) -> Self {
        Self {
            h,
            g: AnalyticMap::zero(),
        }
    }

    pub fn h(&self) -> &AnalyticMap<T> {
        &self.h
    }

    pub fn g(&self) -> &AnalyticMap<T> {
        &self.g
    }

    pub fn eval(&self, z: &DiskPoint<T>) -> Complex<T> {
        self.eval_at(z.value())
    }

    pub fn eval_at(&self, z: Complex<T>) -> Complex<T> {
        self.h.eval_at(z) + self.g.eval_at(z).conj()
    }

    /// `(f_z, f_zbar) = (h', conj(g'))`.
    pub fn partials_at(&self, z: Complex<T>) -> (Complex<T>, Complex<T>) {
        (self.h.deriv_at(z), self.g.deriv_at(z).conj())
    }

    /// Maximal directional derivative `|h'(z)| + |g'(z)|`.
    pub fn lambda(&self, z: &DiskPoint<T>) -> T {
        self.lambda_at(z.value())
    }

    pub fn lambda_at(&self, z: Complex<T>) -> T {
        self.h.deriv_at(z).norm() + self.g.deriv_at(z).norm()
    }

    /// Multiplies both analytic parts by a real factor.
    pub fn scaled(&self, k: T) -> Self {
        let k = Complex::new(k, T::zero());
        Self {
            h: self.h.scaled(k),
            g: self.g.scaled(k),
        }
    }
}

impl<T: Real> From<AnalyticMap<T>> for HarmonicMap<T> {
    fn from(h: AnalyticMap<T>) -> Self {
        Self::analytic(h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(re: f64, im: f64) -> DiskPoint<f64> {
        DiskPoint::from_parts(re, im).unwrap()
    }

    #[test]
    fn rejects_g_with_nonzero_origin_value() {
        let h = AnalyticMap::<f64>::identity();
        let g = AnalyticMap::real_polynomial(&[0.2, 0.5]);
        assert!(matches!(
            HarmonicMap::new(h.clone(), g.clone()),
            Err(Error::NonCanonical(_))
        ));
        let f = HarmonicMap::normalized(h, g);
        let z = p(0.1, 0.2);
        // normalization keeps the function itself
        let direct = z.value() + (z.value() * 0.5 + 0.2).conj();
        assert!((f.eval(&z) - direct).norm() < 1e-15);
        assert!(f.g().eval(&DiskPoint::origin()).norm() < 1e-15);
    }

    #[test]
    fn lambda_examples() {
        let f = HarmonicMap::new(
            AnalyticMap::<f64>::identity(),
            AnalyticMap::real_polynomial(&[0.0, 0.5]),
        )
        .unwrap();
        for z in [p(0.0, 0.0), p(0.7, -0.1), p(-0.2, 0.9)] {
            assert!((f.lambda(&z) - 1.5).abs() < 1e-15);
        }
        let id = HarmonicMap::analytic(AnalyticMap::<f64>::identity());
        assert_eq!(id.lambda(&p(0.4, 0.4)), 1.0);

        let eta = HarmonicMap::analytic(AnalyticMap::<f64>::quadratic_extremal());
        let z = p(1.0 / 3f64.sqrt(), 0.0);
        assert!((eta.lambda(&z) - 1.5).abs() < 1e-14);
    }

    #[test]
    fn lambda_ignores_constants_in_h() {
        let g = AnalyticMap::real_polynomial(&[0.0, 0.3, -0.2]);
        let f = HarmonicMap::new(AnalyticMap::real_polynomial(&[0.0, 1.0, 0.4]), g.clone()).unwrap();
        let shifted =
            HarmonicMap::new(AnalyticMap::real_polynomial(&[5.0, 1.0, 0.4]), g).unwrap();
        let z = p(0.3, -0.6);
        assert_eq!(f.lambda(&z), shifted.lambda(&z));
    }
}
