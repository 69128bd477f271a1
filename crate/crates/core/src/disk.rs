use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{to_f64, Real};

/// A point of the open unit disk. Construction rejects `|z| >= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint<T> {
    value: Complex<T>,
}

impl<T: Real> DiskPoint<T> {
    pub fn new(value: Complex<T>) -> Result<Self> {
        if value.re.is_finite() && value.im.is_finite() && value.norm_sqr() < T::one() {
            Ok(Self { value })
        } else {
            Err(Error::OutsideDisk {
                re: to_f64(value.re),
                im: to_f64(value.im),
            })
        }
    }

    pub fn from_parts(re: T, im: T) -> Result<Self> {
        Self::new(Complex::new(re, im))
    }

    pub fn real(x: T) -> Result<Self> {
        Self::new(Complex::new(x, T::zero()))
    }

    pub fn polar(radius: T, angle: T) -> Result<Self> {
        Self::new(Complex::from_polar(radius, angle))
    }

    pub fn origin() -> Self {
        Self {
            value: Complex::new(T::zero(), T::zero()),
        }
    }

    #[inline]
    pub fn value(&self) -> Complex<T> {
        self.value
    }

    #[inline]
    pub fn abs(&self) -> T {
        self.value.norm()
    }

    /// `1 - |z|^2`, strictly positive.
    #[inline]
    pub fn gap(&self) -> T {
        crate::scalar::one_minus_abs_sq(self.value)
    }
}

impl<T: Real> TryFrom<Complex<T>> for DiskPoint<T> {
    type Error = Error;

    fn try_from(value: Complex<T>) -> Result<Self> {
        Self::new(value)
    }
}

impl<T> From<DiskPoint<T>> for Complex<T> {
    fn from(p: DiskPoint<T>) -> Self {
        p.value
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_boundary_and_exterior() {
        assert!(DiskPoint::<f64>::real(1.0).is_err());
        assert!(DiskPoint::<f64>::from_parts(0.6, 0.8).is_err());
        assert!(DiskPoint::<f64>::real(-1.5).is_err());
        assert!(DiskPoint::<f64>::real(f64::NAN).is_err());
        assert!(DiskPoint::<f64>::real(0.999_999_999).is_ok());
    }

    #[test]
    fn gap_matches_definition() {
        let p = DiskPoint::from_parts(0.3f64, 0.4).unwrap();
        assert!((p.gap() - 0.75).abs() < 1e-15);
        assert!((p.abs() - 0.5).abs() < 1e-15);
    }
}
