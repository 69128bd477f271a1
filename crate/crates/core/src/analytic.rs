//! Analytic functions on the disk with closed-form values and derivatives.
//!
//! Functions are drawn from a closed set of kinds so that every value and
//! every first derivative is exact up to floating-point rounding. Dense
//! approximation needs are covered by the polynomial kind; the remaining
//! kinds are the automorphisms, finite Blaschke products, the Hardy-space
//! test kernels and the two extremal maps of the Lipschitz estimate.

use num_complex::Complex;

use crate::disk::DiskPoint;
use crate::error::{Error, Result};
use crate::scalar::{lit, one_minus_abs_sq, three_root3_half, to_f64, Real};

/// The closed taxonomy of analytic maps.
#[derive(Debug, Clone, PartialEq)]
pub enum AnalyticKind<T> {
    /// `sum_k c_k z^k`, coefficients in increasing degree.
    Polynomial(Vec<Complex<T>>),
    /// `phi_a(z) = (a - z) / (1 - conj(a) z)`.
    Mobius(DiskPoint<T>),
    /// `rotation * prod_k phi_{a_k}(z)`.
    Blaschke {
        factors: Vec<DiskPoint<T>>,
        rotation: Complex<T>,
    },
    /// `c z` with `|c| <= 1`.
    ScaledIdentity(Complex<T>),
    /// `((1 - |b|^2) / (1 - conj(b) z)^2)^exponent`, principal branch.
    PowerKernel { b: DiskPoint<T>, exponent: T },
    /// `int_0^z beta (m - xi) / (m (1 - m xi)^3) dxi` where `psi(m; 1) = beta`.
    ExtremalAntiderivative { beta: T, root: T },
    /// `-(3 sqrt 3 / 4) z^2`.
    QuadraticExtremal,
    /// `outer(inner(z))`.
    Composite {
        outer: Box<AnalyticMap<T>>,
        inner: Box<AnalyticMap<T>>,
    },
    /// `scale * inner(z) + offset`.
    Affine {
        inner: Box<AnalyticMap<T>>,
        scale: Complex<T>,
        offset: Complex<T>,
    },
}

/// An analytic function `f: D -> C`. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticMap<T> {
    kind: AnalyticKind<T>,
}

fn unimodular_tol<T: Real>() -> T {
    lit(1e-12)
}

impl<T: Real> AnalyticMap<T> {
    pub fn kind(&self) -> &AnalyticKind<T> {
        &self.kind
    }

    pub fn polynomial(coefficients: Vec<Complex<T>>) -> Self {
        Self {
            kind: AnalyticKind::Polynomial(coefficients),
        }
    }

    pub fn real_polynomial(coefficients: &[T]) -> Self {
        Self::polynomial(
            coefficients
                .iter()
                .map(|&c| Complex::new(c, T::zero()))
                .collect(),
        )
    }

    pub fn constant(c: Complex<T>) -> Self {
        Self::polynomial(vec![c])
    }

    pub fn zero() -> Self {
        Self::polynomial(Vec::new())
    }

    pub fn identity() -> Self {
        Self::real_polynomial(&[T::zero(), T::one()])
    }

    /// `z^n`.
    pub fn monomial(n: usize) -> Self {
        let mut c = vec![Complex::new(T::zero(), T::zero()); n + 1];
        c[n] = Complex::new(T::one(), T::zero());
        Self::polynomial(c)
    }

    pub fn mobius(a: DiskPoint<T>) -> Self {
        Self {
            kind: AnalyticKind::Mobius(a),
        }
    }

    pub fn blaschke(factors: Vec<DiskPoint<T>>, rotation: Complex<T>) -> Result<Self> {
        if (rotation.norm() - T::one()).abs() > unimodular_tol() {
            return Err(crate::error::range_err(
                "rotation",
                rotation.norm(),
                "|rotation| must equal 1",
            ));
        }
        Ok(Self {
            kind: AnalyticKind::Blaschke { factors, rotation },
        })
    }

    pub fn scaled_identity(c: Complex<T>) -> Result<Self> {
        if !(c.norm() <= T::one() + unimodular_tol()) {
            return Err(crate::error::range_err("c", c.norm(), "|c| <= 1"));
        }
        Ok(Self {
            kind: AnalyticKind::ScaledIdentity(c),
        })
    }

    pub fn power_kernel(b: DiskPoint<T>, exponent: T) -> Result<Self> {
        if !(exponent > T::zero()) || !exponent.is_finite() {
            return Err(crate::error::range_err("exponent", exponent, "exponent > 0"));
        }
        Ok(Self {
            kind: AnalyticKind::PowerKernel { b, exponent },
        })
    }

    /// The extremal map `f_beta` for `beta in (0, 1]`.
    pub fn extremal_antiderivative(beta: T) -> Result<Self> {
        if !(beta > T::zero() && beta <= T::one()) {
            return Err(crate::error::range_err("beta", beta, "beta in (0, 1]"));
        }
        let root = crate::extremal::m_root(beta, T::one())?.m;
        Ok(Self {
            kind: AnalyticKind::ExtremalAntiderivative { beta, root },
        })
    }

    pub fn quadratic_extremal() -> Self {
        Self {
            kind: AnalyticKind::QuadraticExtremal,
        }
    }

    /// `outer ∘ inner`; `inner` must map the disk into itself.
    pub fn composite(outer: AnalyticMap<T>, inner: AnalyticMap<T>) -> Result<Self> {
        inner.check_self_map()?;
        Ok(Self {
            kind: AnalyticKind::Composite {
                outer: Box::new(outer),
                inner: Box::new(inner),
            },
        })
    }

    pub fn affine(inner: AnalyticMap<T>, scale: Complex<T>, offset: Complex<T>) -> Self {
        Self {
            kind: AnalyticKind::Affine {
                inner: Box::new(inner),
                scale,
                offset,
            },
        }
    }

    /// `k * f`; polynomials stay polynomials.
    pub fn scaled(&self, k: Complex<T>) -> Self {
        match &self.kind {
            AnalyticKind::Polynomial(c) => Self::polynomial(c.iter().map(|&a| a * k).collect()),
            _ => Self::affine(self.clone(), k, Complex::new(T::zero(), T::zero())),
        }
    }

    /// `f + c`.
    pub fn shifted(&self, c: Complex<T>) -> Self {
        match &self.kind {
            AnalyticKind::Polynomial(coef) => {
                let mut coef = coef.clone();
                if coef.is_empty() {
                    coef.push(c);
                } else {
                    coef[0] = coef[0] + c;
                }
                Self::polynomial(coef)
            }
            AnalyticKind::Affine {
                inner,
                scale,
                offset,
            } => Self::affine((**inner).clone(), *scale, *offset + c),
            _ => Self::affine(self.clone(), Complex::new(T::one(), T::zero()), c),
        }
    }

    pub fn eval(&self, z: &DiskPoint<T>) -> Complex<T> {
        self.eval_at(z.value())
    }

    pub fn deriv(&self, z: &DiskPoint<T>) -> Complex<T> {
        self.deriv_at(z.value())
    }

    /// Value at a raw complex point; the caller guarantees `|z| < 1`.
    pub fn eval_at(&self, z: Complex<T>) -> Complex<T> {
        let one = Complex::new(T::one(), T::zero());
        match &self.kind {
            AnalyticKind::Polynomial(c) => c
                .iter()
                .rev()
                .fold(Complex::new(T::zero(), T::zero()), |acc, &a| acc * z + a),
            AnalyticKind::Mobius(a) => mobius_value(a.value(), z),
            AnalyticKind::Blaschke { factors, rotation } => factors
                .iter()
                .fold(*rotation, |acc, a| acc * mobius_value(a.value(), z)),
            AnalyticKind::ScaledIdentity(c) => *c * z,
            AnalyticKind::PowerKernel { b, exponent } => {
                let b = b.value();
                let base = one - b.conj() * z;
                let scale = one_minus_abs_sq(b).powf(*exponent);
                (base.ln() * (-lit::<T>(2.0) * *exponent)).exp() * scale
            }
            AnalyticKind::ExtremalAntiderivative { beta, root } => {
                let m = *root;
                let u = one / (one - z * m);
                let zu = z * u;
                zu * *beta - zu * zu * (*beta * (T::one() - m * m) / (lit::<T>(2.0) * m))
            }
            AnalyticKind::QuadraticExtremal => z * z * (-three_root3_half::<T>() / lit(2.0)),
            AnalyticKind::Composite { outer, inner } => outer.eval_at(inner.eval_at(z)),
            AnalyticKind::Affine {
                inner,
                scale,
                offset,
            } => inner.eval_at(z) * *scale + *offset,
        }
    }

    /// Derivative at a raw complex point; the caller guarantees `|z| < 1`.
    pub fn deriv_at(&self, z: Complex<T>) -> Complex<T> {
        let zero = Complex::new(T::zero(), T::zero());
        let one = Complex::new(T::one(), T::zero());
        match &self.kind {
            AnalyticKind::Polynomial(c) => {
                c.iter()
                    .enumerate()
                    .skip(1)
                    .rev()
                    .fold(zero, |acc, (k, &a)| {
                        acc * z + a * T::from_usize(k).unwrap()
                    })
            }
            AnalyticKind::Mobius(a) => mobius_deriv(a.value(), z),
            AnalyticKind::Blaschke { factors, rotation } => {
                // Product rule; O(n^2) but free of divisions by vanishing factors.
                let values: Vec<_> = factors.iter().map(|a| mobius_value(a.value(), z)).collect();
                let mut total = zero;
                for (k, a) in factors.iter().enumerate() {
                    let mut term = mobius_deriv(a.value(), z);
                    for (j, v) in values.iter().enumerate() {
                        if j != k {
                            term = term * *v;
                        }
                    }
                    total = total + term;
                }
                total * *rotation
            }
            AnalyticKind::ScaledIdentity(c) => *c,
            AnalyticKind::PowerKernel { b, exponent } => {
                let bc = b.value().conj();
                let base = one - bc * z;
                self.eval_at(z) * bc * (lit::<T>(2.0) * *exponent) / base
            }
            AnalyticKind::ExtremalAntiderivative { beta, root } => {
                let m = *root;
                let d = one - z * m;
                (Complex::new(m, T::zero()) - z) * (*beta / m) / (d * d * d)
            }
            AnalyticKind::QuadraticExtremal => z * (-three_root3_half::<T>()),
            AnalyticKind::Composite { outer, inner } => {
                outer.deriv_at(inner.eval_at(z)) * inner.deriv_at(z)
            }
            AnalyticKind::Affine { inner, scale, .. } => inner.deriv_at(z) * *scale,
        }
    }

    /// Polynomial degree, when the map is a polynomial.
    pub fn degree(&self) -> Option<usize> {
        match &self.kind {
            AnalyticKind::Polynomial(c) => Some(c.len().saturating_sub(1)),
            _ => None,
        }
    }

    pub fn coefficients(&self) -> Option<&[Complex<T>]> {
        match &self.kind {
            AnalyticKind::Polynomial(c) => Some(c),
            _ => None,
        }
    }

    /// Disk automorphisms: Schwarz-Pick holds with equality everywhere.
    pub fn is_automorphism(&self) -> bool {
        let tol = unimodular_tol::<T>();
        match &self.kind {
            AnalyticKind::Mobius(_) => true,
            AnalyticKind::Blaschke { factors, .. } => factors.len() == 1,
            AnalyticKind::ScaledIdentity(c) => (c.norm() - T::one()).abs() <= tol,
            AnalyticKind::Polynomial(c) => {
                c.len() == 2 && c[0].norm() == T::zero() && (c[1].norm() - T::one()).abs() <= tol
            }
            AnalyticKind::Composite { outer, inner } => {
                outer.is_automorphism() && inner.is_automorphism()
            }
            _ => false,
        }
    }

    /// Checks that the map sends the disk into itself, so it can serve as a
    /// composition symbol. Exact for the structural kinds; polynomials and
    /// the remaining kinds are checked by sampling.
    pub fn check_self_map(&self) -> Result<()> {
        let fail = |why: String| Err(Error::InadmissibleSymbol(why));
        match &self.kind {
            AnalyticKind::Mobius(_)
            | AnalyticKind::Blaschke { .. }
            | AnalyticKind::ScaledIdentity(_) => Ok(()),
            AnalyticKind::Composite { outer, inner } => {
                outer.check_self_map()?;
                inner.check_self_map()
            }
            AnalyticKind::Polynomial(c) => {
                if c.len() <= 1 {
                    let v = c.first().map(|a| a.norm()).unwrap_or_else(T::zero);
                    return if v < T::one() {
                        Ok(())
                    } else {
                        fail(format!("constant of modulus {}", to_f64(v)))
                    };
                }
                let l1: T = c.iter().map(|a| a.norm()).sum();
                if l1 <= T::one() {
                    return Ok(());
                }
                // Boundary circle.
                let n = 8192;
                let max = (0..n)
                    .map(|k| {
                        let th = T::TAU() * T::from_usize(k).unwrap() / T::from_usize(n).unwrap();
                        self.eval_at(Complex::from_polar(T::one(), th)).norm()
                    })
                    .fold(T::zero(), T::max);
                if max <= T::one() + unimodular_tol() {
                    Ok(())
                } else {
                    fail(format!("boundary modulus reaches {}", to_f64(max)))
                }
            }
            _ => {
                let mut max = T::zero();
                for j in 0..=40 {
                    let r = T::one() - lit::<T>(2.0).powi(-j);
                    for k in 0..512 {
                        let th = T::TAU() * T::from_usize(k).unwrap() / lit(512.0);
                        let v = self.eval_at(Complex::from_polar(r, th)).norm();
                        if !(v < T::one()) {
                            return fail(format!("modulus {} at radius {}", to_f64(v), to_f64(r)));
                        }
                        max = max.max(v);
                    }
                }
                Ok(())
            }
        }
    }
}

#[inline]
fn mobius_value<T: Real>(a: Complex<T>, z: Complex<T>) -> Complex<T> {
    (a - z) / (Complex::new(T::one(), T::zero()) - a.conj() * z)
}

#[inline]
fn mobius_deriv<T: Real>(a: Complex<T>, z: Complex<T>) -> Complex<T> {
    let d = Complex::new(T::one(), T::zero()) - a.conj() * z;
    -Complex::new(one_minus_abs_sq(a), T::zero()) / (d * d)
}
