use crate::error::{range_err, Result};
use crate::majorant::Majorant;
use crate::scalar::{gap, Real};

/// Parameters `(alpha, beta, omega)` of a Bloch-type functional.
///
/// The radial weight is `chi(t) = (1 - t^2)^alpha (log(e / (1 - t^2)))^beta`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlochParams<T> {
    alpha: T,
    beta: T,
    omega: Majorant<T>,
}

impl<T: Real> BlochParams<T> {
    pub fn new(alpha: T, beta: T, omega: Majorant<T>) -> Result<Self> {
        if !(alpha > T::zero()) || !alpha.is_finite() {
            return Err(range_err("alpha", alpha, "alpha > 0"));
        }
        if !beta.is_finite() {
            return Err(range_err("beta", beta, "beta finite"));
        }
        Ok(Self { alpha, beta, omega })
    }

    /// `omega = id`, `alpha = 1`, `beta = 0`: the classical Bloch weight `1 - |z|^2`.
    pub fn classical() -> Self {
        Self {
            alpha: T::one(),
            beta: T::zero(),
            omega: Majorant::identity(),
        }
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    pub fn omega(&self) -> &Majorant<T> {
        &self.omega
    }

    pub fn is_classical(&self) -> bool {
        self.alpha == T::one() && self.beta == T::zero() && self.omega.is_identity()
    }

    /// `chi(t)` for `t in [0, 1)`.
    pub fn weight(&self, t: T) -> T {
        self.weight_from_gap(gap(t))
    }

    /// `chi` expressed through `u = 1 - t^2`, accurate as `u -> 0`.
    pub fn weight_from_gap(&self, u: T) -> T {
        let log_term = T::one() - u.ln();
        let mut w = u.powf(self.alpha);
        if self.beta != T::zero() {
            w = w * log_term.powf(self.beta);
        }
        w
    }

    /// `log chi` through the gap; finite where `chi` itself underflows.
    pub fn log_weight_from_gap(&self, u: T) -> T {
        let mut w = self.alpha * u.ln();
        if self.beta != T::zero() {
            w = w + self.beta * (T::one() - u.ln()).ln();
        }
        w
    }

    /// `omega(chi)` through the gap `u = 1 - t^2`.
    pub fn omega_weight_from_gap(&self, u: T) -> T {
        self.omega.eval(self.weight_from_gap(u))
    }

    /// The admissible range of the Hardy-to-Bloch criteria:
    /// `alpha = 1, beta <= 0` or `alpha > 1`.
    pub fn in_hardy_to_bloch_range(&self) -> bool {
        (self.alpha == T::one() && self.beta <= T::zero()) || self.alpha > T::one()
    }

    /// `beta <= alpha`, the range of the doubling and Bloch-to-Hardy results.
    pub fn beta_dominated(&self) -> bool {
        self.beta <= self.alpha
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(a: f64, b: f64) -> BlochParams<f64> {
        BlochParams::new(a, b, Majorant::identity()).unwrap()
    }

    #[test]
    fn weight_examples() {
        for (a, b) in [(1.0, 0.0), (2.0, 1.0), (0.5, -3.0)] {
            assert_eq!(params(a, b).weight(0.0), 1.0);
        }
        assert!((params(1.0, 0.0).weight(0.6) - 0.64).abs() < 1e-15);
        let want = 0.64 * (1.0 + (1.0f64 / 0.64).ln());
        assert!((params(1.0, 1.0).weight(0.6) - want).abs() < 1e-15);
        assert!((want - 0.9257).abs() < 1e-4);
    }

    #[test]
    fn rejects_nonpositive_alpha() {
        assert!(BlochParams::new(0.0, 0.0, Majorant::<f64>::identity()).is_err());
        assert!(BlochParams::new(-1.0, 0.0, Majorant::<f64>::identity()).is_err());
        assert!(BlochParams::new(1.0, f64::NAN, Majorant::<f64>::identity()).is_err());
    }

    #[test]
    fn weight_decays_at_boundary() {
        for (a, b) in [(1.0, 0.0), (1.0, -1.0), (2.0, 3.0)] {
            let p = params(a, b);
            assert!(p.weight(1.0 - 1e-12) < 1e-9);
        }
    }

    #[test]
    fn ranges() {
        assert!(params(1.0, 0.0).in_hardy_to_bloch_range());
        assert!(params(1.0, -2.0).in_hardy_to_bloch_range());
        assert!(!params(1.0, 0.5).in_hardy_to_bloch_range());
        assert!(params(1.5, 4.0).in_hardy_to_bloch_range());
        assert!(!params(0.5, 0.0).in_hardy_to_bloch_range());
        assert!(BlochParams::<f64>::classical().is_classical());
    }
}
