//! Majorants: increasing weights with `omega(0) = 0` and `omega(t)/t`
//! non-increasing. Validation is grid based.

use std::fmt;

use crate::error::MajorantError;
use crate::scalar::{lit, to_f64, Real};

/// Number of points of the logarithmic validation grid on `(0, 4]`.
pub const VALIDATION_POINTS: usize = 64;
const GRID_MAX: f64 = 4.0;
const GRID_MIN: f64 = 4e-6;
const RATIO_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum MajorantKind<T> {
    Identity,
    /// `t^s`.
    Power(T),
    /// Piecewise-linear through `(t_k, omega_k)`, starting at `t_0 = 0`.
    /// Past the last node the weight continues as `omega_n * t / t_n`.
    Tabulated(Vec<(T, T)>),
}

/// A validated majorant.
#[derive(Debug, Clone, PartialEq)]
pub struct Majorant<T> {
    kind: MajorantKind<T>,
}

impl<T: Real> Majorant<T> {
    pub fn identity() -> Self {
        Self {
            kind: MajorantKind::Identity,
        }
    }

    pub fn power(s: T) -> Result<Self, MajorantError> {
        Self::validate(MajorantKind::Power(s))
    }

    pub fn tabulated(nodes: Vec<(T, T)>) -> Result<Self, MajorantError> {
        Self::validate(MajorantKind::Tabulated(nodes))
    }

    /// Checks the three majorant properties on the logarithmic grid and
    /// returns the validated weight, or the first violated property with
    /// its witnessing grid point.
    pub fn validate(kind: MajorantKind<T>) -> Result<Self, MajorantError> {
        if let MajorantKind::Tabulated(nodes) = &kind {
            check_table(nodes)?;
        }
        let candidate = Self { kind };
        let at0 = candidate.eval(T::zero());
        if at0 != T::zero() {
            return Err(MajorantError::NonzeroAtOrigin { value: to_f64(at0) });
        }
        let grid = validation_grid::<T>();
        let slack = T::one() + lit(RATIO_SLACK);
        for w in grid.windows(2) {
            let (t0, t1) = (w[0], w[1]);
            let (v0, v1) = (candidate.eval(t0), candidate.eval(t1));
            if !(v1 > v0) {
                return Err(MajorantError::NotIncreasing { t: to_f64(t1) });
            }
            if v1 / t1 > (v0 / t0) * slack {
                return Err(MajorantError::RatioIncreasing { t: to_f64(t1) });
            }
        }
        Ok(candidate)
    }

    pub fn kind(&self) -> &MajorantKind<T> {
        &self.kind
    }

    pub fn is_identity(&self) -> bool {
        matches!(self.kind, MajorantKind::Identity)
    }

    pub fn eval(&self, t: T) -> T {
        match &self.kind {
            MajorantKind::Identity => t,
            MajorantKind::Power(s) => {
                if t == T::zero() {
                    // 0^0 = 1 flags s = 0 as nonzero at the origin.
                    if *s == T::zero() {
                        T::one()
                    } else {
                        T::zero()
                    }
                } else {
                    t.powf(*s)
                }
            }
            MajorantKind::Tabulated(nodes) => interpolate(nodes, t),
        }
    }

    /// `lim_{t -> 0+} omega(t)/t`, estimated from `t = 2^-j`, `j = 10..=40`.
    /// The sampled ratios must stay finite and settle (Cauchy criterion).
    pub fn slope_at_origin(&self) -> Result<T, MajorantError> {
        let ratios: Vec<T> = (10..=40)
            .map(|j| {
                let t = lit::<T>(2.0).powi(-j);
                self.eval(t) / t
            })
            .collect();
        let last = ratios[ratios.len() - 1];
        let prev = ratios[ratios.len() - 2];
        let settled = (last - prev).abs() <= lit::<T>(1e-6) * last.abs().max(T::one());
        if ratios.iter().all(|r| r.is_finite()) && settled {
            Ok(last)
        } else {
            Err(MajorantError::UnboundedSlope { last: to_f64(last) })
        }
    }

    /// Short label: `id`, `pow:S` or `table:N`.
    pub fn label(&self) -> String {
        match &self.kind {
            MajorantKind::Identity => "id".into(),
            MajorantKind::Power(s) => format!("pow:{}", to_f64(*s)),
            MajorantKind::Tabulated(n) => format!("table:{}", n.len()),
        }
    }
}

impl<T: Real> fmt::Display for Majorant<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// The 64-point logarithmic grid from `4e-6` to `4`.
pub fn validation_grid<T: Real>() -> Vec<T> {
    let lo = lit::<T>(GRID_MIN).ln();
    let hi = lit::<T>(GRID_MAX).ln();
    let n = VALIDATION_POINTS - 1;
    (0..=n)
        .map(|i| (lo + (hi - lo) * T::from_usize(i).unwrap() / T::from_usize(n).unwrap()).exp())
        .collect()
}

fn check_table<T: Real>(nodes: &[(T, T)]) -> Result<(), MajorantError> {
    if nodes.len() < 2 {
        return Err(MajorantError::BadTable("need at least two nodes".into()));
    }
    if nodes[0].0 != T::zero() {
        return Err(MajorantError::BadTable("first node must sit at t = 0".into()));
    }
    if nodes.iter().any(|(t, v)| !t.is_finite() || !v.is_finite()) {
        return Err(MajorantError::BadTable("non-finite node".into()));
    }
    if nodes.windows(2).any(|w| !(w[1].0 > w[0].0)) {
        return Err(MajorantError::BadTable("abscissae must increase strictly".into()));
    }
    Ok(())
}

fn interpolate<T: Real>(nodes: &[(T, T)], t: T) -> T {
    let (tn, vn) = nodes[nodes.len() - 1];
    if t >= tn {
        return vn * t / tn;
    }
    // first node with abscissa > t
    let k = nodes.partition_point(|(x, _)| *x <= t);
    let (t0, v0) = nodes[k - 1];
    let (t1, v1) = nodes[k];
    v0 + (v1 - v0) * (t - t0) / (t1 - t0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_shape() {
        let g = validation_grid::<f64>();
        assert_eq!(g.len(), 64);
        assert!((g[0] - 4e-6).abs() < 1e-18);
        assert!((g[63] - 4.0).abs() < 1e-12);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn accepts_identity_and_square_root() {
        assert!(Majorant::<f64>::validate(MajorantKind::Identity).is_ok());
        let m = Majorant::<f64>::power(0.5).unwrap();
        assert!((m.eval(0.25) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_square_as_tabulation() {
        let nodes: Vec<(f64, f64)> = (0..=40).map(|k| k as f64 * 0.1).map(|t| (t, t * t)).collect();
        match Majorant::tabulated(nodes) {
            Err(MajorantError::RatioIncreasing { t }) => assert!(t > 0.0 && t <= 4.0),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            Majorant::<f64>::power(2.0),
            Err(MajorantError::RatioIncreasing { .. })
        ));
    }

    #[test]
    fn rejects_other_violations() {
        assert!(matches!(
            Majorant::<f64>::power(0.0),
            Err(MajorantError::NonzeroAtOrigin { .. })
        ));
        let shifted = vec![(0.0, 0.5), (1.0, 1.0), (4.0, 2.0)];
        assert!(matches!(
            Majorant::tabulated(shifted),
            Err(MajorantError::NonzeroAtOrigin { .. })
        ));
        let flat = vec![(0.0, 0.0), (0.5, 0.5), (1.0, 0.5), (4.0, 0.6)];
        assert!(matches!(
            Majorant::tabulated(flat),
            Err(MajorantError::NotIncreasing { .. })
        ));
        assert!(matches!(
            Majorant::<f64>::tabulated(vec![(0.1, 0.0), (1.0, 1.0)]),
            Err(MajorantError::BadTable(_))
        ));
    }

    #[test]
    fn tabulated_concave_weight() {
        // min(t, 1 + (t - 1)/2) sampled; concave, so a majorant.
        let nodes: Vec<(f64, f64)> = vec![(0.0, 0.0), (1.0, 1.0), (3.0, 2.0)];
        let m = Majorant::tabulated(nodes).unwrap();
        assert!((m.eval(0.5) - 0.5).abs() < 1e-15);
        assert!((m.eval(2.0) - 1.5).abs() < 1e-15);
        assert!((m.eval(6.0) - 4.0).abs() < 1e-15);
        assert!((m.slope_at_origin().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn slope_at_origin_detects_unbounded_ratio() {
        assert!((Majorant::<f64>::identity().slope_at_origin().unwrap() - 1.0).abs() < 1e-15);
        assert!(matches!(
            Majorant::<f64>::power(0.5).unwrap().slope_at_origin(),
            Err(MajorantError::UnboundedSlope { .. })
        ));
    }
}
