//! Composition operators `C_phi f = f o phi` and their verdict engines:
//! the Bloch-to-Hardy criterion integral, the Hardy-to-Bloch functional
//! `Q`, and the bounded-below probe. Also the doubling ratio of the Bloch
//! weight.

use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analytic::AnalyticMap;
use crate::disk::DiskPoint;
use crate::error::{range_err, Result};
use crate::extremal::area_uniform;
use crate::harmonic::HarmonicMap;
use crate::majorant::MajorantKind;
use crate::metrics::rho_at;
use crate::norms::{disk_supremum, hardy_norm, HardyExponent, SamplingPlan, Verdict};
use crate::params::BlochParams;
use crate::quadrature::{dyadic_rung, AdaptiveOptions, RulePair};
use crate::scalar::{count, lit, one_minus_abs_sq, probe_radius_limit, three_root3_half, Real};

/// `C_phi f`: the harmonic map with analytic parts `h o phi` and `g o phi`,
/// renormalized so that the co-analytic part vanishes at the origin.
pub fn compose<T: Real>(f: &HarmonicMap<T>, phi: &AnalyticMap<T>) -> Result<HarmonicMap<T>> {
    phi.check_self_map()?;
    let h = AnalyticMap::composite(f.h().clone(), phi.clone())?;
    let g = AnalyticMap::composite(f.g().clone(), phi.clone())?;
    Ok(HarmonicMap::normalized(h, g))
}

/// `(1 - |z|^2) |phi'(z)| / (1 - |phi(z)|^2)`.
pub fn schwarz_pick<T: Real>(phi: &AnalyticMap<T>, z: &DiskPoint<T>) -> T {
    schwarz_pick_at(phi, z.value())
}

pub fn schwarz_pick_at<T: Real>(phi: &AnalyticMap<T>, z: Complex<T>) -> T {
    let d = phi.deriv_at(z).norm();
    if d == T::zero() {
        return T::zero();
    }
    one_minus_abs_sq(z) * d / one_minus_abs_sq(phi.eval_at(z))
}

/// Outcome label of a verdict engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CriterionVerdict {
    Convergent,
    Divergent,
    Bounded,
    Unbounded,
    Compact,
    NonCompact,
    VacuouslyCompact,
    Inconclusive,
}

impl CriterionVerdict {
    pub fn is_definitive(self) -> bool {
        self != Self::Inconclusive
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::Convergent => "convergent",
            Self::Divergent => "divergent",
            Self::Bounded => "bounded",
            Self::Unbounded => "unbounded",
            Self::Compact => "compact",
            Self::NonCompact => "non-compact",
            Self::VacuouslyCompact => "vacuously-compact",
            Self::Inconclusive => "inconclusive",
        }
    }
}

/// Numerical side information of a verdict.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Diagnostics<T> {
    /// Angular nodes (criterion) or grid points (supremum engines).
    pub nodes: usize,
    pub evaluations: usize,
    /// Slope of the log-linear growth fit.
    pub slope: Option<T>,
    /// Largest relative change over the last three rungs.
    pub stabilization: Option<T>,
    /// How far the deciding statistic sits from its threshold, as a factor.
    pub margin: Option<T>,
    pub angular_converged: bool,
}

/// Verdict with estimate and the evidence ladder.
#[derive(Debug, Clone, PartialEq)]
pub struct CriterionReport<T> {
    pub verdict: CriterionVerdict,
    pub estimate: Option<T>,
    /// `(truncation parameter, partial value)`, monotone in the truncation.
    pub evidence: Vec<(T, T)>,
    pub diagnostics: Diagnostics<T>,
}

/// Relative change over the last three rungs below which the criterion
/// integral counts as convergent.
pub const STABILIZATION_TOL: f64 = 1e-4;
/// Growth-fit slope above which the criterion integral counts as divergent.
pub const SLOPE_THRESHOLD: f64 = 0.02;
/// First and last truncation rungs `R_k = 1 - 2^-k` of the criterion.
pub const CRITERION_RUNGS: (usize, usize) = (4, 24);
/// First rung of the growth fit.
pub const FIT_FROM: usize = 12;
/// A growing ladder whose last increment falls below this fraction of its
/// mean increment is not called divergent.
pub const DECELERATION: f64 = 0.5;
const MAX_CRITERION_NODES: usize = 1 << 12;

/// Cumulative inner integrals `S_k(theta) = int_0^{R_k} ...`, `k = 1..=K`.
fn inner_ladder<T: Real>(
    phi: &AnalyticMap<T>,
    params: &BlochParams<T>,
    theta: T,
    k_max: usize,
    pair: &RulePair<T>,
) -> (Vec<T>, usize) {
    let zeta = Complex::from_polar(T::one(), theta);
    let integrand = |r: T| {
        let z = zeta * r;
        let d = phi.deriv_at(z).norm_sqr();
        if d == T::zero() {
            return T::zero();
        }
        let w = params.omega_weight_from_gap(one_minus_abs_sq(phi.eval_at(z)));
        d * (T::one() - r) / (w * w)
    };
    let opts = AdaptiveOptions {
        rel_tol: lit(1e-10),
        ..AdaptiveOptions::default()
    };
    let (pieces, evals, _) = pair.dyadic_pieces(&integrand, k_max, opts);
    let mut acc = T::zero();
    let sums = pieces
        .into_iter()
        .map(|p| {
            acc = acc + p;
            acc
        })
        .collect();
    (sums, evals)
}

/// Least-squares slope of `ys` against `xs`.
pub fn fit_slope<T: Real>(xs: &[T], ys: &[T]) -> T {
    let n = count::<T>(xs.len());
    let mx = xs.iter().copied().sum::<T>() / n;
    let my = ys.iter().copied().sum::<T>() / n;
    let (mut sxy, mut sxx) = (T::zero(), T::zero());
    for (&x, &y) in xs.iter().zip(ys) {
        sxy = sxy + (x - mx) * (y - my);
        sxx = sxx + (x - mx) * (x - mx);
    }
    sxy / sxx
}

/// Last rung increment below `DECELERATION` times the mean increment of
/// the fit window.
fn decelerating<T: Real>(values: &[T]) -> bool {
    let n = values.len();
    if n < 3 {
        return false;
    }
    let mean = (values[n - 1] - values[0]) / count::<T>(n - 1);
    values[n - 1] - values[n - 2] < lit::<T>(DECELERATION) * mean
}

/// Evaluates
/// `I = (1/2pi) int (int_0^1 |phi'(r e^{it})|^2 (1 - r) / omega(chi(|phi|))^2 dr)^{p/2} dt`
/// on the truncations `R_k = 1 - 2^-k`, `k = 4..=24`, and classifies it as
/// convergent (stabilized), divergent (log-linear growth) or inconclusive.
/// Convergence and boundedness (equivalently compactness) of the operator
/// coincide here.
pub fn bloch_to_hardy_criterion<T: Real>(
    phi: &AnalyticMap<T>,
    params: &BlochParams<T>,
    p: T,
    plan: &SamplingPlan<T>,
) -> Result<CriterionReport<T>> {
    if !(p > T::zero()) || !p.is_finite() {
        return Err(range_err("p", p, "p > 0"));
    }
    phi.check_self_map()?;
    let (k_lo, k_hi) = CRITERION_RUNGS;
    let pair = RulePair::<T>::default();
    let half_p = p / lit(2.0);

    let eval_nodes = |idx: &[usize], n: usize| -> Vec<(Vec<T>, usize)> {
        idx.par_iter()
            .map(|&k| {
                let th = T::TAU() * count::<T>(k) / count::<T>(n);
                inner_ladder(phi, params, th, k_hi, &pair)
            })
            .collect()
    };
    let mut n = plan.angular_resolution();
    let all: Vec<usize> = (0..n).collect();
    let mut ladders = eval_nodes(&all, n);
    let mut evaluations: usize = ladders.iter().map(|l| l.1).sum();
    let means = |ladders: &[(Vec<T>, usize)]| -> Vec<T> {
        let m = count::<T>(ladders.len());
        (0..k_hi)
            .map(|k| ladders.iter().map(|l| l.0[k].powf(half_p)).sum::<T>() / m)
            .collect()
    };
    let mut current = means(&ladders);
    let mut agreements = 0;
    let mut angular_converged = false;
    while 2 * n <= MAX_CRITERION_NODES {
        let odd: Vec<usize> = (0..n).map(|k| 2 * k + 1).collect();
        let fresh = eval_nodes(&odd, 2 * n);
        evaluations += fresh.iter().map(|l| l.1).sum::<usize>();
        let mut merged = Vec::with_capacity(2 * n);
        for (a, b) in ladders.into_iter().zip(fresh) {
            merged.push(a);
            merged.push(b);
        }
        ladders = merged;
        n *= 2;
        let next = means(&ladders);
        let (a, b) = (current[k_hi - 1], next[k_hi - 1]);
        current = next;
        if (a - b).abs() <= plan.tolerance() * b.abs() {
            agreements += 1;
            if agreements >= 2 {
                angular_converged = true;
                break;
            }
        } else {
            agreements = 0;
        }
    }

    let evidence: Vec<(T, T)> = (k_lo..=k_hi).map(|k| (dyadic_rung(k), current[k - 1])).collect();
    let last = current[k_hi - 1];
    let mut diagnostics = Diagnostics {
        nodes: n,
        evaluations,
        angular_converged,
        ..Diagnostics::default()
    };
    if last == T::zero() {
        diagnostics.stabilization = Some(T::zero());
        diagnostics.slope = Some(T::zero());
        diagnostics.margin = Some(T::infinity());
        return Ok(CriterionReport {
            verdict: CriterionVerdict::Convergent,
            estimate: Some(T::zero()),
            evidence,
            diagnostics,
        });
    }
    let change = (k_hi - 2..=k_hi)
        .map(|k| (current[k - 1] - current[k - 2]).abs() / current[k - 1])
        .fold(T::zero(), T::max);
    let xs: Vec<T> = (FIT_FROM..=k_hi).map(|k| count::<T>(k) * T::LN_2()).collect();
    let ys: Vec<T> = (FIT_FROM..=k_hi).map(|k| current[k - 1]).collect();
    let slope = fit_slope(&xs, &ys);
    diagnostics.stabilization = Some(change);
    diagnostics.slope = Some(slope);

    let stab = lit::<T>(STABILIZATION_TOL);
    let thr = lit::<T>(SLOPE_THRESHOLD);
    let verdict = if change < stab {
        diagnostics.margin = Some(if change > T::zero() { stab / change } else { T::infinity() });
        CriterionVerdict::Convergent
    } else if slope > thr && !decelerating(&current[FIT_FROM - 1..]) {
        diagnostics.margin = Some(slope / thr);
        CriterionVerdict::Divergent
    } else {
        CriterionVerdict::Inconclusive
    };
    Ok(CriterionReport {
        verdict,
        estimate: (verdict == CriterionVerdict::Convergent).then_some(last),
        evidence,
        diagnostics,
    })
}

fn check_q_inputs<T: Real>(params: &BlochParams<T>, p: T) -> Result<()> {
    if !(p > T::one()) || !p.is_finite() {
        return Err(range_err("p", p, "1 < p < inf"));
    }
    params.omega().slope_at_origin()?;
    Ok(())
}

fn q_value<T: Real>(phi: &AnalyticMap<T>, params: &BlochParams<T>, p: T, z: Complex<T>) -> T {
    let d = phi.deriv_at(z).norm();
    if d == T::zero() {
        return T::zero();
    }
    let w = params.omega_weight_from_gap(one_minus_abs_sq(z));
    d * w / one_minus_abs_sq(phi.eval_at(z)).powf(T::one() + T::one() / p)
}

/// `Q(z) = |phi'(z)| omega(chi(|z|)) / (1 - |phi(z)|^2)^{1 + 1/p}`.
///
/// Requires `alpha = 1, beta <= 0` or `alpha > 1`, `p > 1`, and a majorant
/// with finite slope at the origin.
pub fn hardy_to_bloch_q<T: Real>(
    phi: &AnalyticMap<T>,
    params: &BlochParams<T>,
    p: T,
    z: &DiskPoint<T>,
) -> Result<T> {
    if !params.in_hardy_to_bloch_range() {
        return Err(range_err(
            "alpha",
            params.alpha(),
            "alpha = 1 with beta <= 0, or alpha > 1",
        ));
    }
    check_q_inputs(params, p)?;
    phi.check_self_map()?;
    Ok(q_value(phi, params, p, z.value()))
}

/// Boundedness and compactness verdicts for `C_phi` from Hardy to Bloch type.
#[derive(Debug, Clone, PartialEq)]
pub struct HardyToBlochReport<T> {
    pub boundedness: CriterionReport<T>,
    pub compactness: CriterionReport<T>,
    /// `false` outside `alpha = 1, beta <= 0` or `alpha > 1`; the verdicts are
    /// still computed but carry no guarantee.
    pub supported: bool,
    /// Largest `|phi|` seen on the grid.
    pub sup_phi: T,
}

/// `sup |phi|` at or below this makes the boundary condition vacuous.
pub const VACUOUS_GAP: f64 = 1e-6;
const BAND_SPAN: usize = 5;

pub fn hardy_to_bloch_verdict<T: Real>(
    phi: &AnalyticMap<T>,
    params: &BlochParams<T>,
    p: T,
    plan: &SamplingPlan<T>,
) -> Result<HardyToBlochReport<T>> {
    check_q_inputs(params, p)?;
    phi.check_self_map()?;
    let supported = params.in_hardy_to_bloch_range();

    let q = |z: Complex<T>| q_value(phi, params, p, z);
    let sup = disk_supremum(&q, plan);
    let (nr, na) = (plan.sup_radii_list(), plan.sup_angles_list());
    let points: Vec<Complex<T>> = nr
        .iter()
        .flat_map(|&r| na.iter().map(move |&t| Complex::from_polar(r, t)))
        .collect();
    let samples: Vec<(T, T)> = points
        .par_iter()
        .map(|&z| (phi.eval_at(z).norm(), q(z)))
        .collect();
    let sup_phi = samples.iter().map(|s| s.0).fold(T::zero(), T::max);

    let ladder_q: Vec<T> = sup.evidence.iter().map(|e| e.1).collect();
    let growth = {
        let n = ladder_q.len();
        let base = ladder_q[n.saturating_sub(BAND_SPAN + 1)];
        if base > T::zero() {
            Some(ladder_q[n - 1] / base)
        } else {
            None
        }
    };
    let growth_thr = lit::<T>(crate::norms::GROWTH_RATIO);
    let boundedness = match sup.verdict {
        Verdict::Infinite => CriterionReport {
            verdict: CriterionVerdict::Unbounded,
            estimate: None,
            evidence: sup.evidence.clone(),
            diagnostics: Diagnostics {
                nodes: points.len(),
                margin: growth.map(|g| g / growth_thr),
                ..Diagnostics::default()
            },
        },
        Verdict::Finite => CriterionReport {
            verdict: CriterionVerdict::Bounded,
            estimate: sup.value,
            evidence: sup.evidence.clone(),
            diagnostics: Diagnostics {
                nodes: points.len(),
                margin: growth.map(|g| if g > T::zero() { growth_thr / g } else { T::infinity() }),
                ..Diagnostics::default()
            },
        },
    };

    let mut bands = Vec::new();
    for k in 1..=52usize {
        let edge = dyadic_rung::<T>(k);
        let m = samples
            .iter()
            .filter(|s| s.0 > edge)
            .map(|s| s.1)
            .fold(None, |acc: Option<T>, v| Some(acc.map_or(v, |a| a.max(v))));
        match m {
            Some(v) => bands.push((edge, v)),
            None => break,
        }
    }
    let compact_diag = Diagnostics {
        nodes: points.len(),
        ..Diagnostics::default()
    };
    let compactness = if boundedness.verdict == CriterionVerdict::Unbounded {
        CriterionReport {
            verdict: CriterionVerdict::NonCompact,
            estimate: None,
            evidence: bands,
            diagnostics: compact_diag,
        }
    } else if sup_phi <= T::one() - lit(VACUOUS_GAP) {
        CriterionReport {
            verdict: CriterionVerdict::VacuouslyCompact,
            estimate: sup.value,
            evidence: bands,
            diagnostics: compact_diag,
        }
    } else if bands.len() <= BAND_SPAN {
        CriterionReport {
            verdict: CriterionVerdict::Inconclusive,
            estimate: None,
            evidence: bands,
            diagnostics: compact_diag,
        }
    } else {
        let n = bands.len();
        let (last, base) = (bands[n - 1].1, bands[n - 1 - BAND_SPAN].1);
        let ratio = if base > T::zero() { last / base } else { T::zero() };
        let verdict = if ratio <= lit(0.5) {
            CriterionVerdict::Compact
        } else if ratio >= lit(0.95) {
            CriterionVerdict::NonCompact
        } else {
            CriterionVerdict::Inconclusive
        };
        CriterionReport {
            verdict,
            estimate: (verdict == CriterionVerdict::Compact).then_some(last),
            evidence: bands,
            diagnostics: Diagnostics {
                margin: Some(if ratio > T::zero() { lit::<T>(0.5) / ratio } else { T::infinity() }),
                ..compact_diag
            },
        }
    };
    Ok(HardyToBlochReport {
        boundedness,
        compactness,
        supported,
        sup_phi,
    })
}

/// The test family `((1 - |b|^2) / (1 - conj(b) z)^2)^{1/p}`, of Hardy
/// `p`-norm one.
pub fn test_function<T: Real>(b: DiskPoint<T>, p: T) -> Result<AnalyticMap<T>> {
    if !(p > T::zero()) || !p.is_finite() {
        return Err(range_err("p", p, "p > 0"));
    }
    AnalyticMap::power_kernel(b, T::one() / p)
}

/// Both sides of `Lambda_f(z) (1 - |z|^2)^{1 + 1/p} <= 4^{1/p} (||h||_p + ||g||_p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthBound<T> {
    pub lhs: T,
    pub rhs: T,
}

impl<T: Real> GrowthBound<T> {
    pub fn ok(&self) -> bool {
        self.lhs <= self.rhs * (T::one() + lit(1e-12))
    }
}

/// `4^{1/p} (||h||_p + ||g||_p)`.
pub fn growth_constant<T: Real>(f: &HarmonicMap<T>, p: T, plan: &SamplingPlan<T>) -> Result<T> {
    if !(p > T::one()) || !p.is_finite() {
        return Err(range_err("p", p, "1 < p < inf"));
    }
    let e = HardyExponent::Finite(p);
    let nh = hardy_norm(f.h(), e, plan)?.require("Hardy norm of h")?;
    let ng = hardy_norm(f.g(), e, plan)?.require("Hardy norm of g")?;
    Ok(lit::<T>(4.0).powf(T::one() / p) * (nh + ng))
}

pub fn growth_bound_at<T: Real>(f: &HarmonicMap<T>, p: T, z: &DiskPoint<T>, constant: T) -> GrowthBound<T> {
    let lhs = f.lambda(z) * z.gap().powf(T::one() + T::one() / p);
    GrowthBound { lhs, rhs: constant }
}

pub fn growth_bound_check<T: Real>(
    f: &HarmonicMap<T>,
    p: T,
    z: &DiskPoint<T>,
    plan: &SamplingPlan<T>,
) -> Result<GrowthBound<T>> {
    Ok(growth_bound_at(f, p, z, growth_constant(f, p, plan)?))
}

/// Outcome of the bounded-below probe.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeReport<T> {
    pub r: T,
    pub epsilon: T,
    pub samples: usize,
    pub satisfied: usize,
    pub fraction: T,
    /// `(1 - (3 sqrt 3 / 2) r) epsilon` when every sample is satisfied.
    pub implied_constant: Option<T>,
}

const PROBE_STARTS: usize = 4;
const NEWTON_STEPS: usize = 60;

fn probe_accepts<T: Real>(phi: &AnalyticMap<T>, z: Complex<T>, w: Complex<T>, r: T, eps: T) -> bool {
    z.norm_sqr() < T::one() && rho_at(phi.eval_at(z), w) < r && schwarz_pick_at(phi, z) > eps
}

fn newton_preimage<T: Real>(phi: &AnalyticMap<T>, start: Complex<T>, w: Complex<T>, r: T, eps: T) -> bool {
    let mut z = start;
    for _ in 0..NEWTON_STEPS {
        if probe_accepts(phi, z, w, r, eps) {
            return true;
        }
        let d = phi.deriv_at(z);
        if d.norm() == T::zero() {
            return false;
        }
        let step = (phi.eval_at(z) - w) / d;
        if !(step.re.is_finite() && step.im.is_finite()) {
            return false;
        }
        let mut t = T::one();
        let mut next = z - step * t;
        let mut halvings = 0;
        while next.norm_sqr() >= T::one() && halvings < 60 {
            t = t / lit(2.0);
            next = z - step * t;
            halvings += 1;
        }
        if next.norm_sqr() >= T::one() || next == z {
            return probe_accepts(phi, next, w, r, eps);
        }
        z = next;
    }
    probe_accepts(phi, z, w, r, eps)
}

/// For `samples` area-uniform targets `w`, looks for `z_w` with
/// `rho(phi(z_w), w) < r` and Schwarz-Pick quotient above `epsilon`: first
/// on the supremum grid, then by damped Newton steps on `phi(z) = w` from
/// the closest grid points. A miss means unsatisfied at this resolution.
pub fn bounded_below_probe<T: Real>(
    phi: &AnalyticMap<T>,
    r: T,
    epsilon: T,
    samples: usize,
    seed: u64,
    plan: &SamplingPlan<T>,
) -> Result<ProbeReport<T>> {
    if !(r > T::zero() && r < probe_radius_limit::<T>()) {
        return Err(range_err("r", r, "0 < r < 2*sqrt(3)/9"));
    }
    if !(epsilon > T::zero()) || !epsilon.is_finite() {
        return Err(range_err("epsilon", epsilon, "epsilon > 0"));
    }
    if samples == 0 {
        return Err(range_err("samples", T::zero(), "samples >= 1"));
    }
    phi.check_self_map()?;

    let (radii, angles) = (plan.sup_radii_list(), plan.sup_angles_list());
    let grid: Vec<(Complex<T>, Complex<T>, T)> = radii
        .iter()
        .flat_map(|&rr| angles.iter().map(move |&t| Complex::from_polar(rr, t)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|z| (z, phi.eval_at(z), schwarz_pick_at(phi, z)))
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let targets: Vec<Complex<T>> = (0..samples).map(|_| area_uniform(&mut rng)).collect();
    let hits: Vec<bool> = targets
        .par_iter()
        .map(|&w| {
            let mut closest: Vec<(T, usize)> = Vec::with_capacity(PROBE_STARTS + 1);
            for (i, &(_, fz, sp)) in grid.iter().enumerate() {
                let d = rho_at(fz, w);
                if d < r && sp > epsilon {
                    return true;
                }
                if closest.len() < PROBE_STARTS || d < closest[closest.len() - 1].0 {
                    let pos = closest.iter().position(|c| d < c.0).unwrap_or(closest.len());
                    closest.insert(pos, (d, i));
                    closest.truncate(PROBE_STARTS);
                }
            }
            closest
                .iter()
                .any(|&(_, i)| newton_preimage(phi, grid[i].0, w, r, epsilon))
        })
        .collect();

    let satisfied = hits.iter().filter(|&&h| h).count();
    let fraction = count::<T>(satisfied) / count::<T>(samples);
    Ok(ProbeReport {
        r,
        epsilon,
        samples,
        satisfied,
        fraction,
        implied_constant: (satisfied == samples).then(|| (T::one() - three_root3_half::<T>() * r) * epsilon),
    })
}

/// `omega(chi(1 - s)) / omega(chi(1 - s/2))` for `s in (0, 1]`.
pub fn doubling_ratio<T: Real>(params: &BlochParams<T>, s: T) -> Result<T> {
    if !(s > T::zero() && s <= T::one()) {
        return Err(range_err("s", s, "0 < s <= 1"));
    }
    let h = s / lit(2.0);
    let u1 = s * (lit::<T>(2.0) - s);
    let u2 = h * (lit::<T>(2.0) - h);
    let log_ratio = params.log_weight_from_gap(u1) - params.log_weight_from_gap(u2);
    Ok(match params.omega().kind() {
        MajorantKind::Identity => log_ratio.exp(),
        MajorantKind::Power(e) => (*e * log_ratio).exp(),
        MajorantKind::Tabulated(_) => {
            params.omega_weight_from_gap(u1) / params.omega_weight_from_gap(u2)
        }
    })
}

/// Value at zero of the interpolating polynomial through `(xs, ys)`.
pub fn neville_at_zero<T: Real>(xs: &[T], ys: &[T]) -> T {
    let mut p = ys.to_vec();
    let n = xs.len();
    for m in 1..n {
        for i in 0..n - m {
            p[i] = (xs[i + m] * p[i] - xs[i] * p[i + 1]) / (xs[i + m] - xs[i]);
        }
    }
    p[0]
}

/// Extrapolated endpoint limits of the doubling ratio and its supremum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoublingLimits<T> {
    /// `s -> 0+`.
    pub at_zero: T,
    /// Closed form `2^alpha` (raised to `s` for power majorants).
    pub expected_at_zero: Option<T>,
    /// `s -> 1-`.
    pub at_one: T,
    /// Closed form `(4/3)^alpha / (1 + log(4/3))^beta`.
    pub expected_at_one: Option<T>,
    /// Largest ratio on a logarithmic grid of `s`.
    pub sup_ratio: T,
}

pub fn doubling_limits<T: Real>(params: &BlochParams<T>) -> Result<DoublingLimits<T>> {
    // s_k = 10^{-20k}; extrapolated in x = 1 / log(e / s).
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for k in 10..=15 {
        let log_inv_s = lit::<T>(20.0 * k as f64) * lit::<T>(10.0).ln();
        let s = (-log_inv_s).exp();
        if !(s > T::zero()) {
            break;
        }
        xs.push(T::one() / (T::one() + log_inv_s));
        ys.push(doubling_ratio(params, s)?);
    }
    let at_zero = if xs.len() >= 2 {
        neville_at_zero(&xs, &ys)
    } else {
        *ys.last().unwrap_or(&T::nan())
    };

    let mut xs1 = Vec::new();
    let mut ys1 = Vec::new();
    for k in 4..=10 {
        let d = lit::<T>(2.0).powi(-k);
        xs1.push(d);
        ys1.push(doubling_ratio(params, T::one() - d)?);
    }
    let at_one = neville_at_zero(&xs1, &ys1);

    let mut sup_ratio = doubling_ratio(params, T::one())?;
    for j in 1..=1200 {
        let s = lit::<T>(10.0).powf(-lit::<T>(j as f64) / lit(4.0));
        if !(s > T::zero()) {
            break;
        }
        sup_ratio = sup_ratio.max(doubling_ratio(params, s)?);
    }

    let (a, b) = (params.alpha(), params.beta());
    let four_thirds = lit::<T>(4.0) / lit(3.0);
    let base_zero = lit::<T>(2.0).powf(a);
    let base_one = four_thirds.powf(a) / (T::one() + four_thirds.ln()).powf(b);
    let sigma = match params.omega().kind() {
        MajorantKind::Identity => Some(T::one()),
        MajorantKind::Power(e) => Some(*e),
        MajorantKind::Tabulated(_) => None,
    };
    Ok(DoublingLimits {
        at_zero,
        expected_at_zero: sigma.map(|e| base_zero.powf(e)),
        at_one,
        expected_at_one: sigma.map(|e| base_one.powf(e)),
        sup_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::majorant::Majorant;
    use crate::norms::bloch_functional_at;

    type C = Complex<f64>;

    fn plan() -> SamplingPlan<f64> {
        SamplingPlan::default()
    }

    fn classical() -> BlochParams<f64> {
        BlochParams::classical()
    }

    fn half() -> AnalyticMap<f64> {
        AnalyticMap::scaled_identity(C::new(0.5, 0.0)).unwrap()
    }

    fn constant() -> AnalyticMap<f64> {
        AnalyticMap::constant(C::new(0.3, 0.1))
    }

    #[test]
    fn compose_examples() {
        let f = HarmonicMap::new(
            AnalyticMap::identity(),
            AnalyticMap::scaled_identity(C::new(0.5, 0.0)).unwrap(),
        )
        .unwrap();
        let z = C::new(0.3, -0.2);
        let same = compose(&f, &AnalyticMap::identity()).unwrap();
        assert!((same.eval_at(z) - f.eval_at(z)).norm() < 1e-15);
        let c = compose(&f, &half()).unwrap();
        assert!((c.eval_at(z) - f.eval_at(z * 0.5)).norm() < 1e-15);
        assert!((c.lambda_at(z) - 0.75).abs() < 1e-15);

        let eta = HarmonicMap::analytic(AnalyticMap::quadratic_extremal());
        let a = DiskPoint::from_parts(0.4, -0.3).unwrap();
        let phi = AnalyticMap::mobius(a);
        let comp = compose(&eta, &phi).unwrap();
        let p = classical();
        let lhs = bloch_functional_at(&comp, &p, z);
        let rhs = bloch_functional_at(&eta, &p, phi.eval_at(z));
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn compose_rejects_non_self_maps() {
        let f = HarmonicMap::analytic(AnalyticMap::<f64>::identity());
        let big = AnalyticMap::real_polynomial(&[0.0, 2.0]);
        assert!(matches!(compose(&f, &big), Err(Error::InadmissibleSymbol(_))));
    }

    #[test]
    fn compose_renormalizes_g() {
        let f = HarmonicMap::new(AnalyticMap::<f64>::zero(), AnalyticMap::identity()).unwrap();
        let phi = AnalyticMap::mobius(DiskPoint::real(0.5).unwrap());
        let c = compose(&f, &phi).unwrap();
        assert!(c.g().eval_at(C::new(0.0, 0.0)).norm() < 1e-15);
        let z = C::new(0.1, 0.6);
        assert!((c.eval_at(z) - f.eval_at(phi.eval_at(z))).norm() < 1e-15);
    }

    #[test]
    fn schwarz_pick_examples() {
        let m = AnalyticMap::mobius(DiskPoint::from_parts(0.3f64, 0.5).unwrap());
        let z = DiskPoint::from_parts(-0.7, 0.2).unwrap();
        assert!((schwarz_pick(&m, &z) - 1.0).abs() < 1e-12);
        assert!(schwarz_pick(&half(), &z) < 1.0);
        assert_eq!(schwarz_pick(&constant(), &z), 0.0);
    }

    #[test]
    fn criterion_calibration() {
        let p = classical();
        let c = bloch_to_hardy_criterion(&constant(), &p, 2.0, &plan()).unwrap();
        assert_eq!(c.verdict, CriterionVerdict::Convergent);
        assert_eq!(c.estimate, Some(0.0));

        let h = bloch_to_hardy_criterion(&half(), &p, 2.0, &plan()).unwrap();
        assert_eq!(h.verdict, CriterionVerdict::Convergent);
        assert!(h.diagnostics.margin.unwrap() >= 10.0);
        // Angle-independent: int_0^1 (1 - r) / 4 / (1 - r^2/4)^2 dr.
        let pair = RulePair::<f64>::default();
        let oracle = pair
            .adaptive(&|r: f64| 0.25 * (1.0 - r) / (1.0 - r * r / 4.0).powi(2), 0.0, 1.0, AdaptiveOptions::default())
            .value;
        assert!((h.estimate.unwrap() - oracle).abs() < 1e-9);

        let id = bloch_to_hardy_criterion(&AnalyticMap::identity(), &p, 2.0, &plan()).unwrap();
        assert_eq!(id.verdict, CriterionVerdict::Divergent);
        assert!(id.diagnostics.margin.unwrap() >= 10.0);
        assert!((id.diagnostics.slope.unwrap() - 0.25).abs() < 0.025);
        assert!(id.evidence.windows(2).all(|w| w[1].1 >= w[0].1));
    }

    #[test]
    fn q_examples() {
        let p = classical();
        let z = DiskPoint::real(0.99).unwrap();
        let q = hardy_to_bloch_q(&AnalyticMap::identity(), &p, 2.0, &z).unwrap();
        assert!((q - (1.0f64 - 0.9801).powf(-0.5)).abs() < 1e-9);
        assert!((q - 7.0888).abs() < 1e-3);
        let o = DiskPoint::origin();
        assert!((hardy_to_bloch_q(&half(), &p, 2.0, &o).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(hardy_to_bloch_q(&constant(), &p, 2.0, &z).unwrap(), 0.0);
    }

    #[test]
    fn q_rejects_out_of_range_parameters() {
        let z = DiskPoint::origin();
        let id = AnalyticMap::<f64>::identity();
        let bad = BlochParams::new(1.0, 0.5, Majorant::identity()).unwrap();
        assert!(matches!(hardy_to_bloch_q(&id, &bad, 2.0, &z), Err(Error::ParameterRange { .. })));
        assert!(hardy_to_bloch_q(&id, &classical(), 1.0, &z).is_err());
        let sqrt = BlochParams::new(1.0, 0.0, Majorant::power(0.5).unwrap()).unwrap();
        assert!(matches!(hardy_to_bloch_q(&id, &sqrt, 2.0, &z), Err(Error::Majorant(_))));
    }

    #[test]
    fn verdict_calibration() {
        let p = classical();
        let r = hardy_to_bloch_verdict(&AnalyticMap::identity(), &p, 2.0, &plan()).unwrap();
        assert_eq!(r.boundedness.verdict, CriterionVerdict::Unbounded);
        assert_eq!(r.compactness.verdict, CriterionVerdict::NonCompact);
        let r = hardy_to_bloch_verdict(&half(), &p, 2.0, &plan()).unwrap();
        assert_eq!(r.boundedness.verdict, CriterionVerdict::Bounded);
        assert_eq!(r.compactness.verdict, CriterionVerdict::VacuouslyCompact);
        let r = hardy_to_bloch_verdict(&constant(), &p, 2.0, &plan()).unwrap();
        assert_eq!(r.boundedness.verdict, CriterionVerdict::Bounded);
        assert_eq!(r.boundedness.estimate, Some(0.0));
        assert_eq!(r.compactness.verdict, CriterionVerdict::VacuouslyCompact);
        assert!(r.supported);
    }

    #[test]
    fn verdict_detects_compact_identity_for_heavier_weight() {
        // alpha = 2: Q(z) = (1 - |z|^2)^{1/2} -> 0 at the boundary.
        let p = BlochParams::new(2.0, 0.0, Majorant::identity()).unwrap();
        let r = hardy_to_bloch_verdict(&AnalyticMap::identity(), &p, 2.0, &plan()).unwrap();
        assert_eq!(r.boundedness.verdict, CriterionVerdict::Bounded);
        assert_eq!(r.compactness.verdict, CriterionVerdict::Compact);
        assert!(r.compactness.evidence.windows(2).all(|w| w[1].1 <= w[0].1));
    }

    #[test]
    fn verdict_outside_range_is_flagged() {
        let p = BlochParams::new(0.5, 0.0, Majorant::identity()).unwrap();
        let r = hardy_to_bloch_verdict(&half(), &p, 2.0, &plan()).unwrap();
        assert!(!r.supported);
    }

    #[test]
    fn test_function_examples() {
        let f = test_function(DiskPoint::origin(), 2.0).unwrap();
        assert!((f.eval_at(C::new(0.4, 0.4)) - C::new(1.0, 0.0)).norm() < 1e-15);
        let f = test_function(DiskPoint::real(0.9).unwrap(), 2.0).unwrap();
        let v = f.eval_at(C::new(0.9, 0.0)).re;
        assert!((v - (1.0f64 / 0.19).sqrt()).abs() < 1e-12);
        assert!((v - 2.2942).abs() < 1e-4);
    }

    #[test]
    fn growth_examples() {
        let id = HarmonicMap::analytic(AnalyticMap::<f64>::identity());
        let g = growth_bound_check(&id, 2.0, &DiskPoint::origin(), &plan()).unwrap();
        assert!((g.lhs - 1.0).abs() < 1e-15);
        assert!((g.rhs - 2.0).abs() < 1e-9);
        assert!(g.ok());
        let c = HarmonicMap::analytic(AnalyticMap::constant(C::new(0.5, 0.0)));
        let g = growth_bound_check(&c, 3.0, &DiskPoint::real(0.7).unwrap(), &plan()).unwrap();
        assert_eq!(g.lhs, 0.0);
        assert!(g.ok());
        assert!(growth_bound_check(&c, 1.0, &DiskPoint::origin(), &plan()).is_err());
    }

    #[test]
    fn probe_examples() {
        let k = 1.0 - 2.598_076_211_353_316 * 0.2;
        let id = bounded_below_probe(&AnalyticMap::identity(), 0.2, 0.5, 64, 3, &plan()).unwrap();
        assert_eq!(id.fraction, 1.0);
        assert!((id.implied_constant.unwrap() - k * 0.5).abs() < 1e-15);
        let m = AnalyticMap::mobius(DiskPoint::real(0.3).unwrap());
        let mb = bounded_below_probe(&m, 0.2, 0.5, 64, 3, &plan()).unwrap();
        assert_eq!(mb.fraction, 1.0);
        let c = bounded_below_probe(&constant(), 0.2, 0.5, 64, 3, &plan()).unwrap();
        assert_eq!(c.fraction, 0.0);
        assert!(c.implied_constant.is_none());
        assert!(bounded_below_probe(&constant(), 0.5, 0.5, 4, 3, &plan()).is_err());
    }

    #[test]
    fn doubling_limit_examples() {
        for (a, b) in [(1.0, 0.0), (2.0, 1.0), (1.0, -1.0)] {
            let p = BlochParams::<f64>::new(a, b, Majorant::identity()).unwrap();
            let d = doubling_limits(&p).unwrap();
            assert!((d.at_zero - d.expected_at_zero.unwrap()).abs() < 1e-4, "{a} {b} {}", d.at_zero);
            assert!((d.at_one - d.expected_at_one.unwrap()).abs() < 1e-4);
            assert!(d.sup_ratio.is_finite());
        }
        let one = BlochParams::<f64>::classical();
        assert!((doubling_ratio(&one, 1.0).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        assert!(doubling_ratio(&one, 0.0).is_err());
    }

    #[test]
    fn neville_recovers_polynomials() {
        let xs = [0.1, 0.2, 0.35, 0.5];
        let ys: Vec<f64> = xs.iter().map(|x| 2.0 - x + 3.0 * x * x * x).collect();
        assert!((neville_at_zero(&xs, &ys) - 2.0).abs() < 1e-13);
    }
}
