//! The function `psi`, its root `m_alpha(r0)`, the two-sided derivative
//! bounds built on it, the extremal family `f_beta`, and the Lipschitz
//! scanner for the classical Bloch functional.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analytic::AnalyticMap;
use crate::disk::DiskPoint;
use crate::error::{range_err, Error, Result};
use crate::harmonic::HarmonicMap;
use crate::metrics::rho_at;
use crate::norms::{bloch_functional_at, bloch_seminorm, SamplingPlan};
use crate::optimize::bisect_increasing;
use crate::params::BlochParams;
use crate::quadrature::{AdaptiveOptions, RulePair};
use crate::scalar::{count, lit, three_root3_half, to_f64, Real};

/// `sqrt(1 + 2 alpha) ((1 + 2 alpha) / (2 alpha))^alpha x (1 - x^2)^alpha`.
pub fn psi<T: Real>(x: T, alpha: T) -> T {
    let two_a = lit::<T>(2.0) * alpha;
    let k = (T::one() + two_a).sqrt() * ((T::one() + two_a) / two_a).powf(alpha);
    k * x * ((T::one() - x) * (T::one() + x)).powf(alpha)
}

/// `1 / sqrt(1 + 2 alpha)`, the maximizer of `psi`.
pub fn a0<T: Real>(alpha: T) -> T {
    T::one() / (T::one() + lit::<T>(2.0) * alpha).sqrt()
}

/// The root `m` of `psi(m; alpha) = r0` on `[0, a0(alpha)]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremalSolution<T> {
    pub alpha: T,
    pub r0: T,
    pub a0: T,
    pub m: T,
    pub residual: T,
}

pub fn m_root<T: Real>(r0: T, alpha: T) -> Result<ExtremalSolution<T>> {
    if !(alpha > T::zero()) || !alpha.is_finite() {
        return Err(range_err("alpha", alpha, "alpha > 0"));
    }
    if !(r0 > T::zero() && r0 <= T::one()) {
        return Err(range_err("r0", r0, "0 < r0 <= 1"));
    }
    let top = a0(alpha);
    if r0 == T::one() {
        return Ok(ExtremalSolution {
            alpha,
            r0,
            a0: top,
            m: top,
            residual: (psi(top, alpha) - T::one()).abs(),
        });
    }
    let b = bisect_increasing(|x| psi(x, alpha) - r0, T::zero(), top, 200);
    Ok(ExtremalSolution {
        alpha,
        r0,
        a0: top,
        m: b.root,
        residual: b.residual,
    })
}

/// Lower bound `Re f'(z) >= r0 (m - |z|) / (m (1 - m|z|)^{1 + 2 alpha})`,
/// valid for `|z| <= (a0 + m) / (1 + a0 m)`.
pub fn re_derivative_lower_bound<T: Real>(r0: T, alpha: T, z: &DiskPoint<T>) -> Result<T> {
    let s = m_root(r0, alpha)?;
    let radius = (s.a0 + s.m) / (T::one() + s.a0 * s.m);
    let t = z.abs();
    if t > radius {
        return Err(Error::NotApplicable {
            abs_z: to_f64(t),
            radius: to_f64(radius),
        });
    }
    let e = T::one() + lit::<T>(2.0) * alpha;
    Ok(r0 * (s.m - t) / (s.m * (T::one() - s.m * t).powf(e)))
}

/// Upper bound `|f'(z)| <= r0 (m + |z|) / (m (1 + m|z|)^{1 + 2 alpha})`,
/// valid for `|z| <= (a0 - m) / (1 - a0 m)`.
pub fn derivative_upper_bound<T: Real>(r0: T, alpha: T, z: &DiskPoint<T>) -> Result<T> {
    let s = m_root(r0, alpha)?;
    let radius = ((s.a0 - s.m) / (T::one() - s.a0 * s.m)).max(T::zero());
    let t = z.abs();
    if t > radius {
        return Err(Error::NotApplicable {
            abs_z: to_f64(t),
            radius: to_f64(radius),
        });
    }
    let e = T::one() + lit::<T>(2.0) * alpha;
    Ok(r0 * (s.m + t) / (s.m * (T::one() + s.m * t).powf(e)))
}

/// `f_beta(z)` by its closed-form antiderivative.
pub fn f_beta<T: Real>(beta: T, z: &DiskPoint<T>) -> Result<Complex<T>> {
    Ok(AnalyticMap::extremal_antiderivative(beta)?.eval(z))
}

/// `f_beta(z)` by adaptive quadrature of `f_beta'` along the segment `[0, z]`.
pub fn f_beta_path_integral<T: Real>(beta: T, z: &DiskPoint<T>) -> Result<Complex<T>> {
    let f = AnalyticMap::extremal_antiderivative(beta)?;
    let zv = z.value();
    let integrand = |t: T| f.deriv_at(zv * t) * zv;
    let opts = AdaptiveOptions {
        rel_tol: lit(1e-13),
        ..AdaptiveOptions::default()
    };
    Ok(RulePair::default()
        .adaptive_complex(&integrand, T::zero(), T::one(), opts)
        .value)
}

/// Pairs closer than this in the pseudo-hyperbolic metric are rejected.
pub const DEGENERATE_RHO: f64 = 1e-14;

/// `|B(z1) - B(z2)| / rho(z1, z2)`.
pub fn lipschitz_ratio<T: Real>(
    f: &HarmonicMap<T>,
    params: &BlochParams<T>,
    z1: &DiskPoint<T>,
    z2: &DiskPoint<T>,
) -> Result<T> {
    let r = rho_at(z1.value(), z2.value());
    if r < lit(DEGENERATE_RHO) {
        return Err(Error::DegeneratePair(to_f64(r)));
    }
    let b1 = bloch_functional_at(f, params, z1.value());
    let b2 = bloch_functional_at(f, params, z2.value());
    Ok((b1 - b2).abs() / r)
}

/// Outcome of a Lipschitz scan.
#[derive(Debug, Clone, PartialEq)]
pub struct LipschitzScan<T> {
    pub max_ratio: T,
    pub argmax: (Complex<T>, Complex<T>),
    pub seminorm: T,
    /// `(3 sqrt 3 / 2) * seminorm * (1 + 1e-4)`.
    pub cap: T,
    pub pairs_evaluated: usize,
}

impl<T: Real> LipschitzScan<T> {
    pub fn within_cap(&self) -> bool {
        self.max_ratio <= self.cap
    }
}

/// Relative slack on the Lipschitz cap, absorbing the seminorm's resolution.
pub const CAP_SLACK: f64 = 1e-4;
/// Random pairs closer than this are skipped: the difference quotient loses
/// all significant digits there.
pub const SCAN_MIN_RHO: f64 = 1e-8;

/// Area-uniform point of the disk.
pub fn area_uniform<T: Real, R: Rng>(rng: &mut R) -> Complex<T> {
    let u: f64 = rng.gen();
    let v: f64 = rng.gen();
    Complex::from_polar(lit::<T>(u.sqrt()), lit::<T>(std::f64::consts::TAU * v))
}

fn structured_pairs<T: Real>(direction: T) -> Vec<(Complex<T>, Complex<T>)> {
    let mut pairs = Vec::new();
    let mut angles: Vec<T> = (0..8).map(|k| T::TAU() * count::<T>(k) / lit(8.0)).collect();
    angles.push(direction);
    let mut radii: Vec<T> = (0..32).map(|i| count::<T>(i) / lit(32.0)).collect();
    radii.extend((6..=30).map(crate::quadrature::dyadic_rung::<T>));
    for &th in &angles {
        let e = Complex::from_polar(T::one(), th);
        for w in radii.windows(2) {
            pairs.push((e * w[0], e * w[1]));
        }
        for &r in &radii[1..] {
            pairs.push((Complex::new(T::zero(), T::zero()), e * r));
        }
        for j in 1..=30 {
            let r = crate::quadrature::dyadic_rung::<T>(j);
            let d = lit::<T>(2.0).powi(-(j as i32));
            pairs.push((e * r, Complex::from_polar(r, th + d)));
        }
    }
    pairs
}

/// Samples `pairs` area-uniform random pairs plus structured radial and
/// near-boundary pairs and returns the largest Lipschitz ratio of the
/// classical Bloch functional.
pub fn lipschitz_scan<T: Real>(
    f: &HarmonicMap<T>,
    pairs: usize,
    seed: u64,
    plan: &SamplingPlan<T>,
) -> Result<LipschitzScan<T>> {
    let params = BlochParams::classical();
    let semi = bloch_seminorm(f, &params, plan);
    let seminorm = semi.require("Bloch seminorm")?;
    if !(seminorm > T::zero()) {
        return Err(Error::ZeroSeminorm);
    }
    let direction = semi.argmax.map(|z| z.arg()).unwrap_or(T::zero());

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut all: Vec<(Complex<T>, Complex<T>)> = (0..pairs)
        .map(|_| (area_uniform(&mut rng), area_uniform(&mut rng)))
        .collect();
    all.extend(structured_pairs(direction));

    let min_rho = lit::<T>(SCAN_MIN_RHO);
    let ratios: Vec<Option<T>> = all
        .par_iter()
        .map(|&(z1, z2)| {
            let r = rho_at(z1, z2);
            if !(r >= min_rho) {
                return None;
            }
            let b1 = bloch_functional_at(f, &params, z1);
            let b2 = bloch_functional_at(f, &params, z2);
            Some((b1 - b2).abs() / r)
        })
        .collect();

    let mut best: Option<(usize, T)> = None;
    let mut evaluated = 0;
    for (i, r) in ratios.iter().enumerate() {
        if let Some(v) = *r {
            evaluated += 1;
            if best.map_or(true, |(_, b)| v > b) {
                best = Some((i, v));
            }
        }
    }
    let (i, max_ratio) = best.unwrap_or((0, T::zero()));
    Ok(LipschitzScan {
        max_ratio,
        argmax: all.get(i).copied().unwrap_or_default(),
        seminorm,
        cap: three_root3_half::<T>() * seminorm * (T::one() + lit(CAP_SLACK)),
        pairs_evaluated: evaluated,
    })
}

/// Random harmonic polynomial `h + conj(g)` of degree `1..=max_degree` with
/// coefficients in the unit box and `g(0) = 0`, unnormalized.
pub fn random_harmonic_polynomial<T: Real, R: Rng>(rng: &mut R, max_degree: usize) -> HarmonicMap<T> {
    let degree = rng.gen_range(1..=max_degree.max(1));
    let coeff = |rng: &mut R| Complex::new(lit::<T>(rng.gen_range(-1.0..=1.0)), lit::<T>(rng.gen_range(-1.0..=1.0)));
    let h: Vec<Complex<T>> = (0..=degree).map(|_| coeff(rng)).collect();
    let mut g: Vec<Complex<T>> = (0..=degree).map(|_| coeff(rng)).collect();
    g[0] = Complex::new(T::zero(), T::zero());
    HarmonicMap::normalized(AnalyticMap::polynomial(h), AnalyticMap::polynomial(g))
}

/// `count` random harmonic polynomials, each divided by its estimated
/// classical Bloch seminorm so that it has seminorm 1.
pub fn normalized_corpus<T: Real>(
    size: usize,
    max_degree: usize,
    seed: u64,
    plan: &SamplingPlan<T>,
) -> Result<Vec<HarmonicMap<T>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = BlochParams::classical();
    let mut out = Vec::with_capacity(size);
    while out.len() < size {
        let f: HarmonicMap<T> = random_harmonic_polynomial(&mut rng, max_degree);
        let s = bloch_seminorm(&f, &params, plan).require("Bloch seminorm")?;
        if s > T::zero() {
            out.push(f.scaled(T::one() / s));
        }
    }
    Ok(out)
}

/// A pair realizing a Lipschitz ratio of at least `3 sqrt 3 / 2 - epsilon`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SharpnessWitness<T> {
    pub epsilon: T,
    pub m_star: T,
    pub beta: T,
    pub z1: T,
    pub z2: T,
    pub achieved_ratio: T,
    /// `3 sqrt 3 / 2 - epsilon`.
    pub target: T,
}

impl<T: Real> SharpnessWitness<T> {
    pub fn satisfied(&self) -> bool {
        self.achieved_ratio >= self.target
    }
}

/// Builds `m* = min(a0(1), sqrt(2 sqrt 3 eps) / 3)`, `beta = psi(m*; 1)` and
/// evaluates the Lipschitz ratio of `f_beta` at `(m_1(beta), 0)`.
pub fn sharpness_witness<T: Real>(epsilon: T) -> Result<SharpnessWitness<T>> {
    let cap = three_root3_half::<T>();
    if !(epsilon > T::zero() && epsilon <= cap) {
        return Err(range_err("epsilon", epsilon, "0 < epsilon <= 3*sqrt(3)/2"));
    }
    let three = lit::<T>(3.0);
    let top = a0(T::one());
    let branch = (lit::<T>(2.0) * three.sqrt() * epsilon).sqrt() / three;
    let m_star = top.min(branch);
    let beta = if branch >= top {
        T::one()
    } else {
        (cap * m_star * (T::one() - m_star * m_star)).min(T::one())
    };
    let f = HarmonicMap::analytic(AnalyticMap::extremal_antiderivative(beta)?);
    let m = m_root(beta, T::one())?.m;
    let z1 = DiskPoint::real(m)?;
    let z2 = DiskPoint::origin();
    let achieved_ratio = lipschitz_ratio(&f, &BlochParams::classical(), &z1, &z2)?;
    Ok(SharpnessWitness {
        epsilon,
        m_star,
        beta,
        z1: m,
        z2: T::zero(),
        achieved_ratio,
        target: cap - epsilon,
    })
}
