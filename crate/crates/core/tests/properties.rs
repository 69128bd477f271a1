use blochkit::analytic::AnalyticMap;
use blochkit::compop::{compose, schwarz_pick_at};
use blochkit::extremal::{a0, m_root, psi};
use blochkit::metrics::{rho, rho_at, sigma};
use blochkit::norms::{bloch_functional_at, power_mean_inequality_check};
use blochkit::{BlochParams, Complex64 as C, DiskPoint, HarmonicMap};
use proptest::prelude::*;

fn disk_point(max_r: f64) -> impl Strategy<Value = C> {
    (0.0..1.0f64, 0.0..std::f64::consts::TAU).prop_map(move |(u, t)| C::from_polar(max_r * u.sqrt(), t))
}

fn coeffs(max_len: usize) -> impl Strategy<Value = Vec<C>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64).prop_map(|(a, b)| C::new(a, b)), 1..=max_len)
}

fn analytic_map() -> impl Strategy<Value = AnalyticMap<f64>> {
    prop_oneof![
        coeffs(13).prop_map(AnalyticMap::polynomial),
        disk_point(0.95).prop_map(|a| AnalyticMap::mobius(DiskPoint::new(a).unwrap())),
        (prop::collection::vec(disk_point(0.9), 1..4), 0.0..6.3f64).prop_map(|(f, t)| {
            let pts = f.into_iter().map(|a| DiskPoint::new(a).unwrap()).collect();
            AnalyticMap::blaschke(pts, C::from_polar(1.0, t)).unwrap()
        }),
        (disk_point(0.9), 0.5..4.0f64)
            .prop_map(|(b, p)| AnalyticMap::power_kernel(DiskPoint::new(b).unwrap(), 1.0 / p).unwrap()),
        (0.05..1.0f64).prop_map(|b| AnalyticMap::extremal_antiderivative(b).unwrap()),
        Just(AnalyticMap::quadratic_extremal()),
    ]
}

fn symbol() -> impl Strategy<Value = AnalyticMap<f64>> {
    prop_oneof![
        disk_point(0.95).prop_map(|a| AnalyticMap::mobius(DiskPoint::new(a).unwrap())),
        (prop::collection::vec(disk_point(0.9), 1..4), 0.0..6.3f64).prop_map(|(f, t)| {
            let pts = f.into_iter().map(|a| DiskPoint::new(a).unwrap()).collect();
            AnalyticMap::blaschke(pts, C::from_polar(1.0, t)).unwrap()
        }),
        disk_point(0.999).prop_map(|c| AnalyticMap::scaled_identity(c).unwrap()),
    ]
}

fn harmonic_polynomial() -> impl Strategy<Value = HarmonicMap<f64>> {
    (coeffs(13), coeffs(13)).prop_map(|(h, mut g)| {
        g[0] = C::new(0.0, 0.0);
        HarmonicMap::new(AnalyticMap::polynomial(h), AnalyticMap::polynomial(g)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn derivative_matches_finite_difference(f in analytic_map(), z in disk_point(0.999 - 1e-6)) {
        let h = 1e-6;
        for dir in [C::new(1.0, 0.0), C::new(0.0, 1.0)] {
            let fd = (f.eval_at(z + dir * h) - f.eval_at(z - dir * h)) / (dir * 2.0 * h);
            let d = f.deriv_at(z);
            prop_assert!((fd - d).norm() <= 1e-5 * d.norm().max(1e-3), "fd {fd} vs {d}");
        }
    }

    #[test]
    fn lambda_nonnegative_and_shift_invariant(f in harmonic_polynomial(), z in disk_point(0.99), c in disk_point(5.0)) {
        let l = f.lambda_at(z);
        prop_assert!(l >= 0.0);
        let shifted = HarmonicMap::new(f.h().shifted(c), f.g().clone()).unwrap();
        prop_assert!((shifted.lambda_at(z) - l).abs() <= 1e-13 * l.max(1.0));
    }

    #[test]
    fn mobius_invariance_of_rho(a in disk_point(0.99), z in disk_point(0.99), w in disk_point(0.99)) {
        let phi = AnalyticMap::mobius(DiskPoint::new(a).unwrap());
        let lhs = rho_at(phi.eval_at(z), phi.eval_at(w));
        prop_assert!((lhs - rho_at(z, w)).abs() < 1e-12);
    }

    #[test]
    fn mobius_is_an_involution(a in disk_point(0.99), z in disk_point(0.99)) {
        let phi = AnalyticMap::mobius(DiskPoint::new(a).unwrap());
        prop_assert!((phi.eval_at(phi.eval_at(z)) - z).norm() < 1e-12);
    }

    #[test]
    fn mobius_derivative_identity(a in disk_point(0.99), w in disk_point(0.99)) {
        let phi = AnalyticMap::mobius(DiskPoint::new(a).unwrap());
        let fw = phi.eval_at(w);
        let want = (1.0 - fw.norm_sqr()) / (1.0 - w.norm_sqr());
        prop_assert!((phi.deriv_at(w).norm() - want).abs() <= 1e-12 * want.max(1.0));
    }

    #[test]
    fn sigma_dominates_rho(z in disk_point(0.999), w in disk_point(0.999)) {
        let (z, w) = (DiskPoint::new(z).unwrap(), DiskPoint::new(w).unwrap());
        let (r, s) = (rho(&z, &w), sigma(&z, &w));
        if r == 0.0 {
            prop_assert_eq!(s, 0.0);
        } else {
            prop_assert!(s > r);
        }
    }

    #[test]
    fn classical_functional_is_mobius_invariant(f in harmonic_polynomial(), a in disk_point(0.9), z in disk_point(0.95)) {
        let p = BlochParams::classical();
        let phi = AnalyticMap::mobius(DiskPoint::new(a).unwrap());
        let composed = compose(&f, &phi).unwrap();
        let lhs = bloch_functional_at(&composed, &p, z);
        let rhs = bloch_functional_at(&f, &p, phi.eval_at(z));
        prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs.max(1.0));
    }

    #[test]
    fn chain_rule_for_lambda(f in harmonic_polynomial(), phi in symbol(), z in disk_point(0.95)) {
        let composed = compose(&f, &phi).unwrap();
        let want = f.lambda_at(phi.eval_at(z)) * phi.deriv_at(z).norm();
        prop_assert!((composed.lambda_at(z) - want).abs() <= 1e-10 * want.max(1.0));
    }

    #[test]
    fn schwarz_pick_bounded_by_one(phi in symbol(), z in disk_point(0.99)) {
        let q = schwarz_pick_at(&phi, z);
        prop_assert!(q <= 1.0 + 1e-10);
        if phi.is_automorphism() {
            prop_assert!((q - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn m_root_inverts_psi(alpha in 0.1..6.0f64, x in 0.0..1.0f64) {
        let x = x * a0(alpha);
        let r0 = psi(x, alpha);
        prop_assume!(r0 > 0.0);
        let s = m_root(r0, alpha).unwrap();
        prop_assert!(s.residual <= 1e-12);
        prop_assert!(s.m >= 0.0 && s.m <= s.a0);
        prop_assert!((psi(s.m, alpha) - r0).abs() <= 1e-12);
    }

    #[test]
    fn power_mean_inequality(a in 0.0..100.0f64, b in 0.0..100.0f64, tau in 0.01..10.0f64) {
        prop_assert!(power_mean_inequality_check(a, b, tau));
    }
}

#[test]
fn symbols_stay_inside_the_disk_on_a_dense_grid() {
    let symbols = [
        AnalyticMap::mobius(DiskPoint::from_parts(0.7, -0.2).unwrap()),
        AnalyticMap::blaschke(
            vec![DiskPoint::from_parts(0.5, 0.5).unwrap(), DiskPoint::real(-0.9).unwrap()],
            C::new(0.0, 1.0),
        )
        .unwrap(),
        AnalyticMap::scaled_identity(C::new(0.6, -0.7)).unwrap(),
    ];
    for phi in &symbols {
        for i in 0..100 {
            for k in 0..100 {
                let z = C::from_polar((i as f64 + 0.5) / 100.0, k as f64 * std::f64::consts::TAU / 100.0);
                assert!(phi.eval_at(z).norm() < 1.0);
            }
        }
    }
}

#[test]
fn psi_is_unimodal_with_peak_at_a0() {
    for alpha in [0.25, 0.5, 1.0, 2.0, 5.0] {
        let top = a0(alpha);
        let up: Vec<f64> = (0..=1000).map(|i| psi(top * i as f64 / 1000.0, alpha)).collect();
        assert!(up.windows(2).all(|w| w[1] > w[0]), "alpha {alpha}");
        let down: Vec<f64> = (0..=1000).map(|i| psi(top + (1.0 - top) * i as f64 / 1000.0, alpha)).collect();
        assert!(down.windows(2).all(|w| w[1] < w[0]), "alpha {alpha}");
    }
}

#[test]
fn m_root_is_monotone_in_r0() {
    for alpha in [0.5, 1.0, 3.0] {
        let roots: Vec<f64> = (1..=100).map(|i| m_root(i as f64 / 100.0, alpha).unwrap().m).collect();
        assert!(roots.windows(2).all(|w| w[1] > w[0]));
    }
}

#[test]
fn power_mean_inequality_on_many_triples() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100_000 {
        let a: f64 = rng.gen_range(0.0..10.0);
        let b: f64 = rng.gen_range(0.0..10.0);
        let tau: f64 = rng.gen_range(0.01..8.0);
        assert!(power_mean_inequality_check(a, b, tau));
    }
}
