use proptest::prelude::*;

use strapdown_attitude::algorithm::Algorithm;
use strapdown_attitude::baselines::{classic_three_sample, classic_two_sample};
use strapdown_attitude::fit::{fit_cheb_rates, fit_normal_rates, GyroBatch, SampleKind};
use strapdown_attitude::poly::cheb::cheb_mul;
use strapdown_attitude::poly::{ChebSeries, Poly};
use strapdown_attitude::sweep::{csv_string, parse_csv, SweepRow, Truncation};
use strapdown_attitude::{attitude_error, quat_from_rodrigues, quat_from_rotvec, Quaternion, StopRule, Vec3};

fn vec3(scale: f64) -> impl Strategy<Value = Vec3> {
    (-scale..scale, -scale..scale, -scale..scale).prop_map(|(x, y, z)| Vec3::new(x, y, z))
}

fn unit_quat() -> impl Strategy<Value = Quaternion> {
    (-1.0..1.0f64, vec3(1.0))
        .prop_filter("non-degenerate", |(s, v)| s * s + v.norm_squared() > 1e-3)
        .prop_map(|(s, v)| Quaternion::new(s, v).normalize())
}

fn rotate(q: Quaternion, v: Vec3) -> Vec3 {
    (q * v.pure() * q.conj()).v
}

proptest! {
    #[test]
    fn product_is_associative_and_norm_multiplicative(a in unit_quat(), b in unit_quat(), c in unit_quat()) {
        prop_assert!(((a * b) * c - a * (b * c)).norm() < 1e-14);
        prop_assert!(((a * b).norm() - 1.0).abs() < 1e-14);
        prop_assert!((a * a.conj() - Quaternion::IDENTITY).norm() < 1e-15);
    }

    #[test]
    fn rotation_vector_and_rodrigues_agree(axis in vec3(1.0), angle in 0.0..3.0f64) {
        prop_assume!(axis.norm() > 1e-3);
        let e = axis / axis.norm();
        let from_rv = quat_from_rotvec(e * angle);
        let from_g = quat_from_rodrigues(e * (2.0 * (angle / 2.0).tan()));
        prop_assert!((from_rv - from_g).norm() < 1e-13);
        prop_assert!((attitude_error(Quaternion::IDENTITY, from_rv) - 2.0 * (angle / 2.0).sin()).abs() < 1e-14);
        prop_assert!((rotate(from_rv, e) - e).norm() < 1e-14);
    }

    #[test]
    fn classic_algorithms_are_rotation_equivariant(
        q in unit_quat(), d1 in vec3(0.05), d2 in vec3(0.05), d3 in vec3(0.05),
    ) {
        let two = classic_two_sample(rotate(q, d1), rotate(q, d2));
        prop_assert!((two - rotate(q, classic_two_sample(d1, d2))).norm() < 1e-15);
        let three = classic_three_sample(rotate(q, d1), rotate(q, d2), rotate(q, d3));
        prop_assert!((three - rotate(q, classic_three_sample(d1, d2, d3))).norm() < 1e-15);
    }

    #[test]
    fn chebyshev_product_matches_pointwise(
        a in prop::collection::vec(-1.0..1.0f64, 1..12),
        b in prop::collection::vec(-1.0..1.0f64, 1..12),
        tau in -1.0..1.0f64,
    ) {
        let (a, b) = (ChebSeries::new(a, 1.0), ChebSeries::new(b, 1.0));
        let ab = cheb_mul(&a, &b, |x, y| x * y);
        prop_assert!((ab.eval(tau).unwrap() - a.eval(tau).unwrap() * b.eval(tau).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn fits_reproduce_polynomial_rates(coeffs in prop::collection::vec(vec3(50.0), 1..6), extra in 0usize..4) {
        let truth = Poly::new(coeffs.clone());
        let t = 1e-3;
        let n = coeffs.len() + extra;
        let samples = (1..=n).map(|k| truth.eval(k as f64 * t)).collect();
        let batch = GyroBatch::new(SampleKind::Rate, samples, t).unwrap();
        let normal = fit_normal_rates(&batch, n - 1).unwrap();
        let cheb = fit_cheb_rates(&batch, n - 1).unwrap();
        let scale = coeffs.iter().map(|c| c.norm()).fold(1.0, f64::max);
        for k in 0..=20 {
            let s = batch.span() * k as f64 / 20.0;
            prop_assert!((normal.eval(s) - truth.eval(s)).norm() < 1e-9 * scale);
            prop_assert!((cheb.eval_time(s).unwrap() - truth.eval(s)).norm() < 1e-9 * scale);
        }
    }

    #[test]
    fn csv_round_trips(
        algo in prop::sample::select(Algorithm::ALL.to_vec()),
        fc in 0.1..500.0f64,
        samples in 1usize..40,
        m_t in 0usize..80,
        iters in 0.0..50.0f64,
        drift in 0.0..1.0f64,
        seed in any::<u64>(),
        wall in prop::option::of(0.0..1e4f64),
    ) {
        let row = SweepRow {
            algorithm: algo, fc_hz: fc, fs_hz: 1000.0, samples, degree: samples - 1, m_t,
            stop: StopRule::dpc(1e-14).to_string(), iters_mean: iters, drift_rad: drift, seed, wall_ms: wall,
        };
        let text = csv_string(std::slice::from_ref(&row));
        prop_assert_eq!(parse_csv(&text).unwrap(), vec![row]);
    }

    #[test]
    fn rules_round_trip(k in 1usize..100, tol in 1e-16..1e-2f64, cap in 1usize..200) {
        for rule in [StopRule::Iterations(k), StopRule::Dpc { tol, cap }, StopRule::Hot { tol, cap }] {
            prop_assert_eq!(rule.to_string().parse::<StopRule>().unwrap(), rule);
        }
        for t in [Truncation::Fixed(k), Truncation::Relative(k), Truncation::Default] {
            prop_assert_eq!(t.to_string().parse::<Truncation>().unwrap(), t);
        }
    }
}
