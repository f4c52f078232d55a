//! Cross-module invariants: conjugate symmetry, the functional equation on
//! a grid, zero-free-region sanity, argument-tracking bounds, and the
//! regime agreement between the bound families.

use rand::{Rng, SeedableRng};
use zmlab_core::bounds::{
    fm_series, fm_zero_sum, measure_max, thm1_bound, thm3_mult_bound, BoundConstants,
};
use zmlab_core::eval::SPoint;
use zmlab_core::zeros::{s_of_t, scan_zeros, zero_free_delta};
use zmlab_core::zeta::{chi, zeta, zeta_deriv};
use zmlab_core::Complex;

#[test]
fn conjugate_symmetry_on_random_points() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..100 {
        let sigma = rng.gen_range(-2.0..3.0);
        let t = rng.gen_range(-100.0..100.0);
        if (Complex::new(sigma, t) - Complex::new(1.0, 0.0)).norm() < 0.05 {
            continue;
        }
        let a = zeta(SPoint::new(sigma, t).unwrap(), 1e-12).unwrap().value;
        let b = zeta(SPoint::new(sigma, -t).unwrap(), 1e-12).unwrap().value;
        assert!(
            (a.conj() - b).norm() <= 1e-12 * (1.0 + a.norm()),
            "at ({sigma}, {t}): {a} vs conj {b}"
        );
    }
}

#[test]
fn functional_equation_residual_on_grid() {
    for i in 0..20 {
        let sigma = -1.0 + 3.0 * i as f64 / 19.0;
        for j in 0..20 {
            let t = 5.0 + 95.0 * j as f64 / 19.0;
            let s = SPoint::new(sigma, t).unwrap();
            let lhs = zeta(s, 1e-12).unwrap().value;
            let rhs = chi(s).unwrap().value
                * zeta(SPoint::new(1.0 - sigma, -t).unwrap(), 1e-12)
                    .unwrap()
                    .value;
            assert!(
                (lhs - rhs).norm() <= 1e-8,
                "residual {:e} at ({sigma}, {t})",
                (lhs - rhs).norm()
            );
        }
    }
}

#[test]
fn derivative_order_zero_consistency() {
    for (sigma, t) in [(0.8, 15.0), (2.0, 40.0), (1.5, 77.3)] {
        let s = SPoint::new(sigma, t).unwrap();
        let z = zeta(s, 1e-12).unwrap();
        let d = zeta_deriv(s, 0, 0.2, 1e-11).unwrap();
        assert!(
            (z.value - d.value).norm() <= z.abs_error + d.abs_error + 1e-11,
            "at ({sigma}, {t})"
        );
    }
}

#[test]
fn zero_free_region_sanity() {
    // 50 sample points right of the configured zero-free scale; the constant
    // 0.05 is a test configuration, not a claim about the true constant.
    for gamma in [50.0, 100.0, 500.0] {
        let delta = zero_free_delta(gamma, 0.05).unwrap();
        for i in 0..50 {
            let sigma = (1.0 - delta) + (3.0 - (1.0 - delta)) * i as f64 / 49.0;
            let v = zeta(SPoint::new(sigma, gamma).unwrap(), 1e-12)
                .unwrap()
                .value;
            assert!(
                v.norm() > 0.01,
                "|zeta({sigma} + {gamma}i)| = {} inside the sampled zero-free strip",
                v.norm()
            );
        }
    }
}

#[test]
fn argument_bound_shape_at_desk_scale() {
    // max |S(T)| over a [2, 100] grid stays below 2, consistent with the
    // logarithmic growth bound at desk scale.
    let zeros = scan_zeros(2.0, 100.0, 0.2).unwrap();
    let mut max_s: f64 = 0.0;
    for i in 0..=196 {
        let mut t = 2.0 + 98.0 * i as f64 / 196.0;
        // Step off any ordinate so the tracking is well-defined.
        while zeros.iter().any(|z| (z.gamma - t).abs() < 5e-3) {
            t += 7e-3;
        }
        let s = s_of_t(t).unwrap();
        max_s = max_s.max(s.abs());
    }
    assert!(max_s < 2.0, "max |S| = {max_s}");
}

#[test]
fn count_consistency_against_scan() {
    let zeros = scan_zeros(2.0, 100.0, 0.2).unwrap();
    for t in [20.0, 40.0, 60.0, 80.0, 100.0] {
        let counted = zeros.iter().filter(|z| z.gamma <= t).count() as f64;
        let s = s_of_t(t).unwrap();
        let formula = zmlab_core::zeros::smooth_count(t) + s;
        assert!((counted - formula).abs() < 0.1, "T = {t}");
    }
}

#[test]
fn bound_families_agree_in_regime() {
    // Near the 1-line both bound families scale like log gamma over
    // log log gamma; assert agreement within a configured factor of 10.
    let k = BoundConstants::default();
    for gamma in [500.0f64, 1000.0] {
        let edge = 1.0 - gamma.ln().powf(-0.5);
        let max_log = measure_max(gamma, 0.5, 0.5, 32).unwrap();
        for frac in [0.0, 0.5, 1.0] {
            let beta = edge + (0.95 - edge) * frac;
            let a = thm1_bound(beta, gamma, max_log, &k).unwrap();
            let b = thm3_mult_bound(beta, gamma, &k).unwrap();
            assert!(a.valid && b.valid);
            let ratio = a.value / b.value;
            assert!(
                (0.1..=10.0).contains(&ratio),
                "gamma {gamma}, beta {beta}: ratio {ratio}"
            );
        }
    }
}

#[test]
fn series_and_zero_expansion_agree_qualitatively() {
    // Near-zero expansion vs the truncated series, compared only against
    // the stated envelopes (the expansion is local, the series global).
    let zeros = scan_zeros(2.0, 25.0, 0.2).unwrap();
    let k = BoundConstants {
        o_envelope: 5.0,
        ..BoundConstants::default()
    };
    let s = SPoint::new(1.2, 14.1347).unwrap();
    for m in [2u32, 3] {
        let series = fm_series(1.2, 14.1347, m, 100_000).unwrap();
        let (expansion, envelope) = fm_zero_sum(s, m, &zeros, &k).unwrap();
        let gap = (series.value - expansion).norm();
        assert!(
            gap <= envelope + series.tail_envelope,
            "m = {m}: gap {gap} vs envelope {} + tail {}",
            envelope,
            series.tail_envelope
        );
    }
}
