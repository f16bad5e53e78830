//! Invariants of parameter records, evaluation routes and transforms.

mod common;

use fraclap::gfun::{classify, invert_argument, reduce, shift_power, ConditionClass, GSpec};
use fraclap::oracle::{riesz_quadrature, Decay, PointwiseFn, QuadratureConfig};
use fraclap::specfun::{admissible_strip, default_lambda, meijer_g, meijer_g_contour, meijer_g_series};
use fraclap::transform::{fraclap_transform, riesz_transform};
use fraclap::Param;
use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const AB: &[ConditionClass] = &[ConditionClass::A, ConditionClass::B];

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        rng_seed: RngSeed::Fixed(0x6d65_696a),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn value(g: &GSpec, r: f64) -> f64 {
    meijer_g(g, r).unwrap().re()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn series_agrees_with_contour(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let g = common::random_spec(&mut rng, AB);
        let r = common::random_radius(&mut rng);
        let s = meijer_g_series(&g, r).unwrap();
        let (lo, hi) = admissible_strip(&g, r).unwrap();
        let k = meijer_g_contour(&g, r, default_lambda(lo, hi).unwrap()).unwrap();
        // off the support of a class-B function the series is exactly zero
        let scale = if s.value.norm() == 0.0 { 1.0 } else { s.value.norm() };
        prop_assert!((s.value - k.value).norm() <= 1e-8 * scale, "{g} at {r}: {} vs {}", s.value, k.value);
    }

    #[test]
    fn classification_is_consistent(seed in any::<u64>()) {
        let g = common::random_spec(&mut rng(seed), AB);
        let rep = classify(&g).unwrap();
        let budget = 2 * (g.m + g.n);
        let want = if g.p + g.q < budget { ConditionClass::A } else { ConditionClass::B };
        prop_assert_eq!(rep.class, Some(want));
        prop_assert_eq!(rep.has_contour(), rep.lambda_under.f64() < rep.lambda_over.f64());
        let sum = |v: &[Param]| v.iter().map(Param::re).sum::<f64>();
        prop_assert!((rep.nu.f64() - (sum(&g.a) - sum(&g.b))).abs() < 1e-12);
        prop_assert_eq!(rep.cond_s, -rep.b_under.f64() < 1.0 - rep.a_bar.f64());
    }
}

proptest! {
    #![proptest_config(config(60))]

    #[test]
    fn power_shift_multiplies_by_a_power(seed in any::<u64>(), num in -6i64..6) {
        let mut rng = rng(seed);
        let g = common::random_spec(&mut rng, AB);
        let r = common::random_radius(&mut rng);
        let c = Param::rat(num, 4);
        let lhs = value(&shift_power(&g, c), r);
        let rhs = r.powf(c.re()) * value(&g, r);
        prop_assert!(close(lhs, rhs, 1e-9) || (lhs - rhs).abs() < 1e-12, "{lhs} vs {rhs}");
    }

    #[test]
    fn inverting_the_argument(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let g = common::random_spec(&mut rng, AB);
        let r = common::random_radius(&mut rng);
        let inv = invert_argument(&g);
        prop_assert!(invert_argument(&inv).same(&g));
        let (a, b) = (value(&inv, r), value(&g, 1.0 / r));
        prop_assert!(close(a, b, 1e-9) || (a - b).abs() < 1e-12, "{a} vs {b}");
    }

    #[test]
    fn reduce_cancels_matching_pairs(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let g = common::random_spec(&mut rng, AB);
        // Gamma(1 - c - s) / Gamma(1 - c - s) padded into the outer blocks
        let c = Param::rat(rng.gen_range(-20..20), 13);
        let mut a1 = g.a_first().to_vec();
        a1.push(c);
        let mut b2 = g.b_second().to_vec();
        b2.push(c);
        let padded = GSpec::from_blocks(a1, g.a_second().to_vec(), g.b_first().to_vec(), b2, g.coeff.clone());
        let reduced = reduce(&padded);
        prop_assert!(reduced.same(&reduce(&g)), "{padded} -> {reduced}");
        let r = common::random_radius(&mut rng);
        let (a, b) = (value(&reduced, r), value(&g, r));
        prop_assert!(close(a, b, 1e-12) || (a - b).abs() < 1e-14);
        prop_assert!(reduce(&reduced).same(&reduced));
    }

    #[test]
    fn spec_json_round_trip(seed in any::<u64>()) {
        let g = common::random_spec(&mut rng(seed), AB);
        let back = GSpec::from_json(&g.to_json()).unwrap();
        prop_assert!(back.same(&g));
        for p in g.a.iter().chain(&g.b) {
            prop_assert!(Param::parse(&p.to_string()).unwrap().matches(p));
        }
    }
}

proptest! {
    #![proptest_config(config(30))]

    #[test]
    fn riesz_then_fraclap_is_identity(seed in any::<u64>()) {
        let (f, alpha) = common::admissible_pair(&mut rng(seed));
        let up = riesz_transform(&f, alpha).unwrap();
        let back = fraclap_transform(&up.output, alpha).unwrap();
        prop_assert!(back.output.profile.same(&f.profile), "{} -> {}", f.profile, back.output.profile);
    }
}

proptest! {
    #![proptest_config(config(8))]

    /// The Riesz quadrature is linear and rotation invariant on radial input.
    #[test]
    fn riesz_oracle_invariants(scale in 0.5f64..3.0, angle in 0.0f64..std::f64::consts::TAU, r in 0.1f64..1.8) {
        let cfg = QuadratureConfig::for_dimension(2);
        let f = PointwiseFn::radial(2, Decay::Compact(1.0), |t| (1.0 - t * t).max(0.0));
        let g = PointwiseFn::radial(2, Decay::Compact(1.0), move |t| scale * (1.0 - t * t).max(0.0));
        let x = [r, 0.0];
        let y = [r * angle.cos(), r * angle.sin()];
        let fx = riesz_quadrature(&f, &x, 1.0, &cfg).unwrap().re();
        let fy = riesz_quadrature(&f, &y, 1.0, &cfg).unwrap().re();
        let gx = riesz_quadrature(&g, &x, 1.0, &cfg).unwrap().re();
        prop_assert!(close(fx, fy, 1e-6), "{fx} vs {fy}");
        prop_assert!(close(gx, scale * fx, 1e-6), "{gx} vs {}", scale * fx);
    }
}

#[test]
fn admissible_pairs_cover_several_dimensions() {
    let mut dims = std::collections::BTreeSet::new();
    let mut r = rng(1);
    for _ in 0..30 {
        let (f, alpha) = common::admissible_pair(&mut r);
        assert!(alpha.re() > 0.0 && alpha.re() < f.d as f64);
        dims.insert(f.d);
    }
    assert!(dims.len() >= 2);
}
