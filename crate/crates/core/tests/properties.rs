use proptest::prelude::*;

use supou::config::{BurnInSetting, RunConfig, Threads};
use supou::growth::{integral_test, theil_sen_slope, Normalizer, Side};
use supou::measures::{JumpSampler, LevyMeasureSpec, MixingMeasureSpec};
use supou::pathsim::{generate_atoms, Window};
use supou::tail::{eta_bar, eta_bar_quadrature};

fn levy_strategy() -> impl Strategy<Value = LevyMeasureSpec> {
    prop_oneof![
        (0.3f64..4.0).prop_map(|gamma| LevyMeasureSpec::Pareto { gamma }),
        (0.2f64..5.0).prop_map(|rate| LevyMeasureSpec::Exponential { rate }),
        (0.1f64..10.0).prop_map(|z0| LevyMeasureSpec::Dirac { z0 }),
        Just(LevyMeasureSpec::BoundedInfinite),
        Just(LevyMeasureSpec::SlowlyVarying),
    ]
}

fn pi_strategy() -> impl Strategy<Value = MixingMeasureSpec> {
    prop_oneof![
        (1.2f64..5.0).prop_map(|shape| MixingMeasureSpec::Gamma { shape }),
        (0.2f64..2.0, 0.1f64..3.0).prop_map(|(a, w)| MixingMeasureSpec::Uniform { a, b: a + w }),
        (0.1f64..5.0).prop_map(|x0| MixingMeasureSpec::PointMass { x0 }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eta_bar_nonincreasing(levy in levy_strategy(), r in 1e-3f64..1e3, k in 1.01f64..10.0) {
        let (a, b) = (eta_bar(&levy, r).unwrap(), eta_bar(&levy, k * r).unwrap());
        prop_assert!(b <= a * (1.0 + 1e-12) + 1e-300);
    }

    #[test]
    fn eta_bar_matches_quadrature(levy in levy_strategy(), r in 1e-2f64..1e2) {
        let closed = eta_bar(&levy, r).unwrap();
        let quad = eta_bar_quadrature(&levy, r).unwrap();
        prop_assert!((closed - quad).abs() <= 1e-6 * closed.abs() + 1e-300, "{closed} vs {quad}");
    }

    #[test]
    fn inverse_cdf_monotone(levy in levy_strategy(), u in 1e-9f64..1.0, v in 1e-9f64..1.0) {
        let sampler = JumpSampler::new(levy, 1e-3).unwrap();
        let (lo, hi) = if u < v { (u, v) } else { (v, u) };
        let (a, b) = (sampler.from_uniform(lo), sampler.from_uniform(hi));
        prop_assert!(a >= b, "tail quantile must decrease in u: {a} < {b}");
        prop_assert!(b > 0.0 && a <= levy.support_sup());
    }

    #[test]
    fn sup_dominates_grid_values(
        levy in levy_strategy(),
        pi in pi_strategy(),
        seed in any::<u64>(),
    ) {
        let eps = if levy.mass_above(0.0).is_finite() { 0.0 } else { 1e-2 };
        let path = generate_atoms(&levy, &pi, Window::new(5.0, 20.0).unwrap(), eps, seed, 0).unwrap();
        let times: Vec<f64> = (0..200).map(|i| 2.0 + 16.0 * i as f64 / 199.0).collect();
        let eval = path.evaluate(&times).unwrap();
        let sup = path.sup(2.0, 18.0).unwrap();
        for x in &eval.values {
            prop_assert!(*x >= 0.0);
            prop_assert!(*x <= sup + eval.pruning_error + 1e-12);
        }
    }

    #[test]
    fn normalizers_nondecreasing(a in 0.05f64..3.0, kappa in 0.1f64..5.0, s in 0.0f64..30.0, ds in 0.0f64..5.0) {
        for f in [Normalizer::Power { a }, Normalizer::Log { kappa }, Normalizer::LogOverLogLog { kappa }] {
            let t = f.domain_start() * s.exp();
            prop_assert!(f.eval(t * ds.exp()) >= f.eval(t) * (1.0 - 1e-12));
        }
    }

    #[test]
    fn pareto_sides_agree_off_boundary(gamma in 0.3f64..3.0, a in 0.1f64..3.0, k in 0.1f64..10.0) {
        prop_assume!((a * gamma - 1.0).abs() > 1e-9);
        let levy = LevyMeasureSpec::Pareto { gamma };
        let f = Normalizer::Power { a };
        let lower = integral_test(&levy, &f, k, Side::Lower).unwrap().verdict;
        let upper = integral_test(&levy, &f, k, Side::Upper).unwrap().verdict;
        prop_assert_eq!(lower, upper);
    }

    #[test]
    fn theil_sen_recovers_lines(slope in -5.0f64..5.0, icept in -5.0f64..5.0, n in 2usize..30) {
        let x: Vec<f64> = (0..n).map(|i| i as f64).collect();
        let y: Vec<f64> = x.iter().map(|v| slope * v + icept).collect();
        let got = theil_sen_slope(&x, &y).unwrap();
        prop_assert!((got - slope).abs() < 1e-9);
    }

    #[test]
    fn config_round_trip(
        levy in levy_strategy(),
        pi in pi_strategy(),
        horizon in 1.0f64..1e7,
        burn in prop::option::of(0.0f64..1e4),
        seed in 0..=i64::MAX as u64,
        threads in prop::option::of(1usize..64),
    ) {
        let mut cfg = RunConfig::new(levy, pi, horizon);
        cfg.seed = seed;
        cfg.window.burn_in = burn.map_or(BurnInSetting::Auto, BurnInSetting::Value);
        cfg.threads = threads.map_or(Threads::Auto, Threads::Count);
        let cfg = cfg.resolve();
        prop_assert_eq!(RunConfig::from_toml(&cfg.to_toml()).unwrap(), cfg);
    }
}
