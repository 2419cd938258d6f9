use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use twr_noma::analysis::{outage_closed, outage_xl, outage_xt, SignalKind};
use twr_noma::experiments::{random_config, LambdaRegime, Signal};
use twr_noma::hypoexp::Hypoexponential;
use twr_noma::montecarlo::mc_outage;
use twr_noma::oracle::{integrate_semi_infinite, quad_outage_xl, quad_outage_xt, QuadSpec};
use twr_noma::{PairRoles, SicMode, SystemConfig};

fn config_strategy() -> impl Strategy<Value = SystemConfig> {
    (any::<u64>(), prop::bool::ANY).prop_map(|(seed, near)| {
        let regime = if near {
            LambdaRegime::NearDegenerate
        } else {
            LambdaRegime::Distinct
        };
        random_config(&mut ChaCha8Rng::seed_from_u64(seed), regime)
    })
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_forms_agree_with_quadrature(cfg in config_strategy(),
                                          roles in prop::sample::select(vec![PairRoles::G1_TO_G2, PairRoles::G2_TO_G1])) {
        let spec = QuadSpec::default();
        let xl = outage_xl(&cfg, roles).unwrap().probability;
        let xt = outage_xt(&cfg, roles).unwrap().probability;
        prop_assert!(rel(xl, quad_outage_xl(&cfg, roles, &spec).unwrap()) < 1e-5);
        prop_assert!(rel(xt, quad_outage_xt(&cfg, roles, &spec).unwrap()) < 1e-5);
    }

    #[test]
    fn outage_does_not_increase_with_snr(cfg in config_strategy(), step in 0.1f64..10.0) {
        for signal in Signal::ALL {
            let lo = outage_closed(&cfg, signal.roles(), signal.kind()).unwrap().probability;
            let hi = outage_closed(&cfg.clone().with_rho_db(cfg.rho_db + step), signal.roles(), signal.kind())
                .unwrap()
                .probability;
            prop_assert!(hi <= lo * (1.0 + 1e-12), "{signal}: {lo} -> {hi}");
        }
    }

    #[test]
    fn perfect_sic_bounds_imperfect(cfg in config_strategy()) {
        for signal in Signal::ALL {
            let ip = outage_closed(&cfg.clone().with_sic(SicMode::Imperfect), signal.roles(), signal.kind()).unwrap();
            let p = outage_closed(&cfg.clone().with_sic(SicMode::Perfect), signal.roles(), signal.kind()).unwrap();
            prop_assert!(p.probability <= ip.probability * (1.0 + 1e-12));
        }
    }

    #[test]
    fn densities_normalize(rates in prop::collection::vec(1e-3f64..1e3, 1..=3), tie in prop::bool::ANY) {
        let mut rates = rates;
        if tie && rates.len() > 1 {
            rates[1] = rates[0];
        }
        let z = Hypoexponential::new(&rates).unwrap();
        let mass = integrate_semi_infinite(|x| z.pdf(x), 0.0, z.mean(), &QuadSpec::default()).unwrap();
        prop_assert!((mass - 1.0).abs() <= 1e-8, "{rates:?}: {mass}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn mc_is_reproducible_per_seed(seed in any::<u64>(), rho_db in 0.0f64..40.0) {
        let cfg = SystemConfig::table_one().with_rho_db(rho_db);
        let a = mc_outage(&cfg, PairRoles::G1_TO_G2, SignalKind::Weak, 40_000, seed).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
        let b = pool.install(|| mc_outage(&cfg, PairRoles::G1_TO_G2, SignalKind::Weak, 40_000, seed)).unwrap();
        prop_assert_eq!(a, b);
    }
}
