//! Randomized invariants.

use proptest::prelude::*;
use selfrecip::cli::parse_complex;
use selfrecip::eigenchain::{chain_value, evaluate_big_e, evaluate_e, ChainCoordinate};
use selfrecip::grid::{l2_norm, GridFunction, RadialGrid};
use selfrecip::mellin::{mellin_forward, mellin_inverse};
use selfrecip::special::{kappa, phase, StripPoint};
use selfrecip::{Complex64, Family, Sign};
use std::f64::consts::PI;

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![Just(Family::Cosine), Just(Family::Sine)]
}

fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Plus), Just(Sign::Minus)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn kappa_product_is_one(f in family(), re in 0.01f64..0.99, im in -30.0f64..30.0) {
        let k = kappa(f, StripPoint::new(Complex64::new(re, im)).unwrap()).unwrap();
        prop_assert!((k.kappa_a * k.kappa_one_minus_a - 1.0).norm() < 1e-12);
        prop_assert!((k.sqrt_kappa_a * k.sqrt_kappa_a - k.kappa_a).norm() < 1e-12 * k.kappa_a.norm());
    }

    #[test]
    fn phases_are_unimodular_and_conjugate_symmetric(f in family(), tau in -80.0f64..80.0) {
        let p = phase(f, tau).value;
        let q = phase(f, -tau).value;
        prop_assert!((p.norm() - 1.0).abs() < 1e-14);
        prop_assert!((p - q.conj()).norm() < 1e-13);
    }

    #[test]
    fn chains_are_real_and_bounded(
        f in family(), s in sign(), log_t in -20.0f64..20.0, tau in 0.0f64..60.0
    ) {
        let t = log_t.exp();
        let v = chain_value(f, s, t, tau);
        let bound = 1.0 / (PI * t).sqrt();
        prop_assert!(v.im.abs() <= 1e-13 * bound);
        prop_assert!(v.re.abs() <= bound * (1.0 + 1e-13));
        if tau > 0.0 {
            let e = evaluate_e(ChainCoordinate::new(f, s, tau).unwrap(), t).unwrap();
            prop_assert!((e - v.re).abs() <= 1e-14 * bound);
        }
    }

    #[test]
    fn big_e_reflects_under_a_to_one_minus_a(
        f in family(), s in sign(), re in 0.05f64..0.95, im in -10.0f64..10.0, log_t in -5.0f64..5.0
    ) {
        // E±(t, 1-a) = ±E±(t, a): the two power terms swap places
        let t = log_t.exp();
        let a = StripPoint::new(Complex64::new(re, im)).unwrap();
        let b = StripPoint::new(Complex64::new(1.0 - re, -im)).unwrap();
        let ea = evaluate_big_e(f, s, a, t).unwrap();
        let eb = evaluate_big_e(f, s, b, t).unwrap();
        prop_assert!((eb - ea * s.value()).norm() <= 1e-12 * ea.norm().max(1e-300));
    }

    #[test]
    fn complex_flags_round_trip(re in -1e3f64..1e3, im in -1e3f64..1e3) {
        let text = if im < 0.0 { format!("{re}{im}i") } else { format!("{re}+{im}i") };
        prop_assert_eq!(parse_complex(&text).unwrap(), Complex64::new(re, im));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mellin_round_trip_on_gaussian_mixtures(
        w in prop::collection::vec((-1.0f64..1.0, 0.2f64..3.0, 0.0f64..2.0), 1..4)
    ) {
        let grid = RadialGrid::from_log(-40.0, 50.0 / 2047.0, 2048).unwrap();
        let x = GridFunction::from_real_fn(grid, |t| {
            w.iter().map(|&(c, s, p)| c * t.powf(p) * (-(t / s).powi(2)).exp()).sum()
        });
        prop_assume!(l2_norm(&x) > 1e-3);
        let back = mellin_inverse(&mellin_forward(&x).unwrap(), &grid).unwrap();
        prop_assert!(l2_norm(&back.sub(&x).unwrap()) <= 1e-10 * l2_norm(&x));
    }
}
