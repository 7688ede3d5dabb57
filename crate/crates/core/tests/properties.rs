use phasecov::channel::{apply_channel_bloch, compose_scalars, liouville_matrix};
use phasecov::ghz::qfim_ghz;
use phasecov::linalg::{bloch_to_density, density_to_bloch};
use phasecov::single::{compat_triple, qfim_single, ratio_single};
use phasecov::strategy::deltas;
use phasecov::two::ratio_two;
use phasecov::{ChannelParams, SingleProbe};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = ChannelParams> {
    (0.01f64..1.5, 0.05f64..40.0).prop_map(|(p, k)| ChannelParams::new(p, k).unwrap())
}

fn bloch() -> impl Strategy<Value = [f64; 3]> {
    (0.0f64..1.0, 0.0f64..std::f64::consts::PI, 0.0f64..6.3)
        .prop_map(|(r, t, a)| [r * t.sin() * a.cos(), r * t.sin() * a.sin(), r * t.cos()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn channel_contracts_bloch_vectors(p in params(), r0 in bloch()) {
        let r = apply_channel_bloch(r0, &p.scalars()).unwrap();
        let n0 = r0.iter().map(|x| x * x).sum::<f64>();
        let n = r.iter().map(|x| x * x).sum::<f64>();
        prop_assert!(n <= n0 + 1e-14);
    }

    #[test]
    fn bloch_map_agrees_with_liouville_action(p in params(), r0 in bloch()) {
        let s = p.scalars();
        let via_matrix = density_to_bloch(&liouville_matrix(&s).apply_density(&bloch_to_density(r0)));
        let direct = apply_channel_bloch(r0, &s).unwrap();
        for i in 0..3 {
            prop_assert!((via_matrix[i] - direct[i]).abs() < 1e-14);
        }
    }

    #[test]
    fn composition_matches_repeated_application(p in params(), k in 1u32..8) {
        let s = p.scalars();
        let composed = liouville_matrix(&compose_scalars(&s, k).unwrap());
        let repeated = liouville_matrix(&s).power(k);
        for i in 0..4 {
            for j in 0..4 {
                prop_assert!((composed.0[i][j] - repeated.0[i][j]).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn single_qubit_qfim_is_psd(p in params(), theta in 0.0f64..std::f64::consts::PI) {
        let f = qfim_single(&SingleProbe::new(theta, 0.0).unwrap(), p).unwrap();
        prop_assert!(f.is_psd(1e-12 * f.phi_phi.max(f.kappa_kappa)));
    }

    #[test]
    fn triple_product_is_odd_about_the_equator(p in params(), theta in 0.05f64..1.5) {
        let up = compat_triple(&SingleProbe::new(theta, 0.0).unwrap(), p);
        let down = compat_triple(&SingleProbe::new(std::f64::consts::PI - theta, 0.0).unwrap(), p);
        prop_assert!((up + down).abs() <= 1e-12 * (1.0 + up.abs()));
    }

    #[test]
    fn ghz_qfim_is_psd(p in params(), n in 1usize..300) {
        let f = qfim_ghz(n, p).unwrap();
        prop_assert!(f.phi_phi >= 0.0 && f.kappa_kappa >= 0.0);
        prop_assert!(f.is_psd(1e-9 * f.phi_phi.max(f.kappa_kappa)));
    }

    #[test]
    fn strategy_bounds(p in params(), n in 1usize..300) {
        let r = deltas(n, p).unwrap();
        prop_assert!(r.ratio <= 2.0 + 1e-9);
        prop_assert!(r.simultaneous >= 0.5 * r.individual * (1.0 - 1e-9));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn performance_ratios_are_bounded(phi in 0.05f64..0.7, kappa in 0.5f64..10.0) {
        let p = ChannelParams::new(phi, kappa).unwrap();
        let r1 = ratio_single(p);
        let r2 = ratio_two(p);
        prop_assert!(r1 > 1.0 && r1 <= 2.0 + 1e-9, "R1 = {}", r1);
        prop_assert!(r2 > 1.0 && r2 <= 2.0 + 1e-9, "R2 = {}", r2);
    }
}
