//! Property tests against the public API.

use dkp_core::lieb::{self, LiebParams};
use dkp_core::spectrum::{
    closed_form_dkpo, solve_spectrum, OscillatorParams, QuantumNumbers, SolverOptions,
};
use dkp_core::states::{build_state, charge_density, normalize};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn admissible_levels_lie_outside_the_mass_gap(
        m in 0.2f64..5.0,
        w in -2.0f64..2.0,
        wt in -2.0f64..2.0,
        n in 0u32..4,
        l in -3i32..=3,
    ) {
        prop_assume!(w.abs() > 1e-3 || wt.abs() > 1e-3);
        let p = OscillatorParams::new(m, w, wt).unwrap();
        let q = QuantumNumbers::new(n, l);
        for lvl in solve_spectrum(&p, &q, &SolverOptions::default()).unwrap() {
            prop_assert!(lvl.is_admissible());
            prop_assert!((lvl.energy.abs() - m).abs() > 1e-9 * m, "{lvl:?}");
        }
    }

    #[test]
    fn oscillator_l0_spectrum_is_mirror_symmetric(m in 0.2f64..5.0, w in -2.0f64..2.0, n in 0u32..4) {
        prop_assume!(w.abs() > 1e-3);
        let p = OscillatorParams::new(m, w, 0.0).unwrap();
        let q = QuantumNumbers::new(n, 0);
        let pair = closed_form_dkpo(&p, &q, &SolverOptions::default()).unwrap();
        prop_assert!((pair.plus.energy + pair.minus.energy).abs() < 1e-12 * pair.plus.energy.abs());
        let e: Vec<f64> = solve_spectrum(&p, &q, &SolverOptions::default())
            .unwrap()
            .iter()
            .map(|l| l.energy)
            .collect();
        for x in &e {
            prop_assert!(e.iter().any(|y| (x + y).abs() < 1e-9 * x.abs()));
        }
    }

    #[test]
    fn charge_density_scales_with_norm_squared(
        w in 0.1f64..1.5,
        wt in 0.1f64..1.5,
        x in -2.0f64..2.0,
        y in -2.0f64..2.0,
        k in 0.5f64..3.0,
    ) {
        let p = OscillatorParams::new(1.0, w, wt).unwrap();
        let q = QuantumNumbers::new(1, 0);
        let lvl = solve_spectrum(&p, &q, &SolverOptions::default()).unwrap()[0];
        let s = build_state(&p, &q, &lvl).unwrap();
        let a = charge_density(&s, x, y).unwrap();
        let b = charge_density(&s.with_norm(k * s.norm), x, y).unwrap();
        // J0 is a difference of bilinears, so rounding tracks the component
        // magnitudes rather than the (possibly cancelled) result.
        let tol = 1e-10 * (b.abs() + k * k * a.abs()) + 1e-15 * k * k;
        prop_assert!((b - k * k * a).abs() <= tol, "a = {a:e}, b = {b:e}");
    }

    #[test]
    fn lieb_bands_are_flat_and_symmetric(
        v in 0.1f64..3.0,
        m in -2.0f64..2.0,
        k1 in -5.0f64..5.0,
        k2 in -5.0f64..5.0,
    ) {
        let lp = LiebParams::new(v, m, 1.0).unwrap();
        let [lo, mid, hi] = lieb::dispersion(k1, k2, &lp);
        let scale = hi.abs().max(1.0);
        prop_assert!(mid.abs() < 1e-12 * scale);
        prop_assert!((lo + hi).abs() < 1e-12 * scale);
    }

    #[test]
    fn pi_odd_decreases_on_the_real_region(s in 0.0f64..3.9, ds in 0.01f64..0.1) {
        let a = lieb::pi_odd(s, 1.0).unwrap().value;
        let b = lieb::pi_odd(s + ds, 1.0).unwrap().value;
        prop_assert!(b < a);
    }
}

#[test]
fn normalized_states_carry_unit_charge() {
    let p = OscillatorParams::new(1.5, 0.4, -0.3).unwrap();
    for (n, l) in [(0, 0), (1, -1), (2, 2)] {
        let q = QuantumNumbers::new(n, l);
        for lvl in solve_spectrum(&p, &q, &SolverOptions::default()).unwrap() {
            let s = build_state(&p, &q, &lvl).unwrap();
            let once = normalize(&s).unwrap();
            let twice = normalize(&once.state).unwrap();
            assert!(
                (twice.charge_before.charge.abs() - 1.0).abs() < 1e-8,
                "{q:?} {lvl:?}"
            );
        }
    }
}
