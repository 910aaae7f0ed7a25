//! Cross-scenario invariants of the pressure: magnitude decay with
//! separation and sign agreement between sweeps and crossover results.

use casimir::analysis::{find_crossover, sweep};
use casimir::lifshitz::{pressure, LayerSystem, QuadratureSettings};
use casimir::materials::MaterialDb;
use casimir::presets::{find_preset, preset_system, Light, DEFAULT_TEMPERATURE};

fn all_systems() -> Vec<(String, LayerSystem, bool)> {
    let db = MaterialDb::builtin();
    let mut out = Vec::new();
    for preset in ["au-ethanol-si", "si-ethanol-si", "al2o3-ethanol-si"] {
        for light in [Light::Off, Light::On] {
            let sys = preset_system(
                &db,
                find_preset(preset).unwrap(),
                light,
                DEFAULT_TEMPERATURE,
                2.1e25,
            )
            .unwrap();
            let crosses = matches!(
                (preset, light),
                ("au-ethanol-si", Light::Off)
                    | ("si-ethanol-si", Light::On)
                    | ("al2o3-ethanol-si", Light::On)
            );
            out.push((format!("{preset}/{light:?}"), sys, crosses));
        }
    }
    out
}

fn assert_magnitude_decreasing(label: &str, sys: &LayerSystem, a_lo: f64, a_hi: f64, n: usize) {
    let settings = QuadratureSettings::default();
    let mut prev = f64::INFINITY;
    for i in 0..n {
        let a = a_lo * (a_hi / a_lo).powf(i as f64 / (n - 1) as f64);
        let p = pressure(sys, a, &settings).unwrap().pressure.abs();
        assert!(
            p < prev,
            "{label}: |P| not decreasing at a = {a:e} ({p:e} after {prev:e})"
        );
        prev = p;
    }
}

/// |P| decays with separation on each sign branch. Across a sign change the
/// magnitude necessarily dips through zero, so crossover scenarios are
/// checked on both sides of the transition separately.
#[test]
fn magnitude_decreases_with_separation() {
    let settings = QuadratureSettings::default();
    for (label, sys, crosses) in all_systems() {
        if crosses {
            let a_star = find_crossover(&sys, 50e-9, 500e-9, 1e-10, &settings)
                .unwrap()
                .unwrap()
                .separation;
            assert_magnitude_decreasing(&label, &sys, 50e-9, 0.9 * a_star, 8);
            assert_magnitude_decreasing(&label, &sys, 1.2 * a_star, 1e-6, 8);
        } else {
            assert_magnitude_decreasing(&label, &sys, 50e-9, 1e-6, 20);
        }
    }
}

/// Sweep signs match the crossover record on both sides of its bracket.
#[test]
fn sweep_signs_agree_with_crossover_result() {
    let settings = QuadratureSettings::default();
    for (label, sys, crosses) in all_systems() {
        if !crosses {
            continue;
        }
        let r = find_crossover(&sys, 50e-9, 500e-9, 1e-10, &settings)
            .unwrap()
            .unwrap();
        let s = sweep(&sys, 50e-9, 500e-9, 24, &settings).unwrap();
        for point in &s.points {
            let p = point.as_ref().unwrap();
            let sign = if p.pressure < 0.0 { -1 } else { 1 };
            if p.separation < r.bracket.0 {
                assert_eq!(sign, r.sign_below, "{label} at a = {:e}", p.separation);
            } else if p.separation > r.bracket.1 {
                assert_eq!(sign, r.sign_above, "{label} at a = {:e}", p.separation);
            }
        }
    }
}
