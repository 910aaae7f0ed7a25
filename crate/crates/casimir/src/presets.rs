//! Named three-layer scenario presets bundling the shipped materials.

use crate::analysis::{AnalysisError, Scenario};
use crate::constants::PhysicalConstants;
use crate::lifshitz::{LayerSystem, LifshitzError};
use crate::materials::{
    silicon_photocarrier_defaults as si_defaults, CarrierAugmentedModel, CarrierParameters,
    MaterialDb, MaterialError, Permittivity,
};

/// Default temperature when none is requested, K.
pub const DEFAULT_TEMPERATURE: f64 = 300.0;

/// Whether plate 2 carries photo-excited carriers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Light {
    Off,
    On,
}

/// A (plate1, medium, plate2) triple of material names. Under illumination
/// plate 2 is wrapped in the carrier-augmented model.
#[derive(Debug, Clone, Copy)]
pub struct Preset {
    pub name: &'static str,
    pub plate1: &'static str,
    pub medium: &'static str,
    pub plate2: &'static str,
}

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "au-ethanol-si",
        plate1: "au",
        medium: "ethanol",
        plate2: "si",
    },
    Preset {
        name: "si-ethanol-si",
        plate1: "si",
        medium: "ethanol",
        plate2: "si",
    },
    Preset {
        name: "al2o3-ethanol-si",
        plate1: "al2o3",
        medium: "ethanol",
        plate2: "si",
    },
];

pub fn find_preset(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name)
}

/// Wraps a dark plate in the photo-carrier Drude model with the shipped
/// effective masses and relaxation parameters.
pub fn illuminate(
    dark_plate: Permittivity,
    carrier_density_m3: f64,
) -> Result<Permittivity, MaterialError> {
    let params = CarrierParameters::new(
        carrier_density_m3,
        si_defaults::M_EFF_ELECTRON,
        si_defaults::M_EFF_HOLE,
    )?;
    Ok(Permittivity::Carriers(
        CarrierAugmentedModel::from_carrier_parameters(
            dark_plate,
            &params,
            si_defaults::GAMMA_ELECTRON,
            si_defaults::GAMMA_HOLE,
            &PhysicalConstants::codata(),
        )?,
    ))
}

/// Builds the layer system for a preset, resolving materials from `db`.
pub fn preset_system(
    db: &MaterialDb,
    preset: &Preset,
    light: Light,
    temperature: f64,
    carrier_density_m3: f64,
) -> Result<LayerSystem, LifshitzError> {
    let plate1 = db.resolve(preset.plate1)?;
    let medium = db.resolve(preset.medium)?;
    let dark_plate2 = db.resolve(preset.plate2)?;
    let plate2 = match light {
        Light::Off => dark_plate2,
        Light::On => illuminate(dark_plate2, carrier_density_m3)?,
    };
    LayerSystem::new(plate1, medium, plate2, temperature)
}

/// Builds the dark/lit scenario pair for a preset.
pub fn preset_scenario(
    db: &MaterialDb,
    preset: &Preset,
    temperature: f64,
    carrier_density_m3: f64,
    a_min: f64,
    a_max: f64,
    points: usize,
) -> Result<Scenario, AnalysisError> {
    let dark = preset_system(db, preset, Light::Off, temperature, carrier_density_m3)?;
    let dark_plate2 = db.resolve(preset.plate2).map_err(LifshitzError::from)?;
    let lit_plate2 =
        illuminate(dark_plate2, carrier_density_m3).map_err(LifshitzError::from)?;
    Scenario::new(preset.name, dark, lit_plate2, a_min, a_max, points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::materials::StaticResponse;

    #[test]
    fn all_presets_resolve_against_builtin_db() {
        let db = MaterialDb::builtin();
        for preset in PRESETS {
            for light in [Light::Off, Light::On] {
                let sys = preset_system(
                    &db,
                    preset,
                    light,
                    DEFAULT_TEMPERATURE,
                    si_defaults::CARRIER_DENSITY,
                )
                .unwrap();
                assert_eq!(sys.temperature(), 300.0);
                if light == Light::On {
                    assert_eq!(sys.plate2().static_response(), StaticResponse::DrudeMetal);
                }
            }
        }
        assert!(find_preset("au-ethanol-si").is_some());
        assert!(find_preset("nope").is_none());
    }

    #[test]
    fn illumination_adds_the_paper_drude_terms() {
        let db = MaterialDb::builtin();
        let dark = db.resolve("si").unwrap();
        let lit = illuminate(dark.clone(), si_defaults::CARRIER_DENSITY).unwrap();
        // Same augmentation as the shipped si_lit material.
        let shipped = db.resolve("si_lit").unwrap();
        for xi in [2.468e14, 1e15, 1e16] {
            let a = lit.eval(xi).unwrap();
            let b = shipped.eval(xi).unwrap();
            assert!((a - b).abs() < 1e-12 * b, "xi = {xi}");
        }
    }

    #[test]
    fn carrier_density_override_scales_the_augmentation() {
        let db = MaterialDb::builtin();
        let dark = db.resolve("si").unwrap();
        let lit1 = illuminate(dark.clone(), 2.1e25).unwrap();
        let lit4 = illuminate(dark.clone(), 8.4e25).unwrap();
        let xi = 1e15;
        let base = dark.eval(xi).unwrap();
        let add1 = lit1.eval(xi).unwrap() - base;
        let add4 = lit4.eval(xi).unwrap() - base;
        assert!((add4 / add1 - 4.0).abs() < 1e-10);
    }
}
