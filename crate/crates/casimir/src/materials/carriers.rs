//! Drude augmentation of a base permittivity by photo-excited charge carriers.

use std::sync::Arc;

use super::{MaterialError, Permittivity};
use crate::constants::PhysicalConstants;

/// Density and effective masses of the photo-excited electron-hole plasma.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CarrierParameters {
    /// Carrier density of each species, m⁻³.
    pub n_density: f64,
    /// Electron effective mass as a fraction of the electron mass.
    pub m_eff_e: f64,
    /// Hole effective mass as a fraction of the electron mass.
    pub m_eff_h: f64,
}

impl CarrierParameters {
    pub fn new(n_density: f64, m_eff_e: f64, m_eff_h: f64) -> Result<Self, MaterialError> {
        for (name, v) in [
            ("n_density", n_density),
            ("m_eff_e", m_eff_e),
            ("m_eff_h", m_eff_h),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(MaterialError::Invariant(format!(
                    "carrier parameter {name} must be > 0, got {v}"
                )));
            }
        }
        Ok(Self {
            n_density,
            m_eff_e,
            m_eff_h,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CarrierSpecies {
    Electron,
    Hole,
}

/// Plasma frequency ω_p = √(n e² / (m* m_e ε₀)) in rad/s.
pub fn plasma_frequency(
    params: &CarrierParameters,
    species: CarrierSpecies,
    constants: &PhysicalConstants,
) -> f64 {
    let m_frac = match species {
        CarrierSpecies::Electron => params.m_eff_e,
        CarrierSpecies::Hole => params.m_eff_h,
    };
    let m_star = m_frac * constants.m_electron;
    (params.n_density * constants.e_charge * constants.e_charge
        / (m_star * constants.eps_vacuum))
        .sqrt()
}

/// Shipped defaults for laser-illuminated silicon: relaxation parameters,
/// effective masses and the carrier density per species.
pub mod silicon_photocarrier_defaults {
    /// Electron relaxation parameter, rad/s.
    pub const GAMMA_ELECTRON: f64 = 1.8e13;
    /// Hole relaxation parameter, rad/s.
    pub const GAMMA_HOLE: f64 = 5.0e12;
    /// Electron effective mass, fraction of the electron mass.
    pub const M_EFF_ELECTRON: f64 = 0.2588;
    /// Hole effective mass, fraction of the electron mass.
    pub const M_EFF_HOLE: f64 = 0.2063;
    /// Carrier density of each species under illumination, m⁻³.
    pub const CARRIER_DENSITY: f64 = 2.1e25;
}

/// Base permittivity plus two Drude terms:
///
/// ε(iξ) = ε_base(iξ) + ω_pe²/(ξ(ξ+γ_e)) + ω_ph²/(ξ(ξ+γ_h))
///
/// Diverges as 1/ξ at ξ → 0; `eval(0.0)` reports [`MaterialError::DivergesAtZero`]
/// so the Lifshitz layer applies its zero-frequency limit rule instead.
#[derive(Debug, Clone)]
pub struct CarrierAugmentedModel {
    base: Arc<Permittivity>,
    omega_p_e: f64,
    omega_p_h: f64,
    gamma_e: f64,
    gamma_h: f64,
}

impl CarrierAugmentedModel {
    pub fn new(
        base: Permittivity,
        omega_p_e: f64,
        omega_p_h: f64,
        gamma_e: f64,
        gamma_h: f64,
    ) -> Result<Self, MaterialError> {
        if matches!(base, Permittivity::IdealMetal) {
            return Err(MaterialError::Invariant(
                "carrier augmentation of an ideal metal is meaningless".into(),
            ));
        }
        for (name, v) in [
            ("omega_p_e", omega_p_e),
            ("omega_p_h", omega_p_h),
            ("gamma_e", gamma_e),
            ("gamma_h", gamma_h),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(MaterialError::Invariant(format!(
                    "carrier model parameter {name} must be > 0, got {v}"
                )));
            }
        }
        Ok(Self {
            base: base.shared(),
            omega_p_e,
            omega_p_h,
            gamma_e,
            gamma_h,
        })
    }

    /// Builds the model from a carrier density, deriving both plasma frequencies.
    pub fn from_carrier_parameters(
        base: Permittivity,
        params: &CarrierParameters,
        gamma_e: f64,
        gamma_h: f64,
        constants: &PhysicalConstants,
    ) -> Result<Self, MaterialError> {
        let omega_p_e = plasma_frequency(params, CarrierSpecies::Electron, constants);
        let omega_p_h = plasma_frequency(params, CarrierSpecies::Hole, constants);
        Self::new(base, omega_p_e, omega_p_h, gamma_e, gamma_h)
    }

    pub fn base(&self) -> &Permittivity {
        &self.base
    }

    pub fn omega_p_e(&self) -> f64 {
        self.omega_p_e
    }

    pub fn omega_p_h(&self) -> f64 {
        self.omega_p_h
    }

    pub fn gamma_e(&self) -> f64 {
        self.gamma_e
    }

    pub fn gamma_h(&self) -> f64 {
        self.gamma_h
    }

    /// The two Drude terms alone, for ξ > 0.
    pub fn drude_contribution(&self, xi: f64) -> Result<f64, MaterialError> {
        if xi < 0.0 || xi.is_nan() {
            return Err(MaterialError::NegativeFrequency(xi));
        }
        if xi == 0.0 {
            return Err(MaterialError::DivergesAtZero);
        }
        let e = self.omega_p_e * self.omega_p_e / (xi * (xi + self.gamma_e));
        let h = self.omega_p_h * self.omega_p_h / (xi * (xi + self.gamma_h));
        Ok(e + h)
    }

    pub fn eval(&self, xi: f64) -> Result<f64, MaterialError> {
        Ok(self.base.eval(xi)? + self.drude_contribution(xi)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::CODATA;
    use crate::materials::OscillatorModel;

    fn paper_params() -> CarrierParameters {
        CarrierParameters::new(
            silicon_photocarrier_defaults::CARRIER_DENSITY,
            silicon_photocarrier_defaults::M_EFF_ELECTRON,
            silicon_photocarrier_defaults::M_EFF_HOLE,
        )
        .unwrap()
    }

    fn lit_si() -> CarrierAugmentedModel {
        let dark = Permittivity::Oscillator(
            OscillatorModel::new(0.0, 10.66, 1.0e14, 6.6e15).unwrap(),
        );
        CarrierAugmentedModel::from_carrier_parameters(
            dark,
            &paper_params(),
            silicon_photocarrier_defaults::GAMMA_ELECTRON,
            silicon_photocarrier_defaults::GAMMA_HOLE,
            &CODATA,
        )
        .unwrap()
    }

    #[test]
    fn electron_plasma_frequency() {
        let wp = plasma_frequency(&paper_params(), CarrierSpecies::Electron, &CODATA);
        assert!((wp - 5.08e14).abs() / 5.08e14 < 5e-3, "wp = {wp:e}");
        // Frozen from the defining formula with CODATA constants.
        assert!((wp - 5.081817241e14).abs() / wp < 1e-9);
    }

    #[test]
    fn hole_plasma_frequency() {
        let wp = plasma_frequency(&paper_params(), CarrierSpecies::Hole, &CODATA);
        assert!((wp - 5.69e14).abs() / 5.69e14 < 5e-3, "wp = {wp:e}");
        assert!((wp - 5.691825334e14).abs() / wp < 1e-9);
    }

    #[test]
    fn plasma_frequency_scales_as_sqrt_density() {
        let p1 = paper_params();
        let p4 = CarrierParameters::new(4.0 * p1.n_density, p1.m_eff_e, p1.m_eff_h).unwrap();
        let w1 = plasma_frequency(&p1, CarrierSpecies::Electron, &CODATA);
        let w4 = plasma_frequency(&p4, CarrierSpecies::Electron, &CODATA);
        assert!((w4 / w1 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn drude_contribution_at_first_matsubara_frequency() {
        // Hand evaluation of the two Drude terms at xi = 2.468e14 rad/s.
        let add = lit_si().drude_contribution(2.468e14).unwrap();
        assert!((add - 9.164792265).abs() < 1e-3, "add = {add}");
    }

    #[test]
    fn diverges_at_zero() {
        assert!(matches!(
            lit_si().eval(0.0),
            Err(MaterialError::DivergesAtZero)
        ));
    }

    #[test]
    fn reduces_to_base_at_high_frequency() {
        let m = lit_si();
        let xi = 1e19;
        let base = m.base().eval(xi).unwrap();
        let full = m.eval(xi).unwrap();
        assert!(full > base);
        assert!((full - base) < 1e-8 * base);
    }

    #[test]
    fn always_exceeds_base_and_excess_decreases() {
        let m = lit_si();
        let mut prev_excess = f64::INFINITY;
        for i in 0..200 {
            let xi = 1e12 * 10f64.powf(i as f64 * 0.035);
            let excess = m.eval(xi).unwrap() - m.base().eval(xi).unwrap();
            assert!(excess > 0.0);
            assert!(excess < prev_excess, "excess not decreasing at xi = {xi}");
            prev_excess = excess;
        }
    }

    #[test]
    fn rejects_ideal_metal_base() {
        assert!(CarrierAugmentedModel::new(Permittivity::IdealMetal, 1.0, 1.0, 1.0, 1.0).is_err());
    }
}
