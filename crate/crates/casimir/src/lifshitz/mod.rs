//! Finite-temperature Casimir pressure between parallel plates in a medium.
//!
//! The pressure is a primed Matsubara sum (the l = 0 term carries weight ½)
//! over an integral in the dimensionless transverse variable y:
//!
//! P(a,T) = −k_B T/(8π a³) Σ′_l ∫_{√ε₀ζ_l}^∞ y² dy
//!     [ (e^y r_TM;1⁻¹ r_TM;2⁻¹ − 1)⁻¹ + (e^y r_TE;1⁻¹ r_TE;2⁻¹ − 1)⁻¹ ]
//!
//! with ζ_l = 4π k_B T a l/(ħc) and all permittivities evaluated at the
//! Matsubara frequency ξ_l = 2π k_B T l/ħ. Negative pressure means attraction.
//!
//! At l = 0 the TE coefficient vanishes for every plate with finite static
//! permittivity and for Drude-divergent ones; the TM coefficient is the
//! static contrast for finite plates and +1 for Drude-divergent plates and
//! ideal metals (the analytic ζ → 0 limits of the coefficients).

mod quadrature;
mod reflection;

pub use quadrature::{adaptive_simpson, QuadratureOutcome};
pub use reflection::{reflection_te, reflection_te_static, reflection_tm, reflection_tm_static};

use thiserror::Error;

use crate::constants::PhysicalConstants;
use crate::materials::{MaterialError, Permittivity, StaticResponse};

#[derive(Debug, Error)]
pub enum LifshitzError {
    #[error("invalid layer system: {0}")]
    InvalidSystem(String),
    #[error("invalid quadrature settings: {0}")]
    InvalidSettings(String),
    #[error("separation must be positive and finite, got {0} m")]
    InvalidSeparation(f64),
    #[error(
        "y-integral for Matsubara term l = {l} did not converge within \
         {max_subdivisions} subdivisions (partial value {partial:e})"
    )]
    IntegralNotConverged {
        l: u32,
        max_subdivisions: u32,
        partial: f64,
    },
    #[error(
        "Matsubara sum at a = {separation:e} m not converged after {terms} terms \
         (partial pressure {partial_pa:e} Pa)"
    )]
    SumNotConverged {
        separation: f64,
        terms: u32,
        partial_pa: f64,
    },
    #[error(
        "negative square-root argument {arg:e} in reflection coefficient \
         (eps_plate = {eps_plate}, eps_medium = {eps_medium}, zeta = {zeta}, y = {y})"
    )]
    NegativeSqrtArgument {
        arg: f64,
        eps_plate: f64,
        eps_medium: f64,
        zeta: f64,
        y: f64,
    },
    #[error(transparent)]
    Material(#[from] MaterialError),
}

/// Two plates and the gap medium held at a common temperature.
#[derive(Debug, Clone)]
pub struct LayerSystem {
    plate1: Permittivity,
    medium: Permittivity,
    plate2: Permittivity,
    temperature: f64,
}

impl LayerSystem {
    /// The medium must have a finite static permittivity (a liquid or vacuum,
    /// not a metal); temperature in kelvin must be positive.
    pub fn new(
        plate1: Permittivity,
        medium: Permittivity,
        plate2: Permittivity,
        temperature: f64,
    ) -> Result<Self, LifshitzError> {
        if !(temperature.is_finite() && temperature > 0.0) {
            return Err(LifshitzError::InvalidSystem(format!(
                "temperature must be > 0 K, got {temperature}"
            )));
        }
        if !matches!(medium.static_response(), StaticResponse::Dielectric(_)) {
            return Err(LifshitzError::InvalidSystem(
                "gap medium must have a finite static permittivity".into(),
            ));
        }
        Ok(Self {
            plate1,
            medium,
            plate2,
            temperature,
        })
    }

    pub fn plate1(&self) -> &Permittivity {
        &self.plate1
    }

    pub fn medium(&self) -> &Permittivity {
        &self.medium
    }

    pub fn plate2(&self) -> &Permittivity {
        &self.plate2
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    /// The same system with the plates exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            plate1: self.plate2.clone(),
            medium: self.medium.clone(),
            plate2: self.plate1.clone(),
            temperature: self.temperature,
        }
    }

    /// The same system with plate 2 replaced.
    pub fn with_plate2(&self, plate2: Permittivity) -> Self {
        Self {
            plate1: self.plate1.clone(),
            medium: self.medium.clone(),
            plate2,
            temperature: self.temperature,
        }
    }
}

/// Truncation and tolerance knobs for the Matsubara sum and the y-integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSettings {
    /// Target relative accuracy of the pressure.
    pub rel_tol: f64,
    /// Hard cap on the number of Matsubara terms; reaching it without the
    /// tail criterion is a convergence error.
    pub max_matsubara: u32,
    /// The y-integral runs from the lower limit to lower limit + this margin;
    /// the integrand decays as e^−y, so the discarded tail is < e^−margin.
    pub y_upper_margin: f64,
    /// Subdivision depth limit of the adaptive Simpson rule.
    pub max_subdivisions: u32,
}

impl QuadratureSettings {
    pub fn new(
        rel_tol: f64,
        max_matsubara: u32,
        y_upper_margin: f64,
        max_subdivisions: u32,
    ) -> Result<Self, LifshitzError> {
        if !(rel_tol > 0.0 && rel_tol <= 1e-2) {
            return Err(LifshitzError::InvalidSettings(format!(
                "rel_tol must lie in (0, 1e-2], got {rel_tol}"
            )));
        }
        if max_matsubara < 1 {
            return Err(LifshitzError::InvalidSettings(
                "max_matsubara must be >= 1".into(),
            ));
        }
        if !(y_upper_margin >= 20.0 && y_upper_margin.is_finite()) {
            return Err(LifshitzError::InvalidSettings(format!(
                "y_upper_margin must be >= 20, got {y_upper_margin}"
            )));
        }
        if max_subdivisions == 0 {
            return Err(LifshitzError::InvalidSettings(
                "max_subdivisions must be >= 1".into(),
            ));
        }
        Ok(Self {
            rel_tol,
            max_matsubara,
            y_upper_margin,
            max_subdivisions,
        })
    }

    /// Same settings with a different pressure tolerance.
    pub fn with_rel_tol(self, rel_tol: f64) -> Result<Self, LifshitzError> {
        Self::new(rel_tol, self.max_matsubara, self.y_upper_margin, self.max_subdivisions)
    }
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self {
            rel_tol: 1e-6,
            max_matsubara: 5000,
            y_upper_margin: 60.0,
            max_subdivisions: 30,
        }
    }
}

/// Pressure at one separation with convergence metadata.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PressurePoint {
    /// Plate separation, m.
    pub separation: f64,
    /// Casimir pressure, Pa; negative = attraction, positive = repulsion.
    pub pressure: f64,
    /// Number of Matsubara frequencies evaluated (including l = 0).
    pub terms_used: u32,
    /// Bound on truncation plus quadrature error, Pa.
    pub est_error: f64,
}

/// Dimensionless Matsubara frequency ζ_l = 4π k_B T a l / (ħ c).
pub fn matsubara_zeta(
    l: u32,
    separation: f64,
    temperature: f64,
    constants: &PhysicalConstants,
) -> f64 {
    4.0 * std::f64::consts::PI * constants.k_b * temperature * separation * f64::from(l)
        / (constants.hbar * constants.c_light)
}

/// One polarization's contribution to the integrand:
/// 1/(e^y ρ⁻¹ − 1) = ρ/(e^y − ρ) for a product ρ of two reflection coefficients.
#[inline]
fn mode_sum(rho: f64, y: f64) -> f64 {
    if rho == 0.0 {
        return 0.0;
    }
    // e^y − ρ via expm1 keeps precision near y = 0 where e^y − 1 ≈ y.
    rho / (y.exp_m1() + (1.0 - rho))
}

/// Value of one Matsubara term's y-integral with its quadrature error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatsubaraTerm {
    pub value: f64,
    pub quad_error: f64,
}

/// The y-integral of Eq-level term l (dimensionless). The ½ weight of the
/// primed sum at l = 0 is applied by [`pressure`], not here.
pub fn matsubara_term(
    system: &LayerSystem,
    separation: f64,
    l: u32,
    settings: &QuadratureSettings,
) -> Result<MatsubaraTerm, LifshitzError> {
    let constants = PhysicalConstants::codata();
    // Two orders below the Matsubara stopping threshold keeps the pressure
    // error budget truncation-dominated.
    let quad_rel_tol = 0.01 * settings.rel_tol;

    let outcome = if l == 0 {
        let e0 = match system.medium.static_response() {
            StaticResponse::Dielectric(e) => e,
            _ => unreachable!("validated at construction"),
        };
        let rho_tm = reflection_tm_static(system.plate1.static_response(), e0)
            * reflection_tm_static(system.plate2.static_response(), e0);
        let rho_te = reflection_te_static(system.plate1.static_response())
            * reflection_te_static(system.plate2.static_response());
        let f = |y: f64| {
            if y == 0.0 {
                return 0.0;
            }
            y * y * (mode_sum(rho_tm, y) + mode_sum(rho_te, y))
        };
        adaptive_simpson(f, 0.0, settings.y_upper_margin, quad_rel_tol, settings.max_subdivisions)
    } else {
        let xi = 2.0 * std::f64::consts::PI * constants.k_b * system.temperature * f64::from(l)
            / constants.hbar;
        let zeta = matsubara_zeta(l, separation, system.temperature, &constants);
        let e0 = system.medium.eval(xi)?;
        let e1 = system.plate1.eval(xi)?;
        let e2 = system.plate2.eval(xi)?;
        let lower = e0.sqrt() * zeta;
        let f = |y: f64| {
            let rho_tm =
                reflection::tm_kernel(e1, e0, zeta, y) * reflection::tm_kernel(e2, e0, zeta, y);
            let rho_te =
                reflection::te_kernel(e1, e0, zeta, y) * reflection::te_kernel(e2, e0, zeta, y);
            y * y * (mode_sum(rho_tm, y) + mode_sum(rho_te, y))
        };
        adaptive_simpson(
            f,
            lower,
            lower + settings.y_upper_margin,
            quad_rel_tol,
            settings.max_subdivisions,
        )
    };

    if !outcome.converged {
        return Err(LifshitzError::IntegralNotConverged {
            l,
            max_subdivisions: settings.max_subdivisions,
            partial: outcome.value,
        });
    }
    Ok(MatsubaraTerm {
        value: outcome.value,
        quad_error: outcome.est_error,
    })
}

/// Casimir pressure at one separation.
///
/// The Matsubara sum stops once three consecutive terms each contribute less
/// than `rel_tol/10` of the accumulated sum; hitting `max_matsubara` first is
/// a convergence error. `est_error` bounds the truncated tail (geometric
/// extrapolation of the final term, tripled) plus accumulated quadrature error.
pub fn pressure(
    system: &LayerSystem,
    separation: f64,
    settings: &QuadratureSettings,
) -> Result<PressurePoint, LifshitzError> {
    if !(separation.is_finite() && separation > 0.0) {
        return Err(LifshitzError::InvalidSeparation(separation));
    }
    let constants = PhysicalConstants::codata();
    let prefactor = -constants.k_b * system.temperature
        / (8.0 * std::f64::consts::PI * separation.powi(3));

    let t0 = matsubara_term(system, separation, 0, settings)?;
    let mut acc = 0.5 * t0.value;
    let mut quad_error = 0.5 * t0.quad_error;
    let mut terms_used = 1u32;
    let mut small_streak = 0u32;
    let mut prev_abs = f64::NAN;
    let mut last_abs = 0.5 * t0.value.abs();
    let mut converged = false;

    for l in 1..=settings.max_matsubara {
        let t = matsubara_term(system, separation, l, settings)?;
        acc += t.value;
        quad_error += t.quad_error;
        terms_used = l + 1;
        prev_abs = last_abs;
        last_abs = t.value.abs();
        if last_abs <= 0.1 * settings.rel_tol * acc.abs() {
            small_streak += 1;
            if small_streak >= 3 {
                converged = true;
                break;
            }
        } else {
            small_streak = 0;
        }
    }

    if !converged {
        return Err(LifshitzError::SumNotConverged {
            separation,
            terms: terms_used,
            partial_pa: prefactor * acc,
        });
    }

    // Geometric tail bound. Term decay flattens toward the asymptotic rate
    // e^{-zeta_1} once the medium permittivity approaches 1, so the measured
    // ratio of the final pair is floored there; the factor 3 absorbs the
    // residual polynomial growth of the y-integral moments.
    let zeta1 = matsubara_zeta(1, separation, system.temperature, &constants);
    let measured = if prev_abs > 0.0 && last_abs.is_finite() {
        last_abs / prev_abs
    } else {
        0.0
    };
    let r_eff = measured.max((-zeta1).exp()).min(0.999_999);
    let tail = last_abs * r_eff / (1.0 - r_eff);
    // The Simpson |S2 - S1|/15 proxy can under-report the error of the
    // extrapolated panel value by a small factor, hence the 4.
    let est_error = prefactor.abs() * (3.0 * tail + 4.0 * quad_error);

    Ok(PressurePoint {
        separation,
        pressure: prefactor * acc,
        terms_used,
        est_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::materials::OscillatorModel;

    fn ethanol() -> Permittivity {
        Permittivity::Oscillator(OscillatorModel::new(23.84, 0.852, 6.600e14, 1.140e16).unwrap())
    }

    fn dark_si() -> Permittivity {
        Permittivity::Oscillator(OscillatorModel::new(0.0, 10.66, 1.0e14, 6.6e15).unwrap())
    }

    /// Li₃(x) by direct series; the l = 0 integral equals 2·Li₃(ρ) per
    /// polarization, an oracle independent of the quadrature path.
    fn polylog3(x: f64) -> f64 {
        assert!(x.abs() <= 1.0);
        let mut sum = 0.0;
        let mut pow = 1.0;
        for k in 1..200_000u64 {
            pow *= x;
            let term = pow / (k * k * k) as f64;
            sum += term;
            if term.abs() < 1e-18 * sum.abs().max(1e-3) {
                break;
            }
        }
        sum
    }

    #[test]
    fn zeta_is_linear_in_l_a_t() {
        let c = PhysicalConstants::codata();
        let z = matsubara_zeta(1, 1e-6, 300.0, &c);
        assert!((z - 1.6463324471978948).abs() < 1e-12, "zeta = {z}");
        assert_eq!(matsubara_zeta(0, 1e-6, 300.0, &c), 0.0);
        let z2 = matsubara_zeta(1, 2e-6, 300.0, &c);
        assert!((z2 / z - 2.0).abs() < 1e-14);
        let z10 = matsubara_zeta(10, 1e-6, 300.0, &c);
        assert!((z10 / z - 10.0).abs() < 1e-14);
    }

    #[test]
    fn identical_media_terms_vanish() {
        let sys = LayerSystem::new(ethanol(), ethanol(), ethanol(), 300.0).unwrap();
        let settings = QuadratureSettings::default();
        for l in [0, 1, 5, 50] {
            let t = matsubara_term(&sys, 2e-7, l, &settings).unwrap();
            assert_eq!(t.value, 0.0, "l = {l}");
        }
        let p = pressure(&sys, 2e-7, &settings).unwrap();
        assert_eq!(p.pressure, 0.0);
    }

    #[test]
    fn ideal_metal_zero_term_is_four_zeta_three() {
        let sys = LayerSystem::new(
            Permittivity::IdealMetal,
            Permittivity::vacuum(),
            Permittivity::IdealMetal,
            10.0,
        )
        .unwrap();
        let t = matsubara_term(&sys, 1e-6, 0, &QuadratureSettings::default()).unwrap();
        // TM and TE each integrate to 2 zeta(3).
        assert!((t.value - 4.808227612638377).abs() < 1e-7, "term = {}", t.value);
    }

    #[test]
    fn zero_term_matches_polylog_oracle() {
        // Dark Si facing ethanol on both sides: rho = r^2, TE absent.
        let sys = LayerSystem::new(dark_si(), ethanol(), dark_si(), 300.0).unwrap();
        let t = matsubara_term(&sys, 1e-7, 0, &QuadratureSettings::default()).unwrap();
        let r = (11.66 - 25.692) / (11.66 + 25.692);
        let oracle = 2.0 * polylog3(r * r);
        assert!((t.value - oracle).abs() < 1e-9 * oracle.abs().max(1.0));

        // Au-like Drude plate against dark Si: rho = +1 * r < 0, term negative.
        let db = crate::materials::MaterialDb::builtin();
        let au = db.resolve("au").unwrap();
        let sys = LayerSystem::new(au, ethanol(), dark_si(), 300.0).unwrap();
        let t = matsubara_term(&sys, 1e-7, 0, &QuadratureSettings::default()).unwrap();
        let oracle = 2.0 * polylog3(r);
        assert!(t.value < 0.0, "repulsive zero term expected");
        assert!((t.value - oracle).abs() < 1e-9 * oracle.abs());
    }

    #[test]
    fn ideal_metal_vacuum_matches_zero_kelvin_form() {
        let sys = LayerSystem::new(
            Permittivity::IdealMetal,
            Permittivity::vacuum(),
            Permittivity::IdealMetal,
            10.0,
        )
        .unwrap();
        let c = PhysicalConstants::codata();
        for a in [0.5e-6, 1.0e-6] {
            let p = pressure(&sys, a, &QuadratureSettings::default()).unwrap();
            let exact = -std::f64::consts::PI.powi(2) * c.hbar * c.c_light / (240.0 * a.powi(4));
            let rel = (p.pressure - exact).abs() / exact.abs();
            assert!(rel < 0.01, "a = {a}: rel = {rel}, P = {}", p.pressure);
            assert!(p.pressure < 0.0);
            assert!(p.terms_used > 100);
        }
    }

    #[test]
    fn dark_si_in_ethanol_attracts_everywhere() {
        let sys = LayerSystem::new(dark_si(), ethanol(), dark_si(), 300.0).unwrap();
        for a in [5e-8, 1.5e-7, 5e-7] {
            let p = pressure(&sys, a, &QuadratureSettings::default()).unwrap();
            assert!(p.pressure < 0.0, "a = {a}: P = {}", p.pressure);
        }
    }

    #[test]
    fn plate_swap_is_exact() {
        let db = crate::materials::MaterialDb::builtin();
        let sys = LayerSystem::new(
            db.resolve("au").unwrap(),
            ethanol(),
            dark_si(),
            300.0,
        )
        .unwrap();
        let settings = QuadratureSettings::default();
        for a in [8e-8, 3e-7] {
            let p = pressure(&sys, a, &settings).unwrap();
            let q = pressure(&sys.swapped(), a, &settings).unwrap();
            assert_eq!(p.pressure, q.pressure);
            assert_eq!(p.est_error, q.est_error);
        }
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        assert!(LayerSystem::new(ethanol(), Permittivity::IdealMetal, ethanol(), 300.0).is_err());
        assert!(LayerSystem::new(ethanol(), ethanol(), ethanol(), 0.0).is_err());
        let sys = LayerSystem::new(dark_si(), ethanol(), dark_si(), 300.0).unwrap();
        assert!(matches!(
            pressure(&sys, 0.0, &QuadratureSettings::default()),
            Err(LifshitzError::InvalidSeparation(_))
        ));
        assert!(QuadratureSettings::new(0.0, 5000, 60.0, 30).is_err());
        assert!(QuadratureSettings::new(1e-6, 5000, 10.0, 30).is_err());
        assert!(QuadratureSettings::new(0.1, 5000, 60.0, 30).is_err());
    }

    #[test]
    fn sum_truncation_failure_carries_partial_value() {
        let sys = LayerSystem::new(dark_si(), ethanol(), dark_si(), 300.0).unwrap();
        let starved = QuadratureSettings::new(1e-6, 3, 60.0, 30).unwrap();
        match pressure(&sys, 1e-7, &starved) {
            Err(LifshitzError::SumNotConverged { partial_pa, terms, .. }) => {
                assert!(partial_pa.is_finite() && partial_pa != 0.0);
                assert_eq!(terms, 4);
            }
            other => panic!("expected SumNotConverged, got {other:?}"),
        }
    }

    #[test]
    fn halving_rel_tol_moves_less_than_estimated_error() {
        let sys = LayerSystem::new(dark_si(), ethanol(), dark_si(), 300.0).unwrap();
        let loose = QuadratureSettings::default().with_rel_tol(1e-5).unwrap();
        let tight = loose.with_rel_tol(5e-6).unwrap();
        for a in [7e-8, 2e-7] {
            let p1 = pressure(&sys, a, &loose).unwrap();
            let p2 = pressure(&sys, a, &tight).unwrap();
            assert!(
                (p1.pressure - p2.pressure).abs() <= p1.est_error,
                "a = {a}: diff = {}, est = {}",
                (p1.pressure - p2.pressure).abs(),
                p1.est_error
            );
        }
    }
}
