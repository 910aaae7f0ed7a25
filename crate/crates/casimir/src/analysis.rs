//! Scenario-level computations: pressure sweeps, attraction/repulsion
//! crossover location, light-on/off modulation and the quasi-static
//! actuation estimate.

use rayon::prelude::*;
use thiserror::Error;

use crate::lifshitz::{pressure, LayerSystem, LifshitzError, PressurePoint, QuadratureSettings};
use crate::materials::Permittivity;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("invalid separation range: {0}")]
    InvalidRange(String),
    #[error("pressure computation failed at a = {separation:e} m: {source}")]
    Pressure {
        separation: f64,
        #[source]
        source: LifshitzError,
    },
    #[error(transparent)]
    Lifshitz(#[from] LifshitzError),
}

/// A dark/lit pair of layer systems differing only in plate 2.
#[derive(Debug, Clone)]
pub struct Scenario {
    name: String,
    dark: LayerSystem,
    lit: LayerSystem,
    a_min: f64,
    a_max: f64,
    points: usize,
}

impl Scenario {
    /// The lit system is derived from the dark one by substituting plate 2,
    /// so the two can differ in nothing else.
    pub fn new(
        name: impl Into<String>,
        dark: LayerSystem,
        lit_plate2: Permittivity,
        a_min: f64,
        a_max: f64,
        points: usize,
    ) -> Result<Self, AnalysisError> {
        validate_range(a_min, a_max)?;
        if points < 2 {
            return Err(AnalysisError::InvalidRange(format!(
                "a sweep needs at least 2 points, got {points}"
            )));
        }
        let lit = dark.with_plate2(lit_plate2);
        Ok(Self {
            name: name.into(),
            dark,
            lit,
            a_min,
            a_max,
            points,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dark_system(&self) -> &LayerSystem {
        &self.dark
    }

    pub fn lit_system(&self) -> &LayerSystem {
        &self.lit
    }

    pub fn a_range(&self) -> (f64, f64) {
        (self.a_min, self.a_max)
    }

    pub fn points(&self) -> usize {
        self.points
    }
}

fn validate_range(a_min: f64, a_max: f64) -> Result<(), AnalysisError> {
    if !(a_min.is_finite() && a_max.is_finite() && 0.0 < a_min && a_min < a_max) {
        return Err(AnalysisError::InvalidRange(format!(
            "need 0 < a_min < a_max, got [{a_min}, {a_max}]"
        )));
    }
    Ok(())
}

/// Log-spaced grid with exact endpoints.
fn log_grid(a_min: f64, a_max: f64, points: usize) -> Vec<f64> {
    let (lo, hi) = (a_min.ln(), a_max.ln());
    (0..points)
        .map(|i| {
            if i == 0 {
                a_min
            } else if i == points - 1 {
                a_max
            } else {
                (lo + (hi - lo) * i as f64 / (points - 1) as f64).exp()
            }
        })
        .collect()
}

/// One separation of a sweep: the pressure record or the per-point failure.
pub type SweepOutcome = Result<PressurePoint, SweepFailure>;

#[derive(Debug, Error)]
#[error("a = {separation:e} m: {source}")]
pub struct SweepFailure {
    pub separation: f64,
    #[source]
    pub source: LifshitzError,
}

/// Pressure-versus-separation records on a log-spaced grid, in increasing a.
#[derive(Debug)]
pub struct PressureSweep {
    pub points: Vec<SweepOutcome>,
}

impl PressureSweep {
    pub fn failed_count(&self) -> usize {
        self.points.iter().filter(|p| p.is_err()).count()
    }
}

/// Evaluates the pressure on `points` log-spaced separations. Individual
/// convergence failures are recorded in place; they do not abort the sweep.
/// Points are evaluated in parallel and returned in increasing a.
pub fn sweep(
    system: &LayerSystem,
    a_min: f64,
    a_max: f64,
    points: usize,
    settings: &QuadratureSettings,
) -> Result<PressureSweep, AnalysisError> {
    validate_range(a_min, a_max)?;
    if points < 2 {
        return Err(AnalysisError::InvalidRange(format!(
            "a sweep needs at least 2 points, got {points}"
        )));
    }
    let grid = log_grid(a_min, a_max, points);
    let results: Vec<SweepOutcome> = grid
        .par_iter()
        .map(|&a| {
            pressure(system, a, settings).map_err(|source| SweepFailure {
                separation: a,
                source,
            })
        })
        .collect();
    Ok(PressureSweep { points: results })
}

/// A bracketed sign change of the pressure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossoverResult {
    /// Midpoint of the final bracket, m.
    pub separation: f64,
    /// Bracket [a_lo, a_hi] with opposite pressure signs at the ends.
    pub bracket: (f64, f64),
    /// Sign of the pressure below the crossover: −1 attraction, +1 repulsion.
    pub sign_below: i8,
    /// Sign of the pressure above the crossover.
    pub sign_above: i8,
    /// Number of sign changes seen on the coarse scan; the result brackets
    /// the smallest-a one.
    pub sign_changes: usize,
}

const COARSE_SCAN_POINTS: usize = 64;

/// Scans [a_min, a_max] on a 64-point log grid for a pressure sign change and
/// bisects the first bracket down to width `tol_m`. Returns `None` when the
/// sign is uniform over the range.
pub fn find_crossover(
    system: &LayerSystem,
    a_min: f64,
    a_max: f64,
    tol_m: f64,
    settings: &QuadratureSettings,
) -> Result<Option<CrossoverResult>, AnalysisError> {
    validate_range(a_min, a_max)?;
    if !(tol_m.is_finite() && tol_m > 0.0) {
        return Err(AnalysisError::InvalidRange(format!(
            "crossover tolerance must be > 0, got {tol_m}"
        )));
    }
    let grid = log_grid(a_min, a_max, COARSE_SCAN_POINTS);
    let pressures: Vec<f64> = grid
        .par_iter()
        .map(|&a| {
            pressure(system, a, settings)
                .map(|p| p.pressure)
                .map_err(|source| AnalysisError::Pressure {
                    separation: a,
                    source,
                })
        })
        .collect::<Result<_, _>>()?;

    let mut brackets = Vec::new();
    for i in 1..grid.len() {
        if pressures[i - 1] != 0.0
            && pressures[i] != 0.0
            && pressures[i - 1].signum() != pressures[i].signum()
        {
            brackets.push(i);
        }
    }
    let Some(&first) = brackets.first() else {
        return Ok(None);
    };

    let (mut lo, mut hi) = (grid[first - 1], grid[first]);
    let (mut p_lo, mut p_hi) = (pressures[first - 1], pressures[first]);
    while hi - lo > tol_m {
        let mid = 0.5 * (lo + hi);
        let p_mid = pressure(system, mid, settings)
            .map_err(|source| AnalysisError::Pressure {
                separation: mid,
                source,
            })?
            .pressure;
        if p_mid.signum() == p_lo.signum() {
            lo = mid;
            p_lo = p_mid;
        } else {
            hi = mid;
            p_hi = p_mid;
        }
    }

    Ok(Some(CrossoverResult {
        separation: 0.5 * (lo + hi),
        bracket: (lo, hi),
        sign_below: if p_lo < 0.0 { -1 } else { 1 },
        sign_above: if p_hi < 0.0 { -1 } else { 1 },
        sign_changes: brackets.len(),
    }))
}

/// Dark and lit pressures at one separation and their difference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulationDepth {
    pub p_dark: PressurePoint,
    pub p_lit: PressurePoint,
    /// p_lit − p_dark, Pa.
    pub delta: f64,
}

pub fn modulation_depth(
    scenario: &Scenario,
    separation: f64,
    settings: &QuadratureSettings,
) -> Result<ModulationDepth, AnalysisError> {
    let (a_min, a_max) = scenario.a_range();
    if !(separation >= a_min && separation <= a_max) {
        return Err(AnalysisError::InvalidRange(format!(
            "separation {separation:e} m outside scenario range [{a_min:e}, {a_max:e}]"
        )));
    }
    let p_dark = pressure(scenario.dark_system(), separation, settings).map_err(|source| {
        AnalysisError::Pressure {
            separation,
            source,
        }
    })?;
    let p_lit = pressure(scenario.lit_system(), separation, settings).map_err(|source| {
        AnalysisError::Pressure {
            separation,
            source,
        }
    })?;
    Ok(ModulationDepth {
        p_dark,
        p_lit,
        delta: p_lit.pressure - p_dark.pressure,
    })
}

/// Equilibrium plate displacement of a spring-mounted plate:
/// x = P·A / k (signed; follows the sign of the pressure).
pub fn quasi_static_displacement(pressure_pa: f64, plate_area: f64, spring_constant: f64) -> f64 {
    assert!(
        plate_area > 0.0 && spring_constant > 0.0,
        "plate area and spring constant must be positive"
    );
    pressure_pa * plate_area / spring_constant
}
