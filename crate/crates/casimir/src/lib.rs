//! Finite-temperature Casimir pressure between parallel plates separated by a
//! dielectric liquid, with optically modulated semiconductor permittivities.
//!
//! The crate is organised in four layers:
//!
//! * [`materials`] — dielectric permittivities ε(iξ) on the imaginary
//!   frequency axis: oscillator models, photo-carrier Drude augmentation,
//!   Kramers-Kronig reconstruction from optical data, tabulated grids and a
//!   file-based material database.
//! * [`lifshitz`] — the pressure itself: Matsubara summation with the primed
//!   l = 0 term, TM/TE reflection coefficients and adaptive integration.
//! * [`analysis`] — pressure-separation sweeps, attraction/repulsion
//!   crossover location, light-on/off modulation depth and the quasi-static
//!   plate displacement estimate.
//! * [`presets`] — the three shipped plate/liquid/plate scenarios.
//!
//! Sign convention: negative pressure = attraction, positive = repulsion.
//!
//! ```
//! use casimir::lifshitz::{pressure, QuadratureSettings};
//! use casimir::materials::MaterialDb;
//! use casimir::presets::{preset_system, find_preset, Light};
//!
//! let db = MaterialDb::builtin();
//! let preset = find_preset("si-ethanol-si").unwrap();
//! let sys = preset_system(&db, preset, Light::On, 300.0, 2.1e25).unwrap();
//! let p = pressure(&sys, 300e-9, &QuadratureSettings::default()).unwrap();
//! assert!(p.pressure > 0.0); // illumination makes this pair repulsive here
//! ```

pub mod analysis;
pub mod constants;
pub mod lifshitz;
pub mod materials;
pub mod presets;

pub use analysis::{
    find_crossover, modulation_depth, quasi_static_displacement, sweep, AnalysisError,
    CrossoverResult, ModulationDepth, PressureSweep, Scenario,
};
pub use constants::PhysicalConstants;
pub use lifshitz::{
    matsubara_term, matsubara_zeta, pressure, LayerSystem, LifshitzError, PressurePoint,
    QuadratureSettings,
};
pub use materials::{MaterialDb, MaterialError, Permittivity};
