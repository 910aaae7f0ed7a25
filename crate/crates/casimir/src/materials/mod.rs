//! Dielectric permittivities ε(iξ) along the imaginary frequency axis.
//!
//! Every model evaluates to a real value ≥ 1 for ξ ≥ 0 (where defined) and is
//! immutable after construction, so evaluation is safe from any thread. The
//! carrier-augmented model diverges at ξ = 0 and reports that explicitly; the
//! Lifshitz layer treats the zero-frequency term through
//! [`StaticResponse`] instead of a raw evaluation.

mod carriers;
mod database;
mod kk;
mod oscillator;
mod tabulated;

pub use carriers::{
    plasma_frequency, silicon_photocarrier_defaults, CarrierAugmentedModel, CarrierParameters,
    CarrierSpecies,
};
pub use database::{
    load_material, read_xy_csv, save_material, MaterialDb, MaterialKind, MaterialRecord,
};
pub use kk::{kk_transform, OpticalDataTable};
pub use oscillator::OscillatorModel;
pub use tabulated::TabulatedPermittivity;

use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum MaterialError {
    #[error("imaginary frequency must be non-negative, got xi = {0} rad/s")]
    NegativeFrequency(f64),
    #[error("permittivity diverges at xi = 0; apply the zero-frequency limit rule instead")]
    DivergesAtZero,
    #[error("optical data table is empty")]
    EmptyTable,
    #[error("invariant violation: {0}")]
    Invariant(String),
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
    #[error("unknown material kind `{0}`")]
    UnknownKind(String),
    #[error("unknown material `{0}`")]
    UnknownMaterial(String),
    #[error("material `{0}` has a circular base reference")]
    CircularBase(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Behaviour of a permittivity model in the ξ → 0 limit.
///
/// The Lifshitz zero-frequency (l = 0) term needs this classification rather
/// than a raw ε(0): Drude-type models diverge as 1/ξ and the ideal metal is
/// infinite at every frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StaticResponse {
    /// Finite static permittivity ε(0).
    Dielectric(f64),
    /// ε(iξ) → ∞ as 1/ξ (free carriers with relaxation). The TM reflection
    /// coefficient limit is +1 while the TE one vanishes.
    DrudeMetal,
    /// ε = ∞ at all frequencies; both reflection coefficients are +1.
    IdealMetal,
}

/// A dielectric permittivity ε(iξ) evaluable on the imaginary frequency axis.
#[derive(Debug, Clone)]
pub enum Permittivity {
    Oscillator(OscillatorModel),
    Carriers(CarrierAugmentedModel),
    Tabulated(TabulatedPermittivity),
    /// Frequency-independent ε ≥ 1.
    Constant(f64),
    /// Perfect reflector; evaluates to +∞ at every frequency.
    IdealMetal,
}

impl Permittivity {
    /// Frequency-independent model; `eps` must be ≥ 1.
    pub fn constant(eps: f64) -> Result<Self, MaterialError> {
        if !(eps.is_finite() && eps >= 1.0) {
            return Err(MaterialError::Invariant(format!(
                "constant permittivity must be finite and >= 1, got {eps}"
            )));
        }
        Ok(Permittivity::Constant(eps))
    }

    pub fn vacuum() -> Self {
        Permittivity::Constant(1.0)
    }

    /// ε(iξ). Returns `+inf` for the ideal metal; errors for ξ < 0 and for
    /// carrier-augmented models at ξ = 0.
    pub fn eval(&self, xi: f64) -> Result<f64, MaterialError> {
        if xi < 0.0 || xi.is_nan() {
            return Err(MaterialError::NegativeFrequency(xi));
        }
        match self {
            Permittivity::Oscillator(m) => m.eval(xi),
            Permittivity::Carriers(m) => m.eval(xi),
            Permittivity::Tabulated(m) => m.eval(xi),
            Permittivity::Constant(eps) => Ok(*eps),
            Permittivity::IdealMetal => Ok(f64::INFINITY),
        }
    }

    /// Classification of the ξ → 0 behaviour used by the l = 0 Matsubara term.
    pub fn static_response(&self) -> StaticResponse {
        match self {
            Permittivity::Oscillator(m) => StaticResponse::Dielectric(m.static_value()),
            Permittivity::Carriers(_) => StaticResponse::DrudeMetal,
            Permittivity::Tabulated(m) => StaticResponse::Dielectric(m.static_value()),
            Permittivity::Constant(eps) => StaticResponse::Dielectric(*eps),
            Permittivity::IdealMetal => StaticResponse::IdealMetal,
        }
    }

    pub(crate) fn shared(self) -> Arc<Permittivity> {
        Arc::new(self)
    }
}
