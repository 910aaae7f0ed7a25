//! Physical constants (CODATA 2018 / SI exact values).

/// Fundamental constants used throughout the crate.
///
/// Values are fixed at construction; there are no setters. Use
/// [`PhysicalConstants::codata`] (or `Default`) everywhere — the struct exists
/// so that formulas spell out which constants they consume.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Boltzmann constant, J/K.
    pub k_b: f64,
    /// Reduced Planck constant, J·s.
    pub hbar: f64,
    /// Speed of light in vacuum, m/s.
    pub c_light: f64,
    /// Elementary charge, C.
    pub e_charge: f64,
    /// Electron rest mass, kg.
    pub m_electron: f64,
    /// Vacuum permittivity, F/m.
    pub eps_vacuum: f64,
}

pub const CODATA: PhysicalConstants = PhysicalConstants {
    k_b: 1.380_649e-23,
    hbar: 1.054_571_817e-34,
    c_light: 299_792_458.0,
    e_charge: 1.602_176_634e-19,
    m_electron: 9.109_383_701_5e-31,
    eps_vacuum: 8.854_187_812_8e-12,
};

impl PhysicalConstants {
    pub const fn codata() -> Self {
        CODATA
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        CODATA
    }
}
