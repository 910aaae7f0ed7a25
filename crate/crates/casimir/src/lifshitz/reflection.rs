//! TM/TE reflection coefficients for a plate facing the gap medium.
//!
//! Both coefficients are functions of the plate and medium permittivities at
//! the same imaginary frequency, the dimensionless Matsubara frequency ζ and
//! the dimensionless transverse variable y ≥ √ε₀·ζ. In this convention both
//! tend to +1 in the perfect-reflector limit, so only the products entering
//! the Lifshitz integrand are physically meaningful.

use super::LifshitzError;
use crate::materials::StaticResponse;

/// Relative slack for square-root arguments driven slightly negative by
/// rounding near the lower integration limit.
const SQRT_NOISE: f64 = 1e-12;

fn kernel_sqrt(eps_plate: f64, eps_medium: f64, zeta: f64, y: f64) -> Result<f64, LifshitzError> {
    let arg = y * y + (eps_plate - eps_medium) * zeta * zeta;
    if arg < 0.0 {
        let scale = y * y + (eps_plate - eps_medium).abs() * zeta * zeta;
        if arg < -SQRT_NOISE * scale {
            return Err(LifshitzError::NegativeSqrtArgument {
                arg,
                eps_plate,
                eps_medium,
                zeta,
                y,
            });
        }
        return Ok(0.0);
    }
    Ok(arg.sqrt())
}

/// r_TM = (ε_p y − ε₀ √(y² + (ε_p − ε₀)ζ²)) / (ε_p y + ε₀ √(y² + (ε_p − ε₀)ζ²)).
///
/// An infinite `eps_plate` (ideal metal) gives +1.
pub fn reflection_tm(
    eps_plate: f64,
    eps_medium: f64,
    zeta: f64,
    y: f64,
) -> Result<f64, LifshitzError> {
    if eps_plate.is_infinite() {
        return Ok(1.0);
    }
    let s = kernel_sqrt(eps_plate, eps_medium, zeta, y)?;
    Ok((eps_plate * y - eps_medium * s) / (eps_plate * y + eps_medium * s))
}

/// r_TE = (√(y² + (ε_p − ε₀)ζ²) − y) / (√(y² + (ε_p − ε₀)ζ²) + y).
///
/// Vanishes at ζ = 0 for any finite permittivities and shares the sign of
/// ε_p − ε₀. An infinite `eps_plate` gives +1.
pub fn reflection_te(
    eps_plate: f64,
    eps_medium: f64,
    zeta: f64,
    y: f64,
) -> Result<f64, LifshitzError> {
    if eps_plate.is_infinite() {
        return Ok(1.0);
    }
    let s = kernel_sqrt(eps_plate, eps_medium, zeta, y)?;
    Ok((s - y) / (s + y))
}

/// Infallible TM kernel for integrands whose inputs already satisfy the
/// y ≥ √ε₀·ζ precondition (the square-root argument is then ≥ ε_p ζ² ≥ 0).
pub(super) fn tm_kernel(eps_plate: f64, eps_medium: f64, zeta: f64, y: f64) -> f64 {
    if eps_plate.is_infinite() {
        return 1.0;
    }
    let s = (y * y + (eps_plate - eps_medium) * zeta * zeta).max(0.0).sqrt();
    (eps_plate * y - eps_medium * s) / (eps_plate * y + eps_medium * s)
}

pub(super) fn te_kernel(eps_plate: f64, eps_medium: f64, zeta: f64, y: f64) -> f64 {
    if eps_plate.is_infinite() {
        return 1.0;
    }
    let s = (y * y + (eps_plate - eps_medium) * zeta * zeta).max(0.0).sqrt();
    (s - y) / (s + y)
}

/// ζ → 0 limit of the TM coefficient.
///
/// Finite plates keep the static contrast (ε(0) − ε₀(0))/(ε(0) + ε₀(0));
/// permittivities that diverge as ξ → 0 (Drude metals) and the ideal metal
/// reach +1.
pub fn reflection_tm_static(plate: StaticResponse, eps_medium_static: f64) -> f64 {
    match plate {
        StaticResponse::Dielectric(eps) => {
            (eps - eps_medium_static) / (eps + eps_medium_static)
        }
        StaticResponse::DrudeMetal | StaticResponse::IdealMetal => 1.0,
    }
}

/// ζ → 0 limit of the TE coefficient: zero for every finite-static plate and
/// for Drude metals (whose ε ζ² → 0), +1 only for the ideal metal.
pub fn reflection_te_static(plate: StaticResponse) -> f64 {
    match plate {
        StaticResponse::IdealMetal => 1.0,
        StaticResponse::Dielectric(_) | StaticResponse::DrudeMetal => 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tm_zero_frequency_contrast() {
        // Dark Si facing ethanol: (11.66 − 25.692)/(11.66 + 25.692).
        let r = reflection_tm(11.66, 25.692, 0.0, 1.7).unwrap();
        assert!((r - (-0.3756693082030413)).abs() < 1e-15);
        // Independent of y at zeta = 0.
        let r2 = reflection_tm(11.66, 25.692, 0.0, 42.0).unwrap();
        assert!((r - r2).abs() < 1e-15);
        let r_static = reflection_tm_static(StaticResponse::Dielectric(11.66), 25.692);
        assert!((r_static - r).abs() < 1e-15);
    }

    #[test]
    fn identical_media_reflect_nothing() {
        for zeta in [0.0, 0.3, 7.0] {
            for y in [2.0, 11.0] {
                if y * y < 4.0 * zeta * zeta {
                    continue;
                }
                assert_eq!(reflection_tm(4.0, 4.0, zeta, y).unwrap(), 0.0);
                assert_eq!(reflection_te(4.0, 4.0, zeta, y).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn ideal_metal_limit_is_plus_one() {
        assert_eq!(reflection_tm(f64::INFINITY, 25.7, 0.4, 3.0).unwrap(), 1.0);
        assert_eq!(reflection_te(f64::INFINITY, 25.7, 0.4, 3.0).unwrap(), 1.0);
        // Large-but-finite permittivity approaches it from below.
        let r = reflection_tm(1e12, 1.0, 0.5, 2.0).unwrap();
        assert!(r > 0.999_99 && r < 1.0);
        let r = reflection_te(1e12, 1.0, 0.5, 2.0).unwrap();
        assert!(r > 0.999_99 && r < 1.0);
    }

    #[test]
    fn te_vanishes_at_zero_frequency() {
        for (ep, e0, y) in [(11.66, 25.692, 0.8), (25.692, 11.66, 3.0), (1.0, 1.0, 9.0)] {
            assert_eq!(reflection_te(ep, e0, 0.0, y).unwrap(), 0.0);
        }
        assert_eq!(reflection_te_static(StaticResponse::Dielectric(11.66)), 0.0);
        assert_eq!(reflection_te_static(StaticResponse::DrudeMetal), 0.0);
        assert_eq!(reflection_te_static(StaticResponse::IdealMetal), 1.0);
    }

    #[test]
    fn te_sign_follows_permittivity_contrast() {
        let above = reflection_te(9.0, 4.0, 1.2, 3.0).unwrap();
        let below = reflection_te(2.0, 4.0, 1.2, 3.0).unwrap();
        assert!(above > 0.0 && above < 1.0);
        assert!(below < 0.0 && below > -1.0);
    }

    #[test]
    fn sqrt_domain_error_beyond_noise() {
        // y far below the admissible region with eps_plate < eps_medium.
        let err = reflection_tm(1.0, 100.0, 10.0, 0.1).unwrap_err();
        assert!(matches!(err, LifshitzError::NegativeSqrtArgument { .. }));
    }
}
