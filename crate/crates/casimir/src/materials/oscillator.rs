//! Two-oscillator (IR + UV) permittivity along the imaginary frequency axis.

use super::MaterialError;

/// Ninham-Parsegian two-oscillator model:
///
/// ε(iξ) = 1 + c_ir / (1 + ξ²/ω_ir²) + c_uv / (1 + ξ²/ω_uv²)
///
/// Strictly decreasing in ξ, equal to `1 + c_ir + c_uv` at ξ = 0 and tending
/// to 1 as ξ → ∞.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorModel {
    c_ir: f64,
    c_uv: f64,
    omega_ir: f64,
    omega_uv: f64,
}

impl OscillatorModel {
    /// Oscillator strengths must be ≥ 0 and both angular frequencies (rad/s)
    /// must be positive and finite.
    pub fn new(c_ir: f64, c_uv: f64, omega_ir: f64, omega_uv: f64) -> Result<Self, MaterialError> {
        if !(c_ir.is_finite() && c_ir >= 0.0) || !(c_uv.is_finite() && c_uv >= 0.0) {
            return Err(MaterialError::Invariant(format!(
                "oscillator strengths must be >= 0, got c_ir = {c_ir}, c_uv = {c_uv}"
            )));
        }
        if !(omega_ir.is_finite() && omega_ir > 0.0) || !(omega_uv.is_finite() && omega_uv > 0.0) {
            return Err(MaterialError::Invariant(format!(
                "oscillator frequencies must be > 0, got omega_ir = {omega_ir}, omega_uv = {omega_uv}"
            )));
        }
        Ok(Self {
            c_ir,
            c_uv,
            omega_ir,
            omega_uv,
        })
    }

    pub fn c_ir(&self) -> f64 {
        self.c_ir
    }

    pub fn c_uv(&self) -> f64 {
        self.c_uv
    }

    pub fn omega_ir(&self) -> f64 {
        self.omega_ir
    }

    pub fn omega_uv(&self) -> f64 {
        self.omega_uv
    }

    /// ε(0) = 1 + c_ir + c_uv, exact.
    pub fn static_value(&self) -> f64 {
        1.0 + self.c_ir + self.c_uv
    }

    /// ε(iξ) for ξ ≥ 0.
    pub fn eval(&self, xi: f64) -> Result<f64, MaterialError> {
        if xi < 0.0 || xi.is_nan() {
            return Err(MaterialError::NegativeFrequency(xi));
        }
        if xi == 0.0 {
            return Ok(self.static_value());
        }
        let ir = self.c_ir / (1.0 + (xi / self.omega_ir).powi(2));
        let uv = self.c_uv / (1.0 + (xi / self.omega_uv).powi(2));
        Ok(1.0 + ir + uv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ethanol() -> OscillatorModel {
        OscillatorModel::new(23.84, 0.852, 6.600e14, 1.140e16).unwrap()
    }

    fn alumina() -> OscillatorModel {
        OscillatorModel::new(7.03, 2.072, 1.000e14, 2.000e16).unwrap()
    }

    #[test]
    fn ethanol_static_value_is_exact() {
        assert_eq!(ethanol().eval(0.0).unwrap(), 25.692);
        assert_eq!(ethanol().static_value(), 25.692);
    }

    #[test]
    fn alumina_static_value_is_exact() {
        assert_eq!(alumina().eval(0.0).unwrap(), 10.102);
    }

    #[test]
    fn ethanol_at_uv_frequency() {
        // Direct substitution of xi = omega_uv into the two-oscillator formula.
        let eps = ethanol().eval(1.140e16).unwrap();
        assert!((eps - 1.5056399878523508).abs() < 1e-12, "eps = {eps}");
    }

    #[test]
    fn tends_to_unity_at_high_frequency() {
        let eps = ethanol().eval(1e22).unwrap();
        assert!(eps > 1.0 && eps < 1.0 + 1e-10, "eps = {eps}");
    }

    #[test]
    fn strictly_decreasing_on_dense_grid() {
        let m = ethanol();
        let mut prev = m.eval(0.0).unwrap();
        for i in 1..=400 {
            let xi = 1e12 * 10f64.powf(i as f64 * 0.02);
            let eps = m.eval(xi).unwrap();
            assert!(eps < prev, "not decreasing at xi = {xi}");
            assert!(eps >= 1.0);
            prev = eps;
        }
    }

    #[test]
    fn negative_xi_is_a_domain_error() {
        assert!(matches!(
            ethanol().eval(-1.0),
            Err(MaterialError::NegativeFrequency(_))
        ));
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(OscillatorModel::new(-1.0, 0.852, 6.6e14, 1.1e16).is_err());
        assert!(OscillatorModel::new(23.84, 0.852, 0.0, 1.1e16).is_err());
        assert!(OscillatorModel::new(23.84, f64::NAN, 6.6e14, 1.1e16).is_err());
        // Zero strengths are allowed: the model degenerates to vacuum.
        assert!(OscillatorModel::new(0.0, 0.0, 1e14, 1e16).is_ok());
    }
}
