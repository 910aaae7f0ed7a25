//! Kramers-Kronig reconstruction of ε(iξ) from tabulated Im ε(ω).

use super::MaterialError;

/// Im ε(ω) sampled on a strictly increasing real-frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct OpticalDataTable {
    omega: Vec<f64>,
    im_eps: Vec<f64>,
}

impl OpticalDataTable {
    /// Frequencies must be positive, finite and strictly increasing; Im ε must
    /// be ≥ 0 everywhere (passivity).
    pub fn new(omega: Vec<f64>, im_eps: Vec<f64>) -> Result<Self, MaterialError> {
        if omega.is_empty() || im_eps.is_empty() {
            return Err(MaterialError::EmptyTable);
        }
        if omega.len() != im_eps.len() {
            return Err(MaterialError::Invariant(format!(
                "omega has {} points but im_eps has {}",
                omega.len(),
                im_eps.len()
            )));
        }
        for (i, &w) in omega.iter().enumerate() {
            if !(w.is_finite() && w > 0.0) {
                return Err(MaterialError::Invariant(format!(
                    "omega must be > 0, got {w} at row {i}"
                )));
            }
            if i > 0 && w <= omega[i - 1] {
                return Err(MaterialError::Invariant(format!(
                    "omega must be strictly increasing, row {i} = {w} after {}",
                    omega[i - 1]
                )));
            }
        }
        for (i, &v) in im_eps.iter().enumerate() {
            if !(v.is_finite() && v >= 0.0) {
                return Err(MaterialError::Invariant(format!(
                    "im_eps must be >= 0, got {v} at row {i}"
                )));
            }
        }
        Ok(Self { omega, im_eps })
    }

    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    pub fn im_eps(&self) -> &[f64] {
        &self.im_eps
    }
}

/// ε(iξ) = 1 + (2/π) ∫₀^∞ ω·Im ε(ω) / (ω² + ξ²) dω.
///
/// The tabulated range is integrated by the trapezoidal rule on log ω. Beyond
/// the last point Im ε is extrapolated as Im ε(ω_max)·(ω_max/ω)³ and that tail
/// integrated in closed form; below the first point Im ε is taken as zero.
pub fn kk_transform(data: &OpticalDataTable, xi: f64) -> Result<f64, MaterialError> {
    if xi < 0.0 || xi.is_nan() {
        return Err(MaterialError::NegativeFrequency(xi));
    }
    let omega = &data.omega;
    let im = &data.im_eps;

    // Trapezoid in u = ln(omega): integrand omega^2 * im / (omega^2 + xi^2).
    let g = |w: f64, v: f64| w * w * v / (w * w + xi * xi);
    let mut integral = 0.0;
    for i in 1..omega.len() {
        let du = (omega[i] / omega[i - 1]).ln();
        integral += 0.5 * du * (g(omega[i - 1], im[i - 1]) + g(omega[i], im[i]));
    }

    let w_max = *omega.last().unwrap();
    let v_max = *im.last().unwrap();
    integral += v_max * w_max.powi(3) * tail_kernel(w_max, xi);

    Ok(1.0 + std::f64::consts::FRAC_2_PI * integral)
}

/// ∫_W^∞ dω / (ω² (ω² + ξ²)).
///
/// The closed form (1/ξ²)(1/W − atan(ξ/W)/ξ) cancels catastrophically for
/// ξ ≪ W, so a truncated alternating series in (ξ/W)² is used there.
fn tail_kernel(w: f64, xi: f64) -> f64 {
    let r = xi / w;
    if r < 0.1 {
        let r2 = r * r;
        let mut sum = 0.0;
        let mut pow = 1.0;
        for k in 0..8 {
            sum += pow / (2 * k + 3) as f64;
            pow *= -r2;
        }
        sum / (w * w * w)
    } else {
        (1.0 / w - r.atan() / xi) / (xi * xi)
    }
}
