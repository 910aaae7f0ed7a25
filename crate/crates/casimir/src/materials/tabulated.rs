//! Permittivity given on a discrete ξ grid, e.g. reconstructed from optical
//! data via the Kramers-Kronig transform.

use super::MaterialError;

/// Tabulated ε(iξ) with monotone piecewise-linear interpolation in log ξ.
///
/// Outside the grid: constant `values[0]` below the first point (the static
/// plateau) and `1 + (v_last − 1)·(ξ_last/ξ)²` above the last one, the
/// asymptotic decay of any dielectric toward vacuum. Both extrapolations keep
/// ε ≥ 1 and non-increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedPermittivity {
    grid: Vec<f64>,
    values: Vec<f64>,
    static_value: f64,
}

impl TabulatedPermittivity {
    /// `grid` must be strictly increasing and positive, `values` non-increasing
    /// with every entry ≥ 1, and `static_value ≥ values[0]`.
    pub fn new(grid: Vec<f64>, values: Vec<f64>, static_value: f64) -> Result<Self, MaterialError> {
        if grid.is_empty() || values.is_empty() {
            return Err(MaterialError::EmptyTable);
        }
        if grid.len() != values.len() {
            return Err(MaterialError::Invariant(format!(
                "grid has {} points but values has {}",
                grid.len(),
                values.len()
            )));
        }
        for (i, &xi) in grid.iter().enumerate() {
            if !(xi.is_finite() && xi > 0.0) {
                return Err(MaterialError::Invariant(format!(
                    "grid point {i} must be > 0, got {xi}"
                )));
            }
            if i > 0 && xi <= grid[i - 1] {
                return Err(MaterialError::Invariant(format!(
                    "grid must be strictly increasing, point {i} = {xi} after {}",
                    grid[i - 1]
                )));
            }
        }
        for (i, &v) in values.iter().enumerate() {
            if !(v.is_finite() && v >= 1.0) {
                return Err(MaterialError::Invariant(format!(
                    "permittivity values must be >= 1, got {v} at row {i}"
                )));
            }
            if i > 0 && v > values[i - 1] {
                return Err(MaterialError::Invariant(format!(
                    "values must be non-increasing, row {i} = {v} after {}",
                    values[i - 1]
                )));
            }
        }
        if !(static_value.is_finite() && static_value >= values[0]) {
            return Err(MaterialError::Invariant(format!(
                "static value {static_value} must be >= first grid value {}",
                values[0]
            )));
        }
        Ok(Self {
            grid,
            values,
            static_value,
        })
    }

    /// Builds from `(xi, eps)` rows. A leading row with `xi == 0` supplies the
    /// static value; otherwise the first tabulated value is used.
    pub fn from_rows(rows: &[(f64, f64)]) -> Result<Self, MaterialError> {
        if rows.is_empty() {
            return Err(MaterialError::EmptyTable);
        }
        let (static_row, rest) = if rows[0].0 == 0.0 {
            (Some(rows[0].1), &rows[1..])
        } else {
            (None, rows)
        };
        if rest.is_empty() {
            return Err(MaterialError::Invariant(
                "table needs at least one point with xi > 0".into(),
            ));
        }
        let grid: Vec<f64> = rest.iter().map(|r| r.0).collect();
        let values: Vec<f64> = rest.iter().map(|r| r.1).collect();
        let static_value = static_row.unwrap_or(values[0]);
        Self::new(grid, values, static_value)
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// ε(0).
    pub fn static_value(&self) -> f64 {
        self.static_value
    }

    /// `(xi, eps)` rows including the leading ξ = 0 static row.
    pub fn rows(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::with_capacity(self.grid.len() + 1);
        out.push((0.0, self.static_value));
        out.extend(self.grid.iter().copied().zip(self.values.iter().copied()));
        out
    }

    pub fn eval(&self, xi: f64) -> Result<f64, MaterialError> {
        if xi < 0.0 || xi.is_nan() {
            return Err(MaterialError::NegativeFrequency(xi));
        }
        if xi == 0.0 {
            return Ok(self.static_value);
        }
        let first = self.grid[0];
        let last = *self.grid.last().unwrap();
        if xi <= first {
            return Ok(self.values[0]);
        }
        if xi >= last {
            let v_last = *self.values.last().unwrap();
            let ratio = last / xi;
            return Ok(1.0 + (v_last - 1.0) * ratio * ratio);
        }
        let hi = self.grid.partition_point(|&g| g < xi);
        let lo = hi - 1;
        let t = (xi.ln() - self.grid[lo].ln()) / (self.grid[hi].ln() - self.grid[lo].ln());
        Ok(self.values[lo] + t * (self.values[hi] - self.values[lo]))
    }
}
