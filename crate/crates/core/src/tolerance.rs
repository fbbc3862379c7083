use crate::error::{Error, Result};

/// Numerical thresholds used across the pipeline.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Smallest admissible `EG - F^2`.
    pub eps_det: f64,
    /// Points with `|H|` at or below this are minimal.
    pub eps_min: f64,
    /// Bound on the normalized `F` and `M` residuals of a principal chart.
    pub tol_principal: f64,
    /// Smallest admissible `|denom|` of the f-fields.
    pub eps_denom: f64,
    /// Canonical iff `max(|phi - 1|, |psi - 1|)` is below this.
    pub tol_canon: f64,
    /// Largest admissible spread of the scale functions across slices.
    pub tol_spread: f64,
    /// Gate on the normalized compatibility residuals.
    pub tol_compat: f64,
    /// Pass threshold of the compatibility-system check.
    pub tol_system: f64,
    /// Relative tolerance of adaptive quadrature.
    pub tol_quad: f64,
    /// Largest orthonormality drift accepted before re-projection.
    pub max_drift: f64,
    /// Accuracy order of lattice derivatives.
    pub stencil_order: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eps_det: 1e-12,
            eps_min: 1e-9,
            tol_principal: 1e-8,
            eps_denom: 1e-10,
            tol_canon: 1e-6,
            tol_spread: 1e-6,
            tol_compat: 1e-6,
            tol_system: 1e-6,
            tol_quad: 1e-13,
            max_drift: 1e-3,
            stencil_order: crate::stencil::DEFAULT_ORDER,
        }
    }
}

impl Tolerances {
    /// Override one threshold by name.
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::InvalidInput(format!("tolerance {name} must be positive")));
        }
        match name {
            "eps_det" => self.eps_det = value,
            "eps_min" => self.eps_min = value,
            "tol_principal" => self.tol_principal = value,
            "eps_denom" => self.eps_denom = value,
            "tol_canon" => self.tol_canon = value,
            "tol_spread" => self.tol_spread = value,
            "tol_compat" => self.tol_compat = value,
            "tol_system" => self.tol_system = value,
            "tol_quad" => self.tol_quad = value,
            "max_drift" => self.max_drift = value,
            "stencil_order" => {
                if value.fract() != 0.0 || value < 2.0 {
                    return Err(Error::InvalidInput("stencil_order must be an integer >= 2".into()));
                }
                self.stencil_order = value as usize
            }
            _ => return Err(Error::InvalidInput(format!("unknown tolerance `{name}`"))),
        }
        Ok(())
    }
}
