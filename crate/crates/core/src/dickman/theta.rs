use serde::{Deserialize, Serialize};

use super::{mu_closed, QuadratureConfig};
use crate::error::{domain, Result};

/// A level-of-distribution setting: exponent `θ`, sieve dimension `κ` and the
/// remainder saving exponent `δ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThetaProfile {
    pub theta: f64,
    pub kappa: f64,
    pub delta: f64,
    pub label: String,
}

impl ThetaProfile {
    pub fn new(theta: f64, kappa: f64, delta: f64, label: impl Into<String>) -> Result<Self> {
        let p = ThetaProfile { theta, kappa, delta, label: label.into() };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.theta > 0.0 && self.theta <= 1.0) {
            return domain(format!("theta = {} must lie in (0, 1]", self.theta));
        }
        if !(self.kappa.is_finite() && self.kappa > 0.0) {
            return domain("kappa must be finite and positive");
        }
        if !(self.delta.is_finite() && self.delta > 0.0) {
            return domain("delta must be finite and positive");
        }
        Ok(())
    }

    /// Exponent 1/2 for smooth numbers in progressions.
    pub fn harper_half() -> Self {
        ThetaProfile { theta: 0.5, kappa: 1.0, delta: 1.0, label: "harper-half".into() }
    }

    /// Exponent 5/8 for smooth numbers in progressions.
    pub fn pascadi_58() -> Self {
        ThetaProfile { theta: 0.625, kappa: 1.0, delta: 1.0, label: "pascadi-5/8".into() }
    }

    /// Conjectural exponent `1 − ε`.
    pub fn elliott_halberstam(eps: f64) -> Self {
        ThetaProfile { theta: 1.0 - eps, kappa: 1.0, delta: 1.0, label: "elliott-halberstam".into() }
    }

    /// Exponent `θ` in dimension one, e.g. `1/g` for values of a degree-`g` polynomial.
    pub fn linear(theta: f64, label: impl Into<String>) -> Result<Self> {
        Self::new(theta, 1.0, 1.0, label)
    }
}

const BOUNDARY_EPS: f64 = 1e-12;

/// `ρ_{θ,κ}(u) = μ^(κ)(u, (1 − θ) u)`.
///
/// Uses the explicit forms for `θ ≤ 1/2` and for `1/2 < θ ≤ 2/3` with `κ = 1`
/// when `u > 1`, and [`mu_closed`] elsewhere. `(1 − θ) u = 1` is accepted only
/// where one of the explicit forms covers it.
pub fn rho_theta(u: f64, profile: &ThetaProfile, cfg: &QuadratureConfig) -> Result<f64> {
    profile.validate()?;
    if !(u.is_finite() && u > 0.0) {
        return domain(format!("u = {u} must be finite and positive"));
    }
    let ThetaProfile { theta, kappa, .. } = *profile;
    let v = (1.0 - theta) * u;
    let on_boundary = (v - 1.0).abs() <= BOUNDARY_EPS;
    if v > 1.0 + BOUNDARY_EPS {
        return domain(format!("(1 − θ)u = {v} must be below 1 (θ = {theta}, u = {u})"));
    }
    if u > 1.0 && theta <= 0.5 {
        return Ok(kappa * (1.0 - v) * u.powf(kappa - 1.0));
    }
    if u > 1.0 && theta <= 2.0 / 3.0 && kappa == 1.0 {
        return Ok(theta_two_thirds(u, theta));
    }
    if on_boundary {
        return domain(format!("(1 − θ)u = 1 is only covered by the explicit forms (θ = {theta}, κ = {kappa})"));
    }
    mu_closed(u, v, kappa, cfg)
}

/// `ρ_{θ,1}(u)` for `1/2 < θ ≤ 2/3` and `1 < u ≤ 1/(1 − θ)`.
fn theta_two_thirds(u: f64, theta: f64) -> f64 {
    let a = 1.0 - theta;
    let base = 1.0 - a * u;
    if u <= 1.0 / theta {
        base
    } else if u <= 2.0 {
        base + (1.0 / u + a).ln()
    } else {
        base + (1.0 / u + a).ln() + a * u * (u / 2.0).ln()
    }
}
