//! Dickman's function and the lower-bound density family built on it.
//!
//! For `u > 0`, `0 ≤ v ≤ min(1, u)` and `k ≥ 1`, `μ_k(u, v)` is the integral of
//! `f_{k-1}(u; t)` over the slab `V_k(u, v)` of the unit cube, and
//! `μ^(κ)(u, v) = Σ_k κ^k μ_k(u, v)`. The sieve coefficient is
//! `ρ_{θ,κ}(u) = μ^(κ)(u, (1 − θ)u)`, and `μ^(1)(·, 0)` is Dickman's `ρ`.
//!
//! Three independent evaluation routes are provided and cross-checked in tests:
//! the one-dimensional recursion in `k` ([`mu_k`], [`mu_series`]), direct
//! integration over `V_k` ([`mu_k_direct`]), and closed forms continued by the
//! delay differential equation ([`mu_closed`]).

mod delay;
mod gamma;
mod mu;
mod rho;
mod theta;

pub use gamma::gamma_eu;
pub use mu::{f_k, mu_1, mu_closed, mu_k, mu_k_direct, mu_series, MuParams};
pub use rho::dickman_rho;
pub use theta::{rho_theta, ThetaProfile};

use crate::error::{domain, Result};

/// Tolerances and truncation limits for every integration and series in this module.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    pub series_tail_tol: f64,
    pub dde_grid_step: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_subdivisions: 1 << 16,
            series_tail_tol: 1e-12,
            dde_grid_step: 1.0 / 1024.0,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !(positive(self.abs_tol) && positive(self.rel_tol) && positive(self.series_tail_tol)) {
            return domain("tolerances must be finite and strictly positive");
        }
        if self.max_subdivisions < 2 {
            return domain("max_subdivisions must be at least 2");
        }
        if !(positive(self.dde_grid_step) && self.dde_grid_step <= 1.0 / 64.0) {
            return domain("dde_grid_step must lie in (0, 1/64]");
        }
        Ok(())
    }
}

/// Largest `u` accepted by the evaluators.
pub const U_MAX: f64 = 64.0;

pub(crate) fn check_u(u: f64) -> Result<()> {
    if !u.is_finite() || u < 0.0 {
        return domain(format!("u must be finite and non-negative, got {u}"));
    }
    if u > U_MAX {
        return domain(format!("u = {u} exceeds the supported range u ≤ {U_MAX}"));
    }
    Ok(())
}
