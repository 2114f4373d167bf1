use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::dickman::{rho_theta, QuadratureConfig, ThetaProfile};
use crate::error::{domain, Result};
use crate::polyvals::{psi_binary, psi_poly, BinaryForm, IntPolynomial};
use crate::saddle::{psi_pairs, theorem_f, Regime, ShiftedConfig};
use crate::sieve::psi;
use crate::primes::root_floor;

/// The counting problems whose lower bounds can be compared with exact counts.
#[derive(Debug, Clone, PartialEq)]
pub enum Application {
    /// `Ψ(x, y) / x` against `ρ(u)`.
    Plain { x: u64, y: u64 },
    /// `Ψ_F(x, y) / x` for an irreducible `F` of degree `g ≥ 2` with `y > x^{g−1}`.
    Poly { f: IntPolynomial, x: u64, y: u64 },
    /// `Ψ_F(x, y) / x²` for an irreducible form of degree `t ≥ 4` with `x^{t−2} ≤ y`.
    Binary { f: BinaryForm, x: u64, y: u64 },
    /// `Ψ(x; u, v) / Ψ(x, x^{1/v})` for the shift `a`.
    Pairs { x: u64, a: i64, u: f64, v: f64, regime: Regime },
}

impl Application {
    pub fn name(&self) -> &'static str {
        match self {
            Application::Plain { .. } => "plain",
            Application::Poly { .. } => "poly",
            Application::Binary { .. } => "binary",
            Application::Pairs { .. } => "pairs",
        }
    }

    fn parameters(&self) -> serde_json::Value {
        match self {
            Application::Plain { x, y } => json!({ "x": x, "y": y }),
            Application::Poly { f, x, y } => json!({ "f": f.coefficients(), "x": x, "y": y }),
            Application::Binary { f, x, y } => json!({ "form": f.coefficients(), "x": x, "y": y }),
            Application::Pairs { x, a, u, v, regime } => json!({ "x": x, "a": a, "u": u, "v": v, "regime": regime }),
        }
    }
}

/// An empirical density compared with the coefficient of the matching lower bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheck {
    pub application: String,
    pub parameters: serde_json::Value,
    pub empirical_density: f64,
    pub coefficient: f64,
    /// `empirical_density − coefficient`.
    pub margin: f64,
    pub tolerance: f64,
    pub passed: bool,
}

fn log_ratio(x: u64, y: u64) -> Result<f64> {
    if x < 2 || y < 2 {
        return domain(format!("need x ≥ 2 and y ≥ 2 (x = {x}, y = {y})"));
    }
    Ok((x as f64).ln() / (y as f64).ln())
}

/// `max_{n ≤ x} |F(n)|`, at least 2.
fn sup_abs(f: &IntPolynomial, x: u64) -> f64 {
    (1..=x as i128)
        .into_par_iter()
        .map(|n| f.eval(n).map_or(f64::INFINITY, |v| v.unsigned_abs() as f64))
        .reduce(|| 2.0, f64::max)
}

/// Counts the application exactly and compares the density with `ρ_{θ,κ}` or
/// `f(u)`. `profile` overrides the default level of distribution: `θ = 1` for
/// `Plain`, `1/g` for `Poly` (with `u' = log sup|F| / log y`), `2/t` for `Binary`, and the regime's `f(u)` for
/// `Pairs` (where an override switches to `ρ_{θ,κ}(u)`).
pub fn lower_bound_report(app: &Application, profile: Option<&ThetaProfile>, tolerance: f64) -> Result<BoundCheck> {
    if !(tolerance >= 0.0 && tolerance.is_finite()) {
        return domain("tolerance must be finite and nonnegative");
    }
    let cfg = QuadratureConfig::default();
    let coefficient_at = |u: f64, default: ThetaProfile| rho_theta(u, profile.unwrap_or(&default), &cfg);
    let (empirical_density, coefficient) = match app {
        Application::Plain { x, y } => {
            let u = log_ratio(*x, *y)?.max(f64::MIN_POSITIVE);
            (psi(*x, *y) as f64 / *x as f64, coefficient_at(u, ThetaProfile::linear(1.0, "plain")?)?)
        }
        Application::Poly { f, x, y } => {
            let g = f.degree();
            if g < 2 {
                return domain(format!("degree g = {g} must be at least 2"));
            }
            let u = log_ratio(*x, *y)?;
            if (g - 1) as f64 * u >= 1.0 {
                return domain(format!("y > x^(g−1) violated: u(g − 1) = {} ≥ 1", (g - 1) as f64 * u));
            }
            let count = psi_poly(f, *x, *y)?;
            let u_sup = sup_abs(f, *x).ln() / (*y as f64).ln();
            let theta = ThetaProfile::linear(1.0 / g as f64, "poly")?;
            (count as f64 / *x as f64, coefficient_at(u_sup, theta)?)
        }
        Application::Binary { f, x, y } => {
            let t = f.degree();
            if t < 4 {
                return domain(format!("degree t = {t} must be at least 4"));
            }
            let u = log_ratio(*x, *y)?;
            if (t - 2) as f64 * u > 1.0 + 1e-12 {
                return domain(format!("x^(t−2) ≤ y violated: u(t − 2) = {} > 1", (t - 2) as f64 * u));
            }
            let theta = ThetaProfile::linear(2.0 / t as f64, "binary")?;
            let total = (*x as f64).powi(2);
            (psi_binary(f, *x, *y, false)? as f64 / total, coefficient_at(t as f64 * u, theta)?)
        }
        Application::Pairs { x, a, u, v, regime } => {
            let top = regime.u_max();
            if !(*u > 1.0 && *u <= top + 1e-12) {
                return domain(format!("1 < u ≤ {top} violated: u = {u}"));
            }
            if !(v.is_finite() && *v >= 1.0) {
                return domain(format!("v ≥ 1 violated: v = {v}"));
            }
            let cfg_pairs = ShiftedConfig { a: *a, u: *u, v: *v, profile: regime.profile() };
            let count = psi_pairs(*x, &cfg_pairs)?;
            let base = psi(*x, root_floor(*x, *v));
            let coefficient = match profile {
                Some(p) => rho_theta(*u, p, &cfg)?,
                None => theorem_f(*u, *regime)?,
            };
            (count as f64 / base as f64, coefficient)
        }
    };
    let margin = empirical_density - coefficient;
    Ok(BoundCheck {
        application: app.name().into(),
        parameters: app.parameters(),
        empirical_density,
        coefficient,
        margin,
        tolerance,
        passed: margin >= -tolerance,
    })
}
