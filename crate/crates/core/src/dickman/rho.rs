use super::delay::DelayTable;
use super::{check_u, QuadratureConfig};
use crate::error::Result;

fn rho_closed(u: f64) -> f64 {
    if u <= 1.0 {
        1.0
    } else {
        1.0 - u.ln()
    }
}

/// Dickman's function `ρ(u)`, the solution of `uρ'(u) + ρ(u − 1) = 0` with
/// `ρ = 1` on `[0, 1]`.
///
/// Exact on `[0, 2]`; beyond, the delay equation is stepped on the fixed
/// grid of `cfg.dde_grid_step`.
pub fn dickman_rho(u: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_u(u)?;
    cfg.validate()?;
    if u <= 2.0 {
        return Ok(rho_closed(u));
    }
    let table = DelayTable::solve(rho_closed, 1.0, 0.0, u, cfg.dde_grid_step);
    Ok(table.last().clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::rho_nested;

    #[test]
    fn exact_on_first_two_intervals() {
        let cfg = QuadratureConfig::default();
        assert_eq!(dickman_rho(0.5, &cfg).unwrap(), 1.0);
        assert_eq!(dickman_rho(0.0, &cfg).unwrap(), 1.0);
        assert!((dickman_rho(2.0, &cfg).unwrap() - (1.0 - 2f64.ln())).abs() < 1e-15);
        assert!((dickman_rho(2.0, &cfg).unwrap() - 0.306_852_819_44).abs() < 1e-11);
    }

    #[test]
    fn matches_nested_integral_oracle() {
        let cfg = QuadratureConfig::default();
        for &u in &[2.25, 2.5, 3.0, 3.5, 4.0, 4.75] {
            let got = dickman_rho(u, &cfg).unwrap();
            let want = rho_nested(u);
            assert!((got - want).abs() < 1e-10, "u={u}: {got} vs {want}");
        }
    }

    #[test]
    fn known_values() {
        let cfg = QuadratureConfig::default();
        assert!((dickman_rho(3.0, &cfg).unwrap() - 0.048_608_388_291_131_6).abs() < 1e-11);
        assert!((dickman_rho(4.0, &cfg).unwrap() - 0.004_910_925_647_760_83).abs() < 1e-11);
        assert!((dickman_rho(5.0, &cfg).unwrap() - 3.547_247_004_560_94e-4).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_arguments() {
        let cfg = QuadratureConfig::default();
        assert!(dickman_rho(-0.1, &cfg).is_err());
        assert!(dickman_rho(f64::NAN, &cfg).is_err());
        assert!(dickman_rho(f64::INFINITY, &cfg).is_err());
        assert!(dickman_rho(65.0, &cfg).is_err());
    }

    #[test]
    fn positive_and_nonincreasing() {
        let cfg = QuadratureConfig::default();
        let mut prev = 1.0;
        for i in 0..=80 {
            let u = i as f64 * 0.1;
            let r = dickman_rho(u, &cfg).unwrap();
            assert!(r > 0.0 && r <= prev + 1e-15, "u={u}");
            prev = r;
        }
    }
}
