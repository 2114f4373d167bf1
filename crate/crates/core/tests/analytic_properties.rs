use friable::dickman::{dickman_rho, gamma_eu, mu_closed, mu_series, rho_theta, QuadratureConfig, ThetaProfile};
use friable::oracle::rho_nested;
use friable::saddle::{solve_saddle, theorem_f, Regime};
use proptest::prelude::*;

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rho_in_unit_interval_and_decreasing(u in 0.01f64..12.0, du in 0.001f64..1.0) {
        let a = dickman_rho(u, &cfg()).unwrap();
        let b = dickman_rho(u + du, &cfg()).unwrap();
        prop_assert!(a > 0.0 && a <= 1.0);
        prop_assert!(b <= a);
    }

    #[test]
    fn rho_satisfies_delay_equation(u in 1.1f64..8.0) {
        let h = 1e-5;
        let d = (dickman_rho(u + h, &cfg()).unwrap() - dickman_rho(u - h, &cfg()).unwrap()) / (2.0 * h);
        let rhs = -dickman_rho(u - 1.0, &cfg()).unwrap() / u;
        prop_assert!((d - rhs).abs() < 1e-6, "u = {u}: {d} vs {rhs}");
    }

    #[test]
    fn rho_matches_oracle(u in 1.0f64..5.0) {
        prop_assert!((dickman_rho(u, &cfg()).unwrap() - rho_nested(u)).abs() < 1e-8);
    }

    #[test]
    fn mu_decreasing_in_v(u in 0.2f64..4.0, v in 0.0f64..0.9, dv in 0.0f64..0.1, kappa in 0.3f64..2.5) {
        let top = u.min(1.0);
        prop_assume!(v + dv < top);
        let a = mu_closed(u, v, kappa, &cfg()).unwrap();
        let b = mu_closed(u, v + dv, kappa, &cfg()).unwrap();
        prop_assert!(b <= a + 1e-12);
        prop_assert!(a >= 0.0);
    }

    #[test]
    fn closed_matches_series(u in 0.2f64..3.5, v in 0.0f64..0.9, kappa in 0.3f64..2.5) {
        prop_assume!(v < u.min(1.0) - 1e-6);
        let a = mu_closed(u, v, kappa, &cfg()).unwrap();
        let b = mu_series(u, v, kappa, &cfg()).unwrap();
        prop_assert!((a - b).abs() < 1e-6, "u={u} v={v} κ={kappa}: {a} vs {b}");
    }

    #[test]
    fn rho_theta_below_rho(theta in 0.3f64..0.99, frac in 0.0f64..0.999) {
        let top = 1.0 / (1.0 - theta);
        let u = 1.0 + (top - 1.0) * frac;
        let p = ThetaProfile::linear(theta, "prop").unwrap();
        let r = rho_theta(u, &p, &cfg()).unwrap();
        let rho = dickman_rho(u, &cfg()).unwrap();
        prop_assert!(r <= rho + 1e-12 && r >= -1e-12);
        prop_assert!(rho - r <= (1.0 - theta) * u / gamma_eu(u + 1.0).unwrap() + 1e-9);
    }

    #[test]
    fn theorem_f_below_rho(u in 1.0001f64..2.6666) {
        let rho = dickman_rho(u, &cfg()).unwrap();
        prop_assert!(theorem_f(u, Regime::Pascadi58).unwrap() <= rho + 1e-12);
        if u <= 2.0 {
            let h = theorem_f(u, Regime::HarperHalf).unwrap();
            prop_assert!(h <= theorem_f(u, Regime::Pascadi58).unwrap() + 1e-12);
        }
    }

    #[test]
    fn saddle_residual_and_range(lx in 4.0f64..20.0, lz in 1.0f64..9.0) {
        let x = lx.exp();
        let z = lz.exp().max(2.0);
        if let Ok(ctx) = solve_saddle(x, z) {
            prop_assert!(ctx.alpha > 0.0 && ctx.alpha < 3.0);
            prop_assert!(ctx.residual.abs() <= 1e-9 * x.ln() + 1e-12);
        }
    }
}

#[test]
fn saddle_reference_values() {
    for (x, z, want) in [(1e6, 100.0, 0.60386), (1e8, 100.0, 0.52490), (1e6, 1000.0, 0.81077)] {
        let a = solve_saddle(x, z).unwrap().alpha;
        assert!((a - want).abs() < 1e-5, "α({x}, {z}) = {a}");
    }
}

#[test]
fn pascadi_reference_values() {
    assert!((theorem_f(1.6, Regime::Pascadi58).unwrap() - 0.4).abs() < 1e-15);
    assert!((theorem_f(2.0, Regime::Pascadi58).unwrap() - 0.116468607375477).abs() < 1e-14);
    assert!(theorem_f(8.0 / 3.0, Regime::Pascadi58).unwrap().abs() < 1e-14);
    assert!(theorem_f(2.1, Regime::HarperHalf).is_err());
}
