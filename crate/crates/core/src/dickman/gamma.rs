use crate::error::{domain, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Euler's `Γ(x)` for `x > 0` (Lanczos approximation).
pub fn gamma_eu(x: f64) -> Result<f64> {
    if !(x.is_finite() && x > 0.0) {
        return domain(format!("gamma requires a finite positive argument, got {x}"));
    }
    if x < 0.5 {
        return Ok(lanczos(x + 1.0) / x);
    }
    Ok(lanczos(x))
}

fn lanczos(x: f64) -> f64 {
    let z = x - 1.0;
    let mut a = LANCZOS[0];
    let t = z + LANCZOS_G + 0.5;
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    (2.0 * std::f64::consts::PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::gauss_legendre_integrate;

    #[test]
    fn factorials() {
        assert!((gamma_eu(1.0).unwrap() - 1.0).abs() < 1e-14);
        assert!((gamma_eu(5.0).unwrap() - 24.0).abs() < 24.0 * 1e-13);
        let mut f = 1.0;
        for n in 1..20 {
            f *= n as f64;
            let g = gamma_eu(n as f64 + 1.0).unwrap();
            assert!((g - f).abs() <= 1e-12 * f, "n={n}");
        }
    }

    #[test]
    fn half_integer_against_integral() {
        // Γ(x) = 2 ∫_0^∞ s^{2x−1} e^{−s²} ds, integrated on [0, 12]
        for &x in &[0.5, 1.5, 2.3, 3.7] {
            let f = |s: f64| 2.0 * s.powf(2.0 * x - 1.0) * (-s * s).exp();
            let oracle = gauss_legendre_integrate(&f, 0.0, 12.0, 20, 64);
            let g = gamma_eu(x).unwrap();
            assert!((g - oracle).abs() <= 1e-10 * oracle, "x={x}: {g} vs {oracle}");
        }
        assert!((gamma_eu(0.5).unwrap() - std::f64::consts::PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn small_arguments_and_errors() {
        let g = gamma_eu(0.1).unwrap();
        assert!((g - 9.513_507_698_668_732).abs() < 1e-12);
        assert!(gamma_eu(0.0).is_err());
        assert!(gamma_eu(-1.0).is_err());
    }
}
