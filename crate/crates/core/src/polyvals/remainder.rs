use std::collections::BTreeMap;

use serde::Serialize;

use super::roots::{gamma_star, roots_mod};
use super::{BinaryForm, IntPolynomial};
use crate::error::{capacity, domain, Result};
use crate::primes::{gcd, mul_mod, pow_mod, reduce};

/// Largest `D` accepted by [`remainder_binary_report`], which scans `d²` residue pairs per modulus.
pub const BINARY_REMAINDER_LIMIT: u64 = 1000;

/// `#{1 ≤ n ≤ x : n ≡ r (mod d)}` for `0 ≤ r < d`.
pub fn count_in_class(x: u64, r: u64, d: u64) -> u64 {
    if r == 0 {
        x / d
    } else if r > x {
        0
    } else {
        (x - r) / d + 1
    }
}

/// Residuals `r_d` for `d ≤ D` together with their absolute sum and the
/// target `X / (log y)^δ` of the level-of-distribution condition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RemainderReport {
    pub d_max: u64,
    pub x_norm: f64,
    pub entries: BTreeMap<u64, f64>,
    pub abs_sum: f64,
    pub target: f64,
}

impl RemainderReport {
    fn new(d_max: u64, x_norm: f64, entries: BTreeMap<u64, f64>, y: f64, delta: f64) -> Self {
        let abs_sum = entries.values().map(|r| r.abs()).sum();
        RemainderReport { d_max, x_norm, entries, abs_sum, target: x_norm / y.ln().powf(delta) }
    }

    pub(crate) fn from_entries(d_max: u64, x_norm: f64, entries: BTreeMap<u64, f64>, y: f64, delta: f64) -> Result<Self> {
        check_report_args(d_max, y, delta)?;
        Ok(Self::new(d_max, x_norm, entries, y, delta))
    }

    /// `abs_sum / target`.
    pub fn ratio(&self) -> f64 {
        self.abs_sum / self.target
    }
}

fn check_report_args(d_max: u64, y: f64, delta: f64) -> Result<()> {
    if d_max == 0 {
        return domain("D must be at least 1");
    }
    if !(y > 1.0 && y.is_finite()) {
        return domain("y must exceed 1");
    }
    if !(delta > 0.0 && delta.is_finite()) {
        return domain("delta must be positive");
    }
    Ok(())
}

/// `r_d = A_d − γ_F(d) x / d` with `A_d = #{n ≤ x : d | F(n)}` counted exactly
/// from the roots of `F` mod `d`.
pub fn remainder_poly(f: &IntPolynomial, d: u64, x: u64) -> Result<f64> {
    let roots = roots_mod(f, d)?;
    let a_d: u64 = roots.iter().map(|&r| count_in_class(x, r, d)).sum();
    Ok(a_d as f64 - roots.len() as f64 * x as f64 / d as f64)
}

/// `F(α, β) mod d`.
fn form_mod(coeffs: &[i64], alpha: u64, beta: u64, d: u64) -> u64 {
    let t = coeffs.len() as u64 - 1;
    coeffs.iter().enumerate().fold(0u64, |acc, (i, &c)| {
        let term = mul_mod(pow_mod(alpha, i as u64, d), pow_mod(beta, t - i as u64, d), d);
        (acc + mul_mod(reduce(c as i128, d), term, d)) % d
    })
}

/// [`remainder_poly`] for every `d ≤ D`, normalised by `X = x`.
pub fn remainder_poly_report(f: &IntPolynomial, x: u64, d_max: u64, y: f64, delta: f64) -> Result<RemainderReport> {
    check_report_args(d_max, y, delta)?;
    let entries = (1..=d_max).map(|d| Ok((d, remainder_poly(f, d, x)?))).collect::<Result<BTreeMap<_, _>>>()?;
    Ok(RemainderReport::new(d_max, x as f64, entries, y, delta))
}

/// Residuals `A*_d − γ*(d) x² / d` for the pairs `1 ≤ a, b ≤ x`, where
/// `A*_d` counts pairs with `d | F(a, b)` and `gcd(a, b, d) = 1` (the
/// condition under which `γ*(d)/d` is the proportion of such pairs).
pub fn remainder_binary_report(f: &BinaryForm, x: u64, d_max: u64, y: f64, delta: f64) -> Result<RemainderReport> {
    check_report_args(d_max, y, delta)?;
    if d_max > BINARY_REMAINDER_LIMIT {
        return capacity(format!("D = {d_max} exceeds {BINARY_REMAINDER_LIMIT} for the pair scan"));
    }
    let mut entries = BTreeMap::new();
    for d in 1..=d_max {
        let classes: Vec<u64> = (0..d).map(|r| count_in_class(x, r, d)).collect();
        let mut a_d = 0u64;
        for alpha in 0..d {
            for beta in 0..d {
                if gcd(gcd(alpha, beta), d) != 1 {
                    continue;
                }
                let v = form_mod(f.coefficients(), alpha, beta, d);
                if v == 0 {
                    a_d += classes[alpha as usize] * classes[beta as usize];
                }
            }
        }
        let g = gamma_star(f, d)?;
        let main = *g.numer() as f64 / *g.denom() as f64 * (x as f64).powi(2) / d as f64;
        entries.insert(d, a_d as f64 - main);
    }
    Ok(RemainderReport::new(d_max, (x as f64).powi(2), entries, y, delta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyvals::gamma_poly;

    #[test]
    fn class_counts() {
        assert_eq!(count_in_class(10, 0, 5), 2);
        assert_eq!(count_in_class(10, 3, 5), 2);
        assert_eq!(count_in_class(2, 3, 5), 0);
        assert_eq!(count_in_class(10, 0, 1), 10);
        let total: u64 = (0..7).map(|r| count_in_class(100, r, 7)).sum();
        assert_eq!(total, 100);
    }

    #[test]
    fn remainder_examples() {
        let f = IntPolynomial::x2_plus_1();
        assert_eq!(remainder_poly(&f, 3, 100).unwrap(), 0.0);
        assert_eq!(remainder_poly(&f, 5, 100).unwrap(), 0.0);
        for d in 1..=1000 {
            let r = remainder_poly(&f, d, 1_000_000).unwrap();
            assert!(r.abs() <= gamma_poly(&f, d).unwrap() as f64 + 1e-9, "d = {d}");
        }
    }

    #[test]
    fn report_totals() {
        let f = IntPolynomial::x2_plus_1();
        let rep = remainder_poly_report(&f, 10_000, 200, 100.0, 1.0).unwrap();
        assert_eq!(rep.entries.len(), 200);
        let s: f64 = rep.entries.values().map(|r| r.abs()).sum();
        assert!((s - rep.abs_sum).abs() < 1e-9);
        assert!((rep.target - 10_000.0 / 100f64.ln()).abs() < 1e-9);
        assert!(remainder_poly_report(&f, 10, 0, 100.0, 1.0).is_err());
    }

    #[test]
    fn binary_report_against_pair_count() {
        let f = BinaryForm::new(vec![1, 0, 1]).unwrap();
        let x = 50u64;
        let rep = remainder_binary_report(&f, x, 12, 10.0, 1.0).unwrap();
        for (&d, &r) in &rep.entries {
            let mut a_d = 0u64;
            for a in 1..=x {
                for b in 1..=x {
                    if gcd(gcd(a, b), d) == 1 && (a * a + b * b) % d == 0 {
                        a_d += 1;
                    }
                }
            }
            let g = gamma_star(&f, d).unwrap();
            let main = *g.numer() as f64 / *g.denom() as f64 * (x * x) as f64 / d as f64;
            assert!((r - (a_d as f64 - main)).abs() < 1e-9, "d = {d}");
        }
        assert!(remainder_binary_report(&f, x, 2000, 10.0, 1.0).is_err());
    }
}
