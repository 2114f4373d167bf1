use rayon::prelude::*;

use super::modpoly::{reduce_coeffs, roots_mod_prime};
use super::{BinaryForm, IntPolynomial};
use crate::error::{capacity, domain, Result};
use crate::primes::{cofactor_smooth, gcd, isqrt, mul_mod, primes_up_to};
use crate::sieve::SEGMENT;

/// Cap on the primes divided out by the value sieves; larger prime factors
/// of a residual are resolved by factoring it.
const VALUE_SIEVE_LIMIT: u64 = 1 << 24;
/// Cap for the binary-form row sieve, where each prime costs work on every row.
const ROW_SIEVE_LIMIT: u64 = 1 << 16;
/// Values must stay below this bound.
const VALUE_LIMIT: u128 = 1 << 63;

/// Roots of `coeffs` mod each prime `≤ bound`; `None` marks a polynomial
/// vanishing identically mod `p`.
fn root_table(coeffs: &[i64], bound: u64) -> Vec<(u64, Option<Vec<u64>>)> {
    primes_up_to(bound).into_par_iter().map(|p| (p, roots_mod_prime(&reduce_coeffs(coeffs, p), p))).collect()
}

fn divide_fully(r: &mut u64, p: u64) {
    if *r != 0 {
        while *r % p == 0 {
            *r /= p;
        }
    }
}

/// `Ψ_F(x, y) = #{n ≤ x : F(n) ≠ 0, P⁺(|F(n)|) ≤ y}`.
///
/// Value sieve: the residuals `|F(n)|` are divided by every prime `p` up to
/// `min(y, √max|F|)` at the positions `n ≡ r (mod p)` for the roots `r` of
/// `F` mod `p`. Since every `n` with `p | F(n)` lies in such a class, what
/// remains is the part of `|F(n)|` free of sieved primes.
pub fn psi_poly(f: &IntPolynomial, x: u64, y: u64) -> Result<u64> {
    if x == 0 || y == 0 {
        return domain("x and y must be at least 1");
    }
    let mut max = 0u128;
    for n in 1..=x {
        let v = f.eval(n as i128).map(i128::unsigned_abs).filter(|&v| v < VALUE_LIMIT);
        match v {
            Some(v) => max = max.max(v),
            None => return capacity(format!("|F({n})| does not fit in 63 bits")),
        }
    }
    let bound = y.min(isqrt(max as u64)).min(VALUE_SIEVE_LIMIT);
    let table = root_table(f.coefficients(), bound);
    let segments = x.div_ceil(SEGMENT);
    let count = (0..segments)
        .into_par_iter()
        .map(|s| {
            let lo = s * SEGMENT + 1;
            let hi = (lo + SEGMENT - 1).min(x);
            let mut rest: Vec<u64> = (lo..=hi).map(|n| f.eval(n as i128).unwrap().unsigned_abs() as u64).collect();
            for (p, roots) in &table {
                let p = *p;
                match roots {
                    Some(roots) => {
                        for &r in roots {
                            let mut n = lo + (r + p - lo % p) % p;
                            while n <= hi {
                                divide_fully(&mut rest[(n - lo) as usize], p);
                                n += p;
                            }
                        }
                    }
                    None => rest.iter_mut().for_each(|r| divide_fully(r, p)),
                }
            }
            rest.into_iter().filter(|&r| r != 0 && cofactor_smooth(r, y, bound)).count() as u64
        })
        .sum();
    Ok(count)
}

/// `Ψ_F(x, y) = #{1 ≤ a, b ≤ x : F(a, b) ≠ 0, P⁺(|F(a, b)|) ≤ y}`, restricted
/// to `gcd(a, b) = 1` when `coprime_only` is set.
///
/// Row sieve: for fixed `b` and prime `p ∤ b`, `p | F(a, b)` iff `a ≡ r b`
/// with `r` a root of `F(X, 1)` mod `p`; for `p | b` it reduces to `p | a_t a^t`.
pub fn psi_binary(f: &BinaryForm, x: u64, y: u64, coprime_only: bool) -> Result<u64> {
    if x == 0 || y == 0 {
        return domain("x and y must be at least 1");
    }
    let xi = x as i128;
    let bound_value: u128 = f
        .coefficients()
        .iter()
        .map(|&c| c.unsigned_abs() as u128)
        .sum::<u128>()
        .saturating_mul((x as u128).saturating_pow(f.degree() as u32));
    if bound_value >= VALUE_LIMIT {
        // the coarse bound fails: check the values themselves
        for a in 1..=xi {
            for b in 1..=xi {
                if f.eval(a, b).map(i128::unsigned_abs).filter(|&v| v < VALUE_LIMIT).is_none() {
                    return capacity(format!("|F({a}, {b})| does not fit in 63 bits"));
                }
            }
        }
    }
    let max = bound_value.min(VALUE_LIMIT - 1) as u64;
    let bound = y.min(isqrt(max)).min(ROW_SIEVE_LIMIT);
    let table = root_table(&f.dehomogenized_x(), bound);
    let lead = *f.coefficients().last().expect("nonempty");
    let count = (1..=x)
        .into_par_iter()
        .map(|b| {
            let mut rest: Vec<u64> = (1..=x).map(|a| f.eval(a as i128, b as i128).unwrap().unsigned_abs() as u64).collect();
            for (p, roots) in &table {
                let p = *p;
                let all = |rest: &mut Vec<u64>| rest.iter_mut().for_each(|r| divide_fully(r, p));
                if b % p == 0 {
                    if (lead as i128).rem_euclid(p as i128) == 0 {
                        all(&mut rest);
                    } else {
                        let mut a = p;
                        while a <= x {
                            divide_fully(&mut rest[(a - 1) as usize], p);
                            a += p;
                        }
                    }
                    continue;
                }
                match roots {
                    Some(roots) => {
                        for &r in roots {
                            let start = mul_mod(r, b % p, p);
                            let mut a = if start == 0 { p } else { start };
                            while a <= x {
                                divide_fully(&mut rest[(a - 1) as usize], p);
                                a += p;
                            }
                        }
                    }
                    None => all(&mut rest),
                }
            }
            rest.into_iter()
                .enumerate()
                .filter(|&(i, r)| {
                    let a = i as u64 + 1;
                    r != 0 && (!coprime_only || gcd(a, b) == 1) && cofactor_smooth(r, y, bound)
                })
                .count() as u64
        })
        .sum();
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{psi_binary_trial, psi_poly_trial};

    #[test]
    fn psi_poly_examples() {
        let f = IntPolynomial::x2_plus_1();
        assert_eq!(psi_poly(&f, 5, 30).unwrap(), 5);
        assert_eq!(psi_poly(&f, 5, 3).unwrap(), 1);
        assert_eq!(psi_poly(&f, 100, 10_001).unwrap(), 100);
    }

    #[test]
    fn psi_poly_matches_trial_division() {
        let polys = [vec![1, 0, 1], vec![-7, 3, 0, 1], vec![0, -5, 1], vec![6, 0, 0, 0, 2]];
        for c in polys {
            let f = IntPolynomial::new(c.clone()).unwrap();
            for y in [2, 10, 100, 1000, 100_000] {
                assert_eq!(psi_poly(&f, 2000, y).unwrap(), psi_poly_trial(&c, 2000, y), "F = {c:?}, y = {y}");
            }
        }
    }

    #[test]
    fn psi_poly_overflow() {
        let f = IntPolynomial::new(vec![0, 0, 0, 0, 0, 0, 0, 1]).unwrap();
        assert!(matches!(psi_poly(&f, 1000, 10), Err(crate::Error::Capacity(_))));
    }

    #[test]
    fn psi_binary_matches_trial_division() {
        let forms = [vec![1, 0, 1], vec![1, 1, 1, 2], vec![-3, 0, 0, 0, 1], vec![2, 0, 4]];
        for c in forms {
            let f = BinaryForm::new(c.clone()).unwrap();
            for y in [3, 10, 100, 1_000_000] {
                for coprime in [false, true] {
                    let got = psi_binary(&f, 60, y, coprime).unwrap();
                    assert_eq!(got, psi_binary_trial(&c, 60, y, coprime), "F = {c:?}, y = {y}");
                }
            }
        }
    }

    #[test]
    fn psi_binary_examples() {
        let f = BinaryForm::new(vec![1, 0, 1]).unwrap();
        assert_eq!(psi_binary(&f, 3, 5, true).unwrap(), psi_binary_trial(&[1, 0, 1], 3, 5, true));
        assert_eq!(psi_binary(&f, 10, 200, false).unwrap(), 100);
        assert!(psi_binary(&f, 30, 7, true).unwrap() <= psi_binary(&f, 30, 7, false).unwrap());
    }
}
