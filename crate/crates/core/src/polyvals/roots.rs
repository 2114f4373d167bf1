use num_rational::Ratio;

use super::modpoly::{eval_mod, reduce_coeffs, roots_mod_prime};
use super::{BinaryForm, IntPolynomial};
use crate::error::{capacity, domain, Result};
use crate::primes::{factorize, inv_mod, mul_mod};

/// Largest prime power for which roots are lifted by scanning candidates
/// (needed when `F'(r) ≡ 0 mod p` or `F` vanishes identically mod `p`).
pub const LIFT_SCAN_LIMIT: u64 = 1_000_000;

/// Roots of `coeffs` modulo `p^e` lying above the roots mod `p` accepted by `keep`.
pub(crate) fn roots_prime_power(coeffs: &[i64], p: u64, e: u32, keep: impl Fn(u64) -> bool) -> Result<Vec<u64>> {
    let base = match roots_mod_prime(&reduce_coeffs(coeffs, p), p) {
        Some(r) => r,
        None if p <= LIFT_SCAN_LIMIT => (0..p).collect(),
        None => return capacity(format!("polynomial vanishes identically mod {p}; scanning residues refused")),
    };
    let mut roots: Vec<u64> = base.into_iter().filter(|&r| keep(r)).collect();
    let deriv: Vec<i64> = coeffs.iter().enumerate().skip(1).map(|(i, &c)| c * i as i64).collect();
    let mut m = p;
    for _ in 1..e {
        let next = m * p;
        let mut lifted = Vec::with_capacity(roots.len());
        for &r in &roots {
            let d = eval_mod(&deriv, r, p);
            if d != 0 {
                // Newton step: the unique lift of a simple root
                let inv = inv_mod(eval_mod(&deriv, r, next), next).expect("derivative is a unit");
                let fr = eval_mod(coeffs, r, next);
                lifted.push((r + next - mul_mod(fr, inv, next)) % next);
            } else {
                if next > LIFT_SCAN_LIMIT {
                    return capacity(format!("degenerate root {r} mod {m}: lifting to {next} exceeds {LIFT_SCAN_LIMIT}"));
                }
                lifted.extend((0..p).map(|t| r + t * m).filter(|&c| eval_mod(coeffs, c, next) == 0));
            }
        }
        roots = lifted;
        m = next;
    }
    roots.sort_unstable();
    Ok(roots)
}

/// All residues `x ∈ [0, m)` with `F(x) ≡ 0 (mod m)`, sorted.
///
/// Roots modulo each prime power are found by root finding mod `p` and
/// Hensel lifting, then assembled by the Chinese remainder theorem.
pub fn roots_mod(f: &IntPolynomial, m: u64) -> Result<Vec<u64>> {
    if m == 0 {
        return domain("modulus must be at least 1");
    }
    let mut modulus = 1u64;
    let mut acc = vec![0u64];
    for (p, e) in factorize(m) {
        let q = p.pow(e);
        let local = roots_prime_power(f.coefficients(), p, e, |_| true)?;
        let inv = inv_mod(modulus % q, q).expect("coprime moduli");
        let mut next = Vec::with_capacity(acc.len() * local.len());
        for &a in &acc {
            for &b in &local {
                // x = a + modulus · ((b − a) · modulus⁻¹ mod q)
                let diff = (b as i128 - a as i128).rem_euclid(q as i128) as u64;
                let t = mul_mod(diff, inv, q);
                next.push(a + modulus * t);
            }
        }
        acc = next;
        modulus *= q;
    }
    acc.sort_unstable();
    Ok(acc)
}

/// `γ_F(d)`: the number of roots of `F` modulo `d`, assembled multiplicatively.
pub fn gamma_poly(f: &IntPolynomial, d: u64) -> Result<u64> {
    if d == 0 {
        return domain("d must be at least 1");
    }
    factorize(d)
        .into_iter()
        .try_fold(1u64, |acc, (p, e)| Ok(acc * roots_prime_power(f.coefficients(), p, e, |_| true)?.len() as u64))
}

/// `γ*(d) = #{1 ≤ α, β ≤ d : F(α, β) ≡ 0 (d), gcd(α, β, d) = 1} / d`.
///
/// At a prime power `p^a` the solution pairs split by whether `p ∤ β`
/// (then `α/β` is a root of `F(X, 1)`) or `p | β, p ∤ α` (then `β/α` is a
/// root of `F(1, Y)` divisible by `p`), so the count is `φ(p^a)(ρ₁ + ρ₂)`.
pub fn gamma_star(f: &BinaryForm, d: u64) -> Result<Ratio<u128>> {
    if d == 0 {
        return domain("d must be at least 1");
    }
    let mut count = 1u128;
    for (p, e) in factorize(d) {
        let q = p.pow(e);
        let rho1 = roots_prime_power(&f.dehomogenized_x(), p, e, |_| true)?.len() as u128;
        let rho2 = roots_prime_power(&f.dehomogenized_y(), p, e, |r| r == 0)?.len() as u128;
        count *= (q - q / p) as u128 * (rho1 + rho2);
    }
    Ok(Ratio::new(count, d as u128))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{gamma_star_count_brute, roots_brute};
    use crate::primes::{gcd, primes_up_to};

    #[test]
    fn roots_examples() {
        let f = IntPolynomial::x2_plus_1();
        assert_eq!(roots_mod(&f, 5).unwrap(), vec![2, 3]);
        assert!(roots_mod(&f, 3).unwrap().is_empty());
        assert_eq!(roots_mod(&f, 1).unwrap(), vec![0]);
        assert!(roots_mod(&f, 0).is_err());
        assert_eq!(roots_mod(&f, 65).unwrap(), roots_brute(&[1, 0, 1], 65));
    }

    #[test]
    fn gamma_examples() {
        let f = IntPolynomial::x2_plus_1();
        assert_eq!(gamma_poly(&f, 65).unwrap(), 4);
        assert_eq!(gamma_poly(&f, 4).unwrap(), 0);
        assert_eq!(gamma_poly(&f, 1).unwrap(), 1);
        assert_eq!(gamma_poly(&f, 2).unwrap(), 1);
    }

    #[test]
    fn roots_match_scan_for_several_polynomials() {
        let polys = [vec![1, 0, 1], vec![-2, 0, 0, 1], vec![0, 0, 4], vec![6, 5, 1], vec![12, 0, 0, 0, 1]];
        for c in polys {
            let f = IntPolynomial::new(c.clone()).unwrap();
            for m in 1..=3000 {
                assert_eq!(roots_mod(&f, m).unwrap(), roots_brute(&c, m), "F = {c:?}, m = {m}");
            }
        }
    }

    #[test]
    fn hensel_stability_for_x2_plus_1() {
        let f = IntPolynomial::x2_plus_1();
        for p in primes_up_to(100).into_iter().skip(1) {
            let g = gamma_poly(&f, p).unwrap();
            for a in 2..=4 {
                assert_eq!(gamma_poly(&f, p.pow(a)).unwrap(), g, "p = {p}, a = {a}");
            }
        }
    }

    #[test]
    fn degenerate_lifting_is_bounded() {
        // X² has the degenerate root 0 at every prime
        let f = IntPolynomial::new(vec![0, 0, 1]).unwrap();
        assert_eq!(gamma_poly(&f, 1 << 10).unwrap(), 32);
        assert!(matches!(gamma_poly(&f, 1009u64.pow(2)), Err(crate::Error::Capacity(_))));
    }

    #[test]
    fn gamma_star_matches_pair_scan() {
        let forms = [vec![1, 0, 1], vec![2, 1, 0, 1], vec![1, 0, 0, 0, 1], vec![3, 0, 5, 0, 0, 2]];
        for c in forms {
            let f = BinaryForm::new(c.clone()).unwrap();
            assert_eq!(gamma_star(&f, 1).unwrap(), Ratio::from_integer(1));
            for d in 1..=60u64 {
                let brute = Ratio::new(gamma_star_count_brute(&c, d) as u128, d as u128);
                assert_eq!(gamma_star(&f, d).unwrap(), brute, "F = {c:?}, d = {d}");
            }
            for m in 1..=30u64 {
                for n in 1..=30u64 {
                    if gcd(m, n) == 1 {
                        let prod = gamma_star(&f, m).unwrap() * gamma_star(&f, n).unwrap();
                        assert_eq!(gamma_star(&f, m * n).unwrap(), prod);
                    }
                }
            }
        }
        let f = BinaryForm::new(vec![1, 0, 1]).unwrap();
        assert_eq!(gamma_star(&f, 5).unwrap(), Ratio::new(gamma_star_count_brute(&[1, 0, 1], 5) as u128, 5));
    }
}
