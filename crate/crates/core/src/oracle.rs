//! Brute-force reference implementations.
//!
//! Everything here is deliberately naive and shares no code path with the
//! evaluators and counters it is used to check: trial division instead of
//! sieving, residue scans instead of Hensel lifting and root finding, nested
//! Gauss–Legendre quadrature of the defining delay integral instead of the
//! grid solver.

use crate::quadrature::gauss_legendre;

/// Largest prime factor by trial division, `P⁺(1) = 1`.
pub fn lpf_trial(mut n: u64) -> u64 {
    let mut largest = 1;
    let mut d = 2;
    while d * d <= n {
        while n % d == 0 {
            largest = d;
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        largest = largest.max(n);
    }
    largest
}

/// `Ψ(x, y)` by trial division of every `n ≤ x`.
pub fn psi_trial(x: u64, y: u64) -> u64 {
    (1..=x).filter(|&n| lpf_trial(n) <= y).count() as u64
}

fn eval_poly_i128(coeffs: &[i64], n: i128) -> i128 {
    coeffs.iter().rev().fold(0i128, |acc, &c| acc * n + c as i128)
}

/// Residues `r ∈ [0, m)` with `F(r) ≡ 0 (mod m)`, by scanning all residues.
pub fn roots_brute(coeffs: &[i64], m: u64) -> Vec<u64> {
    (0..m).filter(|&r| eval_poly_i128(coeffs, r as i128).rem_euclid(m as i128) == 0).collect()
}

/// `Ψ_F(x, y)` by factoring each `|F(n)|` with trial division.
pub fn psi_poly_trial(coeffs: &[i64], x: u64, y: u64) -> u64 {
    (1..=x)
        .filter(|&n| {
            let v = eval_poly_i128(coeffs, n as i128).unsigned_abs() as u64;
            v != 0 && lpf_trial(v) <= y
        })
        .count() as u64
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn eval_form(coeffs: &[i64], a: i128, b: i128) -> i128 {
    // coeffs[i] multiplies X^i Y^(t−i)
    let t = coeffs.len() - 1;
    coeffs.iter().enumerate().map(|(i, &c)| c as i128 * a.pow(i as u32) * b.pow((t - i) as u32)).sum()
}

/// Pairs `1 ≤ a, b ≤ x` with `F(a, b) ≠ 0` and `P⁺(|F(a, b)|) ≤ y`, by trial division.
pub fn psi_binary_trial(coeffs: &[i64], x: u64, y: u64, coprime_only: bool) -> u64 {
    let mut count = 0;
    for a in 1..=x {
        for b in 1..=x {
            if coprime_only && gcd(a, b) != 1 {
                continue;
            }
            let v = eval_form(coeffs, a as i128, b as i128).unsigned_abs() as u64;
            if v != 0 && lpf_trial(v) <= y {
                count += 1;
            }
        }
    }
    count
}

/// Number of pairs `(α, β) ∈ [1, d]²` with `F(α, β) ≡ 0 (mod d)` and `gcd(α, β, d) = 1`.
pub fn gamma_star_count_brute(coeffs: &[i64], d: u64) -> u64 {
    let mut count = 0;
    for a in 1..=d {
        for b in 1..=d {
            if gcd(gcd(a, b), d) == 1 && eval_form(coeffs, a as i128, b as i128).rem_euclid(d as i128) == 0 {
                count += 1;
            }
        }
    }
    count
}

/// `#{n ≤ x : P⁺(n) ≤ y1, n + a ≥ 1, P⁺(n + a) ≤ y2}` by trial division.
pub fn psi_pairs_trial(x: u64, a: i64, y1: u64, y2: u64) -> u64 {
    (1..=x)
        .filter(|&n| {
            let m = n as i64 + a;
            m >= 1 && lpf_trial(n) <= y1 && lpf_trial(m as u64) <= y2
        })
        .count() as u64
}

const RHO_NODES: usize = 20;

/// Dickman's `ρ(u)` from its definition alone: `ρ = 1` on `[0, 1]` and
/// `ρ(u) = ρ(k) − ∫_k^u ρ(s − 1) ds / s` for `k < u ≤ k + 1`, every integral
/// evaluated by a 20-point Gauss–Legendre rule (nested `⌊u⌋` levels deep).
pub fn rho_nested(u: f64) -> f64 {
    let (x, w) = gauss_legendre(RHO_NODES);
    let top = u.ceil().max(1.0) as usize;
    let mut at_integer = vec![1.0; top + 1];
    for k in 2..=top {
        at_integer[k] = rho_rec(k as f64, &at_integer, &x, &w);
    }
    rho_rec(u, &at_integer, &x, &w)
}

fn rho_rec(u: f64, at_integer: &[f64], x: &[f64], w: &[f64]) -> f64 {
    if u <= 1.0 {
        return 1.0;
    }
    let k = (u.ceil() - 1.0).max(1.0);
    let half = 0.5 * (u - k);
    let mid = 0.5 * (u + k);
    let mut integral = 0.0;
    for (xi, wi) in x.iter().zip(w) {
        let s = mid + half * xi;
        integral += wi * rho_rec(s - 1.0, at_integer, x, w) / s;
    }
    at_integer[k as usize] - half * integral
}
