use serde::Serialize;

use super::{q_factor, FiniteSet, InequalityCheck, SmoothView, RELATIVE_SLACK};
use crate::error::{capacity, domain, Result};
use crate::primes::factorize;
use crate::sieve::von_mangoldt;

/// Largest number of prime tuples [`check_recursion`] may visit, measured as `π(y)^k`.
pub const SUMMAND_BUDGET: f64 = 1e9;

/// Both sides of the generalised Hildebrand identity and the corollary bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HildebrandReport {
    /// `Ψ_A(y) log x`.
    pub lhs: f64,
    /// `Σ_{n ∈ S_A(y)} log(x/n) + Σ_{d ≤ x, P⁺(d) ≤ y} Λ(d) Ψ_A(y, d)`.
    pub rhs: f64,
    /// `Σ_{p ≤ y} Ψ_A(y, p) log p`.
    pub corollary_rhs: f64,
    pub identity_holds: bool,
    pub corollary_holds: bool,
}

/// Evaluates both sides of `Ψ_A(y) log x = ∫₁ˣ Ψ_{A≤t}(y) dt/t + Σ Λ(d) Ψ_A(y, d)`,
/// the integral being `Σ_{n ∈ S_A(y)} log(x/n)` for the step function.
pub fn hildebrand_check(a: &FiniteSet, y: u64) -> Result<HildebrandReport> {
    let view = a.at(y)?;
    let x = view.x();
    let lhs = view.psi() as f64 * x.ln();
    let integral: f64 = a
        .elements()
        .iter()
        .zip(&a.lpf)
        .filter(|&(_, &p)| p <= y)
        .map(|(&n, _)| (x / n as f64).ln())
        .sum();
    // prime powers among the divisors of smooth elements, Λ evaluated afresh
    let mut terms: Vec<(u64, u64)> = view.smooth_divisors().filter(|&(d, _)| d > 1).collect();
    terms.sort_unstable();
    let lambda_sum: f64 = terms.iter().map(|&(d, c)| von_mangoldt(d) * c as f64).sum();
    let rhs = integral + lambda_sum;
    let corollary_rhs: f64 = view.primes().iter().map(|&p| view.psi_d(p) as f64 * (p as f64).ln()).sum();
    let identity_holds = (lhs - rhs).abs() <= RELATIVE_SLACK * lhs.abs().max(1e-300) || (lhs == 0.0 && rhs.abs() < 1e-12);
    let corollary_holds = lhs >= corollary_rhs - RELATIVE_SLACK * lhs.abs();
    Ok(HildebrandReport { lhs, rhs, corollary_rhs, identity_holds, corollary_holds })
}

/// Compares `Ψ_A(y, d)` with `A_d` for every `y`-smooth `d ≥ x/y` dividing an
/// element of `A`; returns the number of moduli compared and the mismatches.
pub fn lemma_large_divisor_check(view: &SmoothView<'_>) -> (usize, Vec<u64>) {
    let x = view.set().x_sup() as u128;
    let y = view.y();
    let mut checked = 0;
    let mut mismatches = Vec::new();
    let mut ds: Vec<(u64, u64)> = view.all_divisors().collect();
    ds.sort_unstable();
    for (d, a_d) in ds {
        if (d as u128) * (y as u128) < x {
            continue;
        }
        if factorize(d).last().is_some_and(|&(p, _)| p > y) {
            continue;
        }
        checked += 1;
        if view.psi_d(d) != a_d {
            mismatches.push(d);
        }
    }
    (checked, mismatches)
}

/// `T(y, n) ≥ Σ_{p ≤ y, np ≤ x/y} log p / log(x/(pn)) · T(y, pn) + R(y, n)`.
pub fn check_single_step(view: &SmoothView<'_>, n: u64) -> Result<InequalityCheck> {
    let lhs = view.t_fn(n)?;
    let x = view.set().x_sup();
    let y = view.y();
    let mut rhs = view.r_unchecked(n);
    for &p in view.primes() {
        let pn = n.saturating_mul(p);
        if pn as u128 * y as u128 > x as u128 {
            break;
        }
        rhs += (p as f64).ln() / (x as f64 / pn as f64).ln() * view.t_unchecked(pn);
    }
    Ok(InequalityCheck::new(format!("single_step(n={n})"), lhs, rhs))
}

/// `T(y, 1) ≥ R(y, 1) + Σ_{i ≤ k} Σ_{p₁⋯p_i ≤ x/y} Q(x; p₁, …, p_i) R(y, p₁⋯p_i)`
/// over ordered tuples of primes `≤ y`, both sides evaluated exactly.
pub fn check_recursion(view: &SmoothView<'_>, k: usize) -> Result<InequalityCheck> {
    if !(1..=3).contains(&k) {
        return domain(format!("k = {k} must lie in {{1, 2, 3}}"));
    }
    if (view.primes().len() as f64).powi(k as i32) > SUMMAND_BUDGET {
        return capacity(format!("π(y)^k exceeds the budget of {SUMMAND_BUDGET} summands"));
    }
    let lhs = view.t_unchecked(1);
    let x = view.set().x_sup();
    let mut rhs = view.r_unchecked(1);
    let mut tuple = Vec::with_capacity(k);
    walk(view, x, k, 1, &mut tuple, &mut rhs)?;
    Ok(InequalityCheck::new(format!("recursion(k={k})"), lhs, rhs))
}

fn walk(view: &SmoothView<'_>, x: u64, k: usize, prod: u64, tuple: &mut Vec<u64>, acc: &mut f64) -> Result<()> {
    let y = view.y() as u128;
    for &p in view.primes() {
        let next = prod.saturating_mul(p);
        if next as u128 * y > x as u128 {
            break;
        }
        tuple.push(p);
        *acc += q_factor(x as f64, tuple)? * view.r_unchecked(next);
        if tuple.len() < k {
            walk(view, x, k, next, tuple, acc)?;
        }
        tuple.pop();
    }
    Ok(())
}
