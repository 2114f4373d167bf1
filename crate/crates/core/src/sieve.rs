//! Exact enumeration of smooth integers.
//!
//! Every counter here works on segments of consecutive integers: each entry of
//! a segment starts as `n`, primes up to a bound are divided out completely at
//! their multiples, and what remains is either `1` or a prime cofactor.

use rayon::prelude::*;

use crate::error::{capacity, domain, Result};
use crate::primes::{factorize, gcd, isqrt, primes_up_to};

/// Largest segment accepted by [`lpf_sieve`] and [`smooth_mask`].
pub const MAX_SEGMENT: u64 = 1 << 26;
/// Segment length used by the parallel counters.
pub const SEGMENT: u64 = 1 << 22;

/// Largest prime factors `P⁺(n)` of the integers `base, base + 1, …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothTable {
    pub base: u64,
    pub values: Vec<u64>,
}

impl SmoothTable {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `P⁺(n)` for `n` inside the table.
    pub fn get(&self, n: u64) -> Option<u64> {
        n.checked_sub(self.base).and_then(|i| self.values.get(i as usize).copied())
    }
}

fn check_range(lo: u64, hi: u64) -> Result<()> {
    if lo == 0 || lo > hi {
        return domain(format!("need 1 ≤ lo ≤ hi, got lo = {lo}, hi = {hi}"));
    }
    if hi - lo >= MAX_SEGMENT {
        return capacity(format!("segment [{lo}, {hi}] exceeds {MAX_SEGMENT} entries"));
    }
    Ok(())
}

/// Divides every prime of `primes` out of the entries of `[lo, lo + len)`,
/// calling `hit(index, p)` once per prime divisor, in increasing order of `p`.
/// Returns the cofactors.
fn divide_out(lo: u64, len: usize, primes: &[u64], mut hit: impl FnMut(usize, u64)) -> Vec<u64> {
    let mut rest: Vec<u64> = (lo..lo + len as u64).collect();
    let hi = lo + len as u64 - 1;
    for &p in primes {
        let mut n = lo.div_ceil(p) * p;
        while n <= hi {
            let i = (n - lo) as usize;
            let r = &mut rest[i];
            *r /= p;
            while *r % p == 0 {
                *r /= p;
            }
            hit(i, p);
            n += p;
        }
    }
    rest
}

/// Table of `P⁺(n)` for `lo ≤ n ≤ hi`.
pub fn lpf_sieve(lo: u64, hi: u64) -> Result<SmoothTable> {
    check_range(lo, hi)?;
    let primes = primes_up_to(isqrt(hi));
    let len = (hi - lo + 1) as usize;
    let mut values = vec![1u64; len];
    let rest = divide_out(lo, len, &primes, |i, p| values[i] = p);
    for (v, r) in values.iter_mut().zip(rest) {
        if r > 1 {
            *v = r;
        }
    }
    Ok(SmoothTable { base: lo, values })
}

/// Sieving primes sufficient to decide `y`-smoothness of integers up to `hi`.
pub(crate) fn sieving_primes(hi: u64, y: u64) -> Vec<u64> {
    primes_up_to(isqrt(hi).min(y))
}

/// Smoothness flags for `[lo, lo + len)` given primes `≤ min(y, √hi)`.
pub(crate) fn smooth_flags(lo: u64, len: usize, y: u64, primes: &[u64]) -> Vec<bool> {
    divide_out(lo, len, primes, |_, _| ()).into_iter().map(|r| r <= y).collect()
}

/// Flags `P⁺(n) ≤ y` for `lo ≤ n ≤ hi`.
pub fn smooth_mask(lo: u64, hi: u64, y: u64) -> Result<Vec<bool>> {
    check_range(lo, hi)?;
    let primes = sieving_primes(hi, y);
    Ok(smooth_flags(lo, (hi - lo + 1) as usize, y, &primes))
}

/// Counts `y`-smooth `n ≤ x` satisfying `keep(n)`, over parallel segments.
fn count_smooth(x: u64, y: u64, keep: impl Fn(u64) -> bool + Sync) -> u64 {
    if x == 0 {
        return 0;
    }
    let primes = sieving_primes(x, y);
    let segments = x.div_ceil(SEGMENT);
    (0..segments)
        .into_par_iter()
        .map(|s| {
            let lo = s * SEGMENT + 1;
            let len = (x - lo + 1).min(SEGMENT) as usize;
            smooth_flags(lo, len, y, &primes)
                .into_iter()
                .enumerate()
                .filter(|&(i, smooth)| smooth && keep(lo + i as u64))
                .count() as u64
        })
        .sum()
}

/// `Ψ(x, y) = #{1 ≤ n ≤ x : P⁺(n) ≤ y}`.
pub fn psi(x: u64, y: u64) -> u64 {
    if y >= x {
        return x;
    }
    count_smooth(x, y, |_| true)
}

/// A smooth-count query, optionally restricted to a residue class or to
/// integers coprime to the modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PsiQuery {
    pub x: u64,
    pub y: u64,
    pub modulus: Option<u64>,
    pub residue: Option<u64>,
    pub coprime_only: bool,
}

impl PsiQuery {
    pub fn progression(x: u64, y: u64, residue: u64, modulus: u64) -> Self {
        PsiQuery { x, y, modulus: Some(modulus), residue: Some(residue), coprime_only: false }
    }

    pub fn validate(&self) -> Result<()> {
        if self.x == 0 || self.y == 0 {
            return domain("x and y must be at least 1");
        }
        match (self.modulus, self.residue) {
            (Some(0), _) => domain("modulus must be at least 1"),
            (Some(q), Some(a)) if a >= q => domain(format!("residue {a} must lie in [0, {q})")),
            (None, Some(_)) => domain("a residue needs a modulus"),
            (None, None) if self.coprime_only => domain("coprime_only needs a modulus"),
            _ => Ok(()),
        }
    }

    /// Exact count of the smooth integers selected by the query.
    pub fn count(&self) -> Result<u64> {
        self.validate()?;
        let q = self.modulus.unwrap_or(1);
        let residue = self.residue;
        let coprime = self.coprime_only;
        Ok(count_smooth(self.x, self.y, |n| {
            residue.map_or(true, |a| n % q == a) && (!coprime || gcd(n, q) == 1)
        }))
    }
}

/// `Ψ(x, y; a, q) = #{n ≤ x : P⁺(n) ≤ y, n ≡ a (mod q)}`.
pub fn psi_progression(query: &PsiQuery) -> Result<u64> {
    if query.modulus.is_none() || query.residue.is_none() {
        return domain("a progression query needs both a modulus and a residue");
    }
    query.count()
}

/// `Ψ_q(x, z) = #{n ≤ x : P⁺(n) ≤ z, gcd(n, q) = 1}`.
pub fn psi_coprime(x: u64, z: u64, q: u64) -> Result<u64> {
    PsiQuery { x, y: z, modulus: Some(q), residue: None, coprime_only: true }.count()
}

/// `Λ(d)`: `log p` when `d` is a power of the prime `p`, zero otherwise.
pub fn von_mangoldt(d: u64) -> f64 {
    match factorize(d).as_slice() {
        [(p, _)] => (*p as f64).ln(),
        _ => 0.0,
    }
}
