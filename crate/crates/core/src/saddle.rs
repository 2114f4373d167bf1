//! Shifted smooth pairs: the saddle point `α(x, z)`, the density
//! `γ(d) = (d/φ(d)) g_d(x, z)`, exact counts of `n ≤ x` with `n` and `n + a`
//! both smooth, and the lower-bound coefficients `f(u)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::dickman::ThetaProfile;
use crate::error::{capacity, domain, Error, Result};
use crate::polyvals::RemainderReport;
use crate::primes::{euler_phi, factorize, gcd, primes_up_to, root_floor};
use crate::sieve::{sieving_primes, smooth_flags, smooth_mask, SEGMENT};

/// Largest `x` accepted by [`psi_pairs`].
pub const PAIRS_X_MAX: u64 = 100_000_000;

/// The saddle point `α(x, z)`, root of `Σ_{p ≤ z} log p / (p^α − 1) = log x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SaddleContext {
    pub x: f64,
    pub z: f64,
    pub alpha: f64,
    pub residual: f64,
}

fn saddle_sum(primes: &[(f64, f64)], alpha: f64) -> f64 {
    primes.iter().map(|&(p, lp)| lp / (p.powf(alpha) - 1.0)).sum()
}

/// Solves for `α(x, z)` by bisection on `(10⁻⁶, 3)`; the sum decreases in `α`.
pub fn solve_saddle(x: f64, z: f64) -> Result<SaddleContext> {
    if !(x.is_finite() && x >= 2.0) {
        return domain(format!("x = {x} must be at least 2"));
    }
    if !(z.is_finite() && z >= 2.0) {
        return domain(format!("z = {z} must be at least 2"));
    }
    let primes: Vec<(f64, f64)> = primes_up_to(z as u64).into_iter().map(|p| (p as f64, (p as f64).ln())).collect();
    let target = x.ln();
    let tol = 1e-9 * target;
    let (mut lo, mut hi) = (1e-6, 3.0);
    if saddle_sum(&primes, hi) > target {
        return Err(Error::Convergence(format!("no saddle point below 3 for x = {x}, z = {z}")));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let r = saddle_sum(&primes, mid) - target;
        if r.abs() <= tol || hi - lo < 1e-16 {
            return Ok(SaddleContext { x, z, alpha: mid, residual: r });
        }
        if r > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::Convergence(format!("bisection did not reach the residual tolerance for x = {x}, z = {z}")))
}

/// `g_d(x, z) = ∏_{p | d} (1 − p^{−α})`.
pub fn g_d(ctx: &SaddleContext, d: u64) -> f64 {
    factorize(d).iter().map(|&(p, _)| 1.0 - (p as f64).powf(-ctx.alpha)).product()
}

/// `γ(d) = (d / φ(d)) g_d(x, z)`.
pub fn gamma_shifted(ctx: &SaddleContext, d: u64) -> f64 {
    factorize(d)
        .iter()
        .map(|&(p, _)| {
            let p = p as f64;
            (1.0 - p.powf(-ctx.alpha)) * p / (p - 1.0)
        })
        .product()
}

/// A shifted-pair configuration: `n` must be `x^{1/u}`-smooth and `n + a`
/// must be `x^{1/v}`-smooth.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftedConfig {
    pub a: i64,
    pub u: f64,
    pub v: f64,
    pub profile: ThetaProfile,
}

impl ShiftedConfig {
    pub fn validate(&self) -> Result<()> {
        if self.a == 0 {
            return domain("the shift a must be nonzero");
        }
        if !(self.u.is_finite() && self.u >= 1.0 && self.v.is_finite() && self.v >= 1.0) {
            return domain(format!("u = {} and v = {} must be finite and at least 1", self.u, self.v));
        }
        self.profile.validate()
    }
}

/// `Ψ(x; u, v) = #{n ≤ x : P⁺(n) ≤ x^{1/u}, P⁺(n + a) ≤ x^{1/v}}`.
pub fn psi_pairs(x: u64, cfg: &ShiftedConfig) -> Result<u64> {
    cfg.validate()?;
    let (y1, y2) = (root_floor(x, cfg.u), root_floor(x, cfg.v));
    if y1 < 2 || y2 < 2 {
        return domain(format!("x^(1/u) = {y1} and x^(1/v) = {y2} must both be at least 2"));
    }
    psi_pairs_thresholds(x, cfg.a, y1, y2)
}

/// `#{1 ≤ n ≤ x : n + a ≥ 1, P⁺(n) ≤ y1, P⁺(n + a) ≤ y2}`.
pub fn psi_pairs_thresholds(x: u64, a: i64, y1: u64, y2: u64) -> Result<u64> {
    if x == 0 || a == 0 {
        return domain("need x ≥ 1 and a ≠ 0");
    }
    if x > PAIRS_X_MAX {
        return capacity(format!("x = {x} exceeds {PAIRS_X_MAX}"));
    }
    let top = x.checked_add_signed(a).unwrap_or(0);
    let first = if a < 0 { 1 + a.unsigned_abs() } else { 1 };
    if top == 0 || first > x {
        return Ok(0);
    }
    let p1 = sieving_primes(x, y1);
    let p2 = sieving_primes(top, y2);
    let span = x - first + 1;
    let count = (0..span.div_ceil(SEGMENT))
        .into_par_iter()
        .map(|s| {
            let lo = first + s * SEGMENT;
            let len = (x - lo + 1).min(SEGMENT) as usize;
            let own = smooth_flags(lo, len, y1, &p1);
            let shifted = smooth_flags(lo.checked_add_signed(a).expect("n + a ≥ 1"), len, y2, &p2);
            own.iter().zip(&shifted).filter(|&(&s1, &s2)| s1 && s2).count() as u64
        })
        .sum();
    Ok(count)
}

/// Exponent regimes for the shifted-pair lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    /// Level 1/2: `f(u) = 1 − u/2` on `(1, 2]`.
    HarperHalf,
    /// Level 5/8: three-branch `f(u)` on `(1, 8/3]`.
    Pascadi58,
}

impl Regime {
    pub fn theta(self) -> f64 {
        match self {
            Regime::HarperHalf => 0.5,
            Regime::Pascadi58 => 0.625,
        }
    }

    pub fn u_max(self) -> f64 {
        1.0 / (1.0 - self.theta())
    }

    pub fn profile(self) -> ThetaProfile {
        match self {
            Regime::HarperHalf => ThetaProfile::harper_half(),
            Regime::Pascadi58 => ThetaProfile::pascadi_58(),
        }
    }
}

/// The coefficient `f(u)` of the shifted-pair lower bound.
pub fn theorem_f(u: f64, regime: Regime) -> Result<f64> {
    let top = regime.u_max();
    if !(u > 1.0 && u <= top + 1e-12) {
        return domain(format!("u = {u} outside (1, {top}] for {regime:?}"));
    }
    Ok(match regime {
        Regime::HarperHalf => 1.0 - u / 2.0,
        Regime::Pascadi58 => {
            let base = 1.0 - 0.375 * u;
            if u <= 1.6 {
                base
            } else if u <= 2.0 {
                base + (1.0 / u + 0.375).ln()
            } else {
                base + (1.0 / u + 0.375).ln() + 0.375 * u * (u / 2.0).ln()
            }
        }
    })
}

/// One shifted remainder term, with the progression count it approximates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShiftedRemainder {
    pub d: u64,
    /// `#{n ≤ x : d | n, P⁺(n + a) ≤ z}`.
    pub a_d: u64,
    /// `Ψ(x + a, z; a, d)`: `z`-smooth `m ≤ x + a` with `m ≡ a (mod d)`.
    pub progression_count: u64,
    /// `Ψ(x, z) g_d / φ(d)`.
    pub main_term: f64,
    /// `A_d − main_term`.
    pub r_d: f64,
}

impl ShiftedRemainder {
    /// `A_d − Ψ(x + a, z; a, d)`, the boundary discrepancy between the two counts.
    pub fn discrepancy(&self) -> i64 {
        self.a_d as i64 - self.progression_count as i64
    }
}

/// `z`-smoothness of every `m ≤ max(x, x + a)`, shared by the remainder computations.
struct SmoothPrefix {
    x: u64,
    a: i64,
    mask: Vec<bool>,
    psi_xz: u64,
}

impl SmoothPrefix {
    fn new(x: u64, z: u64, a: i64) -> Result<Self> {
        if x == 0 || a == 0 {
            return domain("need x ≥ 1 and a ≠ 0");
        }
        let top = x.max(x.checked_add_signed(a).unwrap_or(0));
        let mask = smooth_mask(1, top, z)?;
        let psi_xz = mask[..x as usize].iter().filter(|&&s| s).count() as u64;
        Ok(SmoothPrefix { x, a, mask, psi_xz })
    }

    fn smooth(&self, m: u64) -> bool {
        m >= 1 && self.mask[(m - 1) as usize]
    }

    fn term(&self, ctx: &SaddleContext, d: u64) -> ShiftedRemainder {
        let mut a_d = 0;
        let mut n = d;
        while n <= self.x {
            if let Some(m) = n.checked_add_signed(self.a) {
                if self.smooth(m) {
                    a_d += 1;
                }
            }
            n += d;
        }
        let top = self.x.checked_add_signed(self.a).unwrap_or(0);
        let start = self.a.rem_euclid(d as i64) as u64;
        let mut progression_count = 0;
        let mut m = if start == 0 { d } else { start };
        while m <= top {
            if self.smooth(m) {
                progression_count += 1;
            }
            m += d;
        }
        let main_term = self.psi_xz as f64 * g_d(ctx, d) / euler_phi(d) as f64;
        ShiftedRemainder { d, a_d, progression_count, main_term, r_d: a_d as f64 - main_term }
    }
}

/// `r_d = A_d − Ψ(x, z) g_d(x, z) / φ(d)` with `A_d = #{n ≤ x : d | n, P⁺(n + a) ≤ z}`.
pub fn remainder_shifted(ctx: &SaddleContext, d: u64, x: u64, z: u64, a: i64) -> Result<f64> {
    Ok(shifted_remainders(ctx, x, z, a, &[d])?[0].r_d)
}

/// [`remainder_shifted`] with its counts, for several moduli at once.
pub fn shifted_remainders(ctx: &SaddleContext, x: u64, z: u64, a: i64, ds: &[u64]) -> Result<Vec<ShiftedRemainder>> {
    if ds.contains(&0) {
        return domain("d must be at least 1");
    }
    let prefix = SmoothPrefix::new(x, z, a)?;
    Ok(ds.par_iter().map(|&d| prefix.term(ctx, d)).collect())
}

/// The remainders for `d ≤ D` coprime to `a`, normalised by `X = Ψ(x, z)`.
pub fn remainder_shifted_report(
    ctx: &SaddleContext,
    x: u64,
    z: u64,
    a: i64,
    d_max: u64,
    y: f64,
    delta: f64,
) -> Result<RemainderReport> {
    if d_max == 0 {
        return domain("D must be at least 1");
    }
    let ds: Vec<u64> = (1..=d_max).filter(|&d| gcd(d, a.unsigned_abs()) == 1).collect();
    let prefix = SmoothPrefix::new(x, z, a)?;
    let entries = ds.par_iter().map(|&d| (d, prefix.term(ctx, d).r_d)).collect();
    RemainderReport::from_entries(d_max, prefix.psi_xz as f64, entries, y, delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::psi_pairs_trial;
    use crate::sieve::psi;

    #[test]
    fn saddle_examples() {
        let c = solve_saddle(4.0, 2.0).unwrap();
        assert!((c.alpha - 1.5f64.log2()).abs() < 1e-8);
        let c6 = solve_saddle(1e6, 100.0).unwrap();
        assert!(c6.residual.abs() <= 1e-9 * 1e6f64.ln());
        let c8 = solve_saddle(1e8, 100.0).unwrap();
        assert!(c8.alpha < c6.alpha);
        assert!(c6.alpha > 0.0 && c6.alpha < 1.0);
        assert!(solve_saddle(100.0, 1.5).is_err());
    }

    #[test]
    fn saddle_matches_reference_values() {
        // independent root finding of the same equation
        for &(x, z, want) in &[(1e6, 100.0, 0.603_86), (1e8, 100.0, 0.524_90), (1e6, 1000.0, 0.810_77)] {
            let c = solve_saddle(x, z).unwrap();
            assert!((c.alpha - want).abs() < 1e-4, "x = {x}, z = {z}: {}", c.alpha);
        }
    }

    #[test]
    fn density_examples() {
        let ctx = SaddleContext { x: 0.0, z: 0.0, alpha: 0.5, residual: 0.0 };
        assert_eq!(g_d(&ctx, 1), 1.0);
        assert_eq!(g_d(&ctx, 12), g_d(&ctx, 6));
        assert!((g_d(&ctx, 2) - (1.0 - 2f64.powf(-0.5))).abs() < 1e-15);
        assert_eq!(gamma_shifted(&ctx, 1), 1.0);
        for p in [2u64, 3, 5] {
            let pf = p as f64;
            let want = (1.0 - pf.powf(-0.5)) * pf / (pf - 1.0);
            assert!((gamma_shifted(&ctx, p) - want).abs() < 1e-15);
            assert!((gamma_shifted(&ctx, p) - 1.0).abs() <= 2.0 * pf.powf(-0.5));
        }
        assert!((gamma_shifted(&ctx, 6) - gamma_shifted(&ctx, 2) * gamma_shifted(&ctx, 3)).abs() < 1e-15);
        let real = solve_saddle(1e6, 100.0).unwrap();
        for d in 2..=10_000u64 {
            assert!(g_d(&real, d) < euler_phi(d) as f64 / d as f64);
        }
    }

    #[test]
    fn pair_examples() {
        let cfg = |a, u, v| ShiftedConfig { a, u, v, profile: ThetaProfile::harper_half() };
        assert_eq!(psi_pairs(10, &cfg(1, 1.0, 1.0)).unwrap(), 9);
        assert_eq!(psi_pairs_thresholds(20, 1, 2, 2).unwrap(), 1);
        assert_eq!(psi_pairs_thresholds(10, -1, 10, 10).unwrap(), psi_pairs_trial(10, -1, 10, 10));
        assert!(psi_pairs(10, &cfg(0, 1.0, 1.0)).is_err());
        assert!(psi_pairs(10, &cfg(1, 5.0, 1.0)).is_err());
    }

    #[test]
    fn pairs_match_trial_division() {
        for &a in &[1i64, -1, 2, -7, 30] {
            for &(y1, y2) in &[(5u64, 5u64), (30, 7), (100, 1000), (2, 3)] {
                assert_eq!(psi_pairs_thresholds(5000, a, y1, y2).unwrap(), psi_pairs_trial(5000, a, y1, y2), "a = {a}");
            }
        }
        let got = psi_pairs_thresholds(10_000, 1, 100, 31).unwrap();
        assert!(got <= psi(10_000, 100).min(psi(10_001, 31)));
    }

    #[test]
    fn f_examples() {
        assert!((theorem_f(1.5, Regime::HarperHalf).unwrap() - 0.25).abs() < 1e-15);
        assert!((theorem_f(1.6, Regime::Pascadi58).unwrap() - 0.4).abs() < 1e-15);
        let at2 = 1.0 - 0.75 + 0.875f64.ln();
        assert!((theorem_f(2.0, Regime::Pascadi58).unwrap() - at2).abs() < 1e-15);
        assert!((at2 - 0.116_468_607_375_477).abs() < 1e-12);
        assert!(theorem_f(2.5, Regime::HarperHalf).is_err());
        assert!(theorem_f(1.0, Regime::Pascadi58).is_err());
        assert!(theorem_f(8.0 / 3.0, Regime::Pascadi58).unwrap().abs() < 1e-12);
        for &b in &[1.6, 2.0] {
            let l = theorem_f(b, Regime::Pascadi58).unwrap();
            let r = theorem_f(b + 1e-12, Regime::Pascadi58).unwrap();
            assert!((l - r).abs() < 1e-9);
        }
    }

    #[test]
    fn shifted_remainders_behave() {
        let ctx = solve_saddle(1e5, 100.0).unwrap();
        let terms = shifted_remainders(&ctx, 100_000, 100, 1, &[1, 2, 6, 7]).unwrap();
        let psi_xz = psi(100_000, 100) as f64;
        assert!((terms[0].r_d - (terms[0].a_d as f64 - psi_xz)).abs() < 1e-9);
        assert!(terms[0].r_d.abs() <= 2.0);
        for t in &terms {
            assert!(t.discrepancy().abs() <= 1);
        }
        // d sharing a factor with a
        assert!(remainder_shifted(&ctx, 4, 1000, 100, 2).unwrap().is_finite());
        let rep = remainder_shifted_report(&ctx, 100_000, 100, 6, 100, 100f64.sqrt(), 1.0).unwrap();
        assert!(rep.entries.keys().all(|&d| gcd(d, 6) == 1));
    }
}
