use rayon::prelude::*;
use serde::Serialize;

use crate::error::{capacity, domain, Error, Result};
use crate::primes::primes_up_to;
use crate::quadrature::{adaptive_simpson, Tolerance};

/// A convex subset of `[0, 1]^k`, described by membership, a bounding box and
/// the range of the next coordinate once the previous ones are fixed.
pub trait ConvexRegion: Sync {
    fn dim(&self) -> usize;

    /// Axis-aligned bounding box `(lo, hi)`.
    fn bbox(&self) -> (Vec<f64>, Vec<f64>);

    fn contains(&self, t: &[f64]) -> bool;

    /// Range of coordinate `prefix.len()` over points of the region extending
    /// `prefix`, or a superset of it. The default is the bounding-box range,
    /// under which integration weights `f` by the indicator of the region.
    fn section(&self, prefix: &[f64]) -> Option<(f64, f64)> {
        let (lo, hi) = self.bbox();
        let j = prefix.len();
        (lo[j] <= hi[j]).then(|| (lo[j], hi[j]))
    }

    /// Whether [`ConvexRegion::section`] is exact, so that the integrand is smooth inside each range.
    fn exact_sections(&self) -> bool {
        false
    }
}

fn clip_box(lo: Vec<f64>, hi: Vec<f64>) -> (Vec<f64>, Vec<f64>) {
    (lo.iter().map(|v| v.max(0.0)).collect(), hi.iter().map(|v| v.min(1.0)).collect())
}

/// `∏ [lo_i, hi_i] ∩ [0, 1]^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxRegion {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl BoxRegion {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return domain("box bounds must have the same positive length");
        }
        let (lo, hi) = clip_box(lo, hi);
        Ok(BoxRegion { lo, hi })
    }

    /// `[0, 1]^k`.
    pub fn unit(k: usize) -> Self {
        BoxRegion { lo: vec![0.0; k], hi: vec![1.0; k] }
    }
}

impl ConvexRegion for BoxRegion {
    fn dim(&self) -> usize {
        self.lo.len()
    }

    fn bbox(&self) -> (Vec<f64>, Vec<f64>) {
        (self.lo.clone(), self.hi.clone())
    }

    fn contains(&self, t: &[f64]) -> bool {
        t.iter().zip(self.lo.iter().zip(&self.hi)).all(|(v, (l, h))| l <= v && v <= h)
    }

    fn section(&self, prefix: &[f64]) -> Option<(f64, f64)> {
        let j = prefix.len();
        (self.lo[j] <= self.hi[j]).then(|| (self.lo[j], self.hi[j]))
    }

    fn exact_sections(&self) -> bool {
        true
    }
}

/// A box cut by one half-space with nonnegative weights: `Σ w_i t_i ≤ s`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexRegion {
    lo: Vec<f64>,
    hi: Vec<f64>,
    weights: Vec<f64>,
    s: f64,
}

impl SimplexRegion {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>, weights: Vec<f64>, s: f64) -> Result<Self> {
        if lo.len() != hi.len() || lo.len() != weights.len() || lo.is_empty() {
            return domain("simplex bounds and weights must have the same positive length");
        }
        if weights.iter().any(|&w| !(w >= 0.0 && w.is_finite())) || !s.is_finite() {
            return domain("weights must be finite and nonnegative, s finite");
        }
        let (lo, hi) = clip_box(lo, hi);
        Ok(SimplexRegion { lo, hi, weights, s })
    }

    /// `{t ∈ [0, 1]^k : t₁ + … + t_k ≤ s}`.
    pub fn standard(k: usize, s: f64) -> Self {
        SimplexRegion { lo: vec![0.0; k], hi: vec![1.0; k], weights: vec![1.0; k], s }
    }
}

impl ConvexRegion for SimplexRegion {
    fn dim(&self) -> usize {
        self.lo.len()
    }

    fn bbox(&self) -> (Vec<f64>, Vec<f64>) {
        (self.lo.clone(), self.hi.clone())
    }

    fn contains(&self, t: &[f64]) -> bool {
        let inside = t.iter().zip(self.lo.iter().zip(&self.hi)).all(|(v, (l, h))| l <= v && v <= h);
        inside && t.iter().zip(&self.weights).map(|(v, w)| v * w).sum::<f64>() <= self.s
    }

    fn section(&self, prefix: &[f64]) -> Option<(f64, f64)> {
        let j = prefix.len();
        let used: f64 = prefix.iter().zip(&self.weights).map(|(v, w)| v * w).sum();
        let rest: f64 = (j + 1..self.lo.len()).map(|i| self.weights[i] * self.lo[i]).sum();
        let slack = self.s - used - rest;
        let w = self.weights[j];
        let hi = if w > 0.0 { self.hi[j].min(slack / w) } else if slack >= 0.0 { self.hi[j] } else { -1.0 };
        (self.lo[j] <= hi).then(|| (self.lo[j], hi))
    }

    fn exact_sections(&self) -> bool {
        true
    }
}

type Predicate = Box<dyn Fn(&[f64]) -> bool + Send + Sync>;

/// A region given only by a membership predicate and a bounding box.
pub struct PredicateRegion {
    lo: Vec<f64>,
    hi: Vec<f64>,
    predicate: Predicate,
}

impl PredicateRegion {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>, predicate: impl Fn(&[f64]) -> bool + Send + Sync + 'static) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return domain("box bounds must have the same positive length");
        }
        let (lo, hi) = clip_box(lo, hi);
        Ok(PredicateRegion { lo, hi, predicate: Box::new(predicate) })
    }
}

impl ConvexRegion for PredicateRegion {
    fn dim(&self) -> usize {
        self.lo.len()
    }

    fn bbox(&self) -> (Vec<f64>, Vec<f64>) {
        (self.lo.clone(), self.hi.clone())
    }

    fn contains(&self, t: &[f64]) -> bool {
        t.iter().zip(self.lo.iter().zip(&self.hi)).all(|(v, (l, h))| l <= v && v <= h) && (self.predicate)(t)
    }
}

/// The prime sum, the integral it approximates and their distance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MertensResult {
    pub sum: f64,
    pub integral: f64,
    pub error: f64,
}

/// Largest dimension accepted by [`mertens_multidim`].
pub const MERTENS_MAX_K: usize = 3;

/// Sums `f(log p₁/log y, …) ∏ γ(p_j) log p_j / (p_j log y)` over prime tuples
/// whose log-ratios lie in `region`, and compares with `κ^k ∫_region f`.
pub fn mertens_multidim(
    gamma: &(dyn Fn(u64) -> f64 + Sync),
    f: &(dyn Fn(&[f64]) -> f64 + Sync),
    region: &dyn ConvexRegion,
    y: u64,
    kappa: f64,
) -> Result<MertensResult> {
    let k = region.dim();
    if k == 0 {
        return domain("the region must have dimension at least 1");
    }
    if k > MERTENS_MAX_K {
        return capacity(format!("dimension {k} exceeds {MERTENS_MAX_K}"));
    }
    if y < 2 {
        return domain("y must be at least 2");
    }
    let log_y = (y as f64).ln();
    let primes = primes_up_to(y);
    let t: Vec<f64> = primes.iter().map(|&p| (p as f64).ln() / log_y).collect();
    let w: Vec<f64> = primes.iter().map(|&p| gamma(p) * (p as f64).ln() / (p as f64 * log_y)).collect();
    let sum = match region.section(&[]) {
        None => 0.0,
        Some((lo, hi)) => {
            let outer: Vec<usize> = index_range(&t, lo, hi).collect();
            let partial: Vec<f64> = outer
                .par_iter()
                .map(|&i| {
                    let mut point = vec![t[i]];
                    tuple_sum(f, region, &t, &w, &mut point, w[i])
                })
                .collect();
            pairwise_sum(&partial)
        }
    };
    let integral = kappa.powi(k as i32) * integrate(f, region, &mut Vec::with_capacity(k))?;
    Ok(MertensResult { sum, integral, error: (sum - integral).abs() })
}

fn index_range(t: &[f64], lo: f64, hi: f64) -> std::ops::Range<usize> {
    let a = t.partition_point(|&v| v < lo);
    let b = t.partition_point(|&v| v <= hi);
    a..b.max(a)
}

fn tuple_sum(
    f: &(dyn Fn(&[f64]) -> f64 + Sync),
    region: &dyn ConvexRegion,
    t: &[f64],
    w: &[f64],
    point: &mut Vec<f64>,
    weight: f64,
) -> f64 {
    if point.len() == region.dim() {
        return if region.contains(point) { f(point) * weight } else { 0.0 };
    }
    let Some((lo, hi)) = region.section(point) else {
        return 0.0;
    };
    let mut acc = 0.0;
    for i in index_range(t, lo, hi) {
        point.push(t[i]);
        acc += tuple_sum(f, region, t, w, point, weight * w[i]);
        point.pop();
    }
    acc
}

fn pairwise_sum(v: &[f64]) -> f64 {
    match v.len() {
        0 => 0.0,
        1 => v[0],
        n => pairwise_sum(&v[..n / 2]) + pairwise_sum(&v[n / 2..]),
    }
}

fn integrate(f: &(dyn Fn(&[f64]) -> f64 + Sync), region: &dyn ConvexRegion, prefix: &mut Vec<f64>) -> Result<f64> {
    let Some((lo, hi)) = region.section(prefix) else {
        return Ok(0.0);
    };
    if hi <= lo {
        return Ok(0.0);
    }
    let last = prefix.len() + 1 == region.dim();
    let tol = if region.exact_sections() {
        Tolerance::new(1e-11, 1e-10, 1 << 16)
    } else {
        Tolerance::new(1e-7, 1e-7, 1 << 20)
    };
    let failure = std::cell::RefCell::new(None::<Error>);
    let scratch = std::cell::RefCell::new(prefix.clone());
    let value = adaptive_simpson(
        |s| {
            let mut p = scratch.borrow_mut().clone();
            p.push(s);
            if last {
                if region.exact_sections() || region.contains(&p) {
                    f(&p)
                } else {
                    0.0
                }
            } else {
                match integrate(f, region, &mut p) {
                    Ok(v) => v,
                    Err(e) => {
                        failure.borrow_mut().get_or_insert(e);
                        0.0
                    }
                }
            }
        },
        lo,
        hi,
        &tol,
    )?;
    match failure.into_inner() {
        Some(e) => Err(e),
        None => Ok(value),
    }
}

/// Largest number of prime tuples visited by [`condition_d_sample`] per region.
pub const TUPLE_BUDGET: usize = 10_000_000;

/// For each sampled region `U`, the signed sum of `r(p₁⋯p_k)` over prime tuples
/// with `(log p_j / log y) ∈ U` and `gcd(a, p_j) = 1`. The supremum over all
/// convex `U` is not computed; the maximum over the sample bounds it from below.
pub fn condition_d_sample(
    r: &(dyn Fn(u64) -> Result<f64> + Sync),
    y: u64,
    a: i64,
    regions: &[&dyn ConvexRegion],
) -> Result<Vec<f64>> {
    if y < 2 {
        return domain("y must be at least 2");
    }
    let log_y = (y as f64).ln();
    let primes: Vec<u64> = primes_up_to(y).into_iter().filter(|&p| a.unsigned_abs() % p != 0).collect();
    let t: Vec<f64> = primes.iter().map(|&p| (p as f64).ln() / log_y).collect();
    regions
        .iter()
        .map(|region| {
            if region.dim() > MERTENS_MAX_K {
                return capacity(format!("dimension {} exceeds {MERTENS_MAX_K}", region.dim()));
            }
            let mut tuples = Vec::new();
            collect_tuples(*region, &t, &mut Vec::new(), &mut Vec::new(), &mut tuples)?;
            let terms = tuples
                .par_iter()
                .map(|idx| {
                    let d = idx.iter().try_fold(1u64, |acc, &i| acc.checked_mul(primes[i]));
                    match d {
                        Some(d) => r(d),
                        None => capacity("prime product overflows u64"),
                    }
                })
                .collect::<Result<Vec<f64>>>()?;
            Ok(pairwise_sum(&terms))
        })
        .collect()
}

fn collect_tuples(
    region: &dyn ConvexRegion,
    t: &[f64],
    point: &mut Vec<f64>,
    idx: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) -> Result<()> {
    if point.len() == region.dim() {
        if region.contains(point) {
            if out.len() >= TUPLE_BUDGET {
                return capacity(format!("more than {TUPLE_BUDGET} prime tuples in a region"));
            }
            out.push(idx.clone());
        }
        return Ok(());
    }
    let Some((lo, hi)) = region.section(point) else {
        return Ok(());
    };
    for i in index_range(t, lo, hi) {
        point.push(t[i]);
        idx.push(i);
        collect_tuples(region, t, point, idx, out)?;
        point.pop();
        idx.pop();
    }
    Ok(())
}

/// Deviations `Σ_{p ≤ z} γ(p) log p / p − κ log z` on a grid of `z`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionReport {
    pub grid: Vec<u64>,
    pub deviations: Vec<f64>,
    pub max_abs_deviation: f64,
    pub kappa_used: f64,
}

/// Evaluates the dimension condition on `z_grid` (values `≥ 2`, any order).
pub fn check_condition_a(gamma: &dyn Fn(u64) -> f64, kappa: f64, z_grid: &[u64]) -> Result<ConditionReport> {
    if z_grid.iter().any(|&z| z < 2) {
        return domain("grid values must be at least 2");
    }
    let top = z_grid.iter().copied().max().unwrap_or(2);
    let primes = primes_up_to(top);
    let mut prefix = Vec::with_capacity(primes.len());
    let mut acc = 0.0;
    for &p in &primes {
        acc += gamma(p) * (p as f64).ln() / p as f64;
        prefix.push(acc);
    }
    let deviations: Vec<f64> = z_grid
        .iter()
        .map(|&z| {
            let n = primes.partition_point(|&p| p <= z);
            let s = if n == 0 { 0.0 } else { prefix[n - 1] };
            s - kappa * (z as f64).ln()
        })
        .collect();
    let max_abs_deviation = deviations.iter().fold(0.0f64, |m, d| m.max(d.abs()));
    Ok(ConditionReport { grid: z_grid.to_vec(), deviations, max_abs_deviation, kappa_used: kappa })
}
