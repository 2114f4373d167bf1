//! Numerical checks of the identities and inequalities behind the sieve on
//! concrete finite sets, hypothesis checkers for the density `γ`, and
//! end-to-end lower-bound reports.

mod bounds;
mod mertens;
mod recursion;
mod report;

pub use bounds::{lower_bound_report, Application, BoundCheck};
pub use mertens::{
    check_condition_a, condition_d_sample, mertens_multidim, BoxRegion, ConditionReport, ConvexRegion, MertensResult, PredicateRegion,
    SimplexRegion,
};
pub use recursion::{check_recursion, check_single_step, hildebrand_check, lemma_large_divisor_check, HildebrandReport};
pub use report::{write_csv, ReportRow};

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{capacity, domain, Result};
use crate::polyvals::IntPolynomial;
use crate::primes::{factorize, primes_up_to, Factorizer};

/// Largest total number of (element, divisor) incidences a [`FiniteSet`] indexes.
pub const DIVISOR_BUDGET: usize = 50_000_000;

/// A finite nonempty set `A` of positive integers with `x = sup A`, indexed
/// by divisors so that `A_d = #{m ∈ A : d | m}` is a lookup.
#[derive(Debug, Clone)]
pub struct FiniteSet {
    elements: Vec<u64>,
    lpf: Vec<u64>,
    factors: Vec<Vec<(u64, u32)>>,
    a_d: HashMap<u64, u32>,
}

fn divisors_of(factors: &[(u64, u32)]) -> Vec<u64> {
    let mut out = vec![1u64];
    for &(p, e) in factors {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out
}

fn count_divisors<'a>(factor_lists: impl Iterator<Item = &'a Vec<(u64, u32)>>) -> Result<HashMap<u64, u32>> {
    let mut map = HashMap::new();
    let mut total = 0usize;
    for f in factor_lists {
        let ds = divisors_of(f);
        total += ds.len();
        if total > DIVISOR_BUDGET {
            return capacity(format!("divisor index exceeds {DIVISOR_BUDGET} entries"));
        }
        for d in ds {
            *map.entry(d).or_insert(0) += 1;
        }
    }
    Ok(map)
}

impl FiniteSet {
    /// Builds the set from distinct positive integers (any order).
    pub fn new(mut elements: Vec<u64>) -> Result<Self> {
        if elements.is_empty() {
            return domain("the set must be nonempty");
        }
        elements.sort_unstable();
        if elements[0] == 0 {
            return domain("elements must be positive");
        }
        if elements.windows(2).any(|w| w[0] == w[1]) {
            return domain("elements must be distinct");
        }
        let fz = Factorizer::new(*elements.last().unwrap());
        let factors: Vec<Vec<(u64, u32)>> = elements.par_iter().map(|&m| fz.factorize(m)).collect();
        let lpf = factors.iter().map(|f| f.last().map_or(1, |&(p, _)| p)).collect();
        let a_d = count_divisors(factors.iter())?;
        Ok(FiniteSet { elements, lpf, factors, a_d })
    }

    /// `{1, …, n}`.
    pub fn interval(n: u64) -> Result<Self> {
        Self::new((1..=n).collect())
    }

    /// `{|F(n)| : 1 ≤ n ≤ count, F(n) ≠ 0}` (repeated values kept once).
    pub fn poly_values(f: &IntPolynomial, count: u64) -> Result<Self> {
        let mut vals = Vec::with_capacity(count as usize);
        for n in 1..=count {
            match f.eval(n as i128).map(i128::unsigned_abs) {
                Some(0) => {}
                Some(v) if v < 1 << 63 => vals.push(v as u64),
                _ => return capacity(format!("|F({n})| does not fit in 63 bits")),
            }
        }
        vals.sort_unstable();
        vals.dedup();
        Self::new(vals)
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `x = sup A`.
    pub fn x_sup(&self) -> u64 {
        *self.elements.last().unwrap()
    }

    /// `A_d = #{m ∈ A : d | m}`.
    pub fn a_d(&self, d: u64) -> u64 {
        self.a_d.get(&d).copied().unwrap_or(0) as u64
    }

    /// The set seen at smoothness level `y`.
    pub fn at(&self, y: u64) -> Result<SmoothView<'_>> {
        SmoothView::new(self, y)
    }
}

/// `A` together with its `y`-smooth elements `S_A(y)` and the counts
/// `Ψ_A(y, d) = #{m ∈ S_A(y) : d | m}`.
#[derive(Debug, Clone)]
pub struct SmoothView<'a> {
    set: &'a FiniteSet,
    y: u64,
    psi: u64,
    psi_d: HashMap<u64, u32>,
    primes: Vec<u64>,
}

impl<'a> SmoothView<'a> {
    fn new(set: &'a FiniteSet, y: u64) -> Result<Self> {
        if y < 2 {
            return domain("y must be at least 2");
        }
        let smooth = set.factors.iter().zip(&set.lpf).filter(|&(_, &p)| p <= y).map(|(f, _)| f);
        let psi_d = count_divisors(smooth)?;
        let psi = set.lpf.iter().filter(|&&p| p <= y).count() as u64;
        let primes = primes_up_to(y.min(set.x_sup()));
        Ok(SmoothView { set, y, psi, psi_d, primes })
    }

    pub fn set(&self) -> &FiniteSet {
        self.set
    }

    pub fn y(&self) -> u64 {
        self.y
    }

    /// `x = sup A` as a real.
    pub fn x(&self) -> f64 {
        self.set.x_sup() as f64
    }

    /// `u = log x / log y`, recomputed from the set.
    pub fn u(&self) -> f64 {
        self.x().ln() / (self.y as f64).ln()
    }

    /// `Ψ_A(y)`.
    pub fn psi(&self) -> u64 {
        self.psi
    }

    /// `Ψ_A(y, d)`.
    pub fn psi_d(&self, d: u64) -> u64 {
        self.psi_d.get(&d).copied().unwrap_or(0) as u64
    }

    /// Primes `p ≤ min(y, x)`.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub(crate) fn smooth_divisors(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.psi_d.iter().map(|(&d, &c)| (d, c as u64))
    }

    pub(crate) fn all_divisors(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.set.a_d.iter().map(|(&d, &c)| (d, c as u64))
    }

    fn check_smooth(&self, n: u64) -> Result<()> {
        if n == 0 || factorize(n).last().is_some_and(|&(p, _)| p > self.y) {
            return domain(format!("n = {n} must be a positive {}-smooth integer", self.y));
        }
        Ok(())
    }

    /// `T(y, n) = Σ_{p ≤ y, np ≤ x} Ψ_A(y, pn) log p`.
    pub fn t_fn(&self, n: u64) -> Result<f64> {
        self.check_smooth(n)?;
        let x = self.set.x_sup();
        Ok(self
            .primes
            .iter()
            .take_while(|&&p| n.saturating_mul(p) <= x)
            .map(|&p| self.psi_d(n * p) as f64 * (p as f64).ln())
            .sum())
    }

    /// `R(y, n) = Σ_{p ≤ y, x/y < np ≤ x} A_{pn} log p`.
    pub fn r_fn(&self, n: u64) -> Result<f64> {
        self.check_smooth(n)?;
        Ok(self.r_unchecked(n))
    }

    pub(crate) fn r_unchecked(&self, n: u64) -> f64 {
        let x = self.set.x_sup();
        let y = self.y;
        self.primes
            .iter()
            .take_while(|&&p| n.saturating_mul(p) <= x)
            .filter(|&&p| (n * p) as u128 * y as u128 > x as u128)
            .map(|&p| self.set.a_d(n * p) as f64 * (p as f64).ln())
            .sum()
    }

    pub(crate) fn t_unchecked(&self, n: u64) -> f64 {
        let x = self.set.x_sup();
        self.primes
            .iter()
            .take_while(|&&p| n.saturating_mul(p) <= x)
            .map(|&p| self.psi_d(n * p) as f64 * (p as f64).ln())
            .sum()
    }
}

/// `Q(x; p₁, …, p_k) = ∏ log p_i / ∏ log(x / (p₁⋯p_i))`, equal to 1 for no primes.
pub fn q_factor(x: f64, primes: &[u64]) -> Result<f64> {
    let mut prod = 1.0f64;
    let mut q = 1.0;
    for &p in primes {
        prod *= p as f64;
        if x <= prod {
            return domain(format!("x = {x} must exceed the product {prod} of the primes"));
        }
        q *= (p as f64).ln() / (x / prod).ln();
    }
    Ok(q)
}

/// A computed inequality `lhs ≥ rhs` checked with relative slack.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub passed: bool,
}

/// Relative slack absorbing rounding in quantities exact in principle.
pub const RELATIVE_SLACK: f64 = 1e-9;

impl InequalityCheck {
    pub(crate) fn new(name: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        let margin = lhs - rhs;
        InequalityCheck { name: name.into(), lhs, rhs, margin, passed: margin >= -RELATIVE_SLACK * lhs.abs() }
    }
}
