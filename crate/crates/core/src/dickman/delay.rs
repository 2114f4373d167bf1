//! Fixed-grid solver for the delay equation
//! `u μ'(u) + (1 − κ) μ(u) + κ μ(u − 1) = 0` on `u > 2`, seeded on `[1, 2]`.
//!
//! The grid is uniform with the configured step, plus every point `j` and
//! `j + v` (`j ≥ 2`) where the solution loses smoothness, plus the target.
//! Each step integrates `(μ u^{1-κ})' = −κ u^{-κ} μ(u − 1)` with a four-point
//! Gauss rule; the delayed values come from the seed on `[1, 2]` and from
//! cubic interpolation inside the smooth segment of the history otherwise.

use crate::quadrature::gauss_legendre;

pub(crate) struct DelayTable<S> {
    seed: S,
    t: Vec<f64>,
    val: Vec<f64>,
    /// indices of nodes where the solution may have a derivative jump
    kinks: Vec<usize>,
}

impl<S: Fn(f64) -> f64> DelayTable<S> {
    /// Integrates from 2 up to `target` (> 2).
    pub(crate) fn solve(seed: S, kappa: f64, v: f64, target: f64, step: f64) -> Self {
        debug_assert!(target > 2.0);
        let nodes = grid(v, target, step);
        let mut table = DelayTable { seed, t: Vec::with_capacity(nodes.len()), val: Vec::with_capacity(nodes.len()), kinks: Vec::new() };
        let (gx, gw) = gauss_legendre(4);
        let (first, _) = nodes[0];
        table.t.push(first);
        table.val.push((table.seed)(first));
        table.kinks.push(0);
        for &(t1, is_kink) in &nodes[1..] {
            let t0 = *table.t.last().unwrap();
            let mu0 = *table.val.last().unwrap();
            let half = 0.5 * (t1 - t0);
            let mid = 0.5 * (t1 + t0);
            let mut integral = 0.0;
            for (x, w) in gx.iter().zip(&gw) {
                let s = mid + half * x;
                integral += w * s.powf(-kappa) * table.history(s - 1.0);
            }
            integral *= half;
            let mu1 = t1.powf(kappa - 1.0) * (mu0 * t0.powf(1.0 - kappa) - kappa * integral);
            table.t.push(t1);
            table.val.push(mu1);
            if is_kink {
                table.kinks.push(table.t.len() - 1);
            }
        }
        table
    }

    /// Solution value at the last grid node (the target).
    pub(crate) fn last(&self) -> f64 {
        *self.val.last().unwrap()
    }

    fn history(&self, s: f64) -> f64 {
        if s <= 2.0 {
            return (self.seed)(s);
        }
        let n = self.t.len();
        let i = match self.t.binary_search_by(|x| x.total_cmp(&s)) {
            Ok(i) => return self.val[i],
            Err(i) => i.saturating_sub(1).min(n - 1),
        };
        // smooth segment [lo, hi] of computed nodes containing s
        let k = self.kinks.partition_point(|&j| j <= i);
        let lo = self.kinks[k - 1];
        let hi = self.kinks.get(k).copied().unwrap_or(n - 1).min(n - 1);
        let len = hi - lo + 1;
        let width = len.min(4);
        let start = if len <= 4 { lo } else { (i.saturating_sub(1)).clamp(lo, hi + 1 - width) };
        lagrange(&self.t[start..start + width], &self.val[start..start + width], s)
    }
}

fn grid(v: f64, target: f64, step: f64) -> Vec<(f64, bool)> {
    let mut kinks = Vec::new();
    let mut j = 2.0;
    while j < target {
        kinks.push(j);
        if v > 0.0 && j + v < target {
            kinks.push(j + v);
        }
        j += 1.0;
    }
    kinks.push(target);
    kinks.sort_by(f64::total_cmp);
    kinks.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    let mut out: Vec<(f64, bool)> = kinks.iter().map(|&k| (k, true)).collect();
    let n = ((target - 2.0) / step).ceil() as usize;
    for i in 1..n {
        let t = 2.0 + i as f64 * step;
        let near = kinks.iter().any(|&k| (k - t).abs() < 0.125 * step);
        if !near {
            out.push((t, false));
        }
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

fn lagrange(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let mut total = 0.0;
    for (i, (&xi, &yi)) in xs.iter().zip(ys).enumerate() {
        let mut w = 1.0;
        for (j, &xj) in xs.iter().enumerate() {
            if i != j {
                w *= (x - xj) / (xi - xj);
            }
        }
        total += w * yi;
    }
    total
}
