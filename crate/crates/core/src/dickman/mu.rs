use super::delay::DelayTable;
use super::{check_u, QuadratureConfig};
use crate::error::{domain, Error, Result};
use crate::quadrature::{adaptive_simpson, PiecewiseCheb, Tolerance};

/// Arguments of `μ_k(u, v)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuParams {
    pub u: f64,
    pub v: f64,
    pub kappa: f64,
    pub k: usize,
}

impl MuParams {
    pub fn new(u: f64, v: f64, kappa: f64, k: usize) -> Result<Self> {
        let p = MuParams { u, v, kappa, k };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        check_u(self.u)?;
        if self.u <= 0.0 {
            return domain("u must be strictly positive");
        }
        if !(self.v >= 0.0 && self.v <= self.u.min(1.0)) {
            return domain(format!("v = {} must lie in [0, min(1, u)] for u = {}", self.v, self.u));
        }
        if !(self.kappa.is_finite() && self.kappa > 0.0) {
            return domain("kappa must be finite and positive");
        }
        if self.k == 0 {
            return domain("k must be at least 1");
        }
        Ok(())
    }
}

/// `f_k(u; t_1..t_k) = ∏_{i ≤ k} 1 / (u − t_1 − ⋯ − t_i)`.
pub fn f_k(u: f64, t: &[f64]) -> Result<f64> {
    let mut partial = 0.0;
    let mut prod = 1.0;
    for &ti in t {
        partial += ti;
        if partial >= u {
            return domain(format!("partial sum {partial} reaches u = {u}"));
        }
        prod /= u - partial;
    }
    Ok(prod)
}

/// `μ_1(u, v) = mes((0, 1) ∩ (u − 1, u − v)) / u`.
pub fn mu_1(u: f64, v: f64) -> f64 {
    let len = (u - v).min(1.0) - (u - 1.0).max(0.0);
    len.max(0.0) / u
}

/// The functions `μ_k(·, v)` on `[1, u_max]`, one level at a time.
///
/// Level `k + 1` is obtained from `s μ_{k+1}(s) = ∫_{max(1, s−1)}^{s} μ_k`; each
/// level is stored as a piecewise Chebyshev interpolant whose pieces break at
/// every `j` and `j + v`, where the `μ_k` lose smoothness, so the integrals
/// are exact up to interpolation error.
struct MuLevels {
    edges: Vec<f64>,
    level: PiecewiseCheb,
    k: usize,
    tol: f64,
}

impl MuLevels {
    fn new(v: f64, u_max: f64, tol: f64) -> Self {
        debug_assert!(u_max > 1.0);
        let mut edges = vec![1.0, u_max];
        let mut j = 1.0;
        while j < u_max {
            if j > 1.0 {
                edges.push(j);
            }
            if j + v > 1.0 && j + v < u_max {
                edges.push(j + v);
            }
            j += 1.0;
        }
        edges.sort_by(f64::total_cmp);
        edges.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        let level = PiecewiseCheb::fit(&|s| mu_1(s, v), &edges, tol);
        MuLevels { edges, level, k: 1, tol }
    }

    fn value(&self, u: f64) -> f64 {
        self.level.eval(u).max(0.0)
    }

    fn advance(&mut self) {
        let prev = &self.level;
        let next = |s: f64| (prev.cumulative(s) - prev.cumulative((s - 1.0).max(1.0))) / s;
        self.level = PiecewiseCheb::fit(&next, &self.edges, self.tol);
        self.k += 1;
    }
}

fn cheb_tol(cfg: &QuadratureConfig) -> f64 {
    1e-3 * cfg.abs_tol
}

/// `μ_k(u, v)` by the one-dimensional recursion in `k`.
pub fn mu_k(params: &MuParams, cfg: &QuadratureConfig) -> Result<f64> {
    params.validate()?;
    cfg.validate()?;
    let MuParams { u, v, k, .. } = *params;
    if k == 1 {
        return Ok(mu_1(u, v));
    }
    if u <= 1.0 {
        return Ok(0.0);
    }
    let mut levels = MuLevels::new(v, u, cheb_tol(cfg));
    while levels.k < k {
        levels.advance();
    }
    Ok(levels.value(u))
}

/// Largest `k` the series is allowed to reach before giving up.
const SERIES_MAX_TERMS: usize = 4096;

fn check_series_args(u: f64, v: f64, kappa: f64) -> Result<()> {
    check_u(u)?;
    if u <= 0.0 {
        return domain("u must be strictly positive");
    }
    if !(kappa.is_finite() && kappa > 0.0) {
        return domain("kappa must be finite and positive");
    }
    if !(v >= 0.0) {
        return domain(format!("v = {v} must be non-negative"));
    }
    Ok(())
}

/// `μ^(κ)(u, v) = Σ_{k ≥ 1} κ^k μ_k(u, v)`, summed level by level.
///
/// Stops once a term falls below `cfg.series_tail_tol` and `k ≥ ⌈u⌉ + 2`.
pub fn mu_series(u: f64, v: f64, kappa: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_series_args(u, v, kappa)?;
    cfg.validate()?;
    let bound = u.min(1.0);
    if v >= bound {
        if v == bound && u <= 1.0 {
            return Ok(0.0);
        }
        return domain(format!("v = {v} must be smaller than min(1, u) = {bound}"));
    }
    if u <= 1.0 {
        return Ok(kappa * mu_1(u, v));
    }
    let mut levels = MuLevels::new(v, u, cheb_tol(cfg));
    let mut sum = kappa * levels.value(u);
    let mut weight = kappa;
    let min_terms = u.ceil() as usize + 2;
    loop {
        levels.advance();
        weight *= kappa;
        let term = weight * levels.value(u);
        sum += term;
        if term < cfg.series_tail_tol && levels.k >= min_terms {
            break;
        }
        if levels.k >= SERIES_MAX_TERMS {
            return Err(Error::Convergence(format!("series for μ^(κ)({u}, {v}) did not settle after {SERIES_MAX_TERMS} terms")));
        }
    }
    let cap = (1.0 + u).powf(kappa);
    if sum > cap + 1e-9 {
        return Err(Error::Convergence(format!("partial sum {sum} exceeds the a priori bound {cap}")));
    }
    Ok(sum)
}

/// Closed form of `μ^(κ)(u, v)` for `0 < u ≤ 2`.
fn mu_closed_small(u: f64, v: f64, kappa: f64) -> f64 {
    if u <= 1.0 {
        kappa * (1.0 - v / u)
    } else if u <= 1.0 + v {
        kappa * (1.0 - v) * u.powf(kappa - 1.0)
    } else if (kappa - 1.0).abs() < 1e-8 {
        1.0 - v + ((1.0 + v) / u).ln()
    } else {
        // solution of u μ' = (κ − 1) μ − κ continuous at u = 1 + v
        let c = kappa / (kappa - 1.0);
        c + kappa * (1.0 - v) * u.powf(kappa - 1.0) - c * (u / (1.0 + v)).powf(kappa - 1.0)
    }
}

/// `μ^(κ)(u, v)` from its closed forms on `(0, 2]`, continued beyond `u = 2`
/// by the delay equation `u ∂_u μ + (1 − κ) μ + κ μ(u − 1) = 0`.
pub fn mu_closed(u: f64, v: f64, kappa: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_series_args(u, v, kappa)?;
    cfg.validate()?;
    if v >= u.min(1.0) {
        return domain(format!("v = {v} must be smaller than min(1, u) = {}", u.min(1.0)));
    }
    if u <= 2.0 {
        return Ok(mu_closed_small(u, v, kappa));
    }
    let seed = |s: f64| mu_closed_small(s, v, kappa);
    let table = DelayTable::solve(seed, kappa, v, u, cfg.dde_grid_step);
    Ok(table.last().max(0.0))
}

/// Quasi-random node count used by [`mu_k_direct`] for `k > NESTED_MAX_K`.
pub const DIRECT_QMC_NODES: usize = 1 << 20;
const NESTED_MAX_K: usize = 4;

/// `μ_k(u, v)` by integrating `f_{k−1}` over `V_k(u, v)` directly.
///
/// The last coordinate is integrated in closed form (the integrand does not
/// depend on it). For `k ≤ 4` the remaining `k − 1` coordinates are handled by
/// nested adaptive Simpson quadrature; beyond that by a randomly shifted
/// Kronecker lattice of [`DIRECT_QMC_NODES`] points, the shift drawn from `seed`.
pub fn mu_k_direct(params: &MuParams, cfg: &QuadratureConfig, seed: u64) -> Result<f64> {
    params.validate()?;
    cfg.validate()?;
    let MuParams { u, v, k, .. } = *params;
    if k < 2 {
        return domain("the direct integral is defined for k ≥ 2");
    }
    if u <= 1.0 {
        return Ok(0.0);
    }
    if k <= NESTED_MAX_K {
        let tol = Tolerance::new(cfg.abs_tol.max(1e-10), cfg.rel_tol.max(1e-10), cfg.max_subdivisions);
        let g = nested(u, v, k - 1, 0.0, &tol)?;
        Ok(g / u)
    } else {
        Ok(kronecker(u, v, k - 1, seed) / u)
    }
}

/// Measure of `t_k ∈ (0, 1)` with `u − 1 < S + t_k < u − v`.
fn last_slab(u: f64, v: f64, s: f64) -> f64 {
    ((u - v - s).min(1.0) - (u - 1.0 - s).max(0.0)).max(0.0)
}

/// `∫ ∏ 1/(u − S_i) · last_slab` over the remaining `depth` coordinates,
/// given the partial sum `s` of the coordinates fixed so far.
fn nested(u: f64, v: f64, depth: usize, s: f64, tol: &Tolerance) -> Result<f64> {
    if depth == 0 {
        return Ok(last_slab(u, v, s));
    }
    let upper = (u - 1.0 - s).min(1.0);
    if upper <= 0.0 {
        return Ok(0.0);
    }
    let failure = std::cell::RefCell::new(None);
    let value = adaptive_simpson(
        |t| match nested(u, v, depth - 1, s + t, tol) {
            Ok(inner) => inner / (u - s - t),
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                0.0
            }
        },
        0.0,
        upper,
        tol,
    )?;
    match failure.into_inner() {
        Some(e) => Err(e),
        None => Ok(value),
    }
}

fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn kronecker(u: f64, v: f64, dim: usize, seed: u64) -> f64 {
    // generalised golden ratio: the positive root of x^{d+1} = x + 1
    let mut phi = 2.0_f64;
    for _ in 0..64 {
        phi = (1.0 + phi).powf(1.0 / (dim as f64 + 1.0));
    }
    let alpha: Vec<f64> = (1..=dim).map(|i| phi.powi(-(i as i32)).fract()).collect();
    let mut state = seed;
    let shift: Vec<f64> = (0..dim).map(|_| (splitmix(&mut state) >> 11) as f64 / (1u64 << 53) as f64).collect();
    let mut total = 0.0;
    let mut point = vec![0.0; dim];
    for n in 0..DIRECT_QMC_NODES {
        for i in 0..dim {
            point[i] = (shift[i] + (n as f64 + 1.0) * alpha[i]).fract();
        }
        let mut s = 0.0;
        let mut prod = 1.0;
        let mut inside = true;
        for &t in &point {
            s += t;
            if s >= u - 1.0 {
                inside = false;
                break;
            }
            prod /= u - s;
        }
        if inside {
            total += prod * last_slab(u, v, s);
        }
    }
    total / DIRECT_QMC_NODES as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dickman::{dickman_rho, gamma_eu};

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn f_k_examples() {
        assert_eq!(f_k(3.0, &[]).unwrap(), 1.0);
        assert!((f_k(3.0, &[0.5, 0.5]).unwrap() - 0.2).abs() < 1e-15);
        assert!(f_k(2.0, &[1.0, 1.5]).is_err());
    }

    #[test]
    fn mu_k_examples() {
        let c = cfg();
        assert_eq!(mu_k(&MuParams::new(2.5, 0.1, 1.0, 1).unwrap(), &c).unwrap(), 0.0);
        let m = mu_k(&MuParams::new(1.5, 0.2, 1.0, 1).unwrap(), &c).unwrap();
        assert!((m - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(mu_k(&MuParams::new(0.9, 0.0, 1.0, 3).unwrap(), &c).unwrap(), 0.0);
    }

    #[test]
    fn mu_2_closed_form() {
        // for 1 < u ≤ 1 + v: u μ_2 = ∫_1^u (1 − v)/s ds
        let c = cfg();
        let (u, v) = (1.3f64, 0.5);
        let want = (1.0 - v) * u.ln() / u;
        let got = mu_k(&MuParams::new(u, v, 1.0, 2).unwrap(), &c).unwrap();
        assert!((got - want).abs() < 1e-13);
    }

    #[test]
    fn params_validation() {
        assert!(MuParams::new(0.5, 0.6, 1.0, 1).is_err());
        assert!(MuParams::new(2.0, 1.1, 1.0, 1).is_err());
        assert!(MuParams::new(2.0, 0.1, 0.0, 1).is_err());
        assert!(MuParams::new(2.0, 0.1, 1.0, 0).is_err());
        assert!(MuParams::new(1.0, 1.0, 1.0, 2).is_ok());
    }

    #[test]
    fn direct_agrees_with_recursion() {
        let c = cfg();
        assert_eq!(mu_k_direct(&MuParams::new(0.5, 0.1, 1.0, 2).unwrap(), &c, 42).unwrap(), 0.0);
        for &(u, v, k) in &[(1.5, 0.0, 2), (1.2, 0.5, 2), (2.5, 0.1, 3), (2.8, 0.3, 4), (3.2, 0.0, 3), (1.9, 0.4, 3)] {
            let p = MuParams::new(u, v, 1.0, k).unwrap();
            let a = mu_k(&p, &c).unwrap();
            let b = mu_k_direct(&p, &c, 42).unwrap();
            assert!((a - b).abs() < 1e-8, "u={u} v={v} k={k}: {a} vs {b}");
        }
    }

    #[test]
    fn direct_quasi_random_route() {
        let c = cfg();
        let p = MuParams::new(3.5, 0.2, 1.0, 5).unwrap();
        let a = mu_k(&p, &c).unwrap();
        let b = mu_k_direct(&p, &c, 42).unwrap();
        assert!((a - b).abs() < 1e-4, "{a} vs {b}");
        assert!(mu_k_direct(&MuParams::new(2.0, 0.1, 1.0, 1).unwrap(), &c, 42).is_err());
    }

    #[test]
    fn series_examples() {
        let c = cfg();
        assert!((mu_series(0.5, 0.2, 1.0, &c).unwrap() - 0.6).abs() < 1e-15);
        assert!((mu_series(1.1, 0.2, 1.0, &c).unwrap() - 0.8).abs() < 1e-10);
        for &u in &[1.5, 2.5, 3.5] {
            let s = mu_series(u, 0.0, 1.0, &c).unwrap();
            let r = dickman_rho(u, &c).unwrap();
            assert!((s - r).abs() < 1e-9, "u={u}: {s} vs {r}");
        }
    }

    #[test]
    fn series_boundary_convention() {
        let c = cfg();
        assert_eq!(mu_series(0.5, 0.5, 1.0, &c).unwrap(), 0.0);
        assert!(mu_series(1.5, 1.0, 1.0, &c).is_err());
        assert!(mu_series(1.5, 1.2, 1.0, &c).is_err());
    }

    #[test]
    fn closed_examples() {
        let c = cfg();
        let want = 1.0 - 0.2 + (1.2f64 / 1.8).ln();
        assert!((mu_closed(1.8, 0.2, 1.0, &c).unwrap() - want).abs() < 1e-15);
        assert!((want - 0.394_535).abs() < 1e-6);
        assert!((mu_closed(0.5, 0.2, 2.0, &c).unwrap() - 1.2).abs() < 1e-15);
    }

    #[test]
    fn closed_form_continuous_at_one_plus_v() {
        for &kappa in &[0.5, 2.0, 1.0 + 1e-9, 3.0] {
            let v = 0.3;
            let left = mu_closed_small(1.3, v, kappa);
            let right = mu_closed_small(1.3 + 1e-12, v, kappa);
            assert!((left - right).abs() < 1e-9, "kappa={kappa}");
        }
    }

    #[test]
    fn closed_equals_series_on_grid() {
        let c = cfg();
        for &u in &[0.5, 1.2, 1.8, 2.5, 3.3] {
            for &v in &[0.0, 0.1, 0.4] {
                for &kappa in &[0.5, 1.0, 2.0] {
                    let a = mu_closed(u, v, kappa, &c).unwrap();
                    let b = mu_series(u, v, kappa, &c).unwrap();
                    assert!((a - b).abs() < 1e-9, "u={u} v={v} κ={kappa}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn distance_to_rho_bounded_by_gamma() {
        let c = cfg();
        for i in 4..=16 {
            let u = i as f64 * 0.25;
            let r = dickman_rho(u, &c).unwrap();
            for &v in &[0.1, 0.3, 0.5] {
                let m = mu_series(u, v, 1.0, &c).unwrap();
                let gap = r - m;
                assert!(gap >= -1e-9 && gap <= v / gamma_eu(u + 1.0).unwrap() + 1e-9, "u={u} v={v}");
            }
        }
    }

    #[test]
    fn partial_sums_respect_bound() {
        let c = cfg();
        for &(u, v, kappa) in &[(1.5, 0.2, 2.0), (2.7, 0.0, 3.0), (0.8, 0.1, 1.5)] {
            let s = mu_series(u, v, kappa, &c).unwrap();
            let cap = if u <= 1.0 { kappa } else { (1.0 + u).powf(kappa) };
            assert!(s <= cap + 1e-9);
        }
    }
}
