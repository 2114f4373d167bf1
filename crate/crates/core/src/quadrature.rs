//! Numerical integration primitives: adaptive Simpson, Gauss–Legendre rules
//! and piecewise Chebyshev interpolants with exact antiderivatives.

use crate::error::{Error, Result};

/// Error control for [`adaptive_simpson`].
#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_subdivisions: usize,
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64, max_subdivisions: usize) -> Self {
        Tolerance { abs, rel, max_subdivisions }
    }
}

const MIN_DEPTH: u32 = 3;
const MAX_DEPTH: u32 = 60;

struct Simpson<'a, F> {
    f: &'a F,
    budget: usize,
    exhausted: bool,
}

impl<F: Fn(f64) -> f64> Simpson<'_, F> {
    #[allow(clippy::too_many_arguments)]
    fn step(&mut self, a: f64, fa: f64, m: f64, fm: f64, b: f64, fb: f64, whole: f64, eps: f64, depth: u32) -> f64 {
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = (self.f)(lm);
        let frm = (self.f)(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth >= MIN_DEPTH && (delta.abs() <= 15.0 * eps || depth >= MAX_DEPTH || self.budget == 0) {
            if delta.abs() > 15.0 * eps && self.budget == 0 {
                self.exhausted = true;
            }
            return left + right + delta / 15.0;
        }
        self.budget = self.budget.saturating_sub(1);
        self.step(a, fa, lm, flm, m, fm, left, 0.5 * eps, depth + 1)
            + self.step(m, fm, rm, frm, b, fb, right, 0.5 * eps, depth + 1)
    }
}

/// Integrates `f` over `[a, b]` by adaptive Simpson bisection.
///
/// The target error is `max(tol.abs, tol.rel * |I|)`, where `|I|` is taken from
/// a coarse first pass. Fails with [`Error::Convergence`] when the subdivision
/// budget runs out before the target is met.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: &Tolerance) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    if b < a {
        return adaptive_simpson(f, b, a, tol).map(|v| -v);
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    // coarse magnitude for the relative criterion
    let coarse = gauss_legendre_integrate(&f, a, b, 8, 8).abs();
    let eps = tol.abs.max(tol.rel * coarse);
    let mut s = Simpson { f: &f, budget: tol.max_subdivisions, exhausted: false };
    let value = s.step(a, fa, m, fm, b, fb, whole, eps, 0);
    if s.exhausted {
        return Err(Error::Convergence(format!(
            "adaptive Simpson on [{a}, {b}] exceeded {} subdivisions",
            tol.max_subdivisions
        )));
    }
    Ok(value)
}

/// Adaptive Simpson over `[a, b]` split at the given interior breakpoints.
pub fn adaptive_simpson_pieces<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, breaks: &[f64], tol: &Tolerance) -> Result<f64> {
    let mut pts: Vec<f64> = breaks.iter().copied().filter(|&t| t > a && t < b).collect();
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let mut edges = Vec::with_capacity(pts.len() + 2);
    edges.push(a);
    edges.extend(pts);
    edges.push(b);
    let n = (edges.len() - 1) as f64;
    let piece_tol = Tolerance { abs: tol.abs / n, ..*tol };
    let mut total = 0.0;
    for w in edges.windows(2) {
        total += adaptive_simpson(&f, w[0], w[1], &piece_tol)?;
    }
    Ok(total)
}

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { z } else { p1 };
            let pn1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (z * pn - pn1) / (z * z - 1.0);
            let dz = pn / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Composite Gauss–Legendre: `panels` equal panels with an `order`-point rule each.
pub fn gauss_legendre_integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, order: usize, panels: usize) -> f64 {
    let (x, w) = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for k in 0..panels {
        let lo = a + k as f64 * h;
        let c = lo + 0.5 * h;
        let mut s = 0.0;
        for (xi, wi) in x.iter().zip(&w) {
            s += wi * f(c + 0.5 * h * xi);
        }
        total += 0.5 * h * s;
    }
    total
}

/// Chebyshev interpolant of a smooth function on `[a, b]`.
#[derive(Debug, Clone)]
pub struct ChebPiece {
    pub a: f64,
    pub b: f64,
    coeffs: Vec<f64>,
    /// coefficients of the antiderivative vanishing at `a`
    integral: Vec<f64>,
}

impl ChebPiece {
    /// Interpolates `f` at `n` Chebyshev points of the first kind.
    pub fn fit<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, n: usize) -> Self {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let vals: Vec<f64> = (0..n)
            .map(|j| {
                let x = (std::f64::consts::PI * (j as f64 + 0.5) / n as f64).cos();
                f(mid + half * x)
            })
            .collect();
        let mut coeffs = vec![0.0; n];
        for (k, c) in coeffs.iter_mut().enumerate() {
            let mut s = 0.0;
            for (j, v) in vals.iter().enumerate() {
                s += v * (std::f64::consts::PI * k as f64 * (j as f64 + 0.5) / n as f64).cos();
            }
            *c = 2.0 * s / n as f64;
        }
        coeffs[0] *= 0.5;
        let integral = antiderivative(&coeffs, half);
        ChebPiece { a, b, coeffs, integral }
    }

    /// Size of the two trailing coefficients, a proxy for the interpolation error.
    pub fn tail(&self) -> f64 {
        let n = self.coeffs.len();
        self.coeffs[n - 1].abs() + self.coeffs[n - 2].abs()
    }

    pub fn scale(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    fn to_unit(&self, t: f64) -> f64 {
        ((2.0 * t - self.a - self.b) / (self.b - self.a)).clamp(-1.0, 1.0)
    }

    pub fn eval(&self, t: f64) -> f64 {
        clenshaw(&self.coeffs, self.to_unit(t))
    }

    /// `∫_a^t f`.
    pub fn integral_to(&self, t: f64) -> f64 {
        clenshaw(&self.integral, self.to_unit(t))
    }

    pub fn total_integral(&self) -> f64 {
        clenshaw(&self.integral, 1.0)
    }
}

fn clenshaw(c: &[f64], x: f64) -> f64 {
    let (mut b1, mut b2) = (0.0, 0.0);
    for &ck in c.iter().skip(1).rev() {
        let b0 = 2.0 * x * b1 - b2 + ck;
        b2 = b1;
        b1 = b0;
    }
    x * b1 - b2 + c[0]
}

fn antiderivative(c: &[f64], half: f64) -> Vec<f64> {
    let n = c.len();
    let get = |k: usize| if k < n { c[k] } else { 0.0 };
    let mut out = vec![0.0; n + 1];
    for (k, o) in out.iter_mut().enumerate().skip(1) {
        let prev = if k == 1 { 2.0 * get(0) } else { get(k - 1) };
        *o = half * (prev - get(k + 1)) / (2.0 * k as f64);
    }
    // fix the constant so the antiderivative vanishes at x = -1
    let at_minus_one: f64 = out.iter().enumerate().skip(1).map(|(k, v)| if k % 2 == 0 { *v } else { -*v }).sum();
    out[0] = -at_minus_one;
    out
}

/// Piecewise Chebyshev representation over consecutive intervals, supporting
/// evaluation and exact cumulative integrals.
#[derive(Debug, Clone)]
pub struct PiecewiseCheb {
    pieces: Vec<ChebPiece>,
    /// `∫` from the left end of the domain to the start of each piece
    offsets: Vec<f64>,
}

const CHEB_POINTS: usize = 24;
const MAX_SPLIT_DEPTH: u32 = 20;

impl PiecewiseCheb {
    /// Fits `f` on each interval between consecutive `edges`, bisecting any
    /// piece whose trailing coefficients exceed `tol`.
    pub fn fit<F: Fn(f64) -> f64>(f: &F, edges: &[f64], tol: f64) -> Self {
        let mut pieces = Vec::new();
        for w in edges.windows(2) {
            fit_adaptive(f, w[0], w[1], tol, 0, &mut pieces);
        }
        let mut offsets = Vec::with_capacity(pieces.len());
        let mut acc = 0.0;
        for p in &pieces {
            offsets.push(acc);
            acc += p.total_integral();
        }
        PiecewiseCheb { pieces, offsets }
    }

    pub fn lo(&self) -> f64 {
        self.pieces.first().map_or(0.0, |p| p.a)
    }

    pub fn hi(&self) -> f64 {
        self.pieces.last().map_or(0.0, |p| p.b)
    }

    fn locate(&self, t: f64) -> usize {
        match self.pieces.binary_search_by(|p| {
            if t < p.a {
                std::cmp::Ordering::Greater
            } else if t > p.b {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Equal
            }
        }) {
            Ok(i) => i,
            Err(i) => i.min(self.pieces.len() - 1),
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.pieces[self.locate(t)].eval(t)
    }

    /// `∫_{lo}^{t}` of the represented function.
    pub fn cumulative(&self, t: f64) -> f64 {
        let i = self.locate(t);
        self.offsets[i] + self.pieces[i].integral_to(t)
    }
}

fn fit_adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32, out: &mut Vec<ChebPiece>) {
    let piece = ChebPiece::fit(f, a, b, CHEB_POINTS);
    if piece.tail() <= tol || depth >= MAX_SPLIT_DEPTH || b - a < 1e-12 {
        out.push(piece);
        return;
    }
    let m = 0.5 * (a + b);
    fit_adaptive(f, a, m, tol, depth + 1, out);
    fit_adaptive(f, m, b, tol, depth + 1, out);
}
