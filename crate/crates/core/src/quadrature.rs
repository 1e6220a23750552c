//! Composite Gauss–Legendre quadrature with adaptive bisection.
//!
//! The integrator works on vector-valued complex integrands so that families of
//! related integrals (all moments, all quasi-orthogonality residuals) share one
//! panel tree and one weight evaluation per node.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes are found by Newton's method on `P_n` from the usual cosine guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..(n + 1) / 2 {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Integrates a real function over `[a, b]` with this fixed rule.
    pub fn integrate_real<F: FnMut(f64) -> f64>(&self, mut f: F, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes.iter().zip(&self.weights).map(|(x, w)| w * f(mid + half * x)).sum::<f64>() * half
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

/// Controls for [`integrate_vec`].
#[derive(Debug, Clone, Copy)]
pub struct AdaptiveOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_panels: usize,
    pub order: usize,
    pub initial_panels: usize,
}

impl Default for AdaptiveOptions {
    fn default() -> Self {
        Self { abs_tol: 1e-13, rel_tol: 1e-13, max_panels: 20_000, order: 16, initial_panels: 4 }
    }
}

impl AdaptiveOptions {
    pub fn with_abs_tol(abs_tol: f64) -> Self {
        Self { abs_tol, rel_tol: 0.0, ..Self::default() }
    }
}

/// A panel with its two halves already integrated.
struct Panel {
    a: f64,
    b: f64,
    left: Vec<Complex64>,
    right: Vec<Complex64>,
    err: Vec<f64>,
    key: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key.total_cmp(&other.key)
    }
}

/// Applies the fixed rule on `[a, b]`, returning integrals of `f` and of `|f|` componentwise.
fn panel_rule<F>(rule: &GaussLegendre, f: &F, a: f64, b: f64, dim: usize, buf: &mut [Complex64]) -> (Vec<Complex64>, Vec<f64>)
where
    F: Fn(f64, &mut [Complex64]),
{
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut value = vec![Complex64::new(0.0, 0.0); dim];
    let mut abs = vec![0.0; dim];
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        buf.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
        f(mid + half * x, buf);
        for k in 0..dim {
            value[k] += buf[k] * (w * half);
            abs[k] += buf[k].norm() * (w * half.abs());
        }
    }
    (value, abs)
}

/// Integrates the vector-valued `f` over `[a, b]`.
///
/// `f(x, out)` writes the `dim` integrand components at `x` into `out`. Each panel's
/// error is estimated by comparing its rule with the sum over its halves; the panel
/// with the largest error (relative to the per-component tolerance
/// `max(abs_tol, rel_tol * ∫|f_k|)`) is bisected until every summed estimate is
/// within tolerance.
pub fn integrate_vec<F>(f: F, a: f64, b: f64, dim: usize, opts: &AdaptiveOptions) -> Result<Vec<Complex64>>
where
    F: Fn(f64, &mut [Complex64]),
{
    let rule = GaussLegendre::new(opts.order);
    let mut buf = vec![Complex64::new(0.0, 0.0); dim];
    let width = b - a;
    let n0 = opts.initial_panels.max(1);

    let mut coarse = Vec::with_capacity(n0);
    let mut scale = vec![0.0; dim];
    for i in 0..n0 {
        let pa = a + width * i as f64 / n0 as f64;
        let pb = if i + 1 == n0 { b } else { a + width * (i + 1) as f64 / n0 as f64 };
        let (value, abs) = panel_rule(&rule, &f, pa, pb, dim, &mut buf);
        scale.iter_mut().zip(&abs).for_each(|(s, x)| *s += x);
        coarse.push((pa, pb, value));
    }
    let tol: Vec<f64> = scale.iter().map(|s| opts.abs_tol.max(opts.rel_tol * s).max(f64::MIN_POSITIVE)).collect();

    let refine = |pa: f64, pb: f64, whole: &[Complex64], buf: &mut [Complex64]| -> Panel {
        let mid = 0.5 * (pa + pb);
        let (left, _) = panel_rule(&rule, &f, pa, mid, dim, buf);
        let (right, _) = panel_rule(&rule, &f, mid, pb, dim, buf);
        let err: Vec<f64> = (0..dim).map(|k| (whole[k] - left[k] - right[k]).norm()).collect();
        let key = err.iter().zip(&tol).map(|(e, t)| e / t).fold(0.0, f64::max);
        Panel { a: pa, b: pb, left, right, err, key }
    };

    let mut heap = std::collections::BinaryHeap::new();
    let mut err_sum = vec![0.0; dim];
    for (pa, pb, value) in coarse {
        let p = refine(pa, pb, &value, &mut buf);
        err_sum.iter_mut().zip(&p.err).for_each(|(s, e)| *s += e);
        heap.push(p);
    }
    let mut frozen = Vec::new();
    let mut panels = heap.len();
    let within = |sum: &[f64]| sum.iter().zip(&tol).all(|(s, t)| s <= t);
    while !within(&err_sum) {
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        // Panels narrower than a few ulps cannot be refined further.
        if (mid - worst.a).abs() <= 64.0 * f64::EPSILON * worst.a.abs().max(worst.b.abs()).max(1.0) {
            frozen.push(worst);
            continue;
        }
        panels += 1;
        if panels > opts.max_panels {
            let estimate = err_sum.iter().zip(&tol).map(|(s, t)| s / t).fold(0.0, f64::max);
            let min_tol = tol.iter().cloned().fold(f64::INFINITY, f64::min);
            return Err(Error::Quadrature { tol: min_tol, estimate: estimate * min_tol, panels });
        }
        let l = refine(worst.a, mid, &worst.left, &mut buf);
        let r = refine(mid, worst.b, &worst.right, &mut buf);
        for k in 0..dim {
            err_sum[k] = (err_sum[k] - worst.err[k]).max(0.0) + l.err[k] + r.err[k];
        }
        heap.push(l);
        heap.push(r);
    }
    if !within(&err_sum) {
        let estimate = err_sum.iter().zip(&tol).map(|(s, t)| s / t).fold(0.0, f64::max);
        let min_tol = tol.iter().cloned().fold(f64::INFINITY, f64::min);
        return Err(Error::Quadrature { tol: min_tol, estimate: estimate * min_tol, panels });
    }
    let mut all: Vec<Panel> = heap.into_vec();
    all.extend(frozen);
    all.sort_by(|p, q| p.a.total_cmp(&q.a));
    let mut total = vec![Complex64::new(0.0, 0.0); dim];
    for p in &all {
        for k in 0..dim {
            total[k] += p.left[k] + p.right[k];
        }
    }
    Ok(total)
}


/// Scalar convenience wrapper over [`integrate_vec`].
pub fn integrate<F>(f: F, a: f64, b: f64, opts: &AdaptiveOptions) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    integrate_vec(|x, out| out[0] = f(x), a, b, 1, opts).map(|v| v[0])
}
