//! Zero trajectories under a parameter sweep: matching and unwrapping, angular
//! velocities, the kernels `s` and `ϖ`, and monotonicity, comparison and
//! interlacing verdicts.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::angle::{arg_in, circle_distance, wrap, wrap_signed};
use crate::error::{Error, Result};
use crate::measures::{integrate_weighted, CircleQuadrature, WeightFamily, WeightKind};
use crate::opuc::{basis_for, closed_form_opuc, default_moment_tol, has_closed_form, szego_levinson};
use crate::poly::ComplexPolynomial;
use crate::popuc::{eigenvector, factor_out_zero, fixed_zero_b, ggt, popuc, zeros_with, ZeroOptions, ZeroSet};

/// Default tolerance for strict monotonicity of sampled arguments.
pub const MONO_TOL: f64 = 1e-10;

/// `b(t) = exp(i (scale t + offset))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnimodularPath {
    pub scale: f64,
    pub offset: f64,
}

impl UnimodularPath {
    pub fn at(&self, t: f64) -> Complex64 {
        Complex64::from_polar(1.0, self.scale * t + self.offset)
    }

    pub fn derivative(&self, t: f64) -> Complex64 {
        Complex64::new(0.0, self.scale) * self.at(t)
    }

    /// Parses `exp(i*t)`, `exp(i*<a>*t)` and `exp(i*(<a>*t+<c>))`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("unsupported unimodular path '{text}'; expected exp(i*t), exp(i*a*t) or exp(i*(a*t+c))"));
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = s.strip_prefix("exp(i*").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let inner = inner.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(inner);
        let (lin, offset) = match inner.find("*t") {
            Some(pos) => {
                let rest = &inner[pos + 2..];
                let offset = if rest.is_empty() { 0.0 } else { rest.parse::<f64>().map_err(|_| bad())? };
                (&inner[..pos], offset)
            }
            None if inner.starts_with('t') => {
                let rest = &inner[1..];
                let offset = if rest.is_empty() { 0.0 } else { rest.parse::<f64>().map_err(|_| bad())? };
                ("1", offset)
            }
            None => return Err(bad()),
        };
        let scale = if lin.is_empty() { 1.0 } else { lin.parse::<f64>().map_err(|_| bad())? };
        if !(scale.is_finite() && offset.is_finite()) {
            return Err(bad());
        }
        Ok(Self { scale, offset })
    }
}

/// How the POPUC parameter `b` is chosen at each `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BRule {
    Constant(Complex64),
    /// `b(ξ)` so that `ξ` stays a zero for every `t`.
    FixedZero(Complex64),
    OfT(UnimodularPath),
}

impl BRule {
    pub fn resolve(&self, qprev: &ComplexPolynomial, t: f64) -> Result<Complex64> {
        match *self {
            BRule::Constant(b) => Ok(b),
            BRule::FixedZero(xi) => fixed_zero_b(qprev, xi),
            BRule::OfT(path) => Ok(path.at(t)),
        }
    }
}

/// Monic `Q_m` for a weight: closed forms where available, otherwise moments.
pub fn monic_opuc(kind: &WeightKind, m: usize) -> Result<ComplexPolynomial> {
    if let WeightKind::Lebesgue = kind {
        return Ok(ComplexPolynomial::monomial(m));
    }
    if has_closed_form(kind) {
        return closed_form_opuc(kind, m);
    }
    let moments = crate::measures::moments_of(kind, m, default_moment_tol(kind))?;
    Ok(szego_levinson(&moments, m)?.monic.swap_remove(m))
}

/// The degree-`n` POPUC at `t` together with the resolved `b`.
pub fn popuc_at(f: &WeightFamily, t: f64, n: usize, rule: &BRule) -> Result<(ComplexPolynomial, Complex64)> {
    if n == 0 {
        return Err(Error::Domain("POPUC degree must be at least 1".into()));
    }
    let kind = f.at(t)?;
    let q = monic_opuc(&kind, n - 1)?;
    let b = rule.resolve(&q, t)?;
    Ok((popuc(&q, b)?, b))
}

/// Step for central differences in `t`.
pub fn fd_step(t: f64) -> f64 {
    1e-5 * t.abs().max(1.0)
}

/// Coefficientwise central difference `∂P/∂t`.
pub fn dpopuc_dt(f: &WeightFamily, t: f64, n: usize, rule: &BRule) -> Result<ComplexPolynomial> {
    if !f.has_t_dependence() && !matches!(rule, BRule::OfT(_)) {
        return Ok(ComplexPolynomial::new(vec![Complex64::new(0.0, 0.0); n + 1]));
    }
    let h = fd_step(t);
    let (p_plus, _) = popuc_at(f, t + h, n, rule)?;
    let (p_minus, _) = popuc_at(f, t - h, n, rule)?;
    Ok(p_plus.sub(&p_minus).scale(Complex64::new(0.5 / h, 0.0)))
}

fn quadrature_for(kind: &WeightKind) -> CircleQuadrature {
    CircleQuadrature { abs_tol: default_moment_tol(kind) * 1e-2, rel_tol: 1e-12, ..CircleQuadrature::default() }
}

/// `ζ'(t) = -∫ conj(P/(z-ζ)) ∂P/∂t dμ / ∫ |P/(z-ζ)|² dμ`.
pub fn velocity_integral(kind: &WeightKind, p: &ComplexPolynomial, zeta: Complex64, dp_dt: &ComplexPolynomial) -> Result<Complex64> {
    let q = factor_out_zero(p, zeta, 1e-8)?;
    if dp_dt.max_abs_coeff() == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let v = integrate_weighted(
        kind,
        2,
        |_, z, out| {
            let qz = q.eval(z);
            out[0] = qz.conj() * dp_dt.eval(z);
            out[1] = Complex64::new(qz.norm_sqr(), 0.0);
        },
        &quadrature_for(kind),
    )?;
    Ok(-v[0] / v[1].re)
}

/// `φ' = -i conj(ζ) ζ'` for `ζ = e^{iφ}`.
pub fn angular_velocity(zeta: Complex64, zeta_prime: Complex64) -> f64 {
    (Complex64::new(0.0, -1.0) * zeta.conj() * zeta_prime).re
}

/// Zero of the POPUC at `t` closest to `near`.
fn nearest_zero(f: &WeightFamily, t: f64, n: usize, rule: &BRule, near: Complex64) -> Result<Complex64> {
    let (p, _) = popuc_at(f, t, n, rule)?;
    let roots = p.roots(&Default::default())?;
    roots
        .into_iter()
        .min_by(|a, b| (a - near).norm().total_cmp(&(b - near).norm()))
        .ok_or_else(|| Error::Domain("polynomial has no zeros".into()))
}

/// Central difference of the argument of the zero tracked from `zeta`.
pub fn fd_angular_velocity(f: &WeightFamily, t: f64, n: usize, rule: &BRule, zeta: Complex64) -> Result<f64> {
    let h = fd_step(t);
    let plus = nearest_zero(f, t + h, n, rule, zeta)?;
    let minus = nearest_zero(f, t - h, n, rule, zeta)?;
    Ok(wrap_signed(plus.arg() - minus.arg()) / (2.0 * h))
}

/// `φ' = Re(i conj(b) b' |v_{n-1}|²)` from the normalized eigenvector `v` of the GGT
/// matrix for the eigenvalue `ζ`.
pub fn lidskii_velocity(a: &[Complex64], b: Complex64, b_prime: Complex64, zeta: Complex64) -> Result<f64> {
    let g = ggt(a, b)?;
    let (v, _) = eigenvector(&g, zeta)?;
    let last = v[g.dim - 1].norm_sqr();
    Ok((Complex64::new(0.0, 1.0) * b.conj() * b_prime * last).re)
}

/// Verblunsky coefficients `a_0..a_{n-2}` of the weight at `t`.
pub fn verblunsky_at(f: &WeightFamily, t: f64, n: usize) -> Result<Vec<Complex64>> {
    let kind = f.at(t)?;
    if n < 2 {
        return Ok(Vec::new());
    }
    Ok(basis_for(&kind, n - 1)?.verblunsky)
}

fn profile_at(kind: &WeightKind, f: &WeightFamily, theta: f64) -> Result<f64> {
    let w = kind.value(theta);
    if !(w > 0.0) || !w.is_finite() {
        return Err(Error::Domain(format!("weight is {w} at θ = {theta}")));
    }
    Ok(kind.derivative(f.sweep, theta)? / w)
}

/// `ϖ(θ; t) = (1/ω)∂ω/∂t at θ minus the same at φ`.
pub fn varpi(f: &WeightFamily, t: f64, theta: f64, phi: f64) -> Result<f64> {
    let kind = f.at(t)?;
    Ok(profile_at(&kind, f, theta)? - profile_at(&kind, f, phi)?)
}

const POLE_TOL: f64 = 1e-10;

/// Both closed forms of the fixed-zero kernel `s(θ)` as `(complex form, trigonometric form)`.
pub fn s_fixed_forms(theta: f64, phi: f64, theta0: f64) -> Result<(f64, f64)> {
    if circle_distance(theta, theta0) < POLE_TOL || circle_distance(theta, phi) < POLE_TOL {
        return Err(Error::Pole(format!("s(θ) is singular at θ = {theta} (φ = {phi}, θ₀ = {theta0})")));
    }
    let e = Complex64::from_polar(1.0, theta);
    let xi = Complex64::from_polar(1.0, theta0);
    let zeta = Complex64::from_polar(1.0, phi);
    let complex = Complex64::new(0.0, 1.0) * (xi - zeta) * e / ((e - xi) * (e - zeta));
    let trig = -0.5 * ((phi - theta0) / 2.0).sin() / (((phi - theta) / 2.0).sin() * ((theta0 - theta) / 2.0).sin());
    Ok((complex.re, trig))
}

/// `s(θ; t; θ₀) = i(ξ-ζ)e^{iθ}/((e^{iθ}-ξ)(e^{iθ}-ζ))`, returned in trigonometric form.
pub fn s_fixed(theta: f64, phi: f64, theta0: f64) -> Result<f64> {
    let (c, t) = s_fixed_forms(theta, phi, theta0)?;
    debug_assert!((c - t).abs() <= 1e-8 * (1.0 + t.abs()), "s forms disagree: {c} vs {t}");
    Ok(t)
}

/// Both closed forms of `e^{iθ}/((e^{iθ}-ζ)(e^{iθ}-conj ζ))`.
pub fn s_conjugate_forms(theta: f64, phi: f64) -> Result<(f64, f64)> {
    if (theta.cos() - phi.cos()).abs() < POLE_TOL {
        return Err(Error::Pole(format!("conjugate kernel is singular at θ = {theta} (φ = {phi})")));
    }
    let e = Complex64::from_polar(1.0, theta);
    let zeta = Complex64::from_polar(1.0, phi);
    let complex = e / ((e - zeta) * (e - zeta.conj()));
    let trig = 0.5 / (theta.cos() - phi.cos());
    Ok((complex.re, trig))
}

pub fn s_conjugate(theta: f64, phi: f64) -> Result<f64> {
    let (c, t) = s_conjugate_forms(theta, phi)?;
    debug_assert!((c - t).abs() <= 1e-8 * (1.0 + t.abs()), "conjugate kernel forms disagree: {c} vs {t}");
    Ok(t)
}

/// Which companion zero closes the angular-velocity identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Anchor {
    /// `e^{iθ₀}` is a zero for every `t`.
    FixedZero(f64),
    /// `conj(ζ)` is a zero together with `ζ`.
    Conjugate,
}

/// Both sides of the angular-velocity identity at a zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityCheck {
    /// `C(t) φ'(t)` with `φ'` from central differences.
    pub lhs: f64,
    /// The weighted integral of `s |P|² ϖ`.
    pub rhs: f64,
    pub c: f64,
    pub phi_prime: f64,
}

impl IdentityCheck {
    pub fn relative_error(&self) -> f64 {
        (self.lhs - self.rhs).abs() / self.lhs.abs().max(self.rhs.abs()).max(1e-12)
    }
}

/// Evaluates `C φ' = -∫ s |P|² ϖ dμ` (fixed zero) or
/// `C φ' = -2 Im(ζ) ∫ e^{iθ}|P|²ϖ/((e^{iθ}-ζ)(e^{iθ}-conj ζ)) dμ` (conjugate pair).
pub fn angular_velocity_identity(f: &WeightFamily, t: f64, n: usize, rule: &BRule, zeta: Complex64, anchor: Anchor) -> Result<IdentityCheck> {
    let (p, _) = popuc_at(f, t, n, rule)?;
    let kind = f.at(t)?;
    let q = factor_out_zero(&p, zeta, 1e-8)?;
    let phi = zeta.arg();
    let companion = match anchor {
        Anchor::FixedZero(theta0) => Complex64::from_polar(1.0, theta0),
        Anchor::Conjugate => zeta.conj(),
    };
    if (companion - zeta).norm() < 1e-8 {
        return Err(Error::Domain("anchor coincides with the tracked zero".into()));
    }
    let q2 = factor_out_zero(&q, companion, 1e-6)?;
    let q_companion = if let Anchor::Conjugate = anchor { Some(factor_out_zero(&p, companion, 1e-8)?) } else { None };
    let phi_prime = if f.has_t_dependence() || matches!(rule, BRule::OfT(_)) {
        fd_angular_velocity(f, t, n, rule, zeta)?
    } else {
        0.0
    };
    let profile_phi = if f.has_t_dependence() { profile_at(&kind, f, phi)? } else { 0.0 };
    let v = integrate_weighted(
        &kind,
        2,
        |theta, z, out| {
            let w = if f.has_t_dependence() {
                kind.derivative(f.sweep, theta).unwrap_or(0.0) / kind.value(theta) - profile_phi
            } else {
                0.0
            };
            let pz = p.eval(z);
            let core = z * q2.eval(z) * pz.conj() * w;
            out[0] = match anchor {
                Anchor::FixedZero(_) => -(Complex64::new(0.0, 1.0) * (companion - zeta) * core),
                Anchor::Conjugate => core * (-2.0 * zeta.im),
            };
            let mut c = q.eval(z).norm_sqr();
            if let Some(qc) = &q_companion {
                c += qc.eval(z).norm_sqr();
            }
            out[1] = Complex64::new(c, 0.0);
        },
        &quadrature_for(&kind),
    )?;
    let c = v[1].re;
    Ok(IdentityCheck { lhs: c * phi_prime, rhs: v[0].re, c, phi_prime })
}

/// Options for [`sweep`] and [`track_zeros`].
#[derive(Debug, Clone, Copy)]
pub struct SweepOptions {
    /// Largest accepted matching distance between consecutive grid points.
    pub match_gap: f64,
    /// Maximum number of bisections of one grid step when matching is ambiguous.
    pub max_refine_depth: usize,
    pub zeros: ZeroOptions,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self { match_gap: 0.5, max_refine_depth: 20, zeros: ZeroOptions::default() }
    }
}

/// Unwrapped, matched zero arguments over a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryTable {
    pub t_grid: Vec<f64>,
    pub n_zeros: usize,
    /// `args[i][k] = φ_k(t_i)`.
    pub args: Vec<Vec<f64>>,
    /// Matched zeros, same layout as `args`.
    pub zeros: Vec<Vec<Complex64>>,
    /// Largest matching distance into each grid point (0 for the first).
    pub residuals: Vec<f64>,
    /// Number of intermediate points inserted to resolve each step.
    pub refinements: Vec<usize>,
    pub theta0: f64,
    pub b_rule: Option<BRule>,
}

impl TrajectoryTable {
    pub fn column(&self, k: usize) -> Vec<f64> {
        self.args.iter().map(|row| row[k]).collect()
    }

    /// Trajectories whose wrapped argument lies strictly inside `(lo, hi)` at every grid point.
    pub fn columns_within(&self, lo: f64, hi: f64) -> Vec<usize> {
        (0..self.n_zeros)
            .filter(|&k| self.zeros.iter().all(|row| {
                let a = wrap(row[k].arg(), lo);
                a > lo + 1e-9 && a < hi - 1e-9
            }))
            .collect()
    }

    /// Trajectories whose wrapped argument lies strictly inside `(lo, hi)` at the first grid point.
    pub fn columns_starting_within(&self, lo: f64, hi: f64) -> Vec<usize> {
        (0..self.n_zeros)
            .filter(|&k| {
                let a = wrap(self.zeros[0][k].arg(), lo);
                a > lo + 1e-9 && a < hi - 1e-9
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,zero_index,arg_unwrapped,re,im\n");
        for (i, t) in self.t_grid.iter().enumerate() {
            for k in 0..self.n_zeros {
                let z = self.zeros[i][k];
                let _ = writeln!(out, "{:.16e},{},{:.16e},{:.16e},{:.16e}", t, k, self.args[i][k], z.re, z.im);
            }
        }
        out
    }
}

fn match_step(prev_args: &[f64], next: &ZeroSet, match_gap: f64) -> std::result::Result<(Vec<usize>, f64), String> {
    let mut used = vec![usize::MAX; next.len()];
    let mut assignment = Vec::with_capacity(prev_args.len());
    let mut worst = 0.0f64;
    for (k, &phi) in prev_args.iter().enumerate() {
        let (j, d) = next
            .args
            .iter()
            .enumerate()
            .map(|(j, &a)| (j, circle_distance(a, phi)))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .ok_or("no zeros to match")?;
        if used[j] != usize::MAX {
            return Err(format!("trajectories {} and {k} both claim zero {j}", used[j]));
        }
        used[j] = k;
        worst = worst.max(d);
        assignment.push(j);
    }
    if worst >= match_gap {
        return Err(format!("matching distance {worst:.3e} exceeds the gap {match_gap}"));
    }
    // Nearest-neighbour matching is only unambiguous when every zero moved by less
    // than half the smallest spacing on either side of the step.
    let spacing = min_spacing(prev_args).min(next.min_gap());
    if worst >= 0.5 * spacing {
        return Err(format!("matching distance {worst:.3e} is not small against the zero spacing {spacing:.3e}"));
    }
    Ok((assignment, worst))
}

fn min_spacing(args: &[f64]) -> f64 {
    let mut sorted: Vec<f64> = args.iter().map(|a| wrap(*a, 0.0)).collect();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    if n < 2 {
        return TAU;
    }
    let mut gap = sorted[0] + TAU - sorted[n - 1];
    for w in sorted.windows(2) {
        gap = gap.min(w[1] - w[0]);
    }
    gap
}

/// Tracks the zeros of `make(t)` over a grid, bisecting a step whenever the matching
/// into its right end is ambiguous.
pub fn track_zeros<F>(t_grid: &[f64], make: F, opts: &SweepOptions) -> Result<TrajectoryTable>
where
    F: Fn(f64) -> Result<ComplexPolynomial> + Sync,
{
    if t_grid.is_empty() {
        return Err(Error::Domain("t-grid is empty".into()));
    }
    if t_grid.windows(2).any(|w| !(w[1] > w[0])) || t_grid.iter().any(|t| !t.is_finite()) {
        return Err(Error::Domain("t-grid must be finite and strictly increasing".into()));
    }
    let solve = |t: f64| -> Result<ZeroSet> { zeros_with(&make(t)?.to_monic()?, &opts.zeros) };
    let sets: Vec<ZeroSet> = t_grid.par_iter().map(|&t| solve(t)).collect::<Result<Vec<_>>>()?;
    let n_zeros = sets[0].len();
    let mut args = vec![sets[0].args.clone()];
    let mut zeros = vec![sets[0].zeros.clone()];
    let mut residuals = vec![0.0];
    let mut refinements = vec![0];

    for i in 1..t_grid.len() {
        if sets[i].len() != n_zeros {
            return Err(Error::IndexMismatch(format!("{} zeros at t = {}, expected {n_zeros}", sets[i].len(), t_grid[i])));
        }
        // Advance from (t_prev, current args) to t_grid[i], inserting midpoints as needed.
        let mut t_prev = t_grid[i - 1];
        let mut cur_args = args[i - 1].clone();
        let mut cur_zeros = zeros[i - 1].clone();
        let mut worst = 0.0f64;
        let mut inserted = 0usize;
        let mut targets: Vec<(f64, usize)> = vec![(t_grid[i], 0)];
        let mut cache: Vec<(f64, ZeroSet)> = vec![(t_grid[i], sets[i].clone())];
        while let Some(&(t_next, depth)) = targets.last() {
            let set = match cache.iter().find(|(t, _)| *t == t_next) {
                Some((_, s)) => s.clone(),
                None => {
                    let s = solve(t_next)?;
                    cache.push((t_next, s.clone()));
                    s
                }
            };
            match match_step(&cur_args, &set, opts.match_gap) {
                Ok((assignment, d)) => {
                    worst = worst.max(d);
                    for (k, &j) in assignment.iter().enumerate() {
                        cur_args[k] += wrap_signed(set.args[j] - cur_args[k]);
                        cur_zeros[k] = set.zeros[j];
                    }
                    t_prev = t_next;
                    targets.pop();
                }
                Err(reason) => {
                    if depth >= opts.max_refine_depth {
                        return Err(Error::Matching { t: t_next, reason });
                    }
                    let mid = 0.5 * (t_prev + t_next);
                    targets.push((mid, depth + 1));
                    inserted += 1;
                }
            }
        }
        args.push(cur_args);
        zeros.push(cur_zeros);
        residuals.push(worst);
        refinements.push(inserted);
    }
    Ok(TrajectoryTable {
        t_grid: t_grid.to_vec(),
        n_zeros,
        args,
        zeros,
        residuals,
        refinements,
        theta0: opts.zeros.theta0,
        b_rule: None,
    })
}

/// Sweeps the family's parameter over `t_grid` and tracks the degree-`n` POPUC zeros.
pub fn sweep(f: &WeightFamily, t_grid: &[f64], n: usize, rule: BRule, opts: &SweepOptions) -> Result<TrajectoryTable> {
    if n < 2 {
        return Err(Error::Domain("sweeps need degree at least 2".into()));
    }
    let mut opts = *opts;
    opts.zeros.theta0 = f.theta0;
    let mut tab = track_zeros(t_grid, |t| popuc_at(f, t, n, &rule).map(|(p, _)| p), &opts)?;
    tab.b_rule = Some(rule);
    Ok(tab)
}

/// Direction of one trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    Increasing,
    Decreasing,
    NonMonotone,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub zero_index: usize,
    pub verdict: Direction,
    /// Grid value ending the first step that breaks the pattern set by the first step.
    pub witness_t: Option<f64>,
}

/// Classifies every column of `tab` with tolerance [`MONO_TOL`].
pub fn monotonicity_verdict(tab: &TrajectoryTable) -> Result<Vec<Verdict>> {
    monotonicity_verdict_with(tab, MONO_TOL)
}

pub fn monotonicity_verdict_with(tab: &TrajectoryTable, mono_tol: f64) -> Result<Vec<Verdict>> {
    if tab.t_grid.len() < 3 {
        return Err(Error::Domain("monotonicity needs at least 3 grid points".into()));
    }
    Ok((0..tab.n_zeros)
        .map(|k| {
            let col = tab.column(k);
            let sign = |d: f64| {
                if d > mono_tol {
                    1
                } else if d < -mono_tol {
                    -1
                } else {
                    0
                }
            };
            let first = sign(col[1] - col[0]);
            let broken = (0..col.len() - 1).find(|&i| first == 0 || sign(col[i + 1] - col[i]) != first);
            match broken {
                None if first == 1 => Verdict { zero_index: k, verdict: Direction::Increasing, witness_t: None },
                None => Verdict { zero_index: k, verdict: Direction::Decreasing, witness_t: None },
                Some(i) => Verdict { zero_index: k, verdict: Direction::NonMonotone, witness_t: Some(tab.t_grid[i + 1]) },
            }
        })
        .collect())
}

/// Serializes verdicts as a JSON array.
pub fn verdicts_to_json(verdicts: &[Verdict]) -> String {
    serde_json::to_string_pretty(verdicts).expect("verdicts serialize")
}

/// Whether the zeros of `za` (degree `m`) and `zb` (degree `m+1`) interlace by the
/// arc rule: each open arc between consecutive zeros of `zb` holds at most one zero
/// of `za`, and each open arc between consecutive zeros of `za` holds at least one
/// zero of `zb`.
pub fn interlacing_check(za: &ZeroSet, zb: &ZeroSet, sep_tol: f64) -> Result<bool> {
    for &a in &za.args {
        for &b in &zb.args {
            let gap = circle_distance(a, b);
            if gap <= sep_tol {
                return Err(Error::Collision { gap });
            }
        }
    }
    let sorted = |args: &[f64]| {
        let mut v: Vec<f64> = args.iter().map(|a| wrap(*a, 0.0)).collect();
        v.sort_by(f64::total_cmp);
        v
    };
    let a = sorted(&za.args);
    let b = sorted(&zb.args);
    let count_in_arcs = |ends: &[f64], pts: &[f64]| -> Vec<usize> {
        let m = ends.len();
        (0..m)
            .map(|i| {
                let start = ends[i];
                let len = if m == 1 { TAU } else { wrap(ends[(i + 1) % m] - start, 0.0) };
                pts.iter().filter(|&&x| {
                    let d = wrap(x - start, 0.0);
                    d > 0.0 && d < len
                }).count()
            })
            .collect()
    };
    let at_most_one = b.is_empty() || count_in_arcs(&b, &a).iter().all(|&c| c <= 1);
    let at_least_one = a.is_empty() || count_in_arcs(&a, &b).iter().all(|&c| c >= 1);
    Ok(at_most_one && at_least_one)
}

/// How the two POPUC of a comparison are pinned.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CompareAnchor {
    SharedZeroAt(Complex64),
    SymmetricB(f64),
    /// The same unimodular `b` for both.
    SameB(Complex64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    /// Arguments in `[θ₀, θ₀+2π)`, sorted descending.
    pub args1: Vec<f64>,
    pub args2: Vec<f64>,
    /// `θ_{j,1} < θ_{j,2} - mono_tol`.
    pub less: Vec<bool>,
}

impl Comparison {
    /// Indices whose arguments in both lists lie strictly inside `(lo, hi)`.
    pub fn indices_within(&self, lo: f64, hi: f64) -> Vec<usize> {
        (0..self.args1.len())
            .filter(|&j| {
                let inside = |a: f64| a > lo + 1e-9 && a < hi - 1e-9;
                inside(self.args1[j]) && inside(self.args2[j])
            })
            .collect()
    }
}

/// Pairs the zeros of two degree-`n` POPUC by descending argument.
pub fn comparison(k1: &WeightKind, k2: &WeightKind, n: usize, anchor: CompareAnchor, theta0: f64) -> Result<Comparison> {
    if n == 0 {
        return Err(Error::Domain("comparison needs degree at least 1".into()));
    }
    let rule = match anchor {
        CompareAnchor::SharedZeroAt(xi) => BRule::FixedZero(xi),
        CompareAnchor::SymmetricB(b) => {
            if b != 1.0 && b != -1.0 {
                return Err(Error::Domain(format!("symmetric comparison needs b = ±1, got {b}")));
            }
            if !(k1.is_symmetric() && k2.is_symmetric()) {
                return Err(Error::Domain("symmetric comparison needs symmetric weights".into()));
            }
            BRule::Constant(Complex64::new(b, 0.0))
        }
        CompareAnchor::SameB(b) => BRule::Constant(b),
    };
    let opts = ZeroOptions::with_theta0(theta0);
    let args_of = |kind: &WeightKind| -> Result<Vec<f64>> {
        let q = monic_opuc(kind, n - 1)?;
        let b = rule.resolve(&q, 0.0)?;
        let z = zeros_with(&popuc(&q, b)?, &opts)?;
        let mut args = z.args.clone();
        if let CompareAnchor::SharedZeroAt(xi) = anchor {
            // the shared zero sits exactly at arg ξ
            let exact = arg_in(xi, theta0);
            if let Some(j) = (0..args.len()).min_by(|&i, &j| {
                circle_distance(args[i], exact).total_cmp(&circle_distance(args[j], exact))
            }) {
                args[j] = exact;
            }
        }
        args.sort_by(|a, b| b.total_cmp(a));
        Ok(args)
    };
    let args1 = args_of(k1)?;
    let args2 = args_of(k2)?;
    if args1.len() != args2.len() {
        return Err(Error::IndexMismatch(format!("{} vs {} zeros", args1.len(), args2.len())));
    }
    let less = args1.iter().zip(&args2).map(|(a, b)| *a < *b - MONO_TOL).collect();
    Ok(Comparison { args1, args2, less })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::SweepParam;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn zero_set(args: &[f64]) -> ZeroSet {
        let zeros: Vec<Complex64> = args.iter().map(|a| Complex64::from_polar(1.0, *a)).collect();
        let mut items: Vec<(f64, Complex64)> = zeros.iter().map(|z| (arg_in(*z, 0.0), *z)).collect();
        items.sort_by(|a, b| a.0.total_cmp(&b.0));
        ZeroSet {
            theta0: 0.0,
            zeros: items.iter().map(|x| x.1).collect(),
            args: items.iter().map(|x| x.0).collect(),
            abs_residual: vec![0.0; args.len()],
            poly_residual: vec![0.0; args.len()],
        }
    }

    #[test]
    fn path_parsing() {
        assert_eq!(UnimodularPath::parse("exp(i*t)").unwrap(), UnimodularPath { scale: 1.0, offset: 0.0 });
        assert_eq!(UnimodularPath::parse("exp(i*2.5*t)").unwrap(), UnimodularPath { scale: 2.5, offset: 0.0 });
        assert_eq!(UnimodularPath::parse("exp(i*(2*t+0.5))").unwrap(), UnimodularPath { scale: 2.0, offset: 0.5 });
        assert!(UnimodularPath::parse("cos(t)").is_err());
    }

    #[test]
    fn lebesgue_sweep_is_constant() {
        let f = WeightFamily::lebesgue();
        let b = Complex64::from_polar(1.0, 0.4);
        let tab = sweep(&f, &[0.0, 0.5, 1.0, 1.5], 6, BRule::Constant(b), &SweepOptions::default()).unwrap();
        for k in 0..6 {
            let col = tab.column(k);
            assert!(col.iter().all(|a| *a == col[0]));
        }
        let v = monotonicity_verdict(&tab).unwrap();
        assert!(v.iter().all(|v| v.verdict == Direction::NonMonotone));
    }

    #[test]
    fn lidskii_small_cases() {
        let beta_prime = 0.7;
        let b = Complex64::from_polar(1.0, 0.3);
        let v = lidskii_velocity(&[], b, c(0.0, beta_prime) * b, b.conj()).unwrap();
        assert!((v + beta_prime).abs() < 1e-14);
        let t = 0.9;
        let path = UnimodularPath { scale: 1.0, offset: 0.0 };
        let b = path.at(t);
        let p = popuc(&ComplexPolynomial::monomial(4), b).unwrap();
        for zeta in p.roots(&Default::default()).unwrap() {
            let v = lidskii_velocity(&[c(0.0, 0.0); 4], b, path.derivative(t), zeta).unwrap();
            assert!((v + 0.2).abs() < 1e-8);
        }
    }

    #[test]
    fn velocity_matches_finite_differences() {
        let f = WeightFamily::new(WeightKind::BernsteinSzego { r: 0.5, phi: 0.0 }, 0.0, SweepParam::R).unwrap();
        let rule = BRule::FixedZero(c(1.0, 0.0));
        let t = 0.5;
        let (p, _) = popuc_at(&f, t, 6, &rule).unwrap();
        let dp = dpopuc_dt(&f, t, 6, &rule).unwrap();
        let kind = f.at(t).unwrap();
        for zeta in p.roots(&Default::default()).unwrap() {
            if (zeta - 1.0).norm() < 1e-6 {
                continue;
            }
            let zp = velocity_integral(&kind, &p, zeta, &dp).unwrap();
            assert!((zeta.conj() * zp).re.abs() <= 1e-6 * zp.norm() + 1e-12);
            let integral = angular_velocity(zeta, zp);
            let fd = fd_angular_velocity(&f, t, 6, &rule, zeta).unwrap();
            assert!((integral - fd).abs() <= 1e-5 * fd.abs() + 1e-9, "{integral} vs {fd}");
        }
    }

    #[test]
    fn s_function_forms() {
        let (cf, tf) = s_fixed_forms(PI / 2.0, PI, 0.0).unwrap();
        assert!((cf - 1.0).abs() < 1e-15 && (tf - 1.0).abs() < 1e-15);
        assert!(matches!(s_fixed(0.0, 1.0, 0.0), Err(Error::Pole(_))));
        assert!((s_conjugate(0.0, PI / 2.0).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(s_conjugate(-0.4, 1.2).unwrap(), s_conjugate(0.4, 1.2).unwrap());
        assert!(matches!(s_conjugate(1.2, -1.2), Err(Error::Pole(_))));
    }

    #[test]
    fn varpi_examples() {
        let f = WeightFamily::new(WeightKind::FisherHartwig { r: 0.5, s: 0.3 }, 0.0, SweepParam::S).unwrap();
        assert_eq!(varpi(&f, 0.3, 1.1, 1.1).unwrap(), 0.0);
        assert!((varpi(&f, 0.3, 2.0, 0.5).unwrap() - (0.5 - 2.0)).abs() < 1e-14);
    }

    #[test]
    fn identity_fixed_zero_fisher_hartwig() {
        let f = WeightFamily::new(WeightKind::FisherHartwig { r: 0.5, s: 0.2 }, 0.0, SweepParam::S).unwrap();
        let rule = BRule::FixedZero(c(1.0, 0.0));
        let (p, _) = popuc_at(&f, 0.2, 5, &rule).unwrap();
        for zeta in p.roots(&Default::default()).unwrap() {
            if (zeta - 1.0).norm() < 1e-6 {
                continue;
            }
            let chk = angular_velocity_identity(&f, 0.2, 5, &rule, zeta, Anchor::FixedZero(0.0)).unwrap();
            assert!(chk.relative_error() <= 1e-5, "{chk:?}");
        }
    }

    #[test]
    fn identity_conjugate_single_moment() {
        let f = WeightFamily::new(WeightKind::SingleMoment { r: 0.5 }, 0.0, SweepParam::R).unwrap();
        let rule = BRule::Constant(c(1.0, 0.0));
        let (p, _) = popuc_at(&f, 0.5, 6, &rule).unwrap();
        for zeta in p.roots(&Default::default()).unwrap() {
            if zeta.im.abs() < 1e-6 {
                continue;
            }
            let chk = angular_velocity_identity(&f, 0.5, 6, &rule, zeta, Anchor::Conjugate).unwrap();
            assert!(chk.relative_error() <= 1e-5, "{chk:?}");
        }
    }

    #[test]
    fn interlacing_examples() {
        let cube: Vec<f64> = (0..3).map(|k| TAU * k as f64 / 3.0).collect();
        let fourth: Vec<f64> = (0..4).map(|k| TAU * k as f64 / 4.0 + PI / 7.0).collect();
        // brute force by merged cyclic order: no two cube roots adjacent
        let mut merged: Vec<(f64, bool)> = cube.iter().map(|a| (*a, true)).chain(fourth.iter().map(|a| (wrap(*a, 0.0), false))).collect();
        merged.sort_by(|a, b| a.0.total_cmp(&b.0));
        let adjacent = (0..merged.len()).any(|i| merged[i].1 && merged[(i + 1) % merged.len()].1);
        assert_eq!(interlacing_check(&zero_set(&cube), &zero_set(&fourth), 1e-9).unwrap(), !adjacent);
        let za = zero_set(&[2.0 * PI / 3.0, -2.0 * PI / 3.0]);
        let zb = zero_set(&[PI / 2.0, -PI / 2.0, PI]);
        assert!(interlacing_check(&za, &zb, 1e-9).unwrap());
        let zb_bad = zero_set(&[0.1, 0.2, 0.3]);
        assert!(!interlacing_check(&za, &zb_bad, 1e-9).unwrap());
        assert!(matches!(interlacing_check(&za, &zero_set(&[2.0 * PI / 3.0, 0.0, 1.0]), 1e-9), Err(Error::Collision { .. })));
    }

    #[test]
    fn comparison_of_identical_weights() {
        let k = WeightKind::SingleMoment { r: 0.6 };
        let cmp = comparison(&k, &k, 9, CompareAnchor::SharedZeroAt(c(1.0, 0.0)), 0.0).unwrap();
        assert!(cmp.less.iter().all(|l| !l));
        assert_eq!(cmp.args1, cmp.args2);
        assert!(cmp.args1.windows(2).all(|w| w[0] >= w[1]));
        assert_eq!(*cmp.args1.last().unwrap(), 0.0);
    }

    #[test]
    fn verdict_json_shape() {
        let v = Verdict { zero_index: 3, verdict: Direction::NonMonotone, witness_t: Some(0.5) };
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"zero_index":3,"verdict":"non-monotone","witness_t":0.5}"#);
        let v = Verdict { zero_index: 0, verdict: Direction::Increasing, witness_t: None };
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"zero_index":0,"verdict":"increasing","witness_t":null}"#);
    }
}
