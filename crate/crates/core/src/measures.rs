//! Parametric weights `dμ(θ; t) = ω(θ; t) dθ/2π`, their trigonometric moments and
//! the Markov profile `(1/ω) ∂ω/∂t`.

use std::f64::consts::{PI, TAU};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::angle::wrap;
use crate::error::{Error, Result};
use crate::quadrature::{integrate_vec, AdaptiveOptions};

/// A weight with all of its parameters fixed.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightKind {
    /// Poisson kernel `(1-r²)/(1+r²-2r cos(θ-φ))`.
    BernsteinSzego { r: f64, phi: f64 },
    /// `1 - r cos θ`.
    SingleMoment { r: f64 },
    /// `(2-2cos θ)^r e^{(π-θ)s}` with `θ` read in `[0, 2π)`.
    ///
    /// The Gamma-function normalization is omitted: monic polynomials and their
    /// zeros do not change under positive rescaling of the measure.
    FisherHartwig { r: f64, s: f64 },
    /// `(1-t) ω₁ + t ω₂`.
    Mixture { first: Box<WeightKind>, second: Box<WeightKind>, t: f64 },
    Lebesgue,
}

/// Which scalar of a [`WeightKind`] plays the role of the sweep parameter `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepParam {
    R,
    Phi,
    S,
    /// The mixing weight of a [`WeightKind::Mixture`].
    T,
    /// `t` does not enter the weight.
    None,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::R => "r",
            SweepParam::Phi => "phi",
            SweepParam::S => "s",
            SweepParam::T => "t",
            SweepParam::None => "none",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "r" => SweepParam::R,
            "phi" => SweepParam::Phi,
            "s" => SweepParam::S,
            "t" => SweepParam::T,
            "none" => SweepParam::None,
            _ => return None,
        })
    }
}

impl WeightKind {
    pub fn name(&self) -> &'static str {
        match self {
            WeightKind::BernsteinSzego { .. } => "bernstein-szego",
            WeightKind::SingleMoment { .. } => "single-moment",
            WeightKind::FisherHartwig { .. } => "fisher-hartwig",
            WeightKind::Mixture { .. } => "mixture",
            WeightKind::Lebesgue => "lebesgue",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |name: &str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::Domain(format!("{name} must be finite, got {v}")))
            }
        };
        match self {
            WeightKind::BernsteinSzego { r, phi } => {
                finite("phi", *phi)?;
                if !(*r > 0.0 && *r < 1.0) {
                    return Err(Error::Domain(format!("Bernstein-Szego r = {r} outside (0, 1)")));
                }
            }
            WeightKind::SingleMoment { r } => {
                if !(*r > 0.0 && *r < 1.0) {
                    return Err(Error::Domain(format!("single-moment r = {r} outside (0, 1)")));
                }
            }
            WeightKind::FisherHartwig { r, s } => {
                finite("s", *s)?;
                if !(*r > -0.5) || !r.is_finite() {
                    return Err(Error::Domain(format!("Fisher-Hartwig r = {r} must exceed -1/2")));
                }
            }
            WeightKind::Mixture { first, second, t } => {
                if !(0.0..=1.0).contains(t) {
                    return Err(Error::Domain(format!("mixture weight t = {t} outside [0, 1]")));
                }
                first.validate()?;
                second.validate()?;
            }
            WeightKind::Lebesgue => {}
        }
        Ok(())
    }

    /// `ω(θ)`; `θ` is any real number and is reduced onto the circle.
    pub fn value(&self, theta: f64) -> f64 {
        match self {
            WeightKind::BernsteinSzego { r, phi } => (1.0 - r * r) / (1.0 + r * r - 2.0 * r * (theta - phi).cos()),
            WeightKind::SingleMoment { r } => 1.0 - r * theta.cos(),
            WeightKind::FisherHartwig { r, s } => {
                let (log_sin, jump) = fisher_hartwig_parts(theta);
                if *r == 0.0 {
                    (jump * s).exp()
                } else {
                    (2.0 * r * log_sin + jump * s).exp()
                }
            }
            WeightKind::Mixture { first, second, t } => (1.0 - t) * first.value(theta) + t * second.value(theta),
            WeightKind::Lebesgue => 1.0,
        }
    }

    /// `∂ω/∂p` for the parameter `p`.
    pub fn derivative(&self, param: SweepParam, theta: f64) -> Result<f64> {
        let unsupported = || Error::Domain(format!("parameter '{}' does not belong to {}", param.name(), self.name()));
        Ok(match (self, param) {
            (_, SweepParam::None) => 0.0,
            (WeightKind::BernsteinSzego { r, phi }, SweepParam::R) => {
                let c = (theta - phi).cos();
                let den = 1.0 + r * r - 2.0 * r * c;
                (-2.0 * r * den - (1.0 - r * r) * (2.0 * r - 2.0 * c)) / (den * den)
            }
            (WeightKind::BernsteinSzego { r, phi }, SweepParam::Phi) => {
                let den = 1.0 + r * r - 2.0 * r * (theta - phi).cos();
                2.0 * r * (1.0 - r * r) * (theta - phi).sin() / (den * den)
            }
            (WeightKind::SingleMoment { .. }, SweepParam::R) => -theta.cos(),
            (WeightKind::FisherHartwig { .. }, SweepParam::R) => {
                let (log_sin, _) = fisher_hartwig_parts(theta);
                2.0 * log_sin * self.value(theta)
            }
            (WeightKind::FisherHartwig { .. }, SweepParam::S) => {
                let (_, jump) = fisher_hartwig_parts(theta);
                jump * self.value(theta)
            }
            (WeightKind::Mixture { first, second, .. }, SweepParam::T) => second.value(theta) - first.value(theta),
            _ => return Err(unsupported()),
        })
    }

    /// Current value of a parameter.
    pub fn param(&self, param: SweepParam) -> Option<f64> {
        match (self, param) {
            (WeightKind::BernsteinSzego { r, .. }, SweepParam::R)
            | (WeightKind::SingleMoment { r }, SweepParam::R)
            | (WeightKind::FisherHartwig { r, .. }, SweepParam::R) => Some(*r),
            (WeightKind::BernsteinSzego { phi, .. }, SweepParam::Phi) => Some(*phi),
            (WeightKind::FisherHartwig { s, .. }, SweepParam::S) => Some(*s),
            (WeightKind::Mixture { t, .. }, SweepParam::T) => Some(*t),
            _ => None,
        }
    }

    fn with_param(&self, param: SweepParam, value: f64) -> Result<WeightKind> {
        let mut out = self.clone();
        match (&mut out, param) {
            (_, SweepParam::None) => {}
            (WeightKind::BernsteinSzego { r, .. }, SweepParam::R)
            | (WeightKind::SingleMoment { r }, SweepParam::R)
            | (WeightKind::FisherHartwig { r, .. }, SweepParam::R) => *r = value,
            (WeightKind::BernsteinSzego { phi, .. }, SweepParam::Phi) => *phi = value,
            (WeightKind::FisherHartwig { s, .. }, SweepParam::S) => *s = value,
            (WeightKind::Mixture { t, .. }, SweepParam::T) => *t = value,
            _ => {
                return Err(Error::Domain(format!("parameter '{}' does not belong to {}", param.name(), self.name())));
            }
        }
        out.validate()?;
        Ok(out)
    }

    /// Smallest negative exponent `2r` of a Fisher–Hartwig factor, i.e. an integrable
    /// singularity `|θ|^{2r}` at `θ = 0`.
    fn singular_exponent(&self) -> Option<f64> {
        match self {
            WeightKind::FisherHartwig { r, .. } if *r < 0.0 => Some(2.0 * r),
            WeightKind::Mixture { first, second, t } => {
                let a = if *t < 1.0 { first.singular_exponent() } else { None };
                let b = if *t > 0.0 { second.singular_exponent() } else { None };
                match (a, b) {
                    (Some(x), Some(y)) => Some(x.min(y)),
                    (x, y) => x.or(y),
                }
            }
            _ => None,
        }
    }

    /// True when `ω(-θ) = ω(θ)`, so that all moments are real.
    pub fn is_symmetric(&self) -> bool {
        match self {
            WeightKind::BernsteinSzego { phi, .. } => wrap(*phi, -PI).abs() == 0.0 || wrap(*phi, -PI).abs() == PI,
            WeightKind::SingleMoment { .. } | WeightKind::Lebesgue => true,
            WeightKind::FisherHartwig { s, .. } => *s == 0.0,
            WeightKind::Mixture { first, second, .. } => first.is_symmetric() && second.is_symmetric(),
        }
    }
}

/// `(ln(2|sin(θ/2)|), π - θ')` with `θ'` the representative of `θ` in `[0, 2π)`.
///
/// Both parts are formed from the representative in `[-π, π)` so that points close
/// to the singularity at `θ = 0` keep full relative precision on either side.
fn fisher_hartwig_parts(theta: f64) -> (f64, f64) {
    let tc = wrap(theta, -PI);
    let log_sin = (2.0 * (0.5 * tc).sin().abs()).ln();
    let jump = if tc >= 0.0 { PI - tc } else { -PI - tc };
    (log_sin, jump)
}

/// A weight family `ω(θ; t)` on `[θ₀, θ₀ + 2π)` with one designated sweep parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightFamily {
    pub kind: WeightKind,
    pub theta0: f64,
    pub sweep: SweepParam,
}

impl WeightFamily {
    pub fn new(kind: WeightKind, theta0: f64, sweep: SweepParam) -> Result<Self> {
        kind.validate()?;
        if !theta0.is_finite() {
            return Err(Error::Domain("theta0 must be finite".into()));
        }
        if sweep != SweepParam::None && kind.param(sweep).is_none() {
            return Err(Error::Domain(format!("parameter '{}' does not belong to {}", sweep.name(), kind.name())));
        }
        Ok(Self { kind, theta0, sweep })
    }

    /// Family sweeping the natural first parameter of `kind`, on `[0, 2π)`.
    pub fn with_default_sweep(kind: WeightKind) -> Result<Self> {
        let sweep = match kind {
            WeightKind::BernsteinSzego { .. } | WeightKind::SingleMoment { .. } | WeightKind::FisherHartwig { .. } => SweepParam::R,
            WeightKind::Mixture { .. } => SweepParam::T,
            WeightKind::Lebesgue => SweepParam::None,
        };
        Self::new(kind, 0.0, sweep)
    }

    pub fn lebesgue() -> Self {
        Self { kind: WeightKind::Lebesgue, theta0: 0.0, sweep: SweepParam::None }
    }

    /// The weight with the sweep parameter set to `t`.
    pub fn at(&self, t: f64) -> Result<WeightKind> {
        if !t.is_finite() {
            return Err(Error::Domain(format!("sweep parameter t = {t} is not finite")));
        }
        self.kind.with_param(self.sweep, t)
    }

    /// Current value of the sweep parameter stored in `kind` (0 when `t` is inert).
    pub fn current_t(&self) -> f64 {
        self.kind.param(self.sweep).unwrap_or(0.0)
    }

    pub fn has_t_dependence(&self) -> bool {
        self.sweep != SweepParam::None
    }
}

fn check_theta(theta: f64) -> Result<()> {
    if theta.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("θ = {theta} is not finite")))
    }
}

/// `ω(θ; t)`.
pub fn eval_weight(f: &WeightFamily, theta: f64, t: f64) -> Result<f64> {
    check_theta(theta)?;
    Ok(f.at(t)?.value(theta))
}

/// Analytic `∂ω/∂t (θ; t)`.
pub fn weight_dt(f: &WeightFamily, theta: f64, t: f64) -> Result<f64> {
    check_theta(theta)?;
    f.at(t)?.derivative(f.sweep, theta)
}

/// Central-difference `∂ω/∂t` with step `max(1e-6, 1e-8 |t|)`, for weights that
/// only expose point evaluation.
pub fn weight_dt_fd<W: Fn(f64, f64) -> Result<f64>>(weight: W, theta: f64, t: f64) -> Result<f64> {
    let h = (1e-8 * t.abs()).max(1e-6);
    Ok((weight(theta, t + h)? - weight(theta, t - h)?) / (2.0 * h))
}

/// Trigonometric moments `c_j = ∫ e^{-ijθ} dμ`, `j = 0..=jmax`, with `c_{-j} = conj(c_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSequence {
    c: Vec<Complex64>,
}

impl MomentSequence {
    pub fn new(c: Vec<Complex64>) -> Result<Self> {
        if c.is_empty() {
            return Err(Error::Domain("moment sequence needs c_0".into()));
        }
        if c[0].re <= 0.0 {
            return Err(Error::Domain(format!("c_0 = {} must be positive", c[0])));
        }
        Ok(Self { c })
    }

    /// Moments of the normalized Lebesgue measure.
    pub fn lebesgue(jmax: usize) -> Self {
        let mut c = vec![Complex64::new(0.0, 0.0); jmax + 1];
        c[0] = Complex64::new(1.0, 0.0);
        Self { c }
    }

    pub fn jmax(&self) -> usize {
        self.c.len() - 1
    }

    /// `c_j` for any `|j| <= jmax`; negative indices use the Hermitian extension.
    pub fn get(&self, j: i64) -> Complex64 {
        let m = self.c[j.unsigned_abs() as usize];
        if j < 0 {
            m.conj()
        } else {
            m
        }
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.c
    }

    /// `det (c_{i-j})_{i,j=0..=k}`.
    pub fn toeplitz_determinant(&self, k: usize) -> Result<f64> {
        if k > self.jmax() {
            return Err(Error::Domain(format!("D_{k} needs moments up to c_{k}")));
        }
        let m = DMatrix::from_fn(k + 1, k + 1, |i, j| self.get(i as i64 - j as i64));
        Ok(m.determinant().re)
    }

    /// Checks `D_k > 0` for all `k <= kmax`.
    pub fn is_positive_definite(&self, kmax: usize) -> Result<bool> {
        for k in 0..=kmax {
            if self.toeplitz_determinant(k)? <= 0.0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Multiplies every moment by a positive constant.
    pub fn scaled(&self, lambda: f64) -> Self {
        Self { c: self.c.iter().map(|c| c * lambda).collect() }
    }
}

/// Quadrature settings for integrals against a weight.
#[derive(Debug, Clone, Copy)]
pub struct CircleQuadrature {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_panels: usize,
}

impl Default for CircleQuadrature {
    fn default() -> Self {
        Self { abs_tol: 1e-13, rel_tol: 1e-13, max_panels: 40_000 }
    }
}

impl CircleQuadrature {
    pub fn abs(tol: f64) -> Self {
        Self { abs_tol: tol, rel_tol: 0.0, ..Self::default() }
    }
}

/// `(1/2π) ∫_{-π}^{π} g(θ) ω(θ) dθ` for a vector of integrands `g`.
///
/// `g(θ, e^{iθ}, out)` fills `dim` components. The interval is split at `θ = 0`,
/// where Fisher–Hartwig factors jump and may be singular; for a singular exponent
/// `2r < 0` each half is graded with `θ = ±π u^q`, `q = 1/(1+2r)`, which removes the
/// singularity from the transformed integrand.
pub fn integrate_weighted<G>(kind: &WeightKind, dim: usize, g: G, quad: &CircleQuadrature) -> Result<Vec<Complex64>>
where
    G: Fn(f64, Complex64, &mut [Complex64]) + Sync,
{
    let opts = AdaptiveOptions {
        abs_tol: quad.abs_tol * PI,
        rel_tol: quad.rel_tol,
        max_panels: quad.max_panels,
        ..AdaptiveOptions::default()
    };
    let mut total = vec![Complex64::new(0.0, 0.0); dim];
    match kind.singular_exponent() {
        None => {
            for (a, b) in [(-PI, 0.0), (0.0, PI)] {
                let part = integrate_vec(
                    |theta, out| {
                        g(theta, Complex64::from_polar(1.0, theta), out);
                        let w = kind.value(theta);
                        out.iter_mut().for_each(|v| *v *= w);
                    },
                    a,
                    b,
                    dim,
                    &opts,
                )?;
                total.iter_mut().zip(part).for_each(|(t, p)| *t += p);
            }
        }
        Some(exponent) => {
            let q = 1.0 / (1.0 + exponent);
            for sign in [-1.0, 1.0] {
                let part = integrate_vec(
                    |u, out| {
                        let theta = sign * PI * u.powf(q);
                        g(theta, Complex64::from_polar(1.0, theta), out);
                        let jac = PI * q * u.powf(q - 1.0);
                        let w = kind.value(theta) * jac;
                        out.iter_mut().for_each(|v| *v *= w);
                    },
                    0.0,
                    1.0,
                    dim,
                    &opts,
                )?;
                total.iter_mut().zip(part).for_each(|(t, p)| *t += p);
            }
        }
    }
    total.iter_mut().for_each(|v| *v /= TAU);
    Ok(total)
}

/// Moments `c_0..=c_jmax` of `ω(·; t) dθ/2π` to absolute accuracy `tol`.
pub fn moments(f: &WeightFamily, t: f64, jmax: usize, tol: f64) -> Result<MomentSequence> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("moment tolerance {tol} must be positive")));
    }
    let kind = f.at(t)?;
    moments_of(&kind, jmax, tol)
}

/// Moments of an already instantiated weight.
pub fn moments_of(kind: &WeightKind, jmax: usize, tol: f64) -> Result<MomentSequence> {
    if let WeightKind::Lebesgue = kind {
        return Ok(MomentSequence::lebesgue(jmax));
    }
    // Each block of moments shares one panel tree; blocks run in parallel and are
    // assembled in index order.
    const BLOCK: usize = 8;
    let blocks: Vec<usize> = (0..=jmax).step_by(BLOCK).collect();
    let parts: Vec<Result<Vec<Complex64>>> = blocks
        .par_iter()
        .map(|&start| {
            let end = (start + BLOCK).min(jmax + 1);
            integrate_weighted(
                kind,
                end - start,
                |theta, _, out| {
                    for (k, v) in out.iter_mut().enumerate() {
                        *v = Complex64::from_polar(1.0, -((start + k) as f64) * theta);
                    }
                },
                &CircleQuadrature { abs_tol: tol, rel_tol: 0.0, ..CircleQuadrature::default() },
            )
        })
        .collect();
    let mut c = Vec::with_capacity(jmax + 1);
    for part in parts {
        c.extend(part?);
    }
    // c_0 is real for a real weight.
    c[0] = Complex64::new(c[0].re, 0.0);
    MomentSequence::new(c)
}

/// Shape of a sampled function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProfileShape {
    StrictlyIncreasing,
    StrictlyDecreasing,
    /// Decreasing then increasing, turning at the given argument.
    VShapedAt(f64),
    /// Increasing then decreasing, turning at the given argument.
    CapShapedAt(f64),
    Other,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MarkovProfile {
    pub values: Vec<f64>,
    pub classification: ProfileShape,
}

/// Tie tolerance for consecutive differences when classifying a profile.
pub const PROFILE_TIE_TOL: f64 = 1e-12;

/// Samples `(1/ω) ∂ω/∂t` on `grid` and classifies its shape.
pub fn markov_profile(f: &WeightFamily, t: f64, grid: &[f64]) -> Result<MarkovProfile> {
    if grid.len() < 8 {
        return Err(Error::Domain(format!("profile grid needs at least 8 points, got {}", grid.len())));
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Domain("profile grid must be strictly increasing".into()));
    }
    let kind = f.at(t)?;
    let values = grid
        .iter()
        .map(|&theta| {
            check_theta(theta)?;
            let w = kind.value(theta);
            if !(w > 0.0) || !w.is_finite() {
                return Err(Error::Domain(format!("weight is {w} at θ = {theta}")));
            }
            Ok(kind.derivative(f.sweep, theta)? / w)
        })
        .collect::<Result<Vec<_>>>()?;
    let classification = classify_shape(grid, &values, PROFILE_TIE_TOL);
    Ok(MarkovProfile { values, classification })
}

/// Classifies samples by the sign pattern of consecutive differences.
///
/// One tie is tolerated exactly at a turning point (symmetric grids around the
/// extremum); the turning argument is then the midpoint of the tied pair.
pub fn classify_shape(grid: &[f64], values: &[f64], tie_tol: f64) -> ProfileShape {
    let signs: Vec<i8> = values
        .windows(2)
        .map(|w| {
            let d = w[1] - w[0];
            if d > tie_tol {
                1
            } else if d < -tie_tol {
                -1
            } else {
                0
            }
        })
        .collect();
    if signs.iter().all(|&s| s == 1) {
        return ProfileShape::StrictlyIncreasing;
    }
    if signs.iter().all(|&s| s == -1) {
        return ProfileShape::StrictlyDecreasing;
    }
    let turning = |first: i8| -> Option<f64> {
        let lead = signs.iter().take_while(|&&s| s == first).count();
        if lead == 0 {
            return None;
        }
        let mut rest = &signs[lead..];
        let mut turn = grid[lead];
        if rest.first() == Some(&0) {
            turn = 0.5 * (grid[lead] + grid[lead + 1]);
            rest = &rest[1..];
        }
        if !rest.is_empty() && rest.iter().all(|&s| s == -first) {
            Some(turn)
        } else {
            None
        }
    };
    if let Some(at) = turning(-1) {
        ProfileShape::VShapedAt(at)
    } else if let Some(at) = turning(1) {
        ProfileShape::CapShapedAt(at)
    } else {
        ProfileShape::Other
    }
}
