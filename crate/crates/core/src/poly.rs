//! Dense complex polynomials in ascending coefficient order.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `Σ coeffs[k] z^k`. The declared degree is `coeffs.len() - 1` even when the
/// leading coefficient vanishes, which is what the `*`-reversal needs.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPolynomial {
    coeffs: Vec<Complex64>,
}

impl ComplexPolynomial {
    /// Panics on an empty coefficient vector.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "a polynomial needs at least one coefficient");
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn constant(c: Complex64) -> Self {
        Self { coeffs: vec![c] }
    }

    pub fn one() -> Self {
        Self::constant(ONE)
    }

    /// `z^n`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![ZERO; n + 1];
        coeffs[n] = ONE;
        Self { coeffs }
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut p = Self::one();
        for &r in roots {
            p = p.mul(&Self::new(vec![-r, ONE]));
        }
        p
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs[self.degree()]
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == ONE
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn sum_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    /// `(p(z), p'(z))` in one Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = ZERO;
        let mut d = ZERO;
        for &c in self.coeffs.iter().rev() {
            d = d * z + p;
            p = p * z + c;
        }
        (p, d)
    }

    pub fn derivative(&self) -> Self {
        if self.degree() == 0 {
            return Self::constant(ZERO);
        }
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, &c)| c * k as f64).collect())
    }

    /// `z^n conj(p(1/conj(z)))`: coefficient `k` is `conj(p_{n-k})`.
    pub fn star(&self, n: usize) -> Result<Self> {
        if self.degree() > n {
            return Err(Error::Degree { degree: self.degree(), declared: n });
        }
        Ok(Self::new((0..=n).map(|k| self.coeff(n - k).conj()).collect()))
    }

    /// Synthetic division by `z - zeta`: returns `(quotient, remainder)`.
    pub fn divide_linear(&self, zeta: Complex64) -> (Self, Complex64) {
        let n = self.degree();
        if n == 0 {
            return (Self::constant(ZERO), self.coeffs[0]);
        }
        let mut q = vec![ZERO; n];
        let mut acc = ZERO;
        for k in (0..n).rev() {
            acc = acc * zeta + self.coeffs[k + 1];
            q[k] = acc;
        }
        let rem = acc * zeta + self.coeffs[0];
        (Self::new(q), rem)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Sum with the declared degree of the longer operand.
    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// `z p(z)`.
    pub fn shift(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(ZERO);
        coeffs.extend_from_slice(&self.coeffs);
        Self::new(coeffs)
    }

    /// Divides by the leading coefficient.
    pub fn to_monic(&self) -> Result<Self> {
        let lead = self.leading();
        if lead.norm() == 0.0 {
            return Err(Error::DegenerateEvaluation("leading coefficient vanishes".into()));
        }
        let mut p = self.scale(lead.inv());
        let n = p.degree();
        p.coeffs[n] = ONE;
        Ok(p)
    }

    /// Largest coefficientwise difference relative to the larger coefficient scale.
    pub fn relative_distance(&self, other: &Self) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        let scale = self.max_abs_coeff().max(other.max_abs_coeff()).max(f64::MIN_POSITIVE);
        (0..n).map(|k| (self.coeff(k) - other.coeff(k)).norm()).fold(0.0, f64::max) / scale
    }

    /// All roots by Aberth–Ehrlich iteration followed by Newton polishing.
    pub fn roots(&self, opts: &RootOptions) -> Result<Vec<Complex64>> {
        aberth(self, opts)
    }
}

impl Serialize for ComplexPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.coeffs.iter().map(|c| [c.re, c.im]).collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(d)?;
        if pairs.is_empty() {
            return Err(serde::de::Error::custom("polynomial needs at least one coefficient"));
        }
        Ok(Self::new(pairs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect()))
    }
}

/// Settings for [`ComplexPolynomial::roots`].
#[derive(Debug, Clone, Copy)]
pub struct RootOptions {
    pub max_iter: usize,
    /// Accept when `|p(ζ)| <= residual_tol · Σ|p_k|` for every root.
    pub residual_tol: f64,
    pub polish_steps: usize,
    /// Rotation of the initial roots of unity.
    pub start_angle: f64,
}

impl Default for RootOptions {
    fn default() -> Self {
        Self { max_iter: 200, residual_tol: 1e-10, polish_steps: 2, start_angle: 0.37 }
    }
}

fn aberth(p: &ComplexPolynomial, opts: &RootOptions) -> Result<Vec<Complex64>> {
    let p = p.to_monic()?;
    let n = p.degree();
    if n == 0 {
        return Ok(Vec::new());
    }
    let scale = p.sum_abs_coeff();
    // Unit-circle start is natural for paraorthogonal inputs; other inputs get a
    // radius from the geometric mean of the root moduli.
    let radius = p.coeff(0).norm().powf(1.0 / n as f64).clamp(1e-3, 1e3);
    let radius = if radius.is_finite() && radius > 0.0 { radius } else { 1.0 };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, TAU * k as f64 / n as f64 + opts.start_angle))
        .collect();
    let mut converged = vec![false; n];
    let mut iterations = 0;
    while iterations < opts.max_iter && converged.iter().any(|c| !c) {
        iterations += 1;
        for i in 0..n {
            if converged[i] {
                continue;
            }
            let (v, d) = p.eval_with_derivative(z[i]);
            if v.norm() <= 1e-15 * scale {
                converged[i] = true;
                continue;
            }
            let ratio = v / d;
            let repulsion: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                continue;
            }
            z[i] -= step;
            if step.norm() <= 1e-15 * z[i].norm().max(1e-300) {
                converged[i] = true;
            }
        }
    }
    for _ in 0..opts.polish_steps {
        for zi in z.iter_mut() {
            let (v, d) = p.eval_with_derivative(*zi);
            if d.norm() > 0.0 && v.norm() > 0.0 {
                let next = *zi - v / d;
                if p.eval(next).norm() <= v.norm() {
                    *zi = next;
                }
            }
        }
    }
    let residual = z.iter().map(|&zi| p.eval(zi).norm()).fold(0.0, f64::max);
    if !(residual <= opts.residual_tol * scale) {
        return Err(Error::Convergence { residual, iterations });
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn star_examples() {
        let a = c(0.3, -0.2);
        let p = ComplexPolynomial::new(vec![-a, ONE]);
        assert_eq!(p.star(1).unwrap().coeffs(), &[ONE, -a.conj()]);
        assert_eq!(ComplexPolynomial::monomial(4).star(4).unwrap(), ComplexPolynomial::one().star(4).unwrap().star(4).unwrap());
        assert_eq!(ComplexPolynomial::monomial(4).star(4).unwrap().coeff(0), ONE);
        assert!(matches!(ComplexPolynomial::monomial(3).star(2), Err(Error::Degree { degree: 3, declared: 2 })));
    }

    #[test]
    fn division_and_derivative() {
        let p = ComplexPolynomial::from_roots(&[c(1.0, 0.0), c(0.0, 1.0), c(-0.5, 0.2)]);
        let (q, rem) = p.divide_linear(c(0.0, 1.0));
        assert!(rem.norm() < 1e-15);
        assert!(q.relative_distance(&ComplexPolynomial::from_roots(&[c(1.0, 0.0), c(-0.5, 0.2)])) < 1e-15);
        let z = c(0.4, 0.9);
        let (v, d) = p.eval_with_derivative(z);
        assert!((v - p.eval(z)).norm() < 1e-15);
        assert!((d - p.derivative().eval(z)).norm() < 1e-14);
    }

    #[test]
    fn serde_pairs() {
        let p = ComplexPolynomial::new(vec![c(1.0, -2.0), c(0.5, 0.0)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[[1.0,-2.0],[0.5,0.0]]");
        assert_eq!(serde_json::from_str::<ComplexPolynomial>(&s).unwrap(), p);
        assert!(serde_json::from_str::<ComplexPolynomial>("[]").is_err());
    }

    #[test]
    fn roots_of_unity() {
        let n = 9;
        let mut coeffs = vec![ZERO; n + 1];
        coeffs[0] = -ONE;
        coeffs[n] = ONE;
        let mut r = ComplexPolynomial::new(coeffs).roots(&RootOptions::default()).unwrap();
        r.sort_by(|a, b| crate::angle::arg_in(*a, 0.0).total_cmp(&crate::angle::arg_in(*b, 0.0)));
        for (k, z) in r.iter().enumerate() {
            assert!((z - Complex64::from_polar(1.0, TAU * k as f64 / n as f64)).norm() < 1e-13);
        }
    }

    #[test]
    fn roots_off_the_circle() {
        let roots = [c(2.0, 0.0), c(-0.1, 0.3), c(0.0, -5.0), c(1.0, 1.0)];
        let found = ComplexPolynomial::from_roots(&roots).roots(&RootOptions::default()).unwrap();
        for r in roots {
            assert!(found.iter().any(|f| (f - r).norm() < 1e-10), "{r}");
        }
    }

    proptest! {
        #[test]
        fn star_is_an_involution(re in proptest::collection::vec(-3.0f64..3.0, 1..8), im in proptest::collection::vec(-3.0f64..3.0, 8), extra in 0usize..3) {
            let p = ComplexPolynomial::new(re.iter().zip(&im).map(|(&a, &b)| c(a, b)).collect());
            let n = p.degree() + extra;
            let back = p.star(n).unwrap().star(n).unwrap();
            for k in 0..=n {
                prop_assert_eq!(back.coeff(k), p.coeff(k));
            }
        }

        #[test]
        fn star_matches_definition_on_the_circle(re in proptest::collection::vec(-3.0f64..3.0, 1..8), theta in 0.0f64..TAU) {
            let p = ComplexPolynomial::from_real(&re);
            let n = p.degree();
            let z = Complex64::from_polar(1.0, theta);
            let expect = z.powu(n as u32) * p.eval(z).conj();
            prop_assert!((p.star(n).unwrap().eval(z) - expect).norm() < 1e-12 * (1.0 + p.sum_abs_coeff()));
        }
    }
}
