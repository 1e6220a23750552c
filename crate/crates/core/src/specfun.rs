//! Scalar special functions used by the closed-form families.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Rising factorial `x (x+1) ... (x+n-1)`; equals 1 for `n = 0`.
pub fn pochhammer(x: Complex64, n: usize) -> Complex64 {
    (0..n).fold(Complex64::new(1.0, 0.0), |acc, k| acc * (x + k as f64))
}

/// Terms `t_k = (-n)_k (b)_k / ((c)_k k!)` of the terminating series `2F1(-n, b; c; x)`,
/// without the powers of `x`.
///
/// Computed by the forward term-ratio recurrence so that no Pochhammer factor is
/// ever formed on its own.
pub fn hyp2f1_terms(n: usize, b: Complex64, c: Complex64) -> Result<Vec<Complex64>> {
    let mut terms = Vec::with_capacity(n + 1);
    let mut term = Complex64::new(1.0, 0.0);
    terms.push(term);
    for k in 0..n {
        let denom = (c + k as f64) * (k as f64 + 1.0);
        if denom.norm() == 0.0 {
            return Err(Error::Pole(format!("(c)_{} vanishes for c = {}", k + 1, c)));
        }
        term *= (k as f64 - n as f64) * (b + k as f64) / denom;
        terms.push(term);
    }
    Ok(terms)
}

/// `2F1(-n, b; c; x)` evaluated as the finite sum over `k = 0..=n`.
pub fn hyp2f1_terminating(n: usize, b: Complex64, c: Complex64, x: Complex64) -> Result<Complex64> {
    let terms = hyp2f1_terms(n, b, c)?;
    // Horner in x over the precomputed terms.
    Ok(terms.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, t| acc * x + t))
}

/// Ultraspherical polynomial `C_n^(λ)(x)` by the three-term recurrence.
pub fn gegenbauer(n: usize, lambda: f64, x: f64) -> Result<f64> {
    if lambda <= -0.5 || lambda == 0.0 || !lambda.is_finite() {
        return Err(Error::Domain(format!("Gegenbauer parameter λ = {lambda} must satisfy λ > -1/2, λ ≠ 0")));
    }
    if n == 0 {
        return Ok(1.0);
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * lambda * x;
    for k in 2..=n {
        let kf = k as f64;
        let next = (2.0 * x * (kf + lambda - 1.0) * cur - (kf + 2.0 * lambda - 2.0) * prev) / kf;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}
