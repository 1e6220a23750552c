//! Shared inputs for the benchmarks.

use std::f64::consts::TAU;

use popuc_core::measures::MomentSequence;
use popuc_core::{Complex64, ComplexPolynomial, SweepParam, WeightFamily, WeightKind};

/// Deterministic Verblunsky coefficients inside the disk of radius 0.8.
pub fn verblunsky(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|j| {
            let x = j as f64 + 1.0;
            Complex64::from_polar(0.8 * (0.5 + 0.5 * (1.7 * x).sin().abs()), TAU * (0.618_033_988_75 * x).fract())
        })
        .collect()
}

/// Moments `c_0..=c_n` of the single-moment weight `1 - r cos θ`.
pub fn single_moment_moments(r: f64, n: usize) -> MomentSequence {
    let mut c = vec![Complex64::new(0.0, 0.0); n + 1];
    c[0] = Complex64::new(1.0, 0.0);
    if n >= 1 {
        c[1] = Complex64::new(-0.5 * r, 0.0);
    }
    MomentSequence::new(c).expect("valid moments")
}

/// A degree-`n` POPUC built from [`verblunsky`] with `b = e^{0.3i}`.
pub fn sample_popuc(n: usize) -> ComplexPolynomial {
    let a = verblunsky(n - 1);
    let basis = popuc_core::OpucBasis::from_verblunsky(&a, 1.0).expect("coefficients lie in the disk");
    popuc_core::popuc::popuc(&basis.monic[n - 1], Complex64::from_polar(1.0, 0.3)).expect("unimodular b")
}

pub fn bernstein_szego_r_sweep() -> WeightFamily {
    WeightFamily::new(WeightKind::BernsteinSzego { r: 0.1, phi: 0.0 }, 0.0, SweepParam::R).expect("valid family")
}

pub fn grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    (0..points).map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_valid() {
        assert!(verblunsky(30).iter().all(|a| a.norm() < 1.0));
        assert_eq!(sample_popuc(12).degree(), 12);
        assert!(single_moment_moments(0.5, 6).is_positive_definite(6).unwrap());
        assert_eq!(grid(0.1, 0.9, 9).len(), 9);
    }
}
