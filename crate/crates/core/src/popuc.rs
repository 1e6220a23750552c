//! Paraorthogonal polynomials, GGT matrices, zeros on the unit circle and the
//! structural identities that tie them to the OPUC basis.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::angle::{arg_in, wrap};
use crate::error::{Error, Result};
use crate::measures::{integrate_weighted, CircleQuadrature, WeightKind};
use crate::opuc::{cd_kernel, cd_kernel_poly, default_moment_tol, OpucBasis};
use crate::poly::{ComplexPolynomial, RootOptions};

/// Tolerance on `||b| - 1|`.
pub const UNIMODULAR_TOL: f64 = 1e-12;

fn check_unimodular(b: Complex64) -> Result<()> {
    if (b.norm() - 1.0).abs() > UNIMODULAR_TOL || !b.re.is_finite() || !b.im.is_finite() {
        return Err(Error::NotUnimodular(b.norm()));
    }
    Ok(())
}

/// `P_n(z) = z Q_{n-1}(z) - conj(b) Q_{n-1}^*(z)`.
pub fn popuc(qprev: &ComplexPolynomial, b: Complex64) -> Result<ComplexPolynomial> {
    check_unimodular(b)?;
    if !qprev.is_monic() {
        return Err(Error::Domain(format!("Q_{} is not monic (leading coefficient {})", qprev.degree(), qprev.leading())));
    }
    let m = qprev.degree();
    let mut coeffs = qprev.shift().sub(&qprev.star(m)?.scale(b.conj())).into_coeffs();
    coeffs[m + 1] = Complex64::new(1.0, 0.0);
    Ok(ComplexPolynomial::new(coeffs))
}

/// `b(ξ) = conj(ξ) conj(Q(ξ)) / conj(Q^*(ξ))`, the parameter for which `ξ` is a zero of
/// `z Q - conj(b) Q^*`. Any positive multiple of `Q` gives the same value.
pub fn fixed_zero_b(q: &ComplexPolynomial, xi: Complex64) -> Result<Complex64> {
    check_unimodular(xi)?;
    let m = q.degree();
    let qs = q.star(m)?.eval(xi);
    let scale = q.max_abs_coeff().max(1.0);
    if qs.norm() < 1e-14 * scale {
        return Err(Error::DegenerateEvaluation(format!("|Q*(ξ)| = {:e} at ξ = {xi}", qs.norm())));
    }
    let b = xi.conj() * q.eval(xi).conj() / qs.conj();
    Ok(b / b.norm())
}

/// `b(ξ)` for the degree-`n` POPUC of `basis`, from the normalized `q_{n-1}`.
pub fn fixed_zero_parameter(basis: &OpucBasis, xi: Complex64, n: usize) -> Result<Complex64> {
    if n == 0 || n > basis.degree() + 1 {
        return Err(Error::Domain(format!("POPUC degree {n} needs Q_{} from a basis of degree {}", n.saturating_sub(1), basis.degree())));
    }
    fixed_zero_b(&basis.normalized(n - 1), xi)
}

/// Dense unitary upper Hessenberg matrix `G_0 G_1 ⋯ G_{n-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GgtMatrix {
    pub dim: usize,
    pub entries: DMatrix<Complex64>,
}

/// GGT matrix of `a_0..a_{n-2}` closed by `conj(b)`.
pub fn ggt(a: &[Complex64], b: Complex64) -> Result<GgtMatrix> {
    check_unimodular(b)?;
    for (j, aj) in a.iter().enumerate() {
        if !(aj.norm() < 1.0) {
            return Err(Error::DiskViolation { index: j, modulus: aj.norm() });
        }
    }
    let n = a.len() + 1;
    let mut m = DMatrix::<Complex64>::identity(n, n);
    for (j, &aj) in a.iter().enumerate() {
        let rho = (1.0 - aj.norm_sqr()).sqrt();
        // right-multiply by Θ(a_j) acting on columns j, j+1
        for i in 0..n {
            let x = m[(i, j)];
            let y = m[(i, j + 1)];
            m[(i, j)] = x * aj.conj() + y * rho;
            m[(i, j + 1)] = x * rho - y * aj;
        }
    }
    let cb = b.conj();
    for i in 0..n {
        m[(i, n - 1)] *= cb;
    }
    Ok(GgtMatrix { dim: n, entries: m })
}

impl GgtMatrix {
    /// `max |G^*G - I|`.
    pub fn unitarity_defect(&self) -> f64 {
        let g = &self.entries;
        let prod = g.adjoint() * g;
        let id = DMatrix::<Complex64>::identity(self.dim, self.dim);
        (prod - id).iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// True when every entry below the subdiagonal is exactly zero and the
    /// subdiagonal is real and positive.
    pub fn is_unreduced_hessenberg(&self) -> bool {
        let g = &self.entries;
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i > j + 1 && g[(i, j)].norm() != 0.0 {
                    return false;
                }
                if i == j + 1 && !(g[(i, j)].re > 0.0 && g[(i, j)].im.abs() <= 1e-15) {
                    return false;
                }
            }
        }
        true
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }
}

/// `det(zI - G)` by the Hessenberg recurrence on leading principal minors.
pub fn char_poly(g: &GgtMatrix) -> ComplexPolynomial {
    let h = &g.entries;
    let n = g.dim;
    let mut p: Vec<ComplexPolynomial> = vec![ComplexPolynomial::one()];
    for k in 0..n {
        let mut next = p[k].shift().sub(&p[k].scale(h[(k, k)]));
        let mut sub = Complex64::new(1.0, 0.0);
        for i in (0..k).rev() {
            sub *= h[(i + 1, i)];
            next = next.sub(&p[i].scale(h[(i, k)] * sub));
        }
        let mut c = next.into_coeffs();
        c[k + 1] = Complex64::new(1.0, 0.0);
        p.push(ComplexPolynomial::new(c));
    }
    p.pop().unwrap()
}

/// Normalized eigenvector for an eigenvalue `zeta` of `g`, by inverse iteration with
/// the shift pushed off the circle by `1e-10`. Returns the vector and `‖Gv - ζv‖`.
pub fn eigenvector(g: &GgtMatrix, zeta: Complex64) -> Result<(DVector<Complex64>, f64)> {
    let n = g.dim;
    let shift = zeta * (1.0 + 1e-10);
    let a = &g.entries - DMatrix::<Complex64>::identity(n, n) * shift;
    let lu = a.lu();
    let mut v = DVector::<Complex64>::from_element(n, Complex64::new(1.0, 0.0));
    for _ in 0..3 {
        let Some(w) = lu.solve(&v) else {
            return Err(Error::Eigenpair(f64::INFINITY));
        };
        let norm = w.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::Eigenpair(f64::INFINITY));
        }
        v = w / Complex64::new(norm, 0.0);
    }
    let residual = (&g.entries * &v - &v * zeta).norm();
    if !(residual <= 1e-8) {
        return Err(Error::Eigenpair(residual));
    }
    Ok((v, residual))
}

/// Settings for [`zeros_with`].
#[derive(Debug, Clone, Copy)]
pub struct ZeroOptions {
    pub circle_tol: f64,
    pub sep_tol: f64,
    /// Start of the argument window `[θ₀, θ₀ + 2π)`.
    pub theta0: f64,
    pub roots: RootOptions,
}

impl Default for ZeroOptions {
    fn default() -> Self {
        Self { circle_tol: 1e-8, sep_tol: 1e-9, theta0: 0.0, roots: RootOptions::default() }
    }
}

impl ZeroOptions {
    pub fn with_theta0(theta0: f64) -> Self {
        Self { theta0, ..Self::default() }
    }
}

/// Zeros sorted by argument in `[θ₀, θ₀ + 2π)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSet {
    pub theta0: f64,
    pub zeros: Vec<Complex64>,
    pub args: Vec<f64>,
    /// `||ζ| - 1|`.
    pub abs_residual: Vec<f64>,
    /// `|P(ζ)|`.
    pub poly_residual: Vec<f64>,
}

impl ZeroSet {
    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    pub fn max_circle_deviation(&self) -> f64 {
        self.abs_residual.iter().cloned().fold(0.0, f64::max)
    }

    /// Smallest cyclic gap between consecutive arguments.
    pub fn min_gap(&self) -> f64 {
        min_cyclic_gap(&self.args)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,arg,re,im,abs_residual,poly_residual\n");
        for k in 0..self.len() {
            let _ = writeln!(
                out,
                "{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                k, self.args[k], self.zeros[k].re, self.zeros[k].im, self.abs_residual[k], self.poly_residual[k]
            );
        }
        out
    }
}

fn min_cyclic_gap(sorted_args: &[f64]) -> f64 {
    let n = sorted_args.len();
    if n < 2 {
        return TAU;
    }
    let mut gap = sorted_args[0] + TAU - sorted_args[n - 1];
    for w in sorted_args.windows(2) {
        gap = gap.min(w[1] - w[0]);
    }
    gap
}

/// Zeros of a POPUC with the default tolerances.
pub fn zeros(p: &ComplexPolynomial) -> Result<ZeroSet> {
    zeros_with(p, &ZeroOptions::default())
}

pub fn zeros_with(p: &ComplexPolynomial, opts: &ZeroOptions) -> Result<ZeroSet> {
    if p.degree() == 0 {
        return Err(Error::Domain("zeros need a polynomial of degree at least 1".into()));
    }
    if !p.is_monic() {
        return Err(Error::Domain("zeros expect a monic polynomial".into()));
    }
    let roots = p.roots(&opts.roots)?;
    let mut items: Vec<(f64, Complex64)> = roots.into_iter().map(|z| (arg_in(z, opts.theta0), z)).collect();
    items.sort_by(|x, y| x.0.total_cmp(&y.0));
    let zeros: Vec<Complex64> = items.iter().map(|x| x.1).collect();
    let args: Vec<f64> = items.iter().map(|x| x.0).collect();
    let abs_residual: Vec<f64> = zeros.iter().map(|z| (z.norm() - 1.0).abs()).collect();
    let poly_residual: Vec<f64> = zeros.iter().map(|&z| p.eval(z).norm()).collect();
    for (index, &deviation) in abs_residual.iter().enumerate() {
        if deviation > opts.circle_tol {
            return Err(Error::OffCircle { index, deviation });
        }
    }
    let gap = min_cyclic_gap(&args);
    if gap <= opts.sep_tol {
        return Err(Error::Collision { gap });
    }
    Ok(ZeroSet { theta0: opts.theta0, zeros, args, abs_residual, poly_residual })
}

fn quadrature_for(kind: &WeightKind) -> CircleQuadrature {
    CircleQuadrature { abs_tol: default_moment_tol(kind), rel_tol: 1e-13, ..CircleQuadrature::default() }
}

/// `max_{1<=k<n} |∫ P conj(z^k) dμ|`.
pub fn quasi_orthogonality_residual(p: &ComplexPolynomial, kind: &WeightKind) -> Result<f64> {
    let n = p.degree();
    if n < 2 {
        return Ok(0.0);
    }
    if let WeightKind::Lebesgue = kind {
        return Ok((1..n).map(|k| p.coeff(k).norm()).fold(0.0, f64::max));
    }
    let values = integrate_weighted(
        kind,
        n - 1,
        |_, z, out| {
            let v = p.eval(z);
            let zc = z.conj();
            let mut w = zc;
            for o in out.iter_mut() {
                *o = v * w;
                w *= zc;
            }
        },
        &quadrature_for(kind),
    )?;
    Ok(values.iter().map(|v| v.norm()).fold(0.0, f64::max))
}

/// Both sides of `∫ P/(z-ζ) conj(h) dμ = conj(h(ζ)) ∫ P/(z-ζ) dμ` and the constant `C`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RieszCheck {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub c: Complex64,
}

/// Quotient `P/(z - ζ)` after checking that `ζ` is a zero of `P`.
pub fn factor_out_zero(p: &ComplexPolynomial, zeta: Complex64, tol: f64) -> Result<ComplexPolynomial> {
    let (q, rem) = p.divide_linear(zeta);
    let value = p.eval(zeta).norm();
    if value > tol * p.sum_abs_coeff().max(1.0) {
        return Err(Error::NotAZero(value));
    }
    let _ = rem;
    Ok(q)
}

pub fn riesz_property_check(p: &ComplexPolynomial, kind: &WeightKind, zeta: Complex64, h: &ComplexPolynomial) -> Result<RieszCheck> {
    let n = p.degree();
    if h.degree() + 1 > n {
        return Err(Error::Degree { degree: h.degree(), declared: n.saturating_sub(1) });
    }
    let q = factor_out_zero(p, zeta, 1e-8)?;
    let v = integrate_weighted(
        kind,
        2,
        |_, z, out| {
            let qz = q.eval(z);
            out[0] = qz * h.eval(z).conj();
            out[1] = qz;
        },
        &quadrature_for(kind),
    )?;
    Ok(RieszCheck { lhs: v[0], rhs: h.eval(zeta).conj() * v[1], c: v[1] })
}

/// Relative spread of `p_n(z) / ((1 - z conj(ξ)) K_{n-1}(ξ, z))` over `sample`, where
/// `p_n` is the POPUC with the fixed zero `ξ`.
pub fn kernel_factorization_check(basis: &OpucBasis, xi: Complex64, n: usize, sample: &[Complex64]) -> Result<f64> {
    let b = fixed_zero_parameter(basis, xi, n)?;
    let p = popuc(basis.q(n - 1), b)?;
    let mut kappa: Option<Complex64> = None;
    let mut worst = 0.0f64;
    for &z in sample {
        let den = (Complex64::new(1.0, 0.0) - z * xi.conj()) * cd_kernel(basis, xi, z, n - 1)?;
        if den.norm() < 1e-13 {
            return Err(Error::DegenerateEvaluation(format!("kernel denominator {:e} at z = {z}", den.norm())));
        }
        let ratio = p.eval(z) / den;
        match kappa {
            None => kappa = Some(ratio),
            Some(k) => worst = worst.max((ratio - k).norm() / k.norm()),
        }
    }
    Ok(worst)
}

/// Largest argument distance between the zeros of the fixed-zero POPUC and
/// `{ξ} ∪ zeros(K_{n-1}(ξ, ·))`.
pub fn kernel_zero_consistency(basis: &OpucBasis, xi: Complex64, n: usize) -> Result<f64> {
    let b = fixed_zero_parameter(basis, xi, n)?;
    let p = popuc(basis.q(n - 1), b)?;
    let zp = zeros(&p)?;
    let k = cd_kernel_poly(basis, xi, n - 1)?.to_monic()?;
    let mut expect = if n > 1 { k.roots(&RootOptions::default())? } else { Vec::new() };
    expect.push(xi);
    let mut args: Vec<f64> = expect.iter().map(|z| arg_in(*z, 0.0)).collect();
    args.sort_by(f64::total_cmp);
    if args.len() != zp.len() {
        return Err(Error::IndexMismatch(format!("{} kernel zeros vs {} POPUC zeros", args.len(), zp.len())));
    }
    let mut worst = 0.0f64;
    for (a, z) in args.iter().zip(&zp.zeros) {
        worst = worst.max(crate::angle::circle_distance(*a, arg_in(*z, 0.0)));
    }
    Ok(worst)
}

/// Degree-`n` POPUC of `kind` for the given `b`.
pub fn popuc_for(kind: &WeightKind, n: usize, b: Complex64) -> Result<ComplexPolynomial> {
    if n == 0 {
        return Err(Error::Domain("POPUC degree must be at least 1".into()));
    }
    let basis = crate::opuc::basis_for(kind, n - 1)?;
    popuc(basis.q(n - 1), b)
}

/// Reduces the argument of `b` into `[0, 2π)`; handy for reporting.
pub fn b_angle(b: Complex64) -> f64 {
    wrap(b.arg(), 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::moments_of;
    use crate::opuc::{basis_for, szego_levinson};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_disk(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
        (0..n).map(|_| Complex64::from_polar(rng.gen_range(0.0..0.95), rng.gen_range(0.0..TAU))).collect()
    }

    #[test]
    fn popuc_examples() {
        let b = Complex64::from_polar(1.0, 0.7);
        assert_eq!(popuc(&ComplexPolynomial::one(), b).unwrap().coeffs(), &[-b.conj(), c(1.0, 0.0)]);
        let p = popuc(&ComplexPolynomial::monomial(4), b).unwrap();
        let mut expect = vec![c(0.0, 0.0); 6];
        expect[0] = -b.conj();
        expect[5] = c(1.0, 0.0);
        assert_eq!(p.coeffs(), &expect[..]);
        let r = 0.5;
        let q = ComplexPolynomial::from_real(&[0.0, 0.0, 0.0, -r, 1.0]);
        let p = popuc(&q, b).unwrap();
        let mut expect = vec![c(0.0, 0.0); 6];
        expect[0] = -b.conj();
        expect[1] = b.conj() * r;
        expect[4] = c(-r, 0.0);
        expect[5] = c(1.0, 0.0);
        assert!(p.relative_distance(&ComplexPolynomial::new(expect)) < 1e-16);
        assert!(matches!(popuc(&q, c(1.1, 0.0)), Err(Error::NotUnimodular(_))));
    }

    #[test]
    fn fixed_zero_examples() {
        let basis = szego_levinson(&crate::measures::MomentSequence::lebesgue(6), 6).unwrap();
        let xi = Complex64::from_polar(1.0, 0.4);
        let b = fixed_zero_parameter(&basis, xi, 5).unwrap();
        assert!((b - xi.conj().powu(5)).norm() < 1e-15);
        for kind in [
            WeightKind::BernsteinSzego { r: 0.6, phi: 0.3 },
            WeightKind::SingleMoment { r: 0.7 },
            WeightKind::FisherHartwig { r: 0.4, s: -1.0 },
        ] {
            let basis = basis_for(&kind, 8).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            for _ in 0..50 {
                let xi = Complex64::from_polar(1.0, rng.gen_range(0.0..TAU));
                let b = fixed_zero_parameter(&basis, xi, 9).unwrap();
                assert!((b.norm() - 1.0).abs() < 1e-12);
                let p = popuc(basis.q(8), b).unwrap();
                assert!(p.eval(xi).norm() <= 1e-10 * p.max_abs_coeff());
            }
        }
    }

    #[test]
    fn fisher_hartwig_fixed_zero_at_one() {
        // b(1) = (r+is+1)_m / (r-is+1)_m with m the OPUC degree
        let (r, s) = (0.7, 1.3);
        let m = 6;
        let basis = basis_for(&WeightKind::FisherHartwig { r, s }, m).unwrap();
        let b = fixed_zero_parameter(&basis, c(1.0, 0.0), m + 1).unwrap();
        let expect = crate::specfun::pochhammer(c(r + 1.0, s), m) / crate::specfun::pochhammer(c(r + 1.0, -s), m);
        assert!((b - expect).norm() < 1e-12);
    }

    #[test]
    fn ggt_small_cases() {
        let b = Complex64::from_polar(1.0, 1.1);
        let g = ggt(&[], b).unwrap();
        assert_eq!(char_poly(&g).coeffs(), &[-b.conj(), c(1.0, 0.0)]);
        let a0 = c(0.3, -0.4);
        let g = ggt(&[a0], b).unwrap();
        let expect = ComplexPolynomial::new(vec![-b.conj(), -(a0.conj() - a0 * b.conj()), c(1.0, 0.0)]);
        assert!(char_poly(&g).relative_distance(&expect) < 1e-15);
        assert!(matches!(ggt(&[c(1.0, 0.0)], b), Err(Error::DiskViolation { index: 0, .. })));
    }

    #[test]
    fn ggt_matches_popuc_and_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let n = rng.gen_range(1..=25);
            let a = random_disk(&mut rng, n - 1);
            let b = Complex64::from_polar(1.0, rng.gen_range(0.0..TAU));
            let g = ggt(&a, b).unwrap();
            assert!(g.unitarity_defect() <= 1e-12);
            assert!(g.is_unreduced_hessenberg());
            let cp = char_poly(&g);
            let basis = OpucBasis::from_verblunsky(&a, 1.0).unwrap();
            let p = popuc(basis.q(n - 1), b).unwrap();
            assert!(cp.relative_distance(&p) <= 1e-10, "n={n}");
            assert!((cp.coeff(n - 1) + g.trace()).norm() < 1e-12);
            let z = zeros(&cp).unwrap();
            assert_eq!(z.len(), n);
            for &zeta in &z.zeros {
                let (_, res) = eigenvector(&g, zeta).unwrap();
                assert!(res < 1e-8);
            }
        }
    }

    #[test]
    fn zeros_of_rotated_roots_of_unity() {
        let b = Complex64::from_polar(1.0, 0.9);
        let n = 7;
        let p = popuc(&ComplexPolynomial::monomial(n - 1), b).unwrap();
        let z = zeros(&p).unwrap();
        for k in 0..n {
            let expect = wrap((-0.9 + TAU * k as f64) / n as f64, 0.0);
            assert!(z.args.iter().any(|a| crate::angle::circle_distance(*a, expect) < 1e-13));
        }
        assert!(z.args.windows(2).all(|w| w[0] < w[1]));
        let csv = z.to_csv();
        assert!(csv.starts_with("index,arg,re,im,abs_residual,poly_residual\n"));
        assert_eq!(csv.lines().count(), n + 1);
    }

    #[test]
    fn bernstein_szego_fixed_zero_at_one() {
        let kind = WeightKind::BernsteinSzego { r: 0.5, phi: 0.0 };
        let basis = basis_for(&kind, 14).unwrap();
        let b = fixed_zero_parameter(&basis, c(1.0, 0.0), 15).unwrap();
        let z = zeros(&popuc(basis.q(14), b).unwrap()).unwrap();
        assert_eq!(z.len(), 15);
        assert!(z.args[0].abs() < 1e-12 || (z.args[14] - TAU).abs() < 1e-12);
    }

    #[test]
    fn off_circle_and_collision_are_errors() {
        let p = ComplexPolynomial::from_roots(&[c(0.5, 0.0), c(-1.0, 0.0)]);
        assert!(matches!(zeros(&p), Err(Error::OffCircle { .. })));
        // a double zero splits by about sqrt(eps); a coarser separation tolerance sees it
        let p = ComplexPolynomial::from_roots(&[c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)]);
        let opts = ZeroOptions { sep_tol: 1e-5, circle_tol: 1e-5, ..ZeroOptions::default() };
        assert!(matches!(zeros_with(&p, &opts), Err(Error::Collision { .. })));
    }

    #[test]
    fn structural_identities() {
        for kind in [
            WeightKind::BernsteinSzego { r: 0.5, phi: 0.0 },
            WeightKind::SingleMoment { r: 0.5 },
            WeightKind::FisherHartwig { r: 0.8, s: 0.6 },
        ] {
            let n = 6;
            let basis = basis_for(&kind, n).unwrap();
            let p = popuc(basis.q(n - 1), c(-1.0, 0.0)).unwrap();
            assert!(quasi_orthogonality_residual(&p, &kind).unwrap() <= 1e-8);
            let zs = zeros(&p).unwrap();
            let h = ComplexPolynomial::from_real(&[0.3, -1.0, 0.5]);
            for &zeta in &zs.zeros {
                let chk = riesz_property_check(&p, &kind, zeta, &h).unwrap();
                assert!((chk.lhs - chk.rhs).norm() <= 1e-7);
                assert!(chk.c.norm() > 1e-6);
            }
            let sample: Vec<Complex64> = (0..20).map(|k| Complex64::from_polar(0.3 + 0.05 * k as f64, 0.7 * k as f64 + 0.2)).collect();
            assert!(kernel_factorization_check(&basis, Complex64::from_polar(1.0, 0.3), n, &sample).unwrap() <= 1e-8);
            assert!(kernel_zero_consistency(&basis, Complex64::from_polar(1.0, 0.3), n).unwrap() <= 1e-8);
        }
        let leb = szego_levinson(&crate::measures::MomentSequence::lebesgue(5), 5).unwrap();
        let p = popuc(leb.q(4), c(1.0, 0.0)).unwrap();
        assert_eq!(quasi_orthogonality_residual(&p, &WeightKind::Lebesgue).unwrap(), 0.0);
        let sample = [c(0.5, 0.1), c(-0.3, 0.9), c(2.0, -1.0)];
        assert!(kernel_factorization_check(&leb, c(1.0, 0.0), 5, &sample).unwrap() < 1e-14);
    }

    #[test]
    fn riesz_rejects_non_zero() {
        let kind = WeightKind::SingleMoment { r: 0.5 };
        let p = popuc_for(&kind, 4, c(1.0, 0.0)).unwrap();
        assert!(matches!(riesz_property_check(&p, &kind, c(0.0, 1.0), &ComplexPolynomial::one()), Err(Error::NotAZero(_))));
    }

    #[test]
    fn moments_pipeline_matches_closed_form_zeros() {
        let kind = WeightKind::SingleMoment { r: 0.3 };
        let a = szego_levinson(&moments_of(&kind, 8, 1e-13).unwrap(), 8).unwrap();
        let b = basis_for(&kind, 8).unwrap();
        let za = zeros(&popuc(a.q(8), c(1.0, 0.0)).unwrap()).unwrap();
        let zb = zeros(&popuc(b.q(8), c(1.0, 0.0)).unwrap()).unwrap();
        for (x, y) in za.args.iter().zip(&zb.args) {
            assert!((x - y).abs() < 1e-10);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn random_popuc_zeros_are_simple_and_on_the_circle(seed in 0u64..10_000, n in 1usize..=25) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_disk(&mut rng, n - 1);
            let b = Complex64::from_polar(1.0, rng.gen_range(0.0..TAU));
            let p = char_poly(&ggt(&a, b).unwrap());
            let z = zeros(&p).unwrap();
            prop_assert!(z.max_circle_deviation() <= 1e-8);
            prop_assert!(z.min_gap() > 1e-9);
        }
    }
}
