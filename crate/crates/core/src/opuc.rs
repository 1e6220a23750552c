//! Monic and normalized OPUC: Szegő recursion from moments, the Heine determinant,
//! Christoffel–Darboux kernels and the closed-form families.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::measures::{moments_of, MomentSequence, WeightKind};
use crate::poly::ComplexPolynomial;
use crate::specfun::{hyp2f1_terms, pochhammer};

/// Default threshold on `1 - |a_j|²`.
pub const TOL_PD: f64 = 1e-12;

/// Largest degree accepted by [`heine_determinant`].
pub const HEINE_MAX_DEGREE: usize = 12;

/// `Q_0..=Q_n` with `‖Q_j‖²`, `κ_j = ‖Q_j‖^{-1}` and Verblunsky coefficients `a_0..a_{n-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct OpucBasis {
    pub monic: Vec<ComplexPolynomial>,
    pub norm2: Vec<f64>,
    pub kappa: Vec<f64>,
    pub verblunsky: Vec<Complex64>,
}

impl OpucBasis {
    pub fn degree(&self) -> usize {
        self.monic.len() - 1
    }

    pub fn q(&self, j: usize) -> &ComplexPolynomial {
        &self.monic[j]
    }

    /// Orthonormal `q_j = κ_j Q_j`.
    pub fn normalized(&self, j: usize) -> ComplexPolynomial {
        self.monic[j].scale(Complex64::new(self.kappa[j], 0.0))
    }

    /// Runs the Szegő recursion `Q_{j+1} = z Q_j - conj(a_j) Q_j^*` on given coefficients.
    pub fn from_verblunsky(a: &[Complex64], c0: f64) -> Result<Self> {
        if !(c0 > 0.0) {
            return Err(Error::Domain(format!("c_0 = {c0} must be positive")));
        }
        let mut monic = vec![ComplexPolynomial::one()];
        let mut norm2 = vec![c0];
        for (j, &aj) in a.iter().enumerate() {
            let margin = 1.0 - aj.norm_sqr();
            if aj.norm() >= 1.0 {
                return Err(Error::DiskViolation { index: j, modulus: aj.norm() });
            }
            let q = &monic[j];
            let next = szego_step(q, j, aj);
            norm2.push(norm2[j] * margin);
            monic.push(next);
        }
        let kappa = norm2.iter().map(|n| n.sqrt().recip()).collect();
        Ok(Self { monic, norm2, kappa, verblunsky: a.to_vec() })
    }

    /// Basis whose monic polynomials are given; Verblunsky coefficients are read off
    /// as `a_j = -conj(Q_{j+1}(0))`.
    pub fn from_monic(monic: Vec<ComplexPolynomial>, c0: f64) -> Result<Self> {
        if !(c0 > 0.0) {
            return Err(Error::Domain(format!("c_0 = {c0} must be positive")));
        }
        let verblunsky: Vec<Complex64> = monic.iter().skip(1).map(|q| -q.coeff(0).conj()).collect();
        let mut norm2 = vec![c0];
        for (j, a) in verblunsky.iter().enumerate() {
            if a.norm() >= 1.0 {
                return Err(Error::DiskViolation { index: j, modulus: a.norm() });
            }
            norm2.push(norm2[j] * (1.0 - a.norm_sqr()));
        }
        let kappa = norm2.iter().map(|n| n.sqrt().recip()).collect();
        Ok(Self { monic, norm2, kappa, verblunsky })
    }
}

fn szego_step(q: &ComplexPolynomial, j: usize, a: Complex64) -> ComplexPolynomial {
    let star = q.star(j).expect("Q_j has degree j");
    let mut next = q.shift().sub(&star.scale(a.conj()));
    // Q_j^* has degree j, so the z^{j+1} coefficient is exactly 1 already.
    next = ComplexPolynomial::new({
        let mut c = next.into_coeffs();
        c[j + 1] = Complex64::new(1.0, 0.0);
        c
    });
    next
}

/// Monic OPUC up to degree `n` from the moments `c_0..=c_n`.
pub fn szego_levinson(m: &MomentSequence, n: usize) -> Result<OpucBasis> {
    szego_levinson_with_tol(m, n, TOL_PD)
}

pub fn szego_levinson_with_tol(m: &MomentSequence, n: usize, tol_pd: f64) -> Result<OpucBasis> {
    if m.jmax() < n {
        return Err(Error::Domain(format!("degree {n} needs moments up to c_{n}, have c_{}", m.jmax())));
    }
    let c0 = m.get(0).re;
    let mut monic = vec![ComplexPolynomial::one()];
    let mut norm2 = vec![c0];
    let mut verblunsky = Vec::with_capacity(n);
    for j in 0..n {
        let q = &monic[j];
        // ∫ z Q_j dμ = Σ q_k conj(c_{k+1}) and equals conj(a_j) ‖Q_j‖².
        let inner: Complex64 = (0..=j).map(|k| q.coeff(k) * m.get(k as i64 + 1).conj()).sum();
        let a = (inner / norm2[j]).conj();
        let margin = 1.0 - a.norm_sqr();
        if !(margin > tol_pd) {
            return Err(Error::NotPositiveDefinite { step: j, margin });
        }
        let next = szego_step(q, j, a);
        verblunsky.push(a);
        norm2.push(norm2[j] * margin);
        monic.push(next);
    }
    let kappa = norm2.iter().map(|v| v.sqrt().recip()).collect();
    Ok(OpucBasis { monic, norm2, kappa, verblunsky })
}

/// `Q_n` from the determinant ratio with last row `(1, z, ..., z^n)`.
pub fn heine_determinant(m: &MomentSequence, n: usize) -> Result<ComplexPolynomial> {
    if n == 0 {
        return Ok(ComplexPolynomial::one());
    }
    if n > HEINE_MAX_DEGREE {
        return Err(Error::Domain(format!("Heine determinant is limited to degree {HEINE_MAX_DEGREE}")));
    }
    if m.jmax() < n {
        return Err(Error::Domain(format!("degree {n} needs moments up to c_{n}")));
    }
    // Rows i = 0..n-1 hold c_{i-k}; the coefficient of z^k is the (n, k) cofactor over D_{n-1}.
    let rows = DMatrix::from_fn(n, n + 1, |i, k| m.get(i as i64 - k as i64));
    let minor = |skip: usize| -> Complex64 {
        let cols: Vec<usize> = (0..=n).filter(|&k| k != skip).collect();
        DMatrix::from_fn(n, n, |i, j| rows[(i, cols[j])]).determinant()
    };
    let d = minor(n);
    let c0 = m.get(0).re;
    if !(d.re > 1e-14 * c0.powi(n as i32)) {
        return Err(Error::SingularGram { index: n - 1, value: d.re });
    }
    let mut coeffs: Vec<Complex64> = (0..n)
        .map(|k| {
            let sign = if (n + k) % 2 == 0 { 1.0 } else { -1.0 };
            minor(k) * sign / d
        })
        .collect();
    coeffs.push(Complex64::new(1.0, 0.0));
    Ok(ComplexPolynomial::new(coeffs))
}

/// `K_n(w, z) = Σ_{j<=n} conj(q_j(w)) q_j(z)`.
pub fn cd_kernel(basis: &OpucBasis, w: Complex64, z: Complex64, n: usize) -> Result<Complex64> {
    if n > basis.degree() {
        return Err(Error::Domain(format!("kernel degree {n} exceeds basis degree {}", basis.degree())));
    }
    Ok((0..=n)
        .map(|j| {
            let k2 = basis.kappa[j] * basis.kappa[j];
            basis.monic[j].eval(w).conj() * basis.monic[j].eval(z) * k2
        })
        .sum())
}

/// `z ↦ K_n(w, z)` as a polynomial of degree `n`.
pub fn cd_kernel_poly(basis: &OpucBasis, w: Complex64, n: usize) -> Result<ComplexPolynomial> {
    if n > basis.degree() {
        return Err(Error::Domain(format!("kernel degree {n} exceeds basis degree {}", basis.degree())));
    }
    let mut acc = ComplexPolynomial::new(vec![Complex64::new(0.0, 0.0); n + 1]);
    for j in 0..=n {
        let k2 = basis.kappa[j] * basis.kappa[j];
        acc = acc.add(&basis.monic[j].scale(basis.monic[j].eval(w).conj() * k2));
    }
    Ok(acc)
}

/// `Σ_k t_k (1-z)^k` expanded in powers of `z`.
fn expand_in_one_minus_z(terms: &[Complex64]) -> ComplexPolynomial {
    let n = terms.len() - 1;
    let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
    for (k, &t) in terms.iter().enumerate() {
        // (1-z)^k = Σ_m C(k,m) (-z)^m
        let mut binom = 1.0;
        for (m, slot) in out.iter_mut().enumerate().take(k + 1) {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            *slot += t * (binom * sign);
            binom = binom * (k - m) as f64 / (m + 1) as f64;
        }
    }
    ComplexPolynomial::new(out)
}

/// `2F1(-n, b; c; 1-z)` as a polynomial in `z`.
pub fn hyp2f1_poly(n: usize, b: Complex64, c: Complex64) -> Result<ComplexPolynomial> {
    Ok(expand_in_one_minus_z(&hyp2f1_terms(n, b, c)?))
}

/// `f_n(z; r, s) = 2F1(-n, r+is; 2r; 1-z)`.
pub fn jacobi_szego_f(n: usize, r: f64, s: f64) -> Result<ComplexPolynomial> {
    hyp2f1_poly(n, Complex64::new(r, s), Complex64::new(2.0 * r, 0.0))
}

/// `g_n(z; s) = 2F1(-n, is+1; 2; 1-z)`.
pub fn jacobi_szego_g(n: usize, s: f64) -> Result<ComplexPolynomial> {
    hyp2f1_poly(n, Complex64::new(1.0, s), Complex64::new(2.0, 0.0))
}

/// Monic OPUC of degree `n` from the closed form of a built-in family.
pub fn closed_form_opuc(kind: &WeightKind, n: usize) -> Result<ComplexPolynomial> {
    kind.validate()?;
    match *kind {
        WeightKind::BernsteinSzego { r, phi } => {
            if n == 0 {
                return Ok(ComplexPolynomial::one());
            }
            let mut p = ComplexPolynomial::monomial(n).into_coeffs();
            p[n - 1] = -Complex64::from_polar(r, phi);
            Ok(ComplexPolynomial::new(p))
        }
        WeightKind::SingleMoment { r } => {
            // d_{j+1} = (2/r) d_j - d_{j-1}, d_{-1} = 0, d_0 = 1
            let mut d = vec![1.0];
            let mut prev = 0.0;
            for _ in 0..n {
                let cur = *d.last().unwrap();
                d.push(2.0 / r * cur - prev);
                prev = cur;
            }
            let dn = d[n];
            let mut coeffs: Vec<Complex64> = d.iter().map(|&dj| Complex64::new(dj / dn, 0.0)).collect();
            coeffs[n] = Complex64::new(1.0, 0.0);
            Ok(ComplexPolynomial::new(coeffs))
        }
        WeightKind::FisherHartwig { r, s } => {
            let b = Complex64::new(r + 1.0, s);
            let c = Complex64::new(2.0 * r + 1.0, 0.0);
            let pref = pochhammer(c, n) / pochhammer(b, n);
            let mut coeffs = hyp2f1_poly(n, b, c)?.scale(pref).into_coeffs();
            coeffs[n] = Complex64::new(1.0, 0.0);
            Ok(ComplexPolynomial::new(coeffs))
        }
        WeightKind::Mixture { .. } | WeightKind::Lebesgue => Err(Error::UnsupportedFamily(format!(
            "{} has no closed-form OPUC; use the Szegő recursion",
            kind.name()
        ))),
    }
}

/// True when [`closed_form_opuc`] supports `kind`.
pub fn has_closed_form(kind: &WeightKind) -> bool {
    matches!(kind, WeightKind::BernsteinSzego { .. } | WeightKind::SingleMoment { .. } | WeightKind::FisherHartwig { .. })
}

/// Default moment tolerance for `kind`: graded quadrature near a Fisher–Hartwig
/// singularity is only asked for `1e-8`.
pub fn default_moment_tol(kind: &WeightKind) -> f64 {
    fn singular(kind: &WeightKind) -> bool {
        match kind {
            WeightKind::FisherHartwig { r, .. } => *r < 0.0,
            WeightKind::Mixture { first, second, .. } => singular(first) || singular(second),
            _ => false,
        }
    }
    if singular(kind) {
        1e-10
    } else {
        1e-13
    }
}

/// Basis of degree `n` for a weight: closed forms where available, otherwise the
/// Szegő recursion on quadrature moments.
pub fn basis_for(kind: &WeightKind, n: usize) -> Result<OpucBasis> {
    if let WeightKind::Lebesgue = kind {
        return szego_levinson(&MomentSequence::lebesgue(n), n);
    }
    if has_closed_form(kind) {
        let c0 = match kind {
            WeightKind::BernsteinSzego { .. } | WeightKind::SingleMoment { .. } => 1.0,
            _ => moments_of(kind, 0, default_moment_tol(kind))?.get(0).re,
        };
        let monic = (0..=n).map(|j| closed_form_opuc(kind, j)).collect::<Result<Vec<_>>>()?;
        return OpucBasis::from_monic(monic, c0);
    }
    let m = moments_of(kind, n, default_moment_tol(kind))?;
    szego_levinson(&m, n)
}
