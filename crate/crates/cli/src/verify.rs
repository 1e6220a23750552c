//! Verification suites, one per acceptance criterion.

use std::f64::consts::{PI, TAU};

use popuc_core::angle::circle_distance;
use popuc_core::measures::{integrate_weighted, moments_of, CircleQuadrature};
use popuc_core::opuc::{basis_for, cd_kernel, closed_form_opuc, default_moment_tol, heine_determinant, hyp2f1_poly, jacobi_szego_f, jacobi_szego_g, szego_levinson};
use popuc_core::popuc::{char_poly, fixed_zero_b, ggt, kernel_factorization_check, popuc, popuc_for, quasi_orthogonality_residual, riesz_property_check, zeros};
use popuc_core::specfun::gegenbauer;
use popuc_core::trajectory::{
    angular_velocity, angular_velocity_identity, comparison, dpopuc_dt, fd_angular_velocity, interlacing_check, lidskii_velocity, monic_opuc, monotonicity_verdict, popuc_at, s_conjugate_forms, s_fixed_forms, sweep, track_zeros,
    velocity_integral, verblunsky_at, CompareAnchor, SweepOptions, UnimodularPath,
};
use popuc_core::{Anchor, BRule, Complex64, ComplexPolynomial, Direction, OpucBasis, Result, SweepParam, TrajectoryTable, WeightFamily, WeightKind, ZeroOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{Command, RunConfig};
use crate::figures::{figure, FIGURE_IDS};
use crate::svg::scatter_from_csv;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub criterion: u8,
    /// Criterion number with a part letter when a criterion has several parts.
    pub id: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(criterion: u8, id: &str, name: &str, passed: bool, detail: String) -> Self {
        Self { criterion, id: id.to_string(), name: name.to_string(), passed, detail }
    }

    fn from_result(criterion: u8, id: &str, name: &str, r: Result<(bool, String)>) -> Self {
        match r {
            Ok((passed, detail)) => Self::new(criterion, id, name, passed, detail),
            Err(e) => Self::new(criterion, id, name, false, format!("error: {e}")),
        }
    }

    pub fn line(&self) -> String {
        format!("{} AC{} {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.id, self.name, self.detail)
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel_coeff_error(a: &ComplexPolynomial, b: &ComplexPolynomial) -> f64 {
    a.relative_distance(b)
}

/// Largest distance from each point of `a` to the nearest point of `b`, after checking equal counts.
fn set_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().map(|x| b.iter().map(|y| (x - y).norm()).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max)
}

fn random_component(rng: &mut ChaCha8Rng) -> WeightKind {
    match rng.gen_range(0..4) {
        0 => WeightKind::BernsteinSzego { r: rng.gen_range(0.05..0.85), phi: rng.gen_range(-PI..PI) },
        1 => WeightKind::SingleMoment { r: rng.gen_range(0.05..0.95) },
        2 => WeightKind::FisherHartwig { r: rng.gen_range(0.1..2.0), s: rng.gen_range(-2.0..2.0) },
        _ => WeightKind::Lebesgue,
    }
}

pub fn ac1_heine_vs_levinson() -> Vec<CheckOutcome> {
    let run = || -> Result<(bool, String)> {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let kind = WeightKind::Mixture {
                first: Box::new(random_component(&mut rng)),
                second: Box::new(random_component(&mut rng)),
                t: rng.gen_range(0.1..0.9),
            };
            let m = moments_of(&kind, 6, 1e-13)?;
            let basis = szego_levinson(&m, 6)?;
            for n in 1..=6 {
                worst = worst.max(rel_coeff_error(&heine_determinant(&m, n)?, basis.q(n)));
            }
        }
        Ok((worst <= 1e-9, format!("max relative coefficient error {worst:.3e} over 20 mixtures, n <= 6 (tol 1e-9)")))
    };
    vec![CheckOutcome::from_result(1, "1", "Heine determinant vs Szego-Levinson", run())]
}

pub fn ac2_closed_forms() -> Vec<CheckOutcome> {
    let run = || -> Result<(bool, String)> {
        let kinds = [
            WeightKind::BernsteinSzego { r: 0.3, phi: 0.0 },
            WeightKind::BernsteinSzego { r: 0.7, phi: 1.1 },
            WeightKind::BernsteinSzego { r: 0.9, phi: -2.0 },
            WeightKind::SingleMoment { r: 0.3 },
            WeightKind::SingleMoment { r: 0.8 },
            WeightKind::FisherHartwig { r: 0.5, s: 0.0 },
            WeightKind::FisherHartwig { r: 1.5, s: 1.0 },
            WeightKind::FisherHartwig { r: 0.8, s: -2.0 },
            WeightKind::FisherHartwig { r: -0.3, s: 0.5 },
            WeightKind::FisherHartwig { r: -0.2, s: 0.0 },
        ];
        let mut passed = true;
        let mut worst = 0.0f64;
        let mut worst_neg = 0.0f64;
        for kind in &kinds {
            let basis = szego_levinson(&moments_of(kind, 6, default_moment_tol(kind))?, 6)?;
            let negative_fh = matches!(kind, WeightKind::FisherHartwig { r, .. } if *r < 0.0);
            for n in 1..=6 {
                let e = rel_coeff_error(&closed_form_opuc(kind, n)?, basis.q(n));
                if negative_fh {
                    worst_neg = worst_neg.max(e);
                    passed &= e <= 1e-6;
                } else {
                    worst = worst.max(e);
                    passed &= e <= 1e-7;
                }
            }
        }
        Ok((passed, format!("max relative error {worst:.3e} (tol 1e-7); Fisher-Hartwig r < 0: {worst_neg:.3e} (tol 1e-6)")))
    };
    vec![CheckOutcome::from_result(2, "2", "closed-form OPUC vs moments pipeline", run())]
}

pub fn ac3_single_moment_moments() -> Vec<CheckOutcome> {
    let run = || -> Result<(bool, String)> {
        let mut worst = 0.0f64;
        for r in [0.3, 0.8] {
            let m = moments_of(&WeightKind::SingleMoment { r }, 8, 1e-13)?;
            for j in -8i64..=8 {
                let expect = match j.abs() {
                    0 => c(1.0, 0.0),
                    1 => c(-r / 2.0, 0.0),
                    _ => c(0.0, 0.0),
                };
                worst = worst.max((m.get(j) - expect).norm());
            }
        }
        Ok((worst <= 1e-10, format!("max abs error {worst:.3e} for |j| <= 8 (tol 1e-10)")))
    };
    vec![CheckOutcome::from_result(3, "3", "single-moment moments", run())]
}

pub fn ac4_unit_circle_spectrum() -> Vec<CheckOutcome> {
    let run = || -> Result<(bool, String)> {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let (mut dev, mut gap, mut cp) = (0.0f64, f64::INFINITY, 0.0f64);
        for _ in 0..200 {
            let n = rng.gen_range(1..=25);
            let a: Vec<Complex64> = (0..n - 1).map(|_| Complex64::from_polar(0.95 * rng.gen::<f64>().sqrt(), rng.gen_range(-PI..PI))).collect();
            let b = Complex64::from_polar(1.0, rng.gen_range(-PI..PI));
            let basis = OpucBasis::from_verblunsky(&a, 1.0)?;
            let p = popuc(basis.q(n - 1), b)?;
            let z = zeros(&p)?;
            dev = dev.max(z.max_circle_deviation());
            gap = gap.min(z.min_gap());
            cp = cp.max(char_poly(&ggt(&a, b)?).relative_distance(&p));
        }
        let passed = dev <= 1e-8 && gap > 1e-9 && cp <= 1e-10;
        Ok((passed, format!("max ||z|-1| {dev:.3e}, min gap {gap:.3e}, char poly mismatch {cp:.3e} over 200 instances")))
    };
    vec![CheckOutcome::from_result(4, "4", "unit-circle spectrum and simplicity", run())]
}

fn structural_families() -> Vec<WeightKind> {
    vec![
        WeightKind::BernsteinSzego { r: 0.5, phi: 0.3 },
        WeightKind::SingleMoment { r: 0.4 },
        WeightKind::FisherHartwig { r: 0.7, s: 0.5 },
    ]
}

pub fn ac5_structural_identities() -> Vec<CheckOutcome> {
    let run = || -> Result<(bool, String)> {
        let b = Complex64::from_polar(1.0, 0.7);
        let xi = Complex64::from_polar(1.0, 0.4);
        let w = c(0.3, -0.6);
        let sample: Vec<Complex64> = (0..7).map(|k| Complex64::from_polar(0.6 + 0.1 * k as f64, 0.9 * k as f64 + 0.2)).collect();
        let (mut qo, mut riesz, mut min_c, mut repro, mut fact) = (0.0f64, 0.0f64, f64::INFINITY, 0.0f64, 0.0f64);
        for kind in structural_families() {
            for n in 2..=8 {
                let p = popuc_for(&kind, n, b)?;
                qo = qo.max(quasi_orthogonality_residual(&p, &kind)?);
                let h = ComplexPolynomial::new((0..n - 1).map(|k| c(0.3 + 0.1 * k as f64, -0.2 * k as f64)).collect());
                for zeta in zeros(&p)?.zeros {
                    let chk = riesz_property_check(&p, &kind, zeta, &h)?;
                    riesz = riesz.max((chk.lhs - chk.rhs).norm());
                    min_c = min_c.min(chk.c.norm());
                }
                let basis = basis_for(&kind, n)?;
                let f = ComplexPolynomial::new((0..=n).map(|k| c(0.5 - 0.1 * k as f64, 0.05 * k as f64 + 0.1)).collect());
                let got = integrate_weighted(&kind, 1, |_, z, out| out[0] = f.eval(z) * cd_kernel(&basis, z, w, n).unwrap_or_default(), &CircleQuadrature::default())?;
                repro = repro.max((got[0] - f.eval(w)).norm());
                fact = fact.max(kernel_factorization_check(&basis, xi, n, &sample)?);
            }
        }
        let passed = qo <= 1e-8 && riesz <= 1e-7 && min_c > 1e-6 && repro <= 1e-8 && fact <= 1e-8;
        Ok((passed, format!("quasi-orthogonality {qo:.3e}, Riesz {riesz:.3e} (min |C| {min_c:.3e}), reproducing {repro:.3e}, kernel factorization {fact:.3e}")))
    };
    vec![CheckOutcome::from_result(5, "5", "structural identities", run())]
}

struct VelocityCase {
    family: WeightFamily,
    t: f64,
    n: usize,
    rule: BRule,
}

fn family(kind: WeightKind, sweep: SweepParam) -> Result<WeightFamily> {
    WeightFamily::new(kind, 0.0, sweep)
}

fn velocity_cases() -> Result<Vec<VelocityCase>> {
    let one = c(1.0, 0.0);
    let path = UnimodularPath { scale: 1.0, offset: 0.0 };
    Ok(vec![
        VelocityCase { family: family(WeightKind::BernsteinSzego { r: 0.5, phi: 0.0 }, SweepParam::R)?, t: 0.5, n: 6, rule: BRule::FixedZero(one) },
        VelocityCase { family: family(WeightKind::BernsteinSzego { r: 0.3, phi: 0.4 }, SweepParam::R)?, t: 0.3, n: 8, rule: BRule::Constant(Complex64::from_polar(1.0, 0.5)) },
        VelocityCase { family: family(WeightKind::FisherHartwig { r: 0.5, s: 0.2 }, SweepParam::S)?, t: 0.2, n: 5, rule: BRule::FixedZero(one) },
        VelocityCase { family: family(WeightKind::FisherHartwig { r: 1.2, s: 0.5 }, SweepParam::R)?, t: 1.2, n: 8, rule: BRule::Constant(one) },
        VelocityCase { family: family(WeightKind::BernsteinSzego { r: 0.5, phi: 0.2 }, SweepParam::None)?, t: 0.4, n: 6, rule: BRule::OfT(path) },
        VelocityCase { family: family(WeightKind::FisherHartwig { r: 0.7, s: 0.3 }, SweepParam::None)?, t: 1.0, n: 8, rule: BRule::OfT(path) },
    ])
}

fn rel_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-12)
}

/// Velocities below this are treated as stationary and compared absolutely.
const STATIONARY: f64 = 1e-8;

fn agree(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()) || a.abs().max(b.abs()) <= STATIONARY
}

pub fn ac6_velocity_triangulation() -> Vec<CheckOutcome> {
    let velocities = || -> Result<(bool, String)> {
        let mut worst_fd = 0.0f64;
        let mut worst_lid = 0.0f64;
        let mut passed = true;
        let mut lidskii_cases = 0;
        for case in velocity_cases()? {
            let (p, b) = popuc_at(&case.family, case.t, case.n, &case.rule)?;
            let dp = dpopuc_dt(&case.family, case.t, case.n, &case.rule)?;
            let kind = case.family.at(case.t)?;
            let lidskii = match case.rule {
                BRule::OfT(path) if !case.family.has_t_dependence() => Some((verblunsky_at(&case.family, case.t, case.n)?, path.derivative(case.t))),
                _ => None,
            };
            for zeta in zeros(&p)?.zeros {
                if let BRule::FixedZero(xi) = case.rule {
                    if (zeta - xi).norm() < 1e-6 {
                        continue;
                    }
                }
                let zp = velocity_integral(&kind, &p, zeta, &dp)?;
                let integral = angular_velocity(zeta, zp);
                let fd = fd_angular_velocity(&case.family, case.t, case.n, &case.rule, zeta)?;
                passed &= agree(integral, fd, 1e-4) && (zeta.conj() * zp).re.abs() <= 1e-6 * zp.norm() + 1e-12;
                if integral.abs().max(fd.abs()) > STATIONARY {
                    worst_fd = worst_fd.max(rel_gap(integral, fd));
                }
                if let Some((a, b_prime)) = &lidskii {
                    let lid = lidskii_velocity(a, b, *b_prime, zeta)?;
                    passed &= agree(lid, integral, 1e-4) && agree(lid, fd, 1e-4);
                    worst_lid = worst_lid.max(rel_gap(lid, integral)).max(rel_gap(lid, fd));
                    lidskii_cases += 1;
                }
            }
        }
        Ok((passed, format!("integral vs finite differences {worst_fd:.3e}; Lidskii vs both {worst_lid:.3e} on {lidskii_cases} zeros (tol 1e-4)")))
    };
    let identities = || -> Result<(bool, String)> {
        let mut worst_fixed = 0.0f64;
        let mut worst_conj = 0.0f64;
        let mut count = (0, 0);
        let mut stationary = 0;
        for case in velocity_cases()? {
            let BRule::FixedZero(xi) = case.rule else { continue };
            if !case.family.has_t_dependence() {
                continue;
            }
            let (p, _) = popuc_at(&case.family, case.t, case.n, &case.rule)?;
            for zeta in zeros(&p)?.zeros {
                if (zeta - xi).norm() < 1e-6 {
                    continue;
                }
                let chk = angular_velocity_identity(&case.family, case.t, case.n, &case.rule, zeta, Anchor::FixedZero(xi.arg()))?;
                if chk.lhs.abs().max(chk.rhs.abs()) <= 1e-10 * chk.c {
                    stationary += 1;
                    continue;
                }
                worst_fixed = worst_fixed.max(chk.relative_error());
                count.0 += 1;
            }
        }
        let conj_cases = [
            (WeightKind::SingleMoment { r: 0.5 }, 0.5, 6, 1.0),
            (WeightKind::SingleMoment { r: 0.7 }, 0.7, 7, -1.0),
            (WeightKind::BernsteinSzego { r: 0.4, phi: 0.0 }, 0.4, 8, 1.0),
            (WeightKind::FisherHartwig { r: 0.9, s: 0.0 }, 0.9, 6, -1.0),
        ];
        for (kind, t, n, b) in conj_cases {
            let f = family(kind, SweepParam::R)?;
            let rule = BRule::Constant(c(b, 0.0));
            let (p, _) = popuc_at(&f, t, n, &rule)?;
            for zeta in zeros(&p)?.zeros {
                if zeta.im.abs() < 1e-6 {
                    continue;
                }
                let chk = angular_velocity_identity(&f, t, n, &rule, zeta, Anchor::Conjugate)?;
                if chk.lhs.abs().max(chk.rhs.abs()) <= 1e-10 * chk.c {
                    stationary += 1;
                    continue;
                }
                worst_conj = worst_conj.max(chk.relative_error());
                count.1 += 1;
            }
        }
        let passed = worst_fixed <= 1e-4 && worst_conj <= 1e-4 && count.0 > 0 && count.1 > 0;
        Ok((passed, format!("fixed-zero anchor {worst_fixed:.3e} on {} zeros; conjugate anchor {worst_conj:.3e} on {} zeros (tol 1e-4); {stationary} stationary zeros with both sides below 1e-10 C", count.0, count.1)))
    };
    vec![
        CheckOutcome::from_result(6, "6a", "velocity triangulation", velocities()),
        CheckOutcome::from_result(6, "6b", "angular-velocity identity", identities()),
    ]
}

pub fn ac7_lidskii_exact() -> Vec<CheckOutcome> {
    let run = || -> Result<(bool, String)> {
        let beta = UnimodularPath { scale: 0.7, offset: 0.3 };
        let mut worst = 0.0f64;
        for t in [-1.0, 0.0, 0.6, 2.5] {
            let b = beta.at(t);
            let v = lidskii_velocity(&[], b, beta.derivative(t), b.conj())?;
            worst = worst.max((v + 0.7).abs());
        }
        let path = UnimodularPath { scale: 1.0, offset: 0.0 };
        let lebesgue = WeightFamily::lebesgue();
        let mut worst_fd = 0.0f64;
        for t in [0.0, 0.9, 2.0] {
            let b = path.at(t);
            let p = popuc(&ComplexPolynomial::monomial(4), b)?;
            for zeta in zeros(&p)?.zeros {
                let v = lidskii_velocity(&[c(0.0, 0.0); 4], b, path.derivative(t), zeta)?;
                worst = worst.max((v + 0.2).abs());
                let fd = fd_angular_velocity(&lebesgue, t, 5, &BRule::OfT(path), zeta)?;
                worst_fd = worst_fd.max((fd + 0.2).abs());
            }
        }
        Ok((worst <= 1e-8, format!("max deviation from -beta' and -1/5: {worst:.3e} (tol 1e-8); finite differences {worst_fd:.3e}")))
    };
    vec![CheckOutcome::from_result(7, "7", "Lidskii exact cases", run())]
}

fn describe(tab: &TrajectoryTable, cols: &[usize]) -> Result<(Vec<Direction>, String)> {
    let verdicts = monotonicity_verdict(tab)?;
    let dirs: Vec<Direction> = cols.iter().map(|&k| verdicts[k].verdict).collect();
    let count = |d: Direction| dirs.iter().filter(|x| **x == d).count();
    Ok((
        dirs.clone(),
        format!("{} columns: {} increasing, {} decreasing, {} non-monotone", cols.len(), count(Direction::Increasing), count(Direction::Decreasing), count(Direction::NonMonotone)),
    ))
}

fn all_are(dirs: &[Direction], d: Direction) -> bool {
    !dirs.is_empty() && dirs.iter().all(|x| *x == d)
}

pub fn ac8_bernstein_szego_figure() -> Vec<CheckOutcome> {
    let grid: Vec<f64> = (1..=9).map(|i| i as f64 / 10.0).collect();
    let f = || family(WeightKind::BernsteinSzego { r: 0.1, phi: 0.0 }, SweepParam::R);
    let at_one = || -> Result<(bool, String)> {
        let tab = sweep(&f()?, &grid, 15, BRule::FixedZero(c(1.0, 0.0)), &SweepOptions::default())?;
        let (dirs, text) = describe(&tab, &tab.columns_within(0.0, PI))?;
        Ok((all_are(&dirs, Direction::Decreasing), format!("upper semicircle, fixed zero 1: {text}")))
    };
    let at_i = || -> Result<(bool, String)> {
        let tab = sweep(&f()?, &grid, 15, BRule::FixedZero(c(0.0, 1.0)), &SweepOptions::default())?;
        let (_, text) = describe(&tab, &tab.columns_within(0.0, PI))?;
        Ok((true, format!("fixed zero i run completed (not asserted): {text}")))
    };
    vec![
        CheckOutcome::from_result(8, "8a", "Bernstein-Szego kernel zeros move clockwise", at_one()),
        CheckOutcome::from_result(8, "8b", "Bernstein-Szego companion run at i", at_i()),
    ]
}

pub fn ac9_single_moment_figure() -> Vec<CheckOutcome> {
    let monotone = || -> Result<(bool, String)> {
        let grid: Vec<f64> = (1..=19).map(|i| i as f64 * 0.05).collect();
        let f = family(WeightKind::SingleMoment { r: 0.05 }, SweepParam::R)?;
        let mut passed = true;
        let mut text = Vec::new();
        for b in [1.0, -1.0] {
            let tab = sweep(&f, &grid, 15, BRule::Constant(c(b, 0.0)), &SweepOptions::default())?;
            let (dirs, t) = describe(&tab, &tab.columns_within(1e-6, PI - 1e-6))?;
            passed &= all_are(&dirs, Direction::Increasing);
            text.push(format!("b={b}: {t}"));
        }
        Ok((passed, text.join("; ")))
    };
    let sm = WeightKind::SingleMoment { r: 0.8 };
    let bs = WeightKind::BernsteinSzego { r: 0.8, phi: 0.0 };
    let inequality = || -> Result<(bool, String)> {
        let cmp = comparison(&sm, &bs, 15, CompareAnchor::SharedZeroAt(c(1.0, 0.0)), 0.0)?;
        let upper: Vec<usize> = (0..cmp.args1.len()).filter(|&j| cmp.args1[j] > 0.0 && cmp.args1[j] < PI).collect();
        let holds = upper.iter().filter(|&&j| cmp.less[j]).count();
        let lower = (0..cmp.args1.len()).filter(|&j| cmp.args1[j] > PI && cmp.less[j]).count();
        Ok((
            !upper.is_empty() && holds == upper.len(),
            format!("theta_j(single-moment) < theta_j(Bernstein-Szego) holds for {holds}/{} zeros in (0, pi); it holds for {lower} zeros in (pi, 2pi)", upper.len()),
        ))
    };
    let b_i = || -> Result<(bool, String)> {
        let cmp = comparison(&sm, &bs, 15, CompareAnchor::SameB(c(0.0, 1.0)), 0.0)?;
        let upper: Vec<usize> = (0..cmp.args1.len()).filter(|&j| cmp.args1[j] > 0.0 && cmp.args1[j] < PI).collect();
        let holds = upper.iter().filter(|&&j| cmp.less[j]).count();
        Ok((true, format!("b = i run completed (not asserted): inequality holds for {holds}/{} zeros in (0, pi)", upper.len())))
    };
    vec![
        CheckOutcome::from_result(9, "9a", "single-moment zeros move counterclockwise", monotone()),
        CheckOutcome::from_result(9, "9b", "comparison inequality with shared zero at 1", inequality()),
        CheckOutcome::from_result(9, "9c", "comparison with b = i", b_i()),
    ]
}

pub fn ac10_fisher_hartwig_figure() -> Vec<CheckOutcome> {
    let r_grid = [0.6, 1.0, 2.0, 5.0, 17.0];
    let r_sweep = |s: f64, lo: f64, hi: f64, want: Direction| -> Result<(bool, String)> {
        let opts = SweepOptions { zeros: ZeroOptions::with_theta0(-PI), ..SweepOptions::default() };
        let tab = track_zeros(&r_grid, |r| jacobi_szego_f(10, r, s), &opts)?;
        let (dirs, text) = describe(&tab, &tab.columns_within(lo, hi))?;
        Ok((all_are(&dirs, want), text))
    };
    let s_sweep = || -> Result<(bool, String)> {
        let mut passed = true;
        let mut text = Vec::new();
        for r in [0.75, 2.0] {
            let tab = track_zeros(&[-2.0, -1.0, 0.0, 1.0, 2.0], |s| jacobi_szego_f(10, r, s), &SweepOptions::default())?;
            let cols: Vec<usize> = (0..tab.n_zeros).collect();
            let (dirs, t) = describe(&tab, &cols)?;
            passed &= all_are(&dirs, Direction::Decreasing);
            text.push(format!("r={r}: {t}"));
        }
        Ok((passed, text.join("; ")))
    };
    let factor = || -> Result<(bool, String)> {
        let mut worst = 0.0f64;
        for (r, s) in [(0.75, 1.0), (2.0, -0.5), (1.3, 2.0), (0.6, 0.0)] {
            for n in [4usize, 8, 10] {
                let kind = WeightKind::FisherHartwig { r, s };
                let q = monic_opuc(&kind, n)?;
                let p = popuc(&q, fixed_zero_b(&q, c(1.0, 0.0))?)?;
                let got = zeros(&p)?.zeros;
                let f = hyp2f1_poly(n, c(r + 1.0, s), c(2.0 * r + 2.0, 0.0))?.to_monic()?;
                let mut expect = zeros(&f)?.zeros;
                expect.push(c(1.0, 0.0));
                worst = worst.max(set_distance(&got, &expect));
            }
        }
        Ok((worst <= 1e-8, format!("max zero distance {worst:.3e} (tol 1e-8)")))
    };
    vec![
        CheckOutcome::from_result(10, "10a", "f10(.;r,1) upper zeros move counterclockwise in r", r_sweep(1.0, 0.0, PI, Direction::Increasing)),
        CheckOutcome::from_result(10, "10b", "f10(.;r,-2) lower zeros move clockwise in r", r_sweep(-2.0, -PI, 0.0, Direction::Decreasing)),
        CheckOutcome::from_result(10, "10c", "f10(.;r,s) zeros move clockwise in s", s_sweep()),
        CheckOutcome::from_result(10, "10d", "fixed-zero POPUC factors through 2F1", factor()),
    ]
}

/// Zeros of `C_n^{(λ)}` on `(-1, 1)` by sign changes and bisection.
fn gegenbauer_zeros(n: usize, lambda: f64) -> Result<Vec<f64>> {
    let m = 4000;
    let xs: Vec<f64> = (0..=m).map(|i| -1.0 + 2.0 * i as f64 / m as f64).collect();
    let mut out = Vec::new();
    for w in xs.windows(2) {
        let (mut a, mut b) = (w[0], w[1]);
        let (mut fa, fb) = (gegenbauer(n, lambda, a)?, gegenbauer(n, lambda, b)?);
        if fa == 0.0 {
            out.push(a);
            continue;
        }
        if fb == 0.0 || fa * fb > 0.0 {
            continue;
        }
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if mid == a || mid == b {
                break;
            }
            let fm = gegenbauer(n, lambda, mid)?;
            if fa * fm <= 0.0 {
                b = mid;
            } else {
                a = mid;
                fa = fm;
            }
        }
        out.push(0.5 * (a + b));
    }
    Ok(out)
}

pub fn ac11_interlacing() -> Vec<CheckOutcome> {
    let f_pairs = || -> Result<(bool, String)> {
        let mut checked = 0;
        let mut failed = Vec::new();
        for r in [0.75, 2.0] {
            for s in [0.0, 1.0] {
                for n in 0..=8 {
                    let za = zeros(&jacobi_szego_f(n + 1, r, s)?.to_monic()?)?;
                    let zb = zeros(&jacobi_szego_f(n + 2, r, s)?.to_monic()?)?;
                    checked += 1;
                    if !interlacing_check(&za, &zb, 1e-9)? {
                        failed.push(format!("(r={r}, s={s}, n={n})"));
                    }
                }
            }
        }
        for s in [0.0, 1.0] {
            for n in 0..=8 {
                let za = zeros(&jacobi_szego_g(n + 1, s)?.to_monic()?)?;
                let zb = zeros(&jacobi_szego_g(n + 2, s)?.to_monic()?)?;
                checked += 1;
                if !interlacing_check(&za, &zb, 1e-9)? {
                    failed.push(format!("(g, s={s}, n={n})"));
                }
            }
        }
        Ok((failed.is_empty(), format!("{}/{checked} consecutive pairs interlace{}", checked - failed.len(), if failed.is_empty() { String::new() } else { format!("; failing: {}", failed.join(" ")) })))
    };
    let gegenbauer_oracle = || -> Result<(bool, String)> {
        let mut worst = 0.0f64;
        for r in [0.75, 2.0] {
            for n in 1..=8 {
                let z = zeros(&jacobi_szego_f(n, r, 0.0)?.to_monic()?)?;
                let mut expect: Vec<f64> = gegenbauer_zeros(n, r)?.iter().map(|x| 2.0 * x.acos()).collect();
                expect.sort_by(f64::total_cmp);
                if expect.len() != z.len() {
                    worst = f64::INFINITY;
                    continue;
                }
                for (a, e) in z.args.iter().zip(&expect) {
                    worst = worst.max(circle_distance(*a, *e));
                }
            }
        }
        Ok((worst <= 1e-8, format!("max argument error vs Gegenbauer zeros {worst:.3e} (tol 1e-8)")))
    };
    vec![
        CheckOutcome::from_result(11, "11a", "consecutive zeros interlace", f_pairs()),
        CheckOutcome::from_result(11, "11b", "s = 0 zeros match the Gegenbauer oracle", gegenbauer_oracle()),
    ]
}

pub fn ac12_s_functions() -> Vec<CheckOutcome> {
    let dual = || -> Result<(bool, String)> {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let mut worst = 0.0f64;
        let mut count = 0;
        while count < 100 {
            let (theta, phi, theta0) = (rng.gen_range(-PI..PI), rng.gen_range(-PI..PI), rng.gen_range(-PI..PI));
            if circle_distance(theta, phi) < 0.05 || circle_distance(theta, theta0) < 0.05 || circle_distance(phi, theta0) < 0.05 || (theta.cos() - phi.cos()).abs() < 0.05 {
                continue;
            }
            let (a, b) = s_fixed_forms(theta, phi, theta0)?;
            let (c1, c2) = s_conjugate_forms(theta, phi)?;
            worst = worst.max(rel_gap(a, b)).max(rel_gap(c1, c2));
            count += 1;
        }
        Ok((worst <= 1e-12, format!("max relative gap between closed forms {worst:.3e} at 100 points (tol 1e-12)")))
    };
    let arcs = |lo: f64, hi: f64, k: usize| -> Vec<f64> { (1..=k).map(|i| lo + (hi - lo) * i as f64 / (k + 1) as f64).collect() };
    let fixed_pattern = || -> Result<(bool, String)> {
        let mut matches = 0;
        let mut total = 0;
        let mut observed_opposite = 0;
        for theta0 in [0.0, 1.0, -2.5] {
            for delta in [0.5, 2.0, PI, 5.0] {
                let phi = theta0 + delta;
                for theta in arcs(theta0, phi, 9) {
                    let v = s_fixed_forms(theta, phi, theta0)?.1;
                    total += 1;
                    matches += usize::from(v < 0.0);
                    observed_opposite += usize::from(v > 0.0);
                }
                for theta in arcs(phi, theta0 + TAU, 9) {
                    let v = s_fixed_forms(theta, phi, theta0)?.1;
                    total += 1;
                    matches += usize::from(v > 0.0);
                    observed_opposite += usize::from(v < 0.0);
                }
            }
        }
        Ok((
            matches == total,
            format!("stated pattern (negative on (theta0, phi), positive on (phi, theta0 + 2pi)) holds at {matches}/{total} samples; the opposite pattern holds at {observed_opposite}/{total}"),
        ))
    };
    let conjugate_pattern = || -> Result<(bool, String)> {
        let mut matches = 0;
        let mut total = 0;
        for phi in [0.3, 1.0, 2.0, 2.9] {
            for theta in arcs(-phi, phi, 9) {
                total += 1;
                matches += usize::from(s_conjugate_forms(theta, phi)?.1 > 0.0);
            }
            for theta in arcs(phi, PI, 9).into_iter().chain(arcs(-PI, -phi, 9)) {
                total += 1;
                matches += usize::from(s_conjugate_forms(theta, phi)?.1 < 0.0);
            }
        }
        Ok((matches == total, format!("negative on (-pi, -phi) and (phi, pi), positive on (-phi, phi): {matches}/{total} samples")))
    };
    vec![
        CheckOutcome::from_result(12, "12a", "s-function closed forms agree", dual()),
        CheckOutcome::from_result(12, "12b", "conjugate kernel sign pattern", conjugate_pattern()),
        CheckOutcome::from_result(12, "12c", "fixed-zero kernel sign pattern as stated", fixed_pattern()),
    ]
}

pub fn ac13_determinism() -> Vec<CheckOutcome> {
    let figures = || -> Result<(bool, String), crate::error::CliError> {
        let mut identical = true;
        for id in FIGURE_IDS {
            let a = figure(id)?;
            let b = figure(id)?;
            identical &= a.csv == b.csv;
            identical &= scatter_from_csv(&a.csv, "series", &a.title)? == scatter_from_csv(&b.csv, "series", &b.title)?;
        }
        Ok((identical, format!("{} figures regenerated with identical CSV and SVG", FIGURE_IDS.len())))
    };
    let round_trip = || -> Result<(bool, String), crate::error::CliError> {
        let mut stable = true;
        let mut configs = Vec::new();
        let mut sweep_cfg = RunConfig::new(Command::Sweep);
        sweep_cfg.family = Some(crate::config::parse_family_arg(r#"{"kind":"single-moment","params":{"r":0.3},"sweep_param":"r"}"#)?);
        sweep_cfg.degree = Some(15);
        sweep_cfg.b_spec = Some("const:1,0".into());
        sweep_cfg.t_range = Some("0.05,0.95,19".parse()?);
        configs.push(sweep_cfg);
        let mut cmp = RunConfig::new(Command::Compare);
        cmp.family = Some(crate::config::parse_family_arg(r#"{"kind":"single-moment","params":{"r":0.8}}"#)?);
        cmp.family2 = Some(crate::config::parse_family_arg(r#"{"kind":"bernstein-szego","params":{"r":0.8}}"#)?);
        cmp.degree = Some(15);
        cmp.anchor = Some("shared-zero:1,0".into());
        configs.push(cmp);
        let mut mix = RunConfig::new(Command::PopucZeros);
        mix.family = Some(crate::config::parse_family_arg(
            r#"{"kind":"mixture","params":{"w1":{"kind":"fisher-hartwig","params":{"r":0.5,"s":1}},"w2":{"kind":"lebesgue"},"t":0.25}}"#,
        )?);
        mix.degree = Some(7);
        mix.b_spec = Some("unimodular-path:exp(i*t)".into());
        mix.t = Some(0.3);
        configs.push(mix);
        let mut fig = RunConfig::new(Command::Figure);
        fig.figure = Some("fig6-left".into());
        configs.push(fig);
        for cfg in &configs {
            let text = cfg.to_canonical_json()?;
            let back = RunConfig::from_json(&text)?;
            stable &= back.to_canonical_json()? == text && back.canonical()? == cfg.canonical()?;
        }
        Ok((stable, format!("{} configs round-trip through canonical JSON", configs.len())))
    };
    let wrap = |r: std::result::Result<(bool, String), crate::error::CliError>| match r {
        Ok(v) => Ok(v),
        Err(e) => Err(popuc_core::Error::Domain(e.to_string())),
    };
    vec![
        CheckOutcome::from_result(13, "13a", "figure outputs are deterministic", wrap(figures())),
        CheckOutcome::from_result(13, "13b", "config JSON round-trip", wrap(round_trip())),
    ]
}

/// Runs one criterion (1 to 13).
pub fn criterion(k: u8) -> Vec<CheckOutcome> {
    match k {
        1 => ac1_heine_vs_levinson(),
        2 => ac2_closed_forms(),
        3 => ac3_single_moment_moments(),
        4 => ac4_unit_circle_spectrum(),
        5 => ac5_structural_identities(),
        6 => ac6_velocity_triangulation(),
        7 => ac7_lidskii_exact(),
        8 => ac8_bernstein_szego_figure(),
        9 => ac9_single_moment_figure(),
        10 => ac10_fisher_hartwig_figure(),
        11 => ac11_interlacing(),
        12 => ac12_s_functions(),
        13 => ac13_determinism(),
        _ => Vec::new(),
    }
}

/// `all` or a comma-separated list of criterion numbers.
pub fn parse_suite(text: &str) -> Option<Vec<u8>> {
    if text == "all" {
        return Some((1..=13).collect());
    }
    text.split(',').map(|s| s.trim().parse::<u8>().ok().filter(|k| (1..=13).contains(k))).collect()
}

pub fn run_suite(criteria: &[u8]) -> Vec<CheckOutcome> {
    criteria.iter().flat_map(|&k| criterion(k)).collect()
}
