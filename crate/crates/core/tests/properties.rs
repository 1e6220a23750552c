//! Invariants over randomized inputs.

use std::f64::consts::{PI, TAU};

use proptest::prelude::*;

use popuc_core::angle::{circle_distance, wrap};
use popuc_core::opuc::OpucBasis;
use popuc_core::popuc::{char_poly, ggt, popuc, zeros};
use popuc_core::trajectory::{
    angular_velocity, dpopuc_dt, fd_angular_velocity, interlacing_check, lidskii_velocity, popuc_at, s_conjugate, s_fixed,
    sweep, varpi, velocity_integral, SweepOptions,
};
use popuc_core::{BRule, Complex64, ComplexPolynomial, SweepParam, WeightFamily, WeightKind, ZeroSet};

fn disk_point() -> impl Strategy<Value = Complex64> {
    (0.0f64..0.9, 0.0f64..TAU).prop_map(|(r, a)| Complex64::from_polar(r, a))
}

fn unimodular() -> impl Strategy<Value = Complex64> {
    (0.0f64..TAU).prop_map(|a| Complex64::from_polar(1.0, a))
}

fn zero_set(args: &[f64]) -> ZeroSet {
    let mut args: Vec<f64> = args.iter().map(|a| wrap(*a, 0.0)).collect();
    args.sort_by(f64::total_cmp);
    ZeroSet {
        theta0: 0.0,
        zeros: args.iter().map(|a| Complex64::from_polar(1.0, *a)).collect(),
        abs_residual: vec![0.0; args.len()],
        poly_residual: vec![0.0; args.len()],
        args,
    }
}

fn bs_family(r: f64) -> WeightFamily {
    WeightFamily::new(WeightKind::BernsteinSzego { r, phi: 0.0 }, 0.0, SweepParam::R).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ggt_matches_szego_popuc(a in prop::collection::vec(disk_point(), 0..20), b in unimodular()) {
        let g = ggt(&a, b).unwrap();
        prop_assert!(g.unitarity_defect() <= 1e-12);
        prop_assert!(g.is_unreduced_hessenberg());
        let basis = OpucBasis::from_verblunsky(&a, 1.0).unwrap();
        let p = popuc(&basis.monic[a.len()], b).unwrap();
        prop_assert!(char_poly(&g).relative_distance(&p) <= 1e-10);
        let z = zeros(&p).unwrap();
        prop_assert_eq!(z.len(), a.len() + 1);
        prop_assert!(z.max_circle_deviation() <= 1e-8);
        prop_assert!(z.min_gap() > 1e-9);
    }

    #[test]
    fn star_is_an_involution(coeffs in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 1..12), extra in 0usize..3) {
        let p = ComplexPolynomial::new(coeffs.iter().map(|&(x, y)| Complex64::new(x, y)).collect());
        let n = p.degree() + extra;
        let back = p.star(n).unwrap().star(n).unwrap();
        prop_assert!(back.relative_distance(&p) <= 1e-15);
    }

    #[test]
    fn s_fixed_sign_pattern(theta0 in -PI..PI, u in 0.05f64..0.95, v in 0.02f64..0.98) {
        let phi = theta0 + TAU * u;
        let inner = theta0 + (phi - theta0) * v;
        let outer = phi + (theta0 + TAU - phi) * v;
        prop_assert!(s_fixed(inner, phi, theta0).unwrap() > 0.0);
        prop_assert!(s_fixed(outer, phi, theta0).unwrap() < 0.0);
    }

    #[test]
    fn s_conjugate_sign_pattern(phi in 0.05f64..(PI - 0.05), v in 0.02f64..0.98) {
        let inside = -phi + 2.0 * phi * v;
        let outside = phi + (PI - phi) * v;
        prop_assert!(s_conjugate(inside, phi).unwrap() > 0.0);
        prop_assert!(s_conjugate(outside, phi).unwrap() < 0.0);
        prop_assert!(s_conjugate(-outside, phi).unwrap() < 0.0);
    }

    #[test]
    fn mixture_varpi_follows_weight_ratio(r1 in 0.1f64..0.9, r2 in 0.1f64..0.9, phi2 in -PI..PI, theta in -PI..PI, phi in -PI..PI) {
        let first = WeightKind::SingleMoment { r: r1 };
        let second = WeightKind::BernsteinSzego { r: r2, phi: phi2 };
        let ratio = |x: f64| second.value(x) / first.value(x);
        let diff = ratio(theta) - ratio(phi);
        prop_assume!(diff.abs() > 1e-9);
        let kind = WeightKind::Mixture { first: Box::new(first.clone()), second: Box::new(second.clone()), t: 0.5 };
        let f = WeightFamily::new(kind, -PI, SweepParam::T).unwrap();
        let w = varpi(&f, 0.5, theta, phi).unwrap();
        prop_assert_eq!(w > 0.0, diff > 0.0);
        prop_assert_eq!(varpi(&f, 0.5, phi, phi).unwrap(), 0.0);
    }

    #[test]
    fn arc_rule_matches_merged_order(a in prop::collection::vec(0.0f64..TAU, 1..6), extra in 0.0f64..TAU) {
        let mut b: Vec<f64> = a.iter().map(|x| x + 1.3).collect();
        b.push(extra);
        let (za, zb) = (zero_set(&a), zero_set(&b));
        let Ok(verdict) = interlacing_check(&za, &zb, 1e-9) else {
            return Ok(());
        };
        let mut merged: Vec<(f64, bool)> = za.args.iter().map(|x| (*x, true)).chain(zb.args.iter().map(|x| (*x, false))).collect();
        merged.sort_by(|p, q| p.0.total_cmp(&q.0));
        let m = merged.len();
        let adjacent = (0..m).any(|i| merged[i].1 && merged[(i + 1) % m].1);
        let coincide = za.args.windows(2).any(|w| w[1] - w[0] == 0.0) || zb.args.windows(2).any(|w| w[1] - w[0] == 0.0);
        prop_assume!(!coincide);
        prop_assert_eq!(verdict, !adjacent);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn lidskii_matches_eigenvalue_differences(a in prop::collection::vec(disk_point(), 7), t in 0.0f64..TAU) {
        let b = Complex64::from_polar(1.0, t);
        let bp = Complex64::new(0.0, 1.0) * b;
        let eig = |t: f64| zeros(&char_poly(&ggt(&a, Complex64::from_polar(1.0, t)).unwrap())).unwrap();
        let here = eig(t);
        let h = 1e-5;
        let (plus, minus) = (eig(t + h), eig(t - h));
        let nearest = |set: &ZeroSet, z: Complex64| *set.zeros.iter().min_by(|p, q| (*p - z).norm().total_cmp(&(*q - z).norm())).unwrap();
        for &z in &here.zeros {
            let fd = popuc_core::angle::wrap_signed(nearest(&plus, z).arg() - nearest(&minus, z).arg()) / (2.0 * h);
            let exact = lidskii_velocity(&a, b, bp, z).unwrap();
            prop_assert!((exact - fd).abs() <= 1e-5 * exact.abs().max(1e-3), "{} vs {}", exact, fd);
        }
    }

    #[test]
    fn velocities_are_tangent_and_match_differences(r in 0.2f64..0.8, n in 3usize..8, xi_arg in 0.0f64..TAU) {
        let f = bs_family(r);
        let rule = BRule::FixedZero(Complex64::from_polar(1.0, xi_arg));
        let (p, _) = popuc_at(&f, r, n, &rule).unwrap();
        let dp = dpopuc_dt(&f, r, n, &rule).unwrap();
        let kind = f.at(r).unwrap();
        for z in zeros(&p).unwrap().zeros {
            let zp = velocity_integral(&kind, &p, z, &dp).unwrap();
            prop_assert!((z.conj() * zp).re.abs() <= 1e-6 * zp.norm() + 1e-10);
            let w = angular_velocity(z, zp);
            let fd = fd_angular_velocity(&f, r, n, &rule, z).unwrap();
            prop_assert!((w - fd).abs() <= 1e-5 * w.abs().max(1e-3), "{} vs {}", w, fd);
        }
    }

    #[test]
    fn grid_refinement_keeps_endpoints(r0 in 0.2f64..0.4, n in 3usize..9, xi_arg in 0.0f64..TAU) {
        let f = bs_family(r0);
        let rule = BRule::FixedZero(Complex64::from_polar(1.0, xi_arg));
        let coarse: Vec<f64> = (0..=8).map(|i| r0 + 0.4 * i as f64 / 8.0).collect();
        let fine: Vec<f64> = (0..=16).map(|i| r0 + 0.4 * i as f64 / 16.0).collect();
        let opts = SweepOptions::default();
        let a = sweep(&f, &coarse, n, rule, &opts).unwrap();
        let b = sweep(&f, &fine, n, rule, &opts).unwrap();
        let (la, lb) = (a.args.last().unwrap(), b.args.last().unwrap());
        for k in 0..n {
            prop_assert!((la[k] - lb[k]).abs() < 1e-6, "zero {}: {} vs {}", k, la[k], lb[k]);
        }
    }

    #[test]
    fn table_rows_rewrap_to_zero_sets(r0 in 0.1f64..0.5, n in 2usize..10, theta0 in -PI..PI) {
        let f = WeightFamily::new(WeightKind::SingleMoment { r: r0 }, theta0, SweepParam::R).unwrap();
        let grid: Vec<f64> = (0..=6).map(|i| r0 + 0.4 * i as f64 / 6.0).collect();
        let rule = BRule::Constant(Complex64::new(-1.0, 0.0));
        let tab = sweep(&f, &grid, n, rule, &SweepOptions::default()).unwrap();
        for (i, &t) in grid.iter().enumerate() {
            let (p, _) = popuc_at(&f, t, n, &rule).unwrap();
            let set = popuc_core::popuc::zeros_with(&p, &popuc_core::ZeroOptions::with_theta0(theta0)).unwrap();
            let mut rewrapped: Vec<f64> = tab.args[i].iter().map(|a| wrap(*a, theta0)).collect();
            rewrapped.sort_by(f64::total_cmp);
            for (x, y) in rewrapped.iter().zip(&set.args) {
                prop_assert!(circle_distance(*x, *y) < 1e-12);
            }
            let mut stored = tab.zeros[i].clone();
            stored.sort_by(|p, q| wrap(p.arg(), theta0).total_cmp(&wrap(q.arg(), theta0)));
            prop_assert!(stored.iter().zip(&set.zeros).all(|(p, q)| p == q));
        }
    }
}
