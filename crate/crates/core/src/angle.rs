//! The single argument-reduction branch used everywhere in the crate.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

/// Reduces `x` into `[theta0, theta0 + 2π)`.
///
/// Values that round up to the right end of the interval are mapped to `theta0`.
pub fn wrap(x: f64, theta0: f64) -> f64 {
    let mut y = (x - theta0).rem_euclid(TAU);
    if y >= TAU {
        y = 0.0;
    }
    theta0 + y
}

/// Reduces `x` into `(-π, π]`; used for signed angular differences.
pub fn wrap_signed(x: f64) -> f64 {
    let y = wrap(x, -PI);
    if y == -PI {
        PI
    } else {
        y
    }
}

/// Argument of `z` reduced into `[theta0, theta0 + 2π)`.
pub fn arg_in(z: Complex64, theta0: f64) -> f64 {
    wrap(z.arg(), theta0)
}

/// Geodesic distance between two points of the unit circle given by their arguments.
pub fn circle_distance(a: f64, b: f64) -> f64 {
    wrap_signed(a - b).abs()
}
