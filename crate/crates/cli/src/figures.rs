//! Named figure datasets.

use std::fmt::Write as _;

use popuc_core::angle::arg_in;
use popuc_core::opuc::jacobi_szego_f;
use popuc_core::popuc::{fixed_zero_b, popuc, zeros};
use popuc_core::trajectory::monic_opuc;
use popuc_core::{Complex64, ComplexPolynomial, WeightKind, ZeroSet};

use crate::error::{CliError, CliResult};

pub const FIGURE_IDS: [&str; 6] = ["fig3-left", "fig3-right", "fig5-left", "fig5-right", "fig6-left", "fig6-right"];

pub struct Figure {
    pub id: String,
    pub title: String,
    /// Header `series,zero_index,arg,re,im`; arguments in `[0, 2π)`.
    pub csv: String,
}

fn fixed_zero_popuc(kind: &WeightKind, n: usize, xi: Complex64) -> CliResult<ComplexPolynomial> {
    let q = monic_opuc(kind, n - 1)?;
    let b = fixed_zero_b(&q, xi)?;
    Ok(popuc(&q, b)?)
}

fn const_b_popuc(kind: &WeightKind, n: usize, b: Complex64) -> CliResult<ComplexPolynomial> {
    Ok(popuc(&monic_opuc(kind, n - 1)?, b)?)
}

fn push_rows(csv: &mut String, series: &str, set: &ZeroSet) {
    for (k, z) in set.zeros.iter().enumerate() {
        let _ = writeln!(csv, "{},{},{:.16e},{:.16e},{:.16e}", series, k, arg_in(*z, 0.0), z.re, z.im);
    }
}

/// Builds the dataset for one of [`FIGURE_IDS`].
pub fn figure(id: &str) -> CliResult<Figure> {
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let mut csv = String::from("series,zero_index,arg,re,im\n");
    let title = match id {
        "fig3-left" | "fig3-right" => {
            let xi = if id == "fig3-left" { one } else { i };
            for r in [0.1, 0.5, 0.9] {
                let p = fixed_zero_popuc(&WeightKind::BernsteinSzego { r, phi: 0.0 }, 15, xi)?;
                push_rows(&mut csv, &format!("r={r}"), &zeros(&p)?);
            }
            format!("Bernstein-Szego, fixed zero at {}", if id == "fig3-left" { "1" } else { "i" })
        }
        "fig5-left" | "fig5-right" => {
            let kinds = [("bernstein-szego", WeightKind::BernsteinSzego { r: 0.8, phi: 0.0 }), ("single-moment", WeightKind::SingleMoment { r: 0.8 })];
            for (label, kind) in kinds {
                let p = if id == "fig5-left" { fixed_zero_popuc(&kind, 15, one)? } else { const_b_popuc(&kind, 15, i)? };
                push_rows(&mut csv, label, &zeros(&p)?);
            }
            format!("r = 0.8, {}", if id == "fig5-left" { "fixed zero at 1" } else { "b = i" })
        }
        "fig6-left" | "fig6-right" => {
            let s = if id == "fig6-left" { 1.0 } else { -2.0 };
            for r in [0.1, 1.0, 17.0] {
                let p = jacobi_szego_f(10, r, s)?.to_monic()?;
                push_rows(&mut csv, &format!("r={r}"), &zeros(&p)?);
            }
            format!("f10 with s = {s}")
        }
        other => return Err(CliError::Config(format!("unknown figure '{other}'; known: {}", FIGURE_IDS.join(", ")))),
    };
    Ok(Figure { id: id.to_string(), title, csv })
}
