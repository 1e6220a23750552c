//! Executes a [`RunConfig`].

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use popuc_core::opuc::basis_for;
use popuc_core::popuc::zeros_with;
use popuc_core::trajectory::{comparison, monotonicity_verdict_with, popuc_at, sweep, verdicts_to_json, CompareAnchor, SweepOptions};
use popuc_core::{FamilyDescriptor, WeightFamily, ZeroOptions};

use crate::config::{AnchorSpec, Command, RunConfig};
use crate::error::{CliError, CliResult};
use crate::figures::figure;
use crate::svg::scatter_from_csv;
use crate::verify::{parse_suite, run_suite};

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
        }
    }
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn emit(cfg: &RunConfig, text: &str, out: &mut dyn Write) -> CliResult<()> {
    match &cfg.outputs.file {
        Some(path) => write_file(Path::new(path), text),
        None => out.write_all(text.as_bytes()).map_err(|e| CliError::io(Path::new("<stdout>"), e)),
    }
}

fn out_dir(cfg: &RunConfig) -> PathBuf {
    PathBuf::from(cfg.outputs.dir.clone().unwrap_or_else(|| ".".into()))
}

fn family_of(d: &FamilyDescriptor) -> CliResult<WeightFamily> {
    d.to_family().map_err(|e| CliError::Config(e.to_string()))
}

fn zero_options(cfg: &RunConfig, theta0: f64) -> ZeroOptions {
    ZeroOptions { circle_tol: cfg.tolerances.circle_tol, sep_tol: cfg.tolerances.sep_tol, theta0, ..ZeroOptions::default() }
}

fn pair(z: popuc_core::Complex64) -> [f64; 2] {
    [z.re, z.im]
}

/// Runs the configured command, writing stdout-bound text to `out`.
pub fn run(cfg: &RunConfig, out: &mut dyn Write) -> CliResult<()> {
    match cfg.command {
        Command::Opuc => {
            let f = family_of(cfg.family_descriptor()?)?;
            let n = cfg.degree()?;
            let t = cfg.t.unwrap_or_else(|| f.current_t());
            let kind = f.at(t)?;
            let basis = basis_for(&kind, n)?;
            let json = serde_json::json!({
                "family": FamilyDescriptor::from_family(&f),
                "t": t,
                "degree": n,
                "monic": basis.q(n),
                "norm2": basis.norm2,
                "verblunsky": basis.verblunsky.iter().map(|a| pair(*a)).collect::<Vec<_>>(),
            });
            emit(cfg, &(serde_json::to_string_pretty(&json).expect("json") + "\n"), out)
        }
        Command::PopucZeros => {
            let f = family_of(cfg.family_descriptor()?)?;
            let n = cfg.degree()?;
            let t = cfg.t.unwrap_or_else(|| f.current_t());
            let (p, _) = popuc_at(&f, t, n, &cfg.b()?.rule())?;
            let set = zeros_with(&p, &zero_options(cfg, cfg.theta0.unwrap_or(f.theta0)))?;
            emit(cfg, &set.to_csv(), out)
        }
        Command::Sweep => {
            let f = family_of(cfg.family_descriptor()?)?;
            let n = cfg.degree()?;
            let grid = cfg.t_range.ok_or_else(|| CliError::Config("missing --t-range".into()))?.grid()?;
            let mut family = f.clone();
            if let Some(theta0) = cfg.theta0 {
                family.theta0 = theta0;
            }
            let opts = SweepOptions { match_gap: cfg.tolerances.match_gap, zeros: zero_options(cfg, family.theta0), ..SweepOptions::default() };
            let tab = sweep(&family, &grid, n, cfg.b()?.rule(), &opts)?;
            let verdicts = monotonicity_verdict_with(&tab, cfg.tolerances.mono_tol)?;
            let dir = out_dir(cfg);
            let csv = tab.to_csv();
            write_file(&dir.join("trajectory.csv"), &csv)?;
            write_file(&dir.join("verdicts.json"), &(verdicts_to_json(&verdicts) + "\n"))?;
            if cfg.outputs.svg {
                write_file(&dir.join("trajectory.svg"), &scatter_from_csv(&csv, "t", &format!("{} sweep, degree {n}", f.kind.name()))?)?;
            }
            let _ = writeln!(out, "{}", dir.join("trajectory.csv").display());
            Ok(())
        }
        Command::Compare => {
            let f1 = family_of(cfg.family_descriptor()?)?;
            let f2 = family_of(cfg.family2.as_ref().ok_or_else(|| CliError::Config("missing --family2".into()))?)?;
            let n = cfg.degree()?;
            let anchor: AnchorSpec = cfg.anchor.as_deref().ok_or_else(|| CliError::Config("missing --anchor".into()))?.parse()?;
            let anchor = match anchor {
                AnchorSpec::SharedZero(xi) => CompareAnchor::SharedZeroAt(xi),
                AnchorSpec::Symmetric(b) => CompareAnchor::SymmetricB(b),
                AnchorSpec::SameB(b) => CompareAnchor::SameB(b),
            };
            let theta0 = cfg.theta0.unwrap_or(0.0);
            let cmp = comparison(&f1.at(f1.current_t())?, &f2.at(f2.current_t())?, n, anchor, theta0)?;
            let mut csv = String::from("j,arg1,arg2,less\n");
            for j in 0..cmp.args1.len() {
                let _ = writeln!(csv, "{},{:.16e},{:.16e},{}", j + 1, cmp.args1[j], cmp.args2[j], cmp.less[j]);
            }
            emit(cfg, &csv, out)
        }
        Command::Verify => {
            let suite = cfg.suite.as_deref().unwrap_or("all");
            let criteria = parse_suite(suite).ok_or_else(|| CliError::Config(format!("unknown suite '{suite}'")))?;
            let results = run_suite(&criteria);
            for r in &results {
                let _ = writeln!(out, "{}", r.line());
            }
            if let Some(path) = &cfg.outputs.file {
                write_file(Path::new(path), &(serde_json::to_string_pretty(&results).expect("json") + "\n"))?;
            }
            let failed: Vec<&str> = results.iter().filter(|r| !r.passed).map(|r| r.id.as_str()).collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(CliError::Verification(format!("failed checks: {}", failed.join(", "))))
            }
        }
        Command::Figure => {
            let id = cfg.figure.as_deref().ok_or_else(|| CliError::Config("missing figure id".into()))?;
            let fig = figure(id)?;
            let dir = out_dir(cfg);
            write_file(&dir.join(format!("{id}.csv")), &fig.csv)?;
            if cfg.outputs.svg {
                write_file(&dir.join(format!("{id}.svg")), &scatter_from_csv(&fig.csv, "series", &fig.title)?)?;
            }
            let _ = writeln!(out, "{}", dir.join(format!("{id}.csv")).display());
            Ok(())
        }
    }
}
