use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use popuc_lab::config::{parse_family_arg, Outputs, TRange, Tolerances};
use popuc_lab::{run, CliError, Command, RunConfig};

#[derive(Parser)]
#[command(name = "popuc-lab", version, about = "Paraorthogonal polynomials on the unit circle: zeros, sweeps, figures and checks")]
struct Cli {
    /// Print the canonical JSON configuration and exit without running.
    #[arg(long, global = true)]
    print_config: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Tol {
    /// Largest accepted ||z| - 1| for a computed zero.
    #[arg(long, default_value_t = 1e-8)]
    circle_tol: f64,
    /// Smallest accepted argument gap between zeros.
    #[arg(long, default_value_t = 1e-9)]
    sep_tol: f64,
    /// Largest accepted per-step argument change when matching trajectories.
    #[arg(long, default_value_t = 0.5)]
    match_gap: f64,
    /// Tolerance for strict monotonicity of trajectories.
    #[arg(long, default_value_t = 1e-10)]
    mono_tol: f64,
}

impl Tol {
    fn into_tolerances(self) -> Tolerances {
        Tolerances { circle_tol: self.circle_tol, sep_tol: self.sep_tol, match_gap: self.match_gap, mono_tol: self.mono_tol }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Monic OPUC, norms and Verblunsky coefficients as JSON.
    Opuc {
        /// Family descriptor: inline JSON, @file, or a bare kind such as `lebesgue`.
        #[arg(long)]
        family: String,
        #[arg(long)]
        degree: usize,
        /// Sweep-parameter value; defaults to the descriptor's value.
        #[arg(long, allow_hyphen_values = true)]
        t: Option<f64>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Zeros of a POPUC as CSV.
    PopucZeros {
        #[arg(long)]
        family: String,
        #[arg(long)]
        degree: usize,
        /// `const:<re>,<im>`, `fixed-zero:<re>,<im>` or `unimodular-path:exp(i*t)`.
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<f64>,
        /// Arguments are reported in [theta0, theta0 + 2pi).
        #[arg(long, allow_hyphen_values = true)]
        theta0: Option<f64>,
        #[command(flatten)]
        tol: Tol,
        #[arg(long)]
        out: Option<String>,
    },
    /// Tracks zeros over a parameter grid; writes trajectory.csv, verdicts.json and trajectory.svg.
    Sweep {
        #[arg(long)]
        family: String,
        #[arg(long)]
        degree: usize,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// `<start>,<end>,<steps>`.
        #[arg(long, allow_hyphen_values = true)]
        t_range: String,
        #[arg(long, allow_hyphen_values = true)]
        theta0: Option<f64>,
        #[command(flatten)]
        tol: Tol,
        #[arg(long, default_value = ".")]
        out_dir: String,
        #[arg(long)]
        no_svg: bool,
    },
    /// Pairs the zeros of two POPUC by descending argument.
    Compare {
        #[arg(long)]
        family: String,
        #[arg(long)]
        family2: String,
        #[arg(long)]
        degree: usize,
        /// `shared-zero:<re>,<im>`, `symmetric:1`, `symmetric:-1` or `b:<re>,<im>`.
        #[arg(long, allow_hyphen_values = true)]
        anchor: String,
        #[arg(long, allow_hyphen_values = true)]
        theta0: Option<f64>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Runs the verification suites; `all` or a comma-separated list of 1..13.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// JSON report path.
        #[arg(long)]
        out: Option<String>,
    },
    /// Writes a figure dataset and its SVG: fig3-left, fig3-right, fig5-left, fig5-right, fig6-left, fig6-right.
    Figure {
        id: String,
        #[arg(long, default_value = ".")]
        out_dir: String,
        #[arg(long)]
        no_svg: bool,
    },
    /// Runs a saved JSON configuration.
    Run {
        config: PathBuf,
    },
}

fn build(cmd: Cmd) -> Result<RunConfig, CliError> {
    let outputs = |file: Option<String>, dir: Option<String>, svg: bool| Outputs { file, dir, svg };
    Ok(match cmd {
        Cmd::Opuc { family, degree, t, out } => RunConfig {
            family: Some(parse_family_arg(&family)?),
            degree: Some(degree),
            t,
            outputs: outputs(out, None, true),
            ..RunConfig::new(Command::Opuc)
        },
        Cmd::PopucZeros { family, degree, b, t, theta0, tol, out } => RunConfig {
            family: Some(parse_family_arg(&family)?),
            degree: Some(degree),
            b_spec: Some(b),
            t,
            theta0,
            tolerances: tol.into_tolerances(),
            outputs: outputs(out, None, true),
            ..RunConfig::new(Command::PopucZeros)
        },
        Cmd::Sweep { family, degree, b, t_range, theta0, tol, out_dir, no_svg } => RunConfig {
            family: Some(parse_family_arg(&family)?),
            degree: Some(degree),
            b_spec: Some(b),
            t_range: Some(t_range.parse::<TRange>()?),
            theta0,
            tolerances: tol.into_tolerances(),
            outputs: outputs(None, Some(out_dir), !no_svg),
            ..RunConfig::new(Command::Sweep)
        },
        Cmd::Compare { family, family2, degree, anchor, theta0, out } => RunConfig {
            family: Some(parse_family_arg(&family)?),
            family2: Some(parse_family_arg(&family2)?),
            degree: Some(degree),
            anchor: Some(anchor),
            theta0,
            outputs: outputs(out, None, true),
            ..RunConfig::new(Command::Compare)
        },
        Cmd::Verify { suite, out } => RunConfig { suite: Some(suite), outputs: outputs(out, None, true), ..RunConfig::new(Command::Verify) },
        Cmd::Figure { id, out_dir, no_svg } => RunConfig { figure: Some(id), outputs: outputs(None, Some(out_dir), !no_svg), ..RunConfig::new(Command::Figure) },
        Cmd::Run { config } => {
            let text = std::fs::read_to_string(&config).map_err(|e| CliError::io(&config, e))?;
            RunConfig::from_json(&text)?
        }
    })
}

fn configure_threads() -> Result<(), CliError> {
    if let Ok(value) = std::env::var("POPUC_LAB_THREADS") {
        let n: usize = value.trim().parse().ok().filter(|n| *n > 0).ok_or_else(|| CliError::Config(format!("POPUC_LAB_THREADS must be a positive integer, got '{value}'")))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| CliError::Config(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|_| build(cli.command)).and_then(|cfg| {
        let stdout = std::io::stdout();
        let mut lock = stdout.lock();
        if cli.print_config {
            use std::io::Write;
            let text = cfg.to_canonical_json()?;
            return lock.write_all(text.as_bytes()).map_err(|e| CliError::io(std::path::Path::new("<stdout>"), e));
        }
        run(&cfg.canonical()?, &mut lock)
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
