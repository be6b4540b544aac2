//! The `fracdelta` command-line front end.
//!
//! Output is CSV: `#`-prefixed metadata lines, one column-name row, then data
//! with 17 significant digits. Exit codes: `0` success, `1` failure, `2` when
//! the spectrum is empty (a valid outcome).

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::eigenfunction::sample_grid;
use crate::spectrum::{find_eigenvalues, EigenSolution, SearchOptions, SpectralProblem};
use crate::validation::{self, ValidationOptions};
use crate::{Error, Method, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_EMPTY: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "fracdelta", version, about = "Bound states of (-Δ)^{α/2} + V₀ δ⁽ⁿ⁾ in one dimension")]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Debug, Subcommand)]
enum CliCommand {
    /// Negative eigenvalues with their normalized coefficients.
    Solve(SolveArgs),
    /// ψ(x) of the deepest bound state on a uniform grid.
    Eigenfunction(EigenfunctionArgs),
    /// Ê as a function of α.
    SweepAlpha(SweepArgs),
    /// Run the oracle suite and print a pass/fail table.
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
struct Common {
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Residual gate for emitted solutions.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct SolveArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long, default_value_t = 0)]
    n: u32,
    #[arg(long)]
    v0: f64,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct EigenfunctionArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long, default_value_t = 0)]
    n: u32,
    #[arg(long)]
    v0: f64,
    #[arg(long, default_value_t = -10.0)]
    xmin: f64,
    #[arg(long, default_value_t = 10.0)]
    xmax: f64,
    #[arg(long, default_value_t = 2001)]
    points: usize,
    #[arg(long, default_value = "quadrature")]
    method: Method,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct SweepArgs {
    #[arg(long, default_value_t = 0)]
    n: u32,
    #[arg(long)]
    v0: f64,
    #[arg(long)]
    alpha_min: f64,
    #[arg(long)]
    alpha_max: f64,
    #[arg(long)]
    steps: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct ValidateArgs {
    #[command(flatten)]
    common: Common,
    /// Shift every solved energy by this relative amount before the residual
    /// check.
    #[arg(long, hide = true)]
    perturb_energy: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Solve,
    Eigenfunction,
    SweepAlpha,
    Validate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub steps: usize,
}

/// A validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub alpha: f64,
    pub n: u32,
    pub v0: f64,
    pub grid: GridSpec,
    pub sweep: SweepSpec,
    pub out: Option<PathBuf>,
    pub tol: f64,
    pub method: Method,
    pub perturb_energy: Option<f64>,
}

impl RunConfig {
    fn base(command: CommandKind, common: Common) -> Self {
        Self {
            command,
            alpha: f64::NAN,
            n: 0,
            v0: f64::NAN,
            grid: GridSpec {
                x_min: -10.0,
                x_max: 10.0,
                points: 2001,
            },
            sweep: SweepSpec {
                alpha_min: f64::NAN,
                alpha_max: f64::NAN,
                steps: 0,
            },
            out: common.out,
            tol: common.tol,
            method: Method::Quadrature,
            perturb_energy: None,
        }
    }

    fn from_cli(cli: Cli) -> Result<Self> {
        let cfg = match cli.command {
            CliCommand::Solve(a) => Self {
                alpha: a.alpha,
                n: a.n,
                v0: a.v0,
                ..Self::base(CommandKind::Solve, a.common)
            },
            CliCommand::Eigenfunction(a) => Self {
                alpha: a.alpha,
                n: a.n,
                v0: a.v0,
                grid: GridSpec {
                    x_min: a.xmin,
                    x_max: a.xmax,
                    points: a.points,
                },
                method: a.method,
                ..Self::base(CommandKind::Eigenfunction, a.common)
            },
            CliCommand::SweepAlpha(a) => Self {
                n: a.n,
                v0: a.v0,
                sweep: SweepSpec {
                    alpha_min: a.alpha_min,
                    alpha_max: a.alpha_max,
                    steps: a.steps,
                },
                ..Self::base(CommandKind::SweepAlpha, a.common)
            },
            CliCommand::Validate(a) => Self {
                perturb_energy: a.perturb_energy,
                ..Self::base(CommandKind::Validate, a.common)
            },
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        let invalid = |m: String| Err(Error::InvalidInput(m));
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return invalid(format!("--tol must be positive, got {}", self.tol));
        }
        let min_alpha = 2.0 * self.n as f64 + 1.0;
        match self.command {
            CommandKind::Solve | CommandKind::Eigenfunction => {
                if !(self.alpha > min_alpha) {
                    return invalid(format!(
                        "--alpha must exceed 2n+1 = {min_alpha} for --n {}, got {}",
                        self.n, self.alpha
                    ));
                }
                if self.v0 == 0.0 || !self.v0.is_finite() {
                    return invalid(format!("--v0 must be finite and nonzero, got {}", self.v0));
                }
            }
            CommandKind::SweepAlpha => {
                let s = self.sweep;
                if !(s.alpha_min > min_alpha) {
                    return invalid(format!(
                        "--alpha-min must exceed 2n+1 = {min_alpha} for --n {}, got {}",
                        self.n, s.alpha_min
                    ));
                }
                if !(s.alpha_max > s.alpha_min && s.alpha_max.is_finite()) {
                    return invalid(format!(
                        "--alpha-max must be finite and exceed --alpha-min, got {}",
                        s.alpha_max
                    ));
                }
                if s.steps < 2 {
                    return invalid(format!("--steps must be at least 2, got {}", s.steps));
                }
                if self.v0 == 0.0 || !self.v0.is_finite() {
                    return invalid(format!("--v0 must be finite and nonzero, got {}", self.v0));
                }
            }
            CommandKind::Validate => {}
        }
        if self.command == CommandKind::Eigenfunction {
            let g = self.grid;
            if !(g.x_min < g.x_max && g.x_min.is_finite() && g.x_max.is_finite()) {
                return invalid(format!("need --xmin < --xmax, got [{}, {}]", g.x_min, g.x_max));
            }
            if g.points < 2 {
                return invalid(format!("--points must be at least 2, got {}", g.points));
            }
        }
        Ok(())
    }

    fn problem(&self) -> Result<SpectralProblem> {
        SpectralProblem::new(self.alpha, self.n, self.v0)
    }
}

fn num(v: f64) -> String {
    // `-0.0 + 0.0` is `+0.0`, so signed zeros print the same.
    format!("{:.16e}", v + 0.0)
}

fn open_output(cfg: &RunConfig) -> io::Result<Box<dyn Write>> {
    Ok(match &cfg.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn fail(context: &str, e: impl std::fmt::Display) -> i32 {
    eprintln!("fracdelta: {context}: {e}");
    EXIT_FAILURE
}

/// Rejects solutions whose residual is not below the configured gate.
fn checked(cfg: &RunConfig, sols: Vec<EigenSolution>) -> Result<Vec<EigenSolution>> {
    for s in &sols {
        if !(s.residual_norm < cfg.tol) {
            return Err(Error::Solver(format!(
                "residual {:e} at E = {:e} is not below --tol {:e}",
                s.residual_norm, s.energy, cfg.tol
            )));
        }
    }
    Ok(sols)
}

fn write_solve(cfg: &RunConfig, sols: &[EigenSolution], w: &mut dyn Write) -> io::Result<()> {
    writeln!(w, "# fracdelta solve")?;
    writeln!(w, "# alpha = {}", num(cfg.alpha))?;
    writeln!(w, "# n = {}", cfg.n)?;
    writeln!(w, "# v0 = {}", num(cfg.v0))?;
    let mut header = String::from("E_hat,residual");
    for h in 0..=cfg.n {
        header.push_str(&format!(",K_{h}_re,K_{h}_im"));
    }
    writeln!(w, "{header}")?;
    for s in sols {
        let mut row = format!("{},{}", num(s.energy), num(s.residual_norm));
        for k in &s.coefficients {
            row.push_str(&format!(",{},{}", num(k.re), num(k.im)));
        }
        writeln!(w, "{row}")?;
    }
    w.flush()
}

pub fn cmd_solve(cfg: &RunConfig) -> i32 {
    let sols = match cfg
        .problem()
        .and_then(|p| find_eigenvalues(&p, &SearchOptions::default()))
        .and_then(|s| checked(cfg, s))
    {
        Ok(s) => s,
        Err(e) => return fail("solve", e),
    };
    let written = open_output(cfg).and_then(|mut w| write_solve(cfg, &sols, &mut w));
    if let Err(e) = written {
        return fail("writing output", e);
    }
    if sols.is_empty() {
        eprintln!(
            "fracdelta: no bound state for alpha={} n={} v0={}",
            cfg.alpha, cfg.n, cfg.v0
        );
        return EXIT_EMPTY;
    }
    for s in sols.iter().filter(|s| s.degenerate) {
        eprintln!("fracdelta: root at E = {:e} merged from nearby brackets (suspected degenerate)", s.energy);
    }
    EXIT_OK
}

pub fn cmd_sweep_alpha(cfg: &RunConfig) -> i32 {
    let s = cfg.sweep;
    let mut rows = Vec::with_capacity(s.steps);
    for i in 0..s.steps {
        let alpha = if i + 1 == s.steps {
            s.alpha_max
        } else {
            s.alpha_min + (s.alpha_max - s.alpha_min) * i as f64 / (s.steps - 1) as f64
        };
        let sols = SpectralProblem::new(alpha, cfg.n, cfg.v0)
            .and_then(|p| find_eigenvalues(&p, &SearchOptions::default()))
            .and_then(|s| checked(cfg, s));
        match sols {
            Ok(v) if v.is_empty() => eprintln!("fracdelta: alpha={alpha}: no bound state, row omitted"),
            Ok(v) => rows.extend(v.into_iter().map(|sol| (alpha, sol.energy))),
            Err(e) => return fail(&format!("sweep at alpha={alpha}"), e),
        }
    }
    let written = open_output(cfg).and_then(|mut w| {
        writeln!(w, "# fracdelta sweep-alpha")?;
        writeln!(w, "# n = {}", cfg.n)?;
        writeln!(w, "# v0 = {}", num(cfg.v0))?;
        writeln!(w, "alpha,E_hat")?;
        for (a, e) in &rows {
            writeln!(w, "{},{}", num(*a), num(*e))?;
        }
        w.flush()
    });
    match written {
        Ok(()) => EXIT_OK,
        Err(e) => fail("writing output", e),
    }
}

pub fn cmd_eigenfunction(cfg: &RunConfig) -> i32 {
    let sols = match cfg
        .problem()
        .and_then(|p| find_eigenvalues(&p, &SearchOptions::default()))
        .and_then(|s| checked(cfg, s))
    {
        Ok(s) => s,
        Err(e) => return fail("solve", e),
    };
    // Roots come in increasing |E|; the deepest is the ground state.
    let Some(sol) = sols.last() else {
        eprintln!(
            "fracdelta: no bound state for alpha={} n={} v0={}",
            cfg.alpha, cfg.n, cfg.v0
        );
        return EXIT_EMPTY;
    };
    let g = cfg.grid;
    let grid = match sample_grid(sol, g.x_min, g.x_max, g.points, cfg.method) {
        Ok(grid) => grid,
        Err(e) => return fail("eigenfunction", e),
    };
    let written = open_output(cfg).and_then(|mut w| {
        writeln!(w, "# fracdelta eigenfunction")?;
        writeln!(w, "# alpha = {}", num(grid.meta.alpha))?;
        writeln!(w, "# n = {}", grid.meta.n)?;
        writeln!(w, "# v0 = {}", num(grid.meta.v0))?;
        writeln!(w, "# E_hat = {}", num(grid.meta.energy))?;
        writeln!(w, "# method = {}", grid.meta.method)?;
        writeln!(w, "x,psi")?;
        for (x, v) in grid.xs.iter().zip(&grid.values) {
            writeln!(w, "{},{}", num(*x), num(*v))?;
        }
        w.flush()
    });
    match written {
        Ok(()) => EXIT_OK,
        Err(e) => fail("writing output", e),
    }
}

pub fn cmd_validate(cfg: &RunConfig) -> i32 {
    let opts = ValidationOptions {
        tol: cfg.tol,
        perturb_energy: cfg.perturb_energy,
    };
    let results = validation::run(&opts);
    let table = validation::render_table(&results);
    let written = open_output(cfg).and_then(|mut w| {
        w.write_all(table.as_bytes())?;
        w.flush()
    });
    if let Err(e) = written {
        return fail("writing output", e);
    }
    let failed: Vec<_> = results.iter().filter(|r| !r.passed).collect();
    if failed.is_empty() {
        EXIT_OK
    } else {
        for r in failed {
            eprintln!("fracdelta: check failed: {} ({})", r.name, r.detail);
        }
        EXIT_FAILURE
    }
}

pub fn dispatch(cfg: &RunConfig) -> i32 {
    match cfg.command {
        CommandKind::Solve => cmd_solve(cfg),
        CommandKind::Eigenfunction => cmd_eigenfunction(cfg),
        CommandKind::SweepAlpha => cmd_sweep_alpha(cfg),
        CommandKind::Validate => cmd_validate(cfg),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_FAILURE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match RunConfig::from_cli(cli) {
        Ok(cfg) => dispatch(&cfg),
        Err(e) => fail("invalid arguments", e),
    }
}
