//! The oracle suite behind `fracdelta validate`.
//!
//! Every check compares a closed form against an independent numerical
//! route and reports its worst deviation next to the gate it must stay under.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::time::Instant;

use crate::closed_integrals::{j_closed, j_quadrature, m_closed, m_quadrature, MomentQuery};
use crate::eigenfunction::{normalization_grid, phi_norm_quadrature, sample_grid, AdaptiveGrid};
use crate::foxh::{falpha1_with_tol, falpha_with_tol, DerivativeMethod, DEFAULT_KERNEL_TOL};
use crate::spectrum::{closed_n0, closed_n1, find_eigenvalues, EigenSolution, SearchOptions, SpectralProblem};
use crate::{Method, Result};

pub const N0_ALPHAS: [f64; 3] = [1.5, 2.0, 2.5];
pub const N1_ALPHAS: [f64; 3] = [3.5, 4.0, 5.5];
pub const COUPLINGS: [f64; 3] = [0.5, 1.0, 2.0];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationOptions {
    /// Gates are never tighter than this.
    pub tol: f64,
    /// Relative energy shift applied before the residual check.
    pub perturb_energy: Option<f64>,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            perturb_energy: None,
        }
    }
}

impl ValidationOptions {
    fn gate(&self, nominal: f64) -> f64 {
        nominal.max(self.tol)
    }

    /// Accuracy asked of the moment-integral quadratures. Kernel values
    /// span many decades, so those always use [`DEFAULT_KERNEL_TOL`].
    fn quad_tol(&self) -> f64 {
        (self.tol * 1e-2).clamp(1e-13, 1e-4)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    /// Worst observed deviation, or NaN when the check errored out.
    pub worst: f64,
    pub gate: f64,
    pub detail: String,
    pub seconds: f64,
}

fn rel(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        ((a - b) / b).abs()
    }
}

/// Runs `body`, which returns the worst deviation and a note on where it
/// occurred, and compares it with `gate`.
fn check<F>(name: &'static str, gate: f64, body: F) -> CheckResult
where
    F: FnOnce() -> Result<(f64, String)>,
{
    let start = Instant::now();
    let outcome = body();
    let seconds = start.elapsed().as_secs_f64();
    match outcome {
        Ok((worst, detail)) => CheckResult {
            name,
            passed: worst < gate,
            worst,
            gate,
            detail,
            seconds,
        },
        Err(e) => CheckResult {
            name,
            passed: false,
            worst: f64::NAN,
            gate,
            detail: e.to_string(),
            seconds,
        },
    }
}

struct Worst {
    value: f64,
    at: String,
}

impl Worst {
    fn new() -> Self {
        Self {
            value: 0.0,
            at: String::new(),
        }
    }

    fn update(&mut self, v: f64, at: impl FnOnce() -> String) {
        if v > self.value || v.is_nan() {
            self.value = v;
            self.at = at();
        }
    }

    fn finish(self) -> (f64, String) {
        (self.value, self.at)
    }
}

/// Every solved case of the n = 0 and n = 1 eigenvalue grids.
pub fn solved_cases() -> Result<Vec<EigenSolution>> {
    let mut out = Vec::new();
    for &alpha in &N0_ALPHAS {
        for &v in &COUPLINGS {
            let p = SpectralProblem::new(alpha, 0, -v)?;
            out.extend(find_eigenvalues(&p, &SearchOptions::default())?);
        }
    }
    for &alpha in &N1_ALPHAS {
        for &v in &COUPLINGS {
            for v0 in [v, -v] {
                let p = SpectralProblem::new(alpha, 1, v0)?;
                out.extend(find_eigenvalues(&p, &SearchOptions::default())?);
            }
        }
    }
    Ok(out)
}

fn label(sol: &EigenSolution) -> String {
    format!(
        "alpha={} n={} v0={}",
        sol.problem.alpha(),
        sol.problem.n(),
        sol.problem.v0()
    )
}

fn moment_integrals(opts: &ValidationOptions) -> Result<(f64, String)> {
    let mut worst = Worst::new();
    for m in 0..=2u32 {
        for &alpha in &[1.5, 2.0, 2.5, 3.5, 4.0, 5.5] {
            for &e in &[0.1, 1.0, 10.0] {
                let Ok(q) = MomentQuery::new(m, alpha, e) else { continue };
                let j = rel(j_quadrature(q, opts.quad_tol())?, j_closed(q));
                let mm = rel(m_quadrature(q, opts.quad_tol())?, m_closed(q));
                worst.update(j.max(mm), || format!("m={m} alpha={alpha} |E|={e}"));
            }
        }
    }
    Ok(worst.finish())
}

fn kernel_paths() -> Result<(f64, String)> {
    let tol = DEFAULT_KERNEL_TOL;
    let mut worst = Worst::new();
    for &alpha in &[1.5, 2.0, 2.5, 3.5, 4.0, 5.5] {
        for &e in &[0.1, 1.0, 10.0] {
            for &x in &[0.1, 0.5, 1.0, 2.0, 5.0] {
                let f = falpha_with_tol(alpha, e, x, Method::FoxH, tol)?;
                let q = falpha_with_tol(alpha, e, x, Method::Quadrature, tol)?;
                worst.update(rel(f, q), || format!("F alpha={alpha} |E|={e} x={x}"));
            }
        }
    }
    for &alpha in &[1.5, 2.5, 4.0, 5.5] {
        for &x in &[0.5, 1.0, 2.0] {
            let f = falpha1_with_tol(alpha, 1.0, x, DerivativeMethod::FoxH, tol)?;
            let q = falpha1_with_tol(alpha, 1.0, x, DerivativeMethod::Quadrature, tol)?;
            worst.update(rel(f, q), || format!("F1 alpha={alpha} x={x}"));
        }
    }
    Ok(worst.finish())
}

fn cauchy_kernel() -> Result<(f64, String)> {
    let mut worst = Worst::new();
    for &kappa in &[0.5, 1.0, 2.0] {
        for &x in &[0.0, 0.3, 1.0, 4.0] {
            let exact = PI / kappa * (-kappa * x).exp();
            for method in [Method::FoxH, Method::Quadrature] {
                let v = falpha_with_tol(2.0, kappa * kappa, x, method, DEFAULT_KERNEL_TOL)?;
                worst.update(rel(v, exact), || format!("{method} kappa={kappa} x={x}"));
            }
        }
    }
    Ok(worst.finish())
}

fn roots_n0() -> Result<(f64, String)> {
    let mut worst = Worst::new();
    for &alpha in &N0_ALPHAS {
        for &v in &COUPLINGS {
            let expected = closed_n0(alpha, -v)?.expect("negative coupling binds");
            let roots = find_eigenvalues(&SpectralProblem::new(alpha, 0, -v)?, &SearchOptions::default())?;
            let dev = match roots.as_slice() {
                [one] => rel(one.energy, expected),
                _ => f64::INFINITY,
            };
            worst.update(dev, || format!("alpha={alpha} v0={}: {} roots", -v, roots.len()));
            let repulsive = find_eigenvalues(&SpectralProblem::new(alpha, 0, v)?, &SearchOptions::default())?;
            let extra = if repulsive.is_empty() { 0.0 } else { f64::INFINITY };
            worst.update(extra, || format!("alpha={alpha} v0={v} should have no root"));
        }
    }
    Ok(worst.finish())
}

fn roots_n1() -> Result<(f64, String)> {
    let mut worst = Worst::new();
    for &alpha in &N1_ALPHAS {
        for &v in &COUPLINGS {
            let expected = closed_n1(alpha, v)?;
            let mut energies = Vec::new();
            for v0 in [v, -v] {
                let roots = find_eigenvalues(&SpectralProblem::new(alpha, 1, v0)?, &SearchOptions::default())?;
                let dev = match roots.as_slice() {
                    [one] => {
                        energies.push(one.energy);
                        rel(one.energy, expected)
                    }
                    _ => f64::INFINITY,
                };
                worst.update(dev, || format!("alpha={alpha} v0={v0}: {} roots", roots.len()));
            }
            if energies.len() == 2 && energies[0] != energies[1] {
                worst.update(f64::INFINITY, || format!("alpha={alpha} |v0|={v}: sign asymmetry"));
            }
        }
    }
    Ok(worst.finish())
}

fn classical_chain() -> Result<(f64, String)> {
    let mut worst = Worst::new();
    for &v0 in &[-0.5, -1.0, -2.0] {
        let sol = find_eigenvalues(&SpectralProblem::new(2.0, 0, v0)?, &SearchOptions::default())?;
        let Some(sol) = sol.first() else {
            worst.update(f64::INFINITY, || format!("v0={v0}: no root"));
            continue;
        };
        let kappa = -v0 / 2.0;
        let grid = sample_grid(sol, -10.0, 10.0, 2001, Method::Quadrature)?;
        for (x, psi) in grid.xs.iter().zip(&grid.values) {
            let exact = kappa.sqrt() * (-kappa * x.abs()).exp();
            worst.update((psi - exact).abs(), || format!("v0={v0} x={x}"));
        }
    }
    Ok(worst.finish())
}

fn residuals(cases: &[EigenSolution], opts: &ValidationOptions) -> Result<(f64, String)> {
    let mut worst = Worst::new();
    for sol in cases {
        let r = match opts.perturb_energy {
            Some(d) => sol.with_energy(sol.energy * (1.0 + d))?.residual_norm,
            None => sol.residual_norm,
        };
        worst.update(r, || label(sol));
    }
    Ok(worst.finish())
}

fn phi_norms(cases: &[EigenSolution]) -> Result<(f64, String)> {
    let mut worst = Worst::new();
    for sol in cases {
        let dev = rel(phi_norm_quadrature(sol)?, 2.0 * PI);
        worst.update(dev, || label(sol));
    }
    Ok(worst.finish())
}

fn psi_norms(cases: &[EigenSolution]) -> Result<(f64, String)> {
    let mut worst = Worst::new();
    for sol in cases {
        let grid = normalization_grid(sol, Method::Quadrature, &AdaptiveGrid::default())?;
        worst.update((grid.trapezoid_norm() - 1.0).abs(), || label(sol));
    }
    Ok(worst.finish())
}

/// Runs every check; a failure inside one check does not stop the others.
pub fn run(opts: &ValidationOptions) -> Vec<CheckResult> {
    let mut out = vec![
        check("moment integrals: closed vs quadrature", opts.gate(1e-8), || moment_integrals(opts)),
        check("F_alpha, F_alpha^1: Fox H vs quadrature", opts.gate(1e-6), kernel_paths),
        check("F_2 vs (pi/kappa) exp(-kappa|x|)", opts.gate(1e-8), cauchy_kernel),
        check("n=0 roots vs closed form", opts.gate(1e-10), roots_n0),
        check("n=1 roots vs closed form", opts.gate(1e-10), roots_n1),
        check("alpha=2 chain vs sqrt(k) exp(-k|x|)", opts.gate(1e-6), classical_chain),
    ];
    match solved_cases() {
        Ok(cases) => {
            out.push(check("momentum-space residual", opts.gate(1e-6), || residuals(&cases, opts)));
            out.push(check("int |phi|^2 dp = 2 pi", opts.gate(1e-6), || phi_norms(&cases)));
            out.push(check("trapezoid int psi^2 dx = 1", opts.gate(1e-4), || psi_norms(&cases)));
        }
        Err(e) => out.push(CheckResult {
            name: "solve eigenvalue grid",
            passed: false,
            worst: f64::NAN,
            gate: 0.0,
            detail: e.to_string(),
            seconds: 0.0,
        }),
    }
    out
}

/// Fixed-width pass/fail table.
pub fn render_table(results: &[CheckResult]) -> String {
    let width = results.iter().map(|r| r.name.len()).max().unwrap_or(5).max(5);
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<width$}  {:<6}  {:>10}  {:>10}  {:>7}  worst at",
        "check", "status", "worst", "gate", "time/s"
    );
    for r in results {
        let status = if r.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(
            s,
            "{:<width$}  {:<6}  {:>10.3e}  {:>10.3e}  {:>7.2}  {}",
            r.name, status, r.worst, r.gate, r.seconds, r.detail
        );
    }
    s
}
