//! Real-space eigenfunctions
//! `ψ(x) = Σ_h K̂_h (1/2π) ∫ p^h e^{ipx}/(|p|^α + |Ê|) dp`.
//!
//! The `h = 0` and `h = 1` terms are `F_α(x)` and `−i F_α¹(x)`; higher
//! moments go through the oscillatory moment integrator directly.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::closed_integrals::j_moment;
use crate::foxh::{
    evaluate_foxh, falpha1_spec, falpha1_with_tol, falpha_spec, falpha_with_tol, DerivativeMethod,
    DEFAULT_KERNEL_TOL,
};
use crate::quadrature::{integrate_fourier_moment_with, Parity, QuadOptions};
use crate::spectrum::{closed_n0, closed_n1, coupling_matrix, EigenSolution, SpectralProblem};
use crate::{Error, Method, Result};

/// Largest `|Im ψ|` tolerated before the imaginary part is dropped.
pub const IMAG_RESIDUE_TOL: f64 = 1e-9;

/// Below this `|x|` the Fox H prefactors are avoided.
const SMALL_X: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridMeta {
    pub alpha: f64,
    pub n: u32,
    pub v0: f64,
    pub energy: f64,
    pub method: Method,
}

/// `ψ` sampled on an increasing grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    pub xs: Vec<f64>,
    pub values: Vec<f64>,
    pub meta: GridMeta,
}

impl GridFunction {
    /// Trapezoid rule for `∫ψ² dx` over the grid.
    pub fn trapezoid_norm(&self) -> f64 {
        self.xs
            .windows(2)
            .zip(self.values.windows(2))
            .map(|(x, v)| 0.5 * (x[1] - x[0]) * (v[0] * v[0] + v[1] * v[1]))
            .sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }
}

/// `φ(p) = Σ_h K̂_h p^h/(|p|^α + |Ê|)`.
pub fn phi(sol: &EigenSolution, p: f64) -> Complex64 {
    sol.phi(p)
}

/// `∫_ℝ |φ(p)|² dp` by quadrature; `2π` for a normalized solution.
pub fn phi_norm_quadrature(sol: &EigenSolution) -> Result<f64> {
    let alpha = sol.problem.alpha();
    let n = sol.problem.n() as f64;
    let opts = QuadOptions::with_scale(sol.energy_abs().powf(1.0 / alpha));
    let f = |p: f64| sol.phi(p).norm_sqr() + sol.phi(-p).norm_sqr();
    let r = crate::quadrature::integrate_halfline_with(f, 2.0 * (alpha - n), 1e-12, &opts)?;
    Ok(r.value)
}

/// `∫_ℝ p^h e^{ipx}/(|p|^α + |E|) dp` as a complex number.
fn fourier_moment(alpha: f64, energy_abs: f64, h: u32, x: f64, method: Method) -> Result<Complex64> {
    let small = x.abs() < SMALL_X;
    match h {
        0 => {
            let m = if small { Method::Quadrature } else { method };
            Ok(Complex64::new(falpha_with_tol(alpha, energy_abs, x, m, DEFAULT_KERNEL_TOL)?, 0.0))
        }
        1 => {
            let m = if small { DerivativeMethod::Quadrature } else { method.into() };
            let d = falpha1_with_tol(alpha, energy_abs, x, m, DEFAULT_KERNEL_TOL)?;
            Ok(Complex64::new(0.0, -d))
        }
        _ => {
            let opts = QuadOptions::with_scale(energy_abs.powf(1.0 / alpha));
            let g = |p: f64| 1.0 / (p.powf(alpha) + energy_abs);
            let r = integrate_fourier_moment_with(g, h, x, alpha, DEFAULT_KERNEL_TOL, &opts)?;
            Ok(match r.parity {
                Parity::Even => Complex64::new(r.result.value, 0.0),
                Parity::Odd => Complex64::new(0.0, r.result.value),
            })
        }
    }
}

/// `ψ(x)` before the imaginary part is dropped.
pub fn psi_complex(sol: &EigenSolution, x: f64, method: Method) -> Result<Complex64> {
    if !x.is_finite() {
        return Err(Error::InvalidInput(format!("x must be finite, got {x}")));
    }
    let alpha = sol.problem.alpha();
    let e = sol.energy_abs();
    let mut acc = Complex64::new(0.0, 0.0);
    for (h, k) in sol.coefficients.iter().enumerate() {
        if k.norm() == 0.0 {
            continue;
        }
        acc += k * fourier_moment(alpha, e, h as u32, x, method)?;
    }
    Ok(acc / (2.0 * PI))
}

/// Real eigenfunction `ψ(x)`.
pub fn psi(sol: &EigenSolution, x: f64, method: Method) -> Result<f64> {
    let z = psi_complex(sol, x, method)?;
    if z.im.abs() >= IMAG_RESIDUE_TOL {
        return Err(Error::Solver(format!("psi({x}) has imaginary part {:e}", z.im)));
    }
    Ok(z.re)
}

/// Closed `n = 0` eigenfunction through the Fox H representation,
/// `√(−V₀α/((α−1)|Ê|)) · H^{2,1}_{2,3}[|Ê||x|^α]/|x|`.
pub fn psi_n0(alpha: f64, v0: f64, x: f64) -> Result<f64> {
    let energy = closed_n0(alpha, v0)?
        .ok_or_else(|| Error::Domain(format!("no n = 0 bound state for v0 = {v0} >= 0")))?;
    let e = -energy;
    let amp = (-v0 * alpha / ((alpha - 1.0) * e)).sqrt();
    if !x.is_finite() {
        return Err(Error::InvalidInput(format!("x must be finite, got {x}")));
    }
    let ax = x.abs();
    if ax < SMALL_X {
        // ψ(0) = K̂₀ J₀/(2π) and amp = K̂₀/|Ê|.
        return Ok(amp * e * j_moment(0, alpha, e)? / (2.0 * PI));
    }
    let h = evaluate_foxh(&falpha_spec(alpha)?, e * ax.powf(alpha), DEFAULT_KERNEL_TOL)?;
    Ok(amp * h / ax)
}

/// Even and odd parts `(c/2π)F_α(x)` and `(c/2πi)a₁₀F_α¹(x)` of the closed
/// `n = 1` eigenfunction.
pub fn psi_n1_parts(alpha: f64, v0: f64, x: f64) -> Result<(f64, f64)> {
    let energy = closed_n1(alpha, v0)?;
    let e = -energy;
    let prob = SpectralProblem::new(alpha, 1, v0)?;
    let a10 = coupling_matrix(&prob, e)?.get(1, 0);
    let m0 = crate::closed_integrals::m_moment(0, alpha, e)?;
    let m2 = crate::closed_integrals::m_moment(2, alpha, e)?;
    let c = (2.0 * PI / (m0 + a10.norm_sqr() * m2)).sqrt();
    if !x.is_finite() {
        return Err(Error::InvalidInput(format!("x must be finite, got {x}")));
    }
    let ax = x.abs();
    let (f0, f1) = if ax < SMALL_X {
        let f0 = falpha_with_tol(alpha, e, x, Method::Quadrature, DEFAULT_KERNEL_TOL)?;
        let f1 = falpha1_with_tol(alpha, e, x, DerivativeMethod::Quadrature, DEFAULT_KERNEL_TOL)?;
        (f0, f1)
    } else {
        let z = e * ax.powf(alpha);
        let f0 = 2.0 * PI / (e * ax) * evaluate_foxh(&falpha_spec(alpha)?, z, DEFAULT_KERNEL_TOL)?;
        let d = 2.0 * PI / (e * ax * ax) * evaluate_foxh(&falpha1_spec(alpha)?, z, DEFAULT_KERNEL_TOL)?;
        (f0, x.signum() * d)
    };
    // a₁₀ is purely imaginary, so a₁₀/i = Im a₁₀.
    Ok((c / (2.0 * PI) * f0, c / (2.0 * PI) * a10.im * f1))
}

/// Closed `n = 1` eigenfunction, real for either sign of `V₀`.
pub fn psi_n1(alpha: f64, v0: f64, x: f64) -> Result<f64> {
    let (even, odd) = psi_n1_parts(alpha, v0, x)?;
    Ok(even + odd)
}

fn meta(sol: &EigenSolution, method: Method) -> GridMeta {
    GridMeta {
        alpha: sol.problem.alpha(),
        n: sol.problem.n(),
        v0: sol.problem.v0(),
        energy: sol.energy,
        method,
    }
}

fn evaluate_on(sol: &EigenSolution, xs: Vec<f64>, method: Method) -> Result<GridFunction> {
    let values = xs
        .par_iter()
        .map(|&x| psi(sol, x, method))
        .collect::<Result<Vec<f64>>>()?;
    Ok(GridFunction {
        xs,
        values,
        meta: meta(sol, method),
    })
}

/// `ψ` on `points` uniformly spaced abscissas in `[x_min, x_max]`.
pub fn sample_grid(
    sol: &EigenSolution,
    x_min: f64,
    x_max: f64,
    points: usize,
    method: Method,
) -> Result<GridFunction> {
    if !(x_min.is_finite() && x_max.is_finite() && x_min < x_max) {
        return Err(Error::InvalidInput(format!(
            "grid needs finite x_min < x_max, got [{x_min}, {x_max}]"
        )));
    }
    if points < 2 {
        return Err(Error::InvalidInput(format!("grid needs at least 2 points, got {points}")));
    }
    let step = (x_max - x_min) / (points - 1) as f64;
    let xs = (0..points)
        .map(|i| if i + 1 == points { x_max } else { x_min + step * i as f64 })
        .collect();
    evaluate_on(sol, xs, method)
}

/// Settings for [`normalization_grid`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveGrid {
    /// Stop growing `L` once `|ψ(±L)|` falls below this fraction of `max|ψ|`.
    pub tail_fraction: f64,
    pub points: usize,
    /// Clustering strength of the `sinh` map toward the origin.
    pub stretch: f64,
}

impl Default for AdaptiveGrid {
    fn default() -> Self {
        Self {
            tail_fraction: 1e-3,
            points: 2001,
            stretch: 8.0,
        }
    }
}

fn sinh_grid(half_width: f64, points: usize, stretch: f64) -> Vec<f64> {
    let denom = stretch.sinh();
    (0..points)
        .map(|i| {
            let t = -1.0 + 2.0 * i as f64 / (points - 1) as f64;
            half_width * (stretch * t).sinh() / denom
        })
        .collect()
}

/// `ψ` on a symmetric grid `[−L, L]`, with `L` grown until the tails are
/// small and points clustered near the origin where `ψ` has a cusp.
pub fn normalization_grid(sol: &EigenSolution, method: Method, opts: &AdaptiveGrid) -> Result<GridFunction> {
    if opts.points < 3 || !(opts.tail_fraction > 0.0) || !(opts.stretch > 0.0) {
        return Err(Error::InvalidInput("invalid adaptive grid settings".into()));
    }
    let length = sol.energy_abs().powf(-1.0 / sol.problem.alpha());
    let mut half = 8.0 * length;
    let probe = evaluate_on(sol, sinh_grid(half, 201, opts.stretch), method)?;
    let peak = probe.max_abs();
    let mut grown = 0;
    loop {
        let edge = psi(sol, half, method)?.abs().max(psi(sol, -half, method)?.abs());
        if edge < opts.tail_fraction * peak {
            break;
        }
        grown += 1;
        if grown > 60 {
            return Err(Error::NonConvergence(format!(
                "psi tail did not fall below {} of its peak by L = {half:e}",
                opts.tail_fraction
            )));
        }
        half *= 1.5;
    }
    evaluate_on(sol, sinh_grid(half, opts.points, opts.stretch), method)
}
