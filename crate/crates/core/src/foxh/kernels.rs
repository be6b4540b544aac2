//! The real-space kernel `F_α(x) = ∫_ℝ e^{ipx}/(|p|^α + |E|) dp` and its
//! odd-extended derivative `F_α¹`.
//!
//! As Fox H-functions:
//!
//! ```text
//! F_α(x)  = 2π/(|E||x|) · H^{2,1}_{2,3}[|E||x|^α | (1,1),(1,α/2) ; (1,α),(1,1),(1,α/2)]
//! F_α¹(x) = 2π/(|E|x²)  · H^{2,2}_{3,4}[|E||x|^α | (1,α),(1,1),(1,α/2) ; (1,α),(1,1),(1,α/2),(2,α)]
//! ```
//!
//! for `x > 0`, the second following from the first by the derivative rule
//! `d/dx{x^σ H[z x^h]} = x^{σ−1} H^{m,n+1}_{p+1,q+1}[z x^h | (−σ,h),… ; …,(1−σ,h)]`
//! with `σ = −1`, `h = α`.

use crate::closed_integrals::j_moment;
use crate::quadrature::{integrate_fourier_cos_with, integrate_fourier_sin_with, QuadOptions};
use crate::{Error, Method, Result};

use super::{evaluate_foxh, FoxHSpec};

/// Default accuracy target for kernel evaluations.
pub const DEFAULT_KERNEL_TOL: f64 = 1e-12;

/// Below this `|x|` the Fox H prefactors `1/|x|`, `1/x²` are not used.
const FOXH_MIN_X: f64 = 1e-8;

/// Evaluation route for `F_α¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DerivativeMethod {
    FoxH,
    #[default]
    Quadrature,
    FiniteDifference,
}

impl From<Method> for DerivativeMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::FoxH => DerivativeMethod::FoxH,
            Method::Quadrature => DerivativeMethod::Quadrature,
        }
    }
}

pub fn falpha_spec(alpha: f64) -> Result<FoxHSpec> {
    FoxHSpec::new(
        2,
        1,
        vec![(1.0, 1.0), (1.0, alpha / 2.0)],
        vec![(1.0, alpha), (1.0, 1.0), (1.0, alpha / 2.0)],
    )
}

pub fn falpha1_spec(alpha: f64) -> Result<FoxHSpec> {
    FoxHSpec::new(
        2,
        2,
        vec![(1.0, alpha), (1.0, 1.0), (1.0, alpha / 2.0)],
        vec![(1.0, alpha), (1.0, 1.0), (1.0, alpha / 2.0), (2.0, alpha)],
    )
}

fn check_args(alpha: f64, energy_abs: f64, x: f64) -> Result<()> {
    if !(alpha > 1.0 && alpha.is_finite()) {
        return Err(Error::Domain(format!("F_alpha needs alpha > 1, got {alpha}")));
    }
    if !(energy_abs > 0.0 && energy_abs.is_finite()) {
        return Err(Error::Domain(format!("|E| must be positive, got {energy_abs}")));
    }
    if !x.is_finite() {
        return Err(Error::InvalidInput(format!("x must be finite, got {x}")));
    }
    Ok(())
}

/// `F_α(x)` for `α > 1`; even in `x`, equal to `J_{0,α}(E)` at the origin.
pub fn falpha(alpha: f64, energy_abs: f64, x: f64, method: Method) -> Result<f64> {
    falpha_with_tol(alpha, energy_abs, x, method, DEFAULT_KERNEL_TOL)
}

pub fn falpha_with_tol(alpha: f64, energy_abs: f64, x: f64, method: Method, tol: f64) -> Result<f64> {
    check_args(alpha, energy_abs, x)?;
    let ax = x.abs();
    if ax < crate::quadrature::ZERO_FREQUENCY {
        return j_moment(0, alpha, energy_abs);
    }
    match method {
        Method::FoxH if ax >= FOXH_MIN_X => {
            let spec = falpha_spec(alpha)?;
            let z = energy_abs * ax.powf(alpha);
            let h = evaluate_foxh(&spec, z, tol)?;
            Ok(2.0 * std::f64::consts::PI / (energy_abs * ax) * h)
        }
        _ => {
            let opts = QuadOptions::with_scale(energy_abs.powf(1.0 / alpha));
            let g = |p: f64| 1.0 / (p.powf(alpha) + energy_abs);
            Ok(integrate_fourier_cos_with(g, ax, alpha, tol, &opts)?.value)
        }
    }
}

/// `F_α¹(x) = sign(x)·F_α'(|x|)`, odd in `x`.
pub fn falpha1(alpha: f64, energy_abs: f64, x: f64, method: DerivativeMethod) -> Result<f64> {
    falpha1_with_tol(alpha, energy_abs, x, method, DEFAULT_KERNEL_TOL)
}

pub fn falpha1_with_tol(
    alpha: f64,
    energy_abs: f64,
    x: f64,
    method: DerivativeMethod,
    tol: f64,
) -> Result<f64> {
    check_args(alpha, energy_abs, x)?;
    if x == 0.0 && method != DerivativeMethod::Quadrature {
        return Err(Error::Domain(
            "F_alpha^1 at x = 0 is only available from the quadrature path".into(),
        ));
    }
    let ax = x.abs();
    let sign = if x < 0.0 { -1.0 } else { 1.0 };
    match method {
        DerivativeMethod::FoxH if ax >= FOXH_MIN_X => {
            let spec = falpha1_spec(alpha)?;
            let z = energy_abs * ax.powf(alpha);
            let h = evaluate_foxh(&spec, z, tol)?;
            Ok(sign * 2.0 * std::f64::consts::PI / (energy_abs * ax * ax) * h)
        }
        DerivativeMethod::FiniteDifference => {
            // Richardson-extrapolated central difference of F_α.
            let h = (0.02 * ax).min(0.05);
            let f = |y: f64| falpha_with_tol(alpha, energy_abs, y, Method::Quadrature, tol);
            let d1 = (f(ax + h)? - f(ax - h)?) / (2.0 * h);
            let d2 = (f(ax + 0.5 * h)? - f(ax - 0.5 * h)?) / h;
            Ok(sign * (4.0 * d2 - d1) / 3.0)
        }
        _ => {
            let opts = QuadOptions::with_scale(energy_abs.powf(1.0 / alpha));
            let amp = |p: f64| p / (p.powf(alpha) + energy_abs);
            // dF/dx = −2∫ p sin(px)/(p^α+|E|) dp; the sine integral is odd in x.
            Ok(-integrate_fourier_sin_with(amp, x, alpha - 1.0, tol, &opts)?.value)
        }
    }
}
