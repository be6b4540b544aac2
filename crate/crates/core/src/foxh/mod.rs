//! Fox H-functions evaluated as Mellin–Barnes integrals.
//!
//! ```text
//! H^{m,n}_{p,q}(z) = (1/2πi) ∫_{c−i∞}^{c+i∞} Θ(s) z^{−s} ds
//!
//!          ∏_{j≤m} Γ(b_j + B_j s) · ∏_{ℓ≤n} Γ(1 − a_ℓ − A_ℓ s)
//! Θ(s) = ───────────────────────────────────────────────────────
//!        ∏_{j>m} Γ(1 − b_j − B_j s) · ∏_{ℓ>n} Γ(a_ℓ + A_ℓ s)
//! ```
//!
//! The contour is the vertical line `Re s = c` through the middle of the gap
//! between the left poles `−(b_j+k)/B_j` and the right poles
//! `(1−a_ℓ+k)/A_ℓ`. For real parameters `Θ(s̄) = conj Θ(s)`, so only
//! `t = Im s ≥ 0` is integrated and the result is real by construction. The
//! upper limit grows until the exponential envelope of `|Θ|` bounds the
//! remaining tail. No residue series are used.

mod gamma;
mod kernels;

use num_complex::Complex64;

pub use gamma::{gamma_complex, log_gamma_complex};
pub use kernels::{
    falpha, falpha1, falpha1_spec, falpha1_with_tol, falpha_spec, falpha_with_tol,
    DerivativeMethod, DEFAULT_KERNEL_TOL,
};

use crate::{Error, Result};

/// Distance below which a point counts as sitting on a pole.
const POLE_GUARD: f64 = 1e-10;

/// Parameter arrays and orders of `H^{m,n}_{p,q}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FoxHSpec {
    m: usize,
    n: usize,
    upper: Vec<(f64, f64)>,
    lower: Vec<(f64, f64)>,
}

impl FoxHSpec {
    /// `upper` holds the `p` pairs `(a_j, A_j)`, `lower` the `q` pairs
    /// `(b_j, B_j)`.
    pub fn new(m: usize, n: usize, upper: Vec<(f64, f64)>, lower: Vec<(f64, f64)>) -> Result<Self> {
        if m > lower.len() || n > upper.len() {
            return Err(Error::InvalidInput(format!(
                "orders m={m}, n={n} exceed q={}, p={}",
                lower.len(),
                upper.len()
            )));
        }
        for &(a, big_a) in upper.iter().chain(lower.iter()) {
            if !(big_a > 0.0 && big_a.is_finite() && a.is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "parameter pair ({a}, {big_a}) needs a finite value and a positive scale"
                )));
            }
        }
        let spec = FoxHSpec { m, n, upper, lower };
        spec.check_disjoint_poles()?;
        Ok(spec)
    }

    pub fn m(&self) -> usize {
        self.m
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn p(&self) -> usize {
        self.upper.len()
    }
    pub fn q(&self) -> usize {
        self.lower.len()
    }
    pub fn upper(&self) -> &[(f64, f64)] {
        &self.upper
    }
    pub fn lower(&self) -> &[(f64, f64)] {
        &self.lower
    }

    /// Rightmost pole of the left family, `−∞` if there is none.
    pub fn left_pole_sup(&self) -> f64 {
        self.lower[..self.m]
            .iter()
            .map(|&(b, bb)| -b / bb)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Leftmost pole of the right family, `+∞` if there is none.
    pub fn right_pole_inf(&self) -> f64 {
        self.upper[..self.n]
            .iter()
            .map(|&(a, aa)| (1.0 - a) / aa)
            .fold(f64::INFINITY, f64::min)
    }

    /// Exponential decay rate `κ` of `|Θ(c + it)| ~ |t|^ρ e^{−κ|t|}`.
    pub fn decay_rate(&self) -> f64 {
        let num: f64 = self.lower[..self.m].iter().map(|x| x.1).sum::<f64>()
            + self.upper[..self.n].iter().map(|x| x.1).sum::<f64>();
        let den: f64 = self.lower[self.m..].iter().map(|x| x.1).sum::<f64>()
            + self.upper[self.n..].iter().map(|x| x.1).sum::<f64>();
        0.5 * std::f64::consts::PI * (num - den)
    }

    /// Midpoint of the gap between the two pole families.
    pub fn default_abscissa(&self) -> Result<f64> {
        let lo = self.left_pole_sup();
        let hi = self.right_pole_inf();
        if !(lo < hi) {
            return Err(Error::Contour(format!(
                "left poles reach {lo} and right poles start at {hi}: no vertical line separates them"
            )));
        }
        Ok(match (lo.is_finite(), hi.is_finite()) {
            (true, true) => 0.5 * (lo + hi),
            (true, false) => lo + 1.0,
            (false, true) => hi - 1.0,
            (false, false) => 0.0,
        })
    }

    fn check_disjoint_poles(&self) -> Result<()> {
        let lo = self.left_pole_sup();
        let hi = self.right_pole_inf();
        if lo < hi {
            return Ok(());
        }
        // Only poles inside [hi, lo] can collide.
        let mut left = Vec::new();
        for &(b, bb) in &self.lower[..self.m] {
            let mut k = 0.0;
            loop {
                let s = -(b + k) / bb;
                if s < hi - 1e-12 || k > 1e5 {
                    break;
                }
                left.push(s);
                k += 1.0;
            }
        }
        for &(a, aa) in &self.upper[..self.n] {
            let mut k = 0.0;
            loop {
                let s = (1.0 - a + k) / aa;
                if s > lo + 1e-12 || k > 1e5 {
                    break;
                }
                if left.iter().any(|&l| (l - s).abs() <= 1e-12 * (1.0 + s.abs())) {
                    return Err(Error::InvalidInput(format!(
                        "left and right pole families share the pole s = {s}"
                    )));
                }
                k += 1.0;
            }
        }
        Ok(())
    }
}

/// The Mellin transform `Θ(s)` of a Fox H-function.
#[derive(Debug, Clone, PartialEq)]
pub struct MellinKernel {
    pub spec: FoxHSpec,
}

fn near_pole(arg: Complex64) -> bool {
    arg.re <= POLE_GUARD && (arg.re - arg.re.round()).abs() < POLE_GUARD && arg.im.abs() < POLE_GUARD
}

impl MellinKernel {
    pub fn new(spec: FoxHSpec) -> Self {
        MellinKernel { spec }
    }

    /// `log Θ(s)` modulo `2πi`, or `None` where a denominator gamma has a
    /// pole (`Θ(s) = 0`).
    pub fn ln_theta(&self, s: Complex64) -> Result<Option<Complex64>> {
        let spec = &self.spec;
        let mut acc = Complex64::new(0.0, 0.0);
        let numerator = spec.lower[..spec.m]
            .iter()
            .map(|&(b, bb)| b + bb * s)
            .chain(spec.upper[..spec.n].iter().map(|&(a, aa)| 1.0 - a - aa * s));
        for arg in numerator {
            if near_pole(arg) {
                return Err(Error::Pole(format!("Θ has a pole at s = {s}")));
            }
            acc += gamma::ln_gamma_unwrapped(arg)?;
        }
        let denominator = spec.lower[spec.m..]
            .iter()
            .map(|&(b, bb)| 1.0 - b - bb * s)
            .chain(spec.upper[spec.n..].iter().map(|&(a, aa)| a + aa * s));
        for arg in denominator {
            match gamma::ln_gamma_unwrapped(arg) {
                Ok(v) => acc -= v,
                Err(Error::Pole(_)) => return Ok(None),
                Err(e) => return Err(e),
            }
        }
        Ok(Some(acc))
    }

    pub fn theta(&self, s: Complex64) -> Result<Complex64> {
        Ok(self.ln_theta(s)?.map_or(Complex64::new(0.0, 0.0), |v| v.exp()))
    }
}

/// `Θ(s)` for the kernel; errors with [`Error::Pole`] within `1e-10` of a
/// pole of a numerator gamma.
pub fn theta(kernel: &MellinKernel, s: Complex64) -> Result<Complex64> {
    kernel.theta(s)
}

/// Outcome of a contour evaluation together with its diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FoxHEvaluation {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub abscissa: f64,
    /// Upper limit of the `Im s` integration.
    pub truncation: f64,
    pub evaluations: usize,
    /// `|Θ(c − i) − conj Θ(c + i)|`, zero for real parameters.
    pub imag_residue: f64,
}

/// `H^{m,n}_{p,q}(z)` for `z > 0`, on the midpoint contour.
pub fn evaluate_foxh(spec: &FoxHSpec, z: f64, tol: f64) -> Result<f64> {
    Ok(evaluate_foxh_detailed(spec, z, tol, None)?.value)
}

/// Contour evaluation with an optional explicit abscissa `Re s = c`.
///
/// `tol` is measured against the size of the integrand at `t = 0`, i.e.
/// against `|Θ(c)| z^{−c}`; the answer itself can be much smaller when the
/// oscillating integrand cancels.
pub fn evaluate_foxh_detailed(
    spec: &FoxHSpec,
    z: f64,
    tol: f64,
    abscissa: Option<f64>,
) -> Result<FoxHEvaluation> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::InvalidInput(format!("Fox H argument must be positive, got {z}")));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
    }
    let lo = spec.left_pole_sup();
    let hi = spec.right_pole_inf();
    let c = match abscissa {
        None => spec.default_abscissa()?,
        Some(c) => {
            if !(c > lo + POLE_GUARD && c < hi - POLE_GUARD) {
                return Err(Error::Contour(format!(
                    "abscissa {c} does not separate the pole families (gap is ({lo}, {hi}))"
                )));
            }
            c
        }
    };
    let kappa = spec.decay_rate();
    if !(kappa > 0.0) {
        return Err(Error::Contour(format!(
            "Θ does not decay along vertical lines (rate {kappa}); unsupported parameter set"
        )));
    }

    let kernel = MellinKernel::new(spec.clone());
    let ln_z = z.ln();
    let integrand = |t: f64| -> f64 {
        let s = Complex64::new(c, t);
        match kernel.ln_theta(s) {
            Ok(Some(l)) => (l - s * ln_z).exp().re,
            Ok(None) => 0.0,
            Err(_) => f64::NAN,
        }
    };
    let envelope = |t: f64| -> Result<f64> {
        let s = Complex64::new(c, t);
        Ok(kernel.ln_theta(s)?.map_or(0.0, |l| (l.re - c * ln_z).exp()))
    };

    let scale = envelope(0.0)?.max(f64::MIN_POSITIVE);
    let abs_tol = tol * scale.max(1.0);

    let imag_residue = {
        let up = kernel.theta(Complex64::new(c, 1.0))?;
        let down = kernel.theta(Complex64::new(c, -1.0))?;
        (down - up.conj()).norm()
    };

    const CHUNK: f64 = 1.0;
    const MAX_T: f64 = 400.0;
    let mut total = 0.0;
    let mut error = 0.0;
    let mut evaluations = 0;
    let mut t = 0.0;
    loop {
        let r = crate::quadrature::integrate_interval(&integrand, t, t + CHUNK, 0.05 * abs_tol)
            .map_err(|e| Error::NonConvergence(format!("contour segment [{t}, {}]: {e}", t + CHUNK)))?;
        total += r.value;
        error += r.abs_error_estimate;
        evaluations += r.evaluations;
        t += CHUNK;
        let tail = envelope(t)? / kappa;
        if tail < 0.05 * abs_tol && t >= 2.0 {
            error += tail;
            break;
        }
        if t >= MAX_T {
            return Err(Error::NonConvergence(format!(
                "contour tail still {tail:.3e} at Im s = {t}"
            )));
        }
    }
    let value = total / std::f64::consts::PI;
    let abs_error_estimate = error / std::f64::consts::PI;
    if abs_error_estimate > tol * scale.max(1.0) {
        return Err(Error::NonConvergence(format!(
            "contour error estimate {abs_error_estimate:.3e} exceeds tolerance"
        )));
    }
    Ok(FoxHEvaluation {
        value,
        abs_error_estimate,
        abscissa: c,
        truncation: t,
        evaluations,
        imag_residue,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn gamma_spec() -> FoxHSpec {
        FoxHSpec::new(1, 0, vec![], vec![(0.0, 1.0)]).unwrap()
    }

    #[test]
    fn theta_of_plain_gamma() {
        let k = MellinKernel::new(gamma_spec());
        let v = theta(&k, Complex64::new(2.0, 0.0)).unwrap();
        assert!((v - 1.0).norm() < 1e-14);
        let v = theta(&k, Complex64::new(3.5, 0.0)).unwrap();
        assert!((v.re - 3.323_350_970_447_842_6).abs() < 1e-13);
        assert!(v.im.abs() < 1e-14);
    }

    #[test]
    fn theta_pole_is_error() {
        let k = MellinKernel::new(gamma_spec());
        assert!(matches!(k.theta(Complex64::new(-1.0, 0.0)), Err(Error::Pole(_))));
        assert!(matches!(k.theta(Complex64::new(-2.0 + 1e-12, 0.0)), Err(Error::Pole(_))));
    }

    #[test]
    fn theta_zero_at_denominator_pole() {
        // H^{1,0}_{1,1} with Θ(s) = Γ(1+s)/Γ(s) = s.
        let spec = FoxHSpec::new(1, 0, vec![(0.0, 1.0)], vec![(1.0, 1.0)]).unwrap();
        let k = MellinKernel::new(spec);
        assert_eq!(k.theta(Complex64::new(0.0, 0.0)).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn exponential_is_h10_01() {
        // H^{1,0}_{0,1}[z | (0,1)] = e^{-z}
        let spec = gamma_spec();
        for &z in &[0.05, 0.5, 1.0, 3.0, 10.0] {
            let v = evaluate_foxh(&spec, z, 1e-12).unwrap();
            assert!((v - (-z).exp()).abs() < 1e-10, "z={z}: {v}");
        }
    }

    #[test]
    fn spec_validation() {
        assert!(FoxHSpec::new(2, 0, vec![], vec![(0.0, 1.0)]).is_err());
        assert!(FoxHSpec::new(1, 0, vec![], vec![(0.0, 0.0)]).is_err());
        // Left poles −2,−3,…; right poles (1−4+k) = −3,−2,…: shared poles.
        assert!(matches!(
            FoxHSpec::new(1, 1, vec![(4.0, 1.0)], vec![(2.0, 1.0)]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn contour_errors() {
        // Interleaved but disjoint families: no separating line.
        let spec = FoxHSpec::new(1, 1, vec![(4.5, 1.0)], vec![(2.0, 1.0)]).unwrap();
        assert!(matches!(evaluate_foxh(&spec, 1.0, 1e-8), Err(Error::Contour(_))));
        // A valid spec with an abscissa on the wrong side of a pole.
        let f = falpha_spec(2.0).unwrap();
        assert!(matches!(
            evaluate_foxh_detailed(&f, 1.0, 1e-8, Some(-0.75)),
            Err(Error::Contour(_))
        ));
        assert!(matches!(
            evaluate_foxh_detailed(&f, 1.0, 1e-8, Some(0.0)),
            Err(Error::Contour(_))
        ));
    }

    #[test]
    fn falpha_kernel_decays_along_contour() {
        for &alpha in &[1.5, 2.0, 4.0, 5.5] {
            let spec = falpha_spec(alpha).unwrap();
            assert!((spec.decay_rate() - PI).abs() < 1e-12);
            let k = MellinKernel::new(spec.clone());
            let c = spec.default_abscissa().unwrap();
            assert!((c + 0.5 / alpha).abs() < 1e-15);
            let a = k.theta(Complex64::new(c, 10.0)).unwrap().norm();
            let b = k.theta(Complex64::new(c, 20.0)).unwrap().norm();
            assert!(a.is_finite() && b.is_finite() && b < a);
            // log-ratio over Δt = 10 is κΔt up to the power-law factor.
            let rate = (a / b).ln() / 10.0;
            assert!((rate - PI).abs() < 0.2, "alpha={alpha}: rate {rate}");
        }
    }

    #[test]
    fn detailed_diagnostics() {
        let spec = falpha_spec(2.5).unwrap();
        let r = evaluate_foxh_detailed(&spec, 0.7, 1e-12, None).unwrap();
        assert!(r.imag_residue < 1e-14);
        assert!(r.truncation > 2.0 && r.truncation < 40.0);
        assert!(r.evaluations > 0);
        // A different admissible abscissa gives the same value.
        let r2 = evaluate_foxh_detailed(&spec, 0.7, 1e-12, Some(-0.1)).unwrap();
        assert!((r.value - r2.value).abs() < 1e-11);
    }
}
