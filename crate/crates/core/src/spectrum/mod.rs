//! Coupling matrix, determinant condition and bound-state solver.
//!
//! With the ansatz `φ(p) = Σ_h K_h p^h/(|p|^α − E)` the momentum-space
//! eigenvalue equation closes on the coefficients,
//! `K_h = Σ_k a_{h,k}(E) K_k`, where
//!
//! ```text
//! a_{h,k}(E) = −iⁿ (−1)^{n−h} (V₀/2π) C(n,h) J_{n+k−h,α}(E).
//! ```
//!
//! Negative eigenvalues are the roots of `det(A(E) − I)`. The determinant is
//! real: `diag(i^h)` conjugates `A` into a real matrix.

mod linalg;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::closed_integrals::{j_closed, j_quadrature, m_closed, MomentQuery};
use crate::{Error, Result};

use linalg::Matrix;

/// Momenta at which [`residual`] is checked by default.
pub const STANDARD_P_SAMPLES: [f64; 4] = [0.0, 0.5, 1.0, 3.0];

/// Largest tolerated `|Im det(A − I)|` at a root.
pub const DET_IMAG_TOL: f64 = 1e-10;

const RANK_TOL: f64 = 1e-9;
const MERGE_REL: f64 = 1e-6;
const MAX_BISECTIONS: usize = 400;
const RESIDUAL_QUAD_TOL: f64 = 1e-13;

/// `(−Δ)^{α/2} + V₀ δ⁽ⁿ⁾` on the line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralProblem {
    alpha: f64,
    n: u32,
    v0: f64,
}

impl SpectralProblem {
    /// Requires `α > 2n + 1` (so every moment integral converges) and `V₀ ≠ 0`.
    pub fn new(alpha: f64, n: u32, v0: f64) -> Result<Self> {
        if !alpha.is_finite() || !v0.is_finite() {
            return Err(Error::InvalidInput(format!(
                "alpha and v0 must be finite, got alpha={alpha}, v0={v0}"
            )));
        }
        let min_alpha = 2.0 * n as f64 + 1.0;
        if alpha <= min_alpha {
            return Err(Error::Domain(format!(
                "alpha must exceed 2n+1 = {min_alpha} for n = {n}, got {alpha}"
            )));
        }
        if v0 == 0.0 {
            return Err(Error::InvalidInput("v0 must be nonzero".into()));
        }
        Ok(Self { alpha, n, v0 })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn v0(&self) -> f64 {
        self.v0
    }

    pub fn dim(&self) -> usize {
        self.n as usize + 1
    }
}

/// `A(E)` at a given `|E|`.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingMatrix {
    entries: Vec<Vec<Complex64>>,
    energy_abs: f64,
}

impl CouplingMatrix {
    pub fn entries(&self) -> &[Vec<Complex64>] {
        &self.entries
    }

    pub fn get(&self, h: usize, k: usize) -> Complex64 {
        self.entries[h][k]
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn energy_abs(&self) -> f64 {
        self.energy_abs
    }

    /// `A − I`.
    fn shifted(&self) -> Matrix {
        let mut m = self.entries.clone();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] -= 1.0;
        }
        m
    }
}

/// A normalized bound state.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSolution {
    pub problem: SpectralProblem,
    /// `Ê < 0`.
    pub energy: f64,
    /// `K̂_0 … K̂_n`, normalized so that `∫|φ|² dp = 2π`.
    pub coefficients: Vec<Complex64>,
    /// Residual of the momentum-space equation on [`STANDARD_P_SAMPLES`].
    pub residual_norm: f64,
    /// `Im det(A − I)` at the root.
    pub det_imag: f64,
    /// Set when two bracketed roots closer than `1e-6` relative were merged.
    pub degenerate: bool,
}

impl EigenSolution {
    /// Builds and verifies the solution at a root `|Ê|` of the determinant.
    pub fn at_root(problem: &SpectralProblem, energy_abs: f64) -> Result<Self> {
        let k_raw = coefficients(problem, energy_abs)?;
        let k = normalize(problem, energy_abs, &k_raw)?;
        let det_imag = det_condition(problem, energy_abs)?.im;
        let mut sol = Self {
            problem: *problem,
            energy: -energy_abs,
            coefficients: k,
            residual_norm: 0.0,
            det_imag,
            degenerate: false,
        };
        sol.residual_norm = residual(problem, &sol, &STANDARD_P_SAMPLES)?;
        Ok(sol)
    }

    pub fn energy_abs(&self) -> f64 {
        -self.energy
    }

    /// `φ(p) = Σ_h K̂_h p^h/(|p|^α + |Ê|)`.
    pub fn phi(&self, p: f64) -> Complex64 {
        let denom = p.abs().powf(self.problem.alpha) + self.energy_abs();
        let mut acc = Complex64::new(0.0, 0.0);
        let mut pow = 1.0;
        for &k in &self.coefficients {
            acc += k * pow;
            pow *= p;
        }
        acc / denom
    }

    /// The same coefficients attached to a different energy, for
    /// sensitivity checks. The residual is recomputed; normalization is not.
    pub fn with_energy(&self, energy: f64) -> Result<Self> {
        if !(energy < 0.0 && energy.is_finite()) {
            return Err(Error::InvalidInput(format!("energy must be negative, got {energy}")));
        }
        let mut sol = self.clone();
        sol.energy = energy;
        sol.residual_norm = residual(&self.problem, &sol, &STANDARD_P_SAMPLES)?;
        Ok(sol)
    }
}

/// Root search settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    pub e_min_abs: f64,
    pub e_max_abs: f64,
    /// Relative bracket width at which bisection stops.
    pub tol: f64,
    pub scan_points: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            e_min_abs: 1e-8,
            e_max_abs: 1e8,
            tol: 1e-13,
            scan_points: 400,
        }
    }
}

impl SearchOptions {
    fn validate(&self) -> Result<()> {
        if !(self.e_min_abs > 0.0 && self.e_min_abs < self.e_max_abs && self.e_max_abs.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "search bracket must satisfy 0 < e_min_abs < e_max_abs, got [{}, {}]",
                self.e_min_abs, self.e_max_abs
            )));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidInput(format!("tol must be positive, got {}", self.tol)));
        }
        if self.scan_points < 2 {
            return Err(Error::InvalidInput("scan_points must be at least 2".into()));
        }
        Ok(())
    }
}

pub(crate) fn i_pow(n: u32) -> Complex64 {
    match n % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

pub(crate) fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

fn check_energy(energy_abs: f64) -> Result<()> {
    if energy_abs > 0.0 && energy_abs.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("|E| must be positive and finite, got {energy_abs}")))
    }
}

pub fn coupling_matrix(prob: &SpectralProblem, energy_abs: f64) -> Result<CouplingMatrix> {
    check_energy(energy_abs)?;
    let n = prob.n;
    let lead = -i_pow(n) * (prob.v0 / (2.0 * PI));
    let mut entries = vec![vec![Complex64::new(0.0, 0.0); prob.dim()]; prob.dim()];
    for h in 0..=n {
        let sign = if (n - h) % 2 == 0 { 1.0 } else { -1.0 };
        let weight = sign * binomial(n, h);
        for k in 0..=n {
            let m = n + k - h;
            if m % 2 == 1 {
                continue;
            }
            let j = j_closed(MomentQuery::new(m, prob.alpha, energy_abs)?);
            entries[h as usize][k as usize] = lead * (weight * j);
        }
    }
    Ok(CouplingMatrix { entries, energy_abs })
}

/// `det(A(E) − I)`.
pub fn det_condition(prob: &SpectralProblem, energy_abs: f64) -> Result<Complex64> {
    let a = coupling_matrix(prob, energy_abs)?;
    Ok(linalg::determinant(&a.shifted()))
}

/// Closed-form `n = 0` eigenvalue; `None` when `V₀ ≥ 0`.
pub fn closed_n0(alpha: f64, v0: f64) -> Result<Option<f64>> {
    if !(alpha > 1.0 && alpha.is_finite()) {
        return Err(Error::Domain(format!("closed_n0 needs alpha > 1, got {alpha}")));
    }
    if !(v0 < 0.0) {
        return Ok(None);
    }
    let base = -v0 / (alpha * (PI / alpha).sin());
    Ok(Some(-base.powf(alpha / (alpha - 1.0))))
}

/// Closed-form `n = 1` eigenvalue, even in `V₀`.
pub fn closed_n1(alpha: f64, v0: f64) -> Result<f64> {
    if !(alpha > 3.0 && alpha.is_finite()) {
        return Err(Error::Domain(format!("closed_n1 needs alpha > 3, got {alpha}")));
    }
    if v0 == 0.0 || !v0.is_finite() {
        return Err(Error::InvalidInput(format!("v0 must be finite and nonzero, got {v0}")));
    }
    let s = ((3.0 * PI / alpha).sin() * (PI / alpha).sin()).sqrt();
    Ok(-(v0.abs() / (alpha * s)).powf(alpha / (alpha - 2.0)))
}

/// Null vector of `A(Ê) − I` with the phase fixed so that `i^h K_h` is real
/// and positive for the first nonzero component. That makes every `i^h K_h`
/// real, hence ψ real, and reduces to "`K_0` real positive" when `K_0 ≠ 0`.
pub fn coefficients(prob: &SpectralProblem, energy_abs_root: f64) -> Result<Vec<Complex64>> {
    let a = coupling_matrix(prob, energy_abs_root)?;
    let v = linalg::null_vector(&a.shifted(), RANK_TOL)?;
    let scale = linalg::norm(&v);
    let first = v
        .iter()
        .enumerate()
        .find(|(_, z)| z.norm() > 1e-12 * scale)
        .map(|(h, z)| i_pow(h as u32) * z)
        .ok_or_else(|| Error::Solver("null vector vanished".into()))?;
    let phase = first.conj() / first.norm();
    Ok(v.into_iter().map(|z| z * phase / scale).collect())
}

/// `‖(A(E) − I)K‖ / ‖K‖`.
pub fn null_residual(prob: &SpectralProblem, energy_abs: f64, k: &[Complex64]) -> Result<f64> {
    let a = coupling_matrix(prob, energy_abs)?;
    if k.len() != a.dim() {
        return Err(Error::InvalidInput(format!("expected {} coefficients, got {}", a.dim(), k.len())));
    }
    let norm = linalg::norm(k);
    if norm == 0.0 {
        return Err(Error::InvalidInput("zero coefficient vector".into()));
    }
    Ok(linalg::norm(&linalg::mat_vec(&a.shifted(), k)) / norm)
}

/// `Σ_{h,k} conj(K_h) K_k M_{h+k,α}(E)`, which equals `∫|φ|² dp`.
pub fn normalization_form(prob: &SpectralProblem, energy_abs: f64, k: &[Complex64]) -> Result<Complex64> {
    check_energy(energy_abs)?;
    if k.len() != prob.dim() {
        return Err(Error::InvalidInput(format!(
            "expected {} coefficients, got {}",
            prob.dim(),
            k.len()
        )));
    }
    let mut form = Complex64::new(0.0, 0.0);
    for (h, kh) in k.iter().enumerate() {
        for (kk, kv) in k.iter().enumerate() {
            let m = (h + kk) as u32;
            if m % 2 == 1 {
                continue;
            }
            form += kh.conj() * kv * m_closed(MomentQuery::new(m, prob.alpha, energy_abs)?);
        }
    }
    Ok(form)
}

/// Rescales by a positive real factor so the normalization form equals `2π`.
pub fn normalize(prob: &SpectralProblem, energy_abs: f64, k_raw: &[Complex64]) -> Result<Vec<Complex64>> {
    if linalg::norm(k_raw) == 0.0 {
        return Err(Error::InvalidInput("cannot normalize the zero vector".into()));
    }
    let form = normalization_form(prob, energy_abs, k_raw)?;
    if !(form.re > 0.0) || form.im.abs() > 1e-10 * form.re {
        return Err(Error::Solver(format!("normalization form {form} is not real positive")));
    }
    let c = (2.0 * PI / form.re).sqrt();
    Ok(k_raw.iter().map(|z| z * c).collect())
}

/// Largest modulus over `p_samples` of
/// `|p|^α φ(p) + iⁿ (V₀/2π) ∫(p−q)ⁿ φ(q) dq − Ê φ(p)`.
///
/// The convolution is expanded binomially into moments of `φ`, each computed
/// by quadrature rather than from the closed forms.
pub fn residual(prob: &SpectralProblem, sol: &EigenSolution, p_samples: &[f64]) -> Result<f64> {
    let e_abs = sol.energy_abs();
    check_energy(e_abs)?;
    let n = prob.n;
    if sol.coefficients.len() != prob.dim() {
        return Err(Error::InvalidInput("coefficient vector has the wrong length".into()));
    }
    let base: Vec<f64> = (0..=2 * n)
        .map(|m| j_quadrature(MomentQuery::new(m, prob.alpha, e_abs)?, RESIDUAL_QUAD_TOL))
        .collect::<Result<_>>()?;
    // μ_j = ∫ q^j φ(q) dq
    let mu: Vec<Complex64> = (0..=n as usize)
        .map(|j| {
            sol.coefficients
                .iter()
                .enumerate()
                .map(|(h, k)| k * base[j + h])
                .sum()
        })
        .collect();
    let lead = i_pow(n) * (prob.v0 / (2.0 * PI));
    let mut worst: f64 = 0.0;
    for &p in p_samples {
        let phi = sol.phi(p);
        let conv: Complex64 = (0..=n)
            .map(|j| {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                mu[j as usize] * (sign * binomial(n, j) * p.powi((n - j) as i32))
            })
            .sum();
        let r = phi * p.abs().powf(prob.alpha) + lead * conv - phi * sol.energy;
        worst = worst.max(r.norm());
    }
    Ok(worst)
}

fn refine(prob: &SpectralProblem, mut lo: f64, mut hi: f64, f_lo: f64, tol: f64) -> Result<f64> {
    let f = |e: f64| det_condition(prob, e).map(|d| d.re);
    let mut s_lo = f_lo.signum();
    let mut iterations = 0;
    while hi - lo > tol * lo {
        iterations += 1;
        if iterations > MAX_BISECTIONS {
            return Err(Error::Solver(format!("bisection stalled on [{lo:e}, {hi:e}]")));
        }
        let mid = (lo * hi).sqrt();
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == s_lo {
            lo = mid;
            s_lo = fm.signum();
        } else {
            hi = mid;
        }
    }
    let x = 0.5 * (lo + hi);
    // One Newton step with a central difference, kept only if it helps.
    let fx = f(x)?;
    let h = 1e-6 * x;
    let d = (f(x + h)? - f(x - h)?) / (2.0 * h);
    if d != 0.0 && d.is_finite() {
        let y = x - fx / d;
        let width = (hi - lo).max(tol * x);
        if (y - x).abs() <= width && f(y)?.abs() <= fx.abs() {
            return Ok(y);
        }
    }
    Ok(x)
}

/// All roots `Ê = −|E|` of `Re det(A − I)` in the search bracket, in
/// increasing `|E|`. An empty list is a valid outcome.
pub fn find_eigenvalues(prob: &SpectralProblem, search: &SearchOptions) -> Result<Vec<EigenSolution>> {
    search.validate()?;
    let np = search.scan_points;
    let ratio = (search.e_max_abs / search.e_min_abs).ln();
    let grid: Vec<f64> = (0..np)
        .map(|i| search.e_min_abs * (ratio * i as f64 / (np - 1) as f64).exp())
        .collect();
    let values: Vec<f64> = grid
        .iter()
        .map(|&e| det_condition(prob, e).map(|d| d.re))
        .collect::<Result<_>>()?;

    let mut roots: Vec<f64> = Vec::new();
    for i in 0..np {
        if values[i] == 0.0 {
            roots.push(grid[i]);
        } else if i + 1 < np && values[i + 1] != 0.0 && values[i].signum() != values[i + 1].signum() {
            roots.push(refine(prob, grid[i], grid[i + 1], values[i], search.tol)?);
        }
    }

    let mut merged: Vec<(f64, bool)> = Vec::new();
    for r in roots {
        match merged.last_mut() {
            Some((prev, flag)) if (r - *prev).abs() <= MERGE_REL * r => {
                *prev = 0.5 * (*prev + r);
                *flag = true;
            }
            _ => merged.push((r, false)),
        }
    }

    merged
        .into_iter()
        .map(|(e, degenerate)| {
            let det = det_condition(prob, e)?;
            if det.im.abs() >= DET_IMAG_TOL {
                return Err(Error::Solver(format!(
                    "determinant not real at |E| = {e:e}: Im det = {:e}",
                    det.im
                )));
            }
            let mut sol = EigenSolution::at_root(prob, e)?;
            sol.degenerate = degenerate;
            Ok(sol)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs()
    }

    #[test]
    fn coupling_examples() {
        let p = SpectralProblem::new(2.0, 0, -1.0).unwrap();
        let a = coupling_matrix(&p, 1.0).unwrap();
        assert!((a.get(0, 0) - Complex64::new(0.5, 0.0)).norm() < 1e-15);

        let p = SpectralProblem::new(4.0, 1, 1.0).unwrap();
        let a = coupling_matrix(&p, 1.0).unwrap();
        assert_eq!(a.get(0, 0), Complex64::new(0.0, 0.0));
        assert_eq!(a.get(1, 1), Complex64::new(0.0, 0.0));
        let s = (PI / 4.0).sin();
        assert!((a.get(0, 1) - Complex64::new(0.0, 1.0 / (4.0 * s))).norm() < 1e-15);
        assert!((a.get(1, 0) - Complex64::new(0.0, -1.0 / (4.0 * s))).norm() < 1e-15);
        assert!(((a.get(0, 1) * a.get(1, 0)) - Complex64::new(0.125, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn determinant_examples() {
        let p = SpectralProblem::new(2.0, 0, -1.0).unwrap();
        assert!((det_condition(&p, 1.0).unwrap() - Complex64::new(-0.5, 0.0)).norm() < 1e-15);
        assert!(det_condition(&p, 0.25).unwrap().norm() < 1e-12);
        let p = SpectralProblem::new(4.0, 1, 1.0).unwrap();
        assert!(det_condition(&p, 0.125).unwrap().norm() < 1e-12);
    }

    #[test]
    fn problem_validation() {
        assert!(matches!(SpectralProblem::new(3.0, 1, 1.0), Err(Error::Domain(_))));
        assert!(matches!(SpectralProblem::new(2.0, 0, 0.0), Err(Error::InvalidInput(_))));
        assert!(SpectralProblem::new(5.01, 2, 1.0).is_ok());
    }

    #[test]
    fn closed_forms() {
        assert!((closed_n0(2.0, -1.0).unwrap().unwrap() + 0.25).abs() < 1e-15);
        let expected = -(1.0 / (1.5 * (2.0 * PI / 3.0).sin())).powi(3);
        assert!(close(closed_n0(1.5, -1.0).unwrap().unwrap(), expected, 1e-14));
        assert_eq!(closed_n0(2.0, 1.0).unwrap(), None);
        assert!(closed_n0(1.0, -1.0).is_err());
        assert!((closed_n1(4.0, 1.0).unwrap() + 0.125).abs() < 1e-15);
        assert_eq!(closed_n1(4.0, -1.0).unwrap(), closed_n1(4.0, 1.0).unwrap());
        assert!(close(closed_n1(5.5, 1.0).unwrap(), -0.112_181_515_849_212_98, 1e-14));
        assert!(closed_n1(3.0, 1.0).is_err());
    }

    #[test]
    fn solver_examples() {
        let p = SpectralProblem::new(2.0, 0, -1.0).unwrap();
        let roots = find_eigenvalues(&p, &SearchOptions::default()).unwrap();
        assert_eq!(roots.len(), 1);
        assert!(close(roots[0].energy, -0.25, 1e-12));
        assert!((roots[0].coefficients[0] - Complex64::new(0.5f64.sqrt(), 0.0)).norm() < 1e-12);
        assert!(roots[0].residual_norm < 1e-6);

        let p = SpectralProblem::new(2.0, 0, 1.0).unwrap();
        assert!(find_eigenvalues(&p, &SearchOptions::default()).unwrap().is_empty());

        let p = SpectralProblem::new(3.5, 1, 2.0).unwrap();
        let roots = find_eigenvalues(&p, &SearchOptions::default()).unwrap();
        assert_eq!(roots.len(), 1);
        assert!(close(roots[0].energy, -0.956_482_297_100_808_9, 1e-10));
    }

    #[test]
    fn n1_coefficients_structure() {
        let p = SpectralProblem::new(4.0, 1, 1.0).unwrap();
        let k = coefficients(&p, 0.125).unwrap();
        let a10 = coupling_matrix(&p, 0.125).unwrap().get(1, 0);
        assert_eq!(k[0].im, 0.0);
        assert!(k[0].re > 0.0);
        assert!((k[1] - a10 * k[0]).norm() < 1e-12 * k[0].norm());
        assert!(k[1].re.abs() < 1e-15);

        assert!(null_residual(&p, 0.125, &k).unwrap() <= 1e-10);
    }

    #[test]
    fn n1_normalization_constant() {
        let p = SpectralProblem::new(4.0, 1, 1.0).unwrap();
        let e = 0.125;
        let k = normalize(&p, e, &coefficients(&p, e).unwrap()).unwrap();
        let a10 = coupling_matrix(&p, e).unwrap().get(1, 0);
        let m0 = m_closed(MomentQuery::new(0, 4.0, e).unwrap());
        let m2 = m_closed(MomentQuery::new(2, 4.0, e).unwrap());
        let c = (2.0 * PI).sqrt() / (m0 + a10.norm_sqr() * m2).sqrt();
        assert!(close(k[0].re, c, 1e-12));
    }

    #[test]
    fn normalization_is_projective() {
        let p = SpectralProblem::new(4.0, 1, -1.0).unwrap();
        let k = coefficients(&p, 0.125).unwrap();
        let a = normalize(&p, 0.125, &k).unwrap();
        let lambda = Complex64::new(-3.0, 0.7);
        let scaled: Vec<_> = k.iter().map(|z| z * lambda).collect();
        let b = normalize(&p, 0.125, &scaled).unwrap();
        let phase = b[0] / a[0];
        assert!((phase.norm() - 1.0).abs() < 1e-13);
        for (x, y) in a.iter().zip(&b) {
            assert!((x * phase - y).norm() < 1e-13);
        }
        assert!(normalize(&p, 0.125, &[Complex64::new(0.0, 0.0); 2]).is_err());
    }

    #[test]
    fn n0_normalized_coefficient_has_closed_form() {
        for &(alpha, v0) in &[(1.5, -0.5), (2.5, -2.0)] {
            let p = SpectralProblem::new(alpha, 0, v0).unwrap();
            let sol = &find_eigenvalues(&p, &SearchOptions::default()).unwrap()[0];
            let k0 = (-v0 * alpha * sol.energy_abs() / (alpha - 1.0)).sqrt();
            assert!(close(sol.coefficients[0].re, k0, 1e-10));
        }
    }

    #[test]
    fn residual_is_small_at_roots_and_large_off_them() {
        let p = SpectralProblem::new(4.0, 1, 1.0).unwrap();
        let sol = &find_eigenvalues(&p, &SearchOptions::default()).unwrap()[0];
        assert!(sol.residual_norm < 1e-6);
        let off = sol.with_energy(sol.energy * 1.1).unwrap();
        assert!(off.residual_norm > 1e-3);
    }

    #[test]
    fn sign_symmetry_is_exact_for_n1() {
        for &alpha in &[3.5, 4.0, 5.5] {
            for &v0 in &[0.5, 1.0, 2.0] {
                let a = find_eigenvalues(&SpectralProblem::new(alpha, 1, v0).unwrap(), &SearchOptions::default())
                    .unwrap();
                let b = find_eigenvalues(&SpectralProblem::new(alpha, 1, -v0).unwrap(), &SearchOptions::default())
                    .unwrap();
                assert_eq!(a.len(), 1);
                assert_eq!(a[0].energy, b[0].energy);
            }
        }
    }

    #[test]
    fn higher_order_roots_satisfy_the_equation() {
        for &(alpha, v0) in &[(5.5, 1.0), (5.5, -1.0), (7.5, 2.0)] {
            let p = SpectralProblem::new(alpha, 2, v0).unwrap();
            for sol in find_eigenvalues(&p, &SearchOptions::default()).unwrap() {
                assert!(sol.energy < 0.0);
                assert!(sol.det_imag.abs() < DET_IMAG_TOL);
                assert!(sol.residual_norm < 1e-6, "{alpha} {v0}: {}", sol.residual_norm);
                let form = normalization_form(&p, sol.energy_abs(), &sol.coefficients).unwrap();
                assert!(close(form.re, 2.0 * PI, 1e-10));
                for (h, k) in sol.coefficients.iter().enumerate() {
                    assert!((i_pow(h as u32) * k).im.abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn bad_search_options() {
        let p = SpectralProblem::new(2.0, 0, -1.0).unwrap();
        let mut s = SearchOptions::default();
        s.e_min_abs = 10.0;
        s.e_max_abs = 1.0;
        assert!(find_eigenvalues(&p, &s).is_err());
        s = SearchOptions { scan_points: 1, ..SearchOptions::default() };
        assert!(find_eigenvalues(&p, &s).is_err());
    }

    proptest! {
        #[test]
        fn zero_pattern_follows_parity(n in 0u32..4, extra in 0.01f64..4.0, e in 1e-3f64..1e3, v0 in -5.0f64..5.0) {
            prop_assume!(v0 != 0.0);
            let p = SpectralProblem::new(2.0 * n as f64 + 1.0 + extra, n, v0).unwrap();
            let a = coupling_matrix(&p, e).unwrap();
            for h in 0..=n {
                for k in 0..=n {
                    let z = a.get(h as usize, k as usize);
                    if (n + k - h) % 2 == 1 {
                        prop_assert_eq!(z, Complex64::new(0.0, 0.0));
                    } else {
                        prop_assert!(z.norm() > 0.0);
                        // iⁿ times a real number
                        let r = z / i_pow(n);
                        prop_assert!(r.im.abs() <= 1e-15 * r.re.abs());
                    }
                }
            }
        }

        #[test]
        fn determinant_is_real(n in 0u32..4, extra in 0.01f64..4.0, e in 1e-3f64..1e3, v0 in -5.0f64..5.0) {
            prop_assume!(v0 != 0.0);
            let p = SpectralProblem::new(2.0 * n as f64 + 1.0 + extra, n, v0).unwrap();
            let d = det_condition(&p, e).unwrap();
            prop_assert!(d.im.abs() <= 1e-12 * d.norm().max(1.0));
        }
    }
}
