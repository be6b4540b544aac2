//! Adaptive quadrature for the two integrand classes this crate needs:
//! algebraically decaying integrands on the half line, and Fourier-type
//! integrals `∫₀^∞ g(p) cos(px) dp`, `∫₀^∞ g(p) sin(px) dp` with a slowly
//! decaying amplitude `g`.
//!
//! The panel rule is a 15-point Gauss–Kronrod pair with the QUADPACK error
//! estimate, refined globally on the panel with the largest error. A
//! requested tolerance `tol` means `|error| ≤ tol·(1 + |value|)`.
//!
//! Half-line tails are mapped to a finite interval by `w = s·u^{-β}` with
//! `β = 1/(d − 1)`, where `d` is the decay exponent of the integrand, so the
//! mapped integrand tends to a constant at `u = 0`. Oscillatory tails are cut
//! at successive zeros of the trigonometric factor and the resulting
//! alternating series is summed with Euler acceleration (iterated averaging of
//! the partial sums).

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use crate::{Error, Result};

/// Default cap on integrand evaluations per top-level call.
pub const DEFAULT_MAX_EVALUATIONS: usize = 1_000_000;

/// Frequencies below this are treated as zero.
pub const ZERO_FREQUENCY: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

/// Tuning knobs shared by all integrators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    /// Characteristic abscissa where the integrand turns into its tail.
    pub scale: f64,
    pub max_evaluations: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            scale: 1.0,
            max_evaluations: DEFAULT_MAX_EVALUATIONS,
        }
    }
}

impl QuadOptions {
    pub fn with_scale(scale: f64) -> Self {
        QuadOptions {
            scale,
            ..Default::default()
        }
    }
}

/// Parity of a Fourier moment `∫_ℝ p^m g(|p|) e^{ipx} dp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    /// The full-line integral equals `value`.
    Even,
    /// The full-line integral equals `i·value`.
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierMoment {
    pub result: QuadratureResult,
    pub parity: Parity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Trig {
    Cos,
    Sin,
}

// ---------------------------------------------------------------------------
// Gauss–Kronrod 7/15 panel
// ---------------------------------------------------------------------------

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    // error is at the round-off floor; bisecting cannot reduce it
    at_floor: bool,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

struct Budget {
    used: usize,
    max: usize,
}

impl Budget {
    fn new(max: usize) -> Self {
        Budget { used: 0, max }
    }

    fn charge(&mut self, n: usize) -> Result<()> {
        self.used += n;
        if self.used > self.max {
            Err(Error::NonConvergence(format!(
                "evaluation budget of {} exhausted",
                self.max
            )))
        } else {
            Ok(())
        }
    }
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, budget: &mut Budget) -> Result<Panel> {
    budget.charge(15)?;
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_g = fc * WG[3];
    let mut res_k = fc * WGK[7];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = res_k * 0.5;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    res_abs *= half.abs();
    res_asc *= half.abs();
    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (1.0_f64).min((200.0 * error / res_asc).powf(1.5));
    }
    let floor = 50.0 * f64::EPSILON * res_abs;
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(floor);
    }
    if !value.is_finite() || !error.is_finite() {
        return Err(Error::NonConvergence(format!(
            "integrand is not finite on [{a}, {b}]"
        )));
    }
    Ok(Panel {
        a,
        b,
        value,
        error,
        at_floor: error <= 1.5 * floor,
    })
}

/// Globally adaptive Gauss–Kronrod integration over the panels defined by
/// `breaks` (strictly increasing). Stops when the summed error estimate is
/// at most `abs_tol + rel_tol·|value|`, or when every remaining panel is
/// limited by round-off; callers compare the returned error to their own
/// tolerance.
fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    breaks: &[f64],
    abs_tol: f64,
    rel_tol: f64,
    budget: &mut Budget,
) -> Result<(f64, f64)> {
    let mut heap = BinaryHeap::new();
    let mut frozen_value = 0.0;
    let mut frozen_error = 0.0;
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            heap.push(gk15(f, w[0], w[1], budget)?);
        }
    }
    loop {
        let value: f64 = frozen_value + heap.iter().map(|p| p.value).sum::<f64>();
        let error: f64 = frozen_error + heap.iter().map(|p| p.error).sum::<f64>();
        if error <= abs_tol + rel_tol * value.abs() {
            return Ok((value, error));
        }
        let Some(worst) = heap.pop() else {
            return Ok((value, error));
        };
        let mid = 0.5 * (worst.a + worst.b);
        let width = worst.b - worst.a;
        if worst.at_floor
            || mid <= worst.a
            || mid >= worst.b
            || width <= 8.0 * f64::EPSILON * worst.a.abs().max(worst.b.abs())
        {
            frozen_value += worst.value;
            frozen_error += worst.error;
            continue;
        }
        heap.push(gk15(f, worst.a, mid, budget)?);
        heap.push(gk15(f, mid, worst.b, budget)?);
    }
}

fn accept(value: f64, error: f64, tol: f64, evaluations: usize) -> Result<QuadratureResult> {
    if error > tol * (1.0 + value.abs()) {
        return Err(Error::NonConvergence(format!(
            "error estimate {error:.3e} exceeds the tolerance {tol:.1e} (round-off limit)"
        )));
    }
    Ok(QuadratureResult {
        value,
        abs_error_estimate: error,
        evaluations: evaluations.max(1),
    })
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
    }
    Ok(())
}

fn check_scale(opts: &QuadOptions) -> Result<()> {
    if !(opts.scale > 0.0 && opts.scale.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "scale must be positive and finite, got {}",
            opts.scale
        )));
    }
    Ok(())
}

/// Integral over a finite interval `[a, b]`.
pub fn integrate_interval<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadratureResult> {
    check_tol(tol)?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidInput("interval endpoints must be finite".into()));
    }
    let (lo, hi, sign) = if a <= b { (a, b, 1.0) } else { (b, a, -1.0) };
    let mut budget = Budget::new(DEFAULT_MAX_EVALUATIONS);
    let (value, error) = adaptive(&f, &[lo, hi], tol, tol, &mut budget)?;
    accept(sign * value, error, tol, budget.used)
}

// ---------------------------------------------------------------------------
// Half line
// ---------------------------------------------------------------------------

/// `∫₀^∞ f(w) dw` for an integrand with `|f(w)| = O(w^{-decay_exponent})`.
pub fn integrate_halfline<F: Fn(f64) -> f64>(
    f: F,
    decay_exponent: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    integrate_halfline_with(f, decay_exponent, tol, &QuadOptions::default())
}

pub fn integrate_halfline_with<F: Fn(f64) -> f64>(
    f: F,
    decay_exponent: f64,
    tol: f64,
    opts: &QuadOptions,
) -> Result<QuadratureResult> {
    check_tol(tol)?;
    check_scale(opts)?;
    if !(decay_exponent > 1.0) {
        return Err(Error::InvalidInput(format!(
            "half-line integral needs decay exponent > 1, got {decay_exponent}"
        )));
    }
    let mut budget = Budget::new(opts.max_evaluations);
    let (value, error) = halfline_core(&f, decay_exponent, opts.scale, tol, &mut budget)?;
    accept(value, error, tol, budget.used)
}

fn halfline_core<F: Fn(f64) -> f64>(
    f: &F,
    decay: f64,
    s: f64,
    tol: f64,
    budget: &mut Budget,
) -> Result<(f64, f64)> {
    // t ∈ [0, 1]: w = s·t.  t ∈ [1, 2]: u = 2 − t, w = s·u^{-β}.
    let beta = 1.0 / (decay - 1.0);
    let mapped = |t: f64| -> f64 {
        if t <= 1.0 {
            s * f(s * t)
        } else {
            let u = 2.0 - t;
            if u <= 0.0 {
                return 0.0;
            }
            let w = s * u.powf(-beta);
            if !w.is_finite() {
                return 0.0;
            }
            let jac = s * beta * u.powf(-beta - 1.0);
            let v = f(w) * jac;
            if v.is_finite() {
                v
            } else {
                0.0
            }
        }
    };
    let breaks = [0.0, 0.125, 0.5, 1.0, 1.5, 1.875, 2.0];
    adaptive(&mapped, &breaks, tol, tol, budget)
}

// ---------------------------------------------------------------------------
// Oscillatory half line
// ---------------------------------------------------------------------------

/// `2∫₀^∞ g(p) cos(px) dp`, the Fourier transform of the even extension of
/// `g`. `decay_exponent` describes `g`; it must exceed 1 when `x = 0` and be
/// positive otherwise (the oscillating tail then converges conditionally).
pub fn integrate_fourier_cos<G: Fn(f64) -> f64>(
    g: G,
    x: f64,
    decay_exponent: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    integrate_fourier_cos_with(g, x, decay_exponent, tol, &QuadOptions::default())
}

pub fn integrate_fourier_cos_with<G: Fn(f64) -> f64>(
    g: G,
    x: f64,
    decay_exponent: f64,
    tol: f64,
    opts: &QuadOptions,
) -> Result<QuadratureResult> {
    let r = oscillatory(&g, Trig::Cos, x.abs(), decay_exponent, tol, opts)?;
    Ok(QuadratureResult {
        value: 2.0 * r.value,
        abs_error_estimate: 2.0 * r.abs_error_estimate,
        evaluations: r.evaluations,
    })
}

/// `2∫₀^∞ g(p) sin(px) dp`, odd in `x`.
pub fn integrate_fourier_sin_with<G: Fn(f64) -> f64>(
    g: G,
    x: f64,
    decay_exponent: f64,
    tol: f64,
    opts: &QuadOptions,
) -> Result<QuadratureResult> {
    let r = oscillatory(&g, Trig::Sin, x.abs(), decay_exponent, tol, opts)?;
    let sign = if x < 0.0 { -1.0 } else { 1.0 };
    Ok(QuadratureResult {
        value: sign * 2.0 * r.value,
        abs_error_estimate: 2.0 * r.abs_error_estimate,
        evaluations: r.evaluations,
    })
}

/// `∫_ℝ p^moment g(|p|) e^{ipx} dp` for an even amplitude `g`.
///
/// Even moments give the real number `2∫₀^∞ p^m g cos(px) dp`; odd moments
/// give `i·2∫₀^∞ p^m g sin(px) dp` and only the real factor is returned,
/// tagged [`Parity::Odd`].
pub fn integrate_fourier_moment<G: Fn(f64) -> f64>(
    g: G,
    moment: u32,
    x: f64,
    decay_exponent: f64,
    tol: f64,
) -> Result<FourierMoment> {
    integrate_fourier_moment_with(g, moment, x, decay_exponent, tol, &QuadOptions::default())
}

pub fn integrate_fourier_moment_with<G: Fn(f64) -> f64>(
    g: G,
    moment: u32,
    x: f64,
    decay_exponent: f64,
    tol: f64,
    opts: &QuadOptions,
) -> Result<FourierMoment> {
    let tail = decay_exponent - moment as f64;
    let at_zero = x.abs() < ZERO_FREQUENCY;
    let parity = if moment % 2 == 0 { Parity::Even } else { Parity::Odd };
    if (at_zero && parity == Parity::Even && tail <= 1.0) || tail <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "moment {moment} of an amplitude decaying like p^-{decay_exponent} does not converge"
        )));
    }
    let amp = |p: f64| p.powi(moment as i32) * g(p);
    let result = match parity {
        Parity::Even => integrate_fourier_cos_with(amp, x, tail, tol, opts)?,
        Parity::Odd => integrate_fourier_sin_with(amp, x, tail, tol, opts)?,
    };
    Ok(FourierMoment { result, parity })
}

fn oscillatory<G: Fn(f64) -> f64>(
    g: &G,
    trig: Trig,
    x: f64,
    decay: f64,
    tol: f64,
    opts: &QuadOptions,
) -> Result<QuadratureResult> {
    check_tol(tol)?;
    check_scale(opts)?;
    if !x.is_finite() {
        return Err(Error::InvalidInput(format!("frequency must be finite, got {x}")));
    }
    if !(decay > 0.0) {
        return Err(Error::InvalidInput(format!(
            "oscillatory integral needs a decaying amplitude, got exponent {decay}"
        )));
    }

    if x < ZERO_FREQUENCY {
        match trig {
            Trig::Cos => return integrate_halfline_with(g, decay, tol, opts),
            Trig::Sin if x == 0.0 => {
                return Ok(QuadratureResult {
                    value: 0.0,
                    abs_error_estimate: 0.0,
                    evaluations: 1,
                })
            }
            Trig::Sin if decay > 1.0 => {
                return integrate_halfline_with(|p| g(p) * (p * x).sin(), decay, tol, opts)
            }
            Trig::Sin => {}
        }
    }

    let mut budget = Budget::new(opts.max_evaluations);
    let s = opts.scale;
    let half_period = PI / x;
    let phase = match trig {
        Trig::Cos => 0.5,
        Trig::Sin => 0.0,
    };
    let zero = |k: f64| (k + phase) * half_period;
    let f = |p: f64| match trig {
        Trig::Cos => g(p) * (p * x).cos(),
        Trig::Sin => g(p) * (p * x).sin(),
    };

    // Head: [0, first zero past 4·scale], split geometrically around the
    // scale and at the zeros of the trig factor.
    let start = (4.0 * s).max(half_period);
    let k0 = ((start / half_period) - phase).ceil().max(1.0);
    let head_end = zero(k0);
    let mut breaks = vec![0.0];
    let mut b = s / 64.0;
    while b < head_end {
        breaks.push(b);
        b *= 2.0;
    }
    let n_zeros = k0 as usize;
    if n_zeros <= 4096 {
        for k in 0..n_zeros {
            let z = zero(k as f64);
            if z > 0.0 && z < head_end {
                breaks.push(z);
            }
        }
    }
    breaks.push(head_end);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let (head, head_err) = adaptive(&f, &breaks, 0.1 * tol, 0.1 * tol, &mut budget)?;

    // Tail: alternating series of half-period integrals.
    let term_tol = 1e-3 * tol * (1.0 + head.abs());
    let mut partial = Vec::with_capacity(64);
    let mut term_err = 0.0;
    let mut sum = head;
    let mut previous: Option<f64> = None;
    const CHUNK: usize = 8;
    const MAX_TERMS: usize = 512;
    let mut k = k0;
    while partial.len() < MAX_TERMS {
        for _ in 0..CHUNK {
            let (term, err) = adaptive(&f, &[zero(k), zero(k + 1.0)], term_tol, 0.0, &mut budget)?;
            sum += term;
            term_err += err;
            partial.push(sum);
            k += 1.0;
        }
        let estimate = euler_average(&partial);
        if let Some(prev) = previous {
            let accel_err = (estimate - prev).abs();
            let total_err = accel_err + head_err + term_err;
            if accel_err <= 0.25 * tol * (1.0 + estimate.abs()) {
                let total_err = total_err.max(50.0 * f64::EPSILON * estimate.abs());
                return accept(estimate, total_err, tol, budget.used);
            }
        }
        previous = Some(estimate);
    }
    Err(Error::NonConvergence(format!(
        "oscillatory tail did not converge after {MAX_TERMS} half periods"
    )))
}

/// Euler transform of an alternating series given by its partial sums:
/// neighbouring partial sums are averaged repeatedly, and the estimate is
/// read off after about two thirds of the possible averaging rounds.
fn euler_average(partial: &[f64]) -> f64 {
    let n = partial.len();
    let rounds = (2 * n) / 3;
    let mut row = partial.to_vec();
    for _ in 0..rounds {
        for i in 0..row.len() - 1 {
            row[i] = 0.5 * (row[i] + row[i + 1]);
        }
        row.pop();
    }
    *row.last().expect("at least one partial sum")
}
