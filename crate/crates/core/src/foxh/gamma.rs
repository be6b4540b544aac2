//! Complex log-gamma via the Lanczos approximation (g = 7, nine terms),
//! with the reflection formula for `Re z < 0.5`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;
const LN_PI: f64 = 1.144_729_885_849_400_2;

/// `sin(πx)` with argument reduction so that integers give exact zeros.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (0.5 * x).round();
    // r ∈ [-1, 1]
    if r.abs() <= 0.25 {
        (PI * r).sin()
    } else if r > 0.75 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.75 {
        -(PI * (1.0 + r)).sin()
    } else if r > 0.0 {
        (PI * (0.5 - r)).cos()
    } else {
        -(PI * (0.5 + r)).cos()
    }
}

pub(crate) fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

/// `ln sin(πz)` up to a multiple of `2πi`, stable for large `|Im z|`.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    let (x, y) = (z.re, z.im);
    if y.abs() < 5.0 {
        let s = Complex64::new(sin_pi(x) * (PI * y).cosh(), cos_pi(x) * (PI * y).sinh());
        return s.ln();
    }
    // sin w = ∓e^{∓iw}(1 − e^{±2iw})/(2i), w = πz; the exponential with the
    // positive real part dominates.
    let small = (-2.0 * PI * y.abs()).exp();
    let sgn = y.signum();
    // e^{±2iπz} = e^{-2π|y|} · e^{±2iπx}
    let e = Complex64::new(small * cos_pi(2.0 * x), sgn * small * sin_pi(2.0 * x));
    let lead = Complex64::new(PI * y.abs(), -sgn * PI * x);
    let constant = Complex64::new(-std::f64::consts::LN_2, sgn * 0.5 * PI);
    lead + (Complex64::new(1.0, 0.0) - e).ln() + constant
}

fn lanczos(z: Complex64) -> Complex64 {
    let zm = z - 1.0;
    let mut a = Complex64::new(LANCZOS_COEF[0], 0.0);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        a += c / (zm + i as f64);
    }
    let t = zm + LANCZOS_G + 0.5;
    (zm + 0.5) * t.ln() - t + a.ln() + HALF_LN_2PI
}

fn wrap_phase(v: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut r = v.rem_euclid(two_pi);
    if r > PI {
        r -= two_pi;
    }
    r
}

/// Unwrapped log-gamma: correct real part, imaginary part correct modulo
/// `2π`. This is all `exp` needs, and it is what the Mellin kernel uses.
pub(crate) fn ln_gamma_unwrapped(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::Pole(format!("{z}")));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidInput(format!("log-gamma of non-finite argument {z}")));
    }
    if z.re < 0.5 {
        Ok(LN_PI - ln_sin_pi(z) - lanczos(1.0 - z))
    } else {
        Ok(lanczos(z))
    }
}

/// Principal value of `log Γ(z)`: the imaginary part is reduced to `(−π, π]`.
pub fn log_gamma_complex(z: Complex64) -> Result<Complex64> {
    let v = ln_gamma_unwrapped(z)?;
    Ok(Complex64::new(v.re, wrap_phase(v.im)))
}

/// `Γ(z)` for complex `z`.
pub fn gamma_complex(z: Complex64) -> Result<Complex64> {
    Ok(ln_gamma_unwrapped(z)?.exp())
}
