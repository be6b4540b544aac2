//! Closed forms of the two moment-integral families everything reduces to:
//!
//! ```text
//! J_{m,α}(E) = ∫_ℝ q^m / (|q|^α + |E|)  dq
//! M_{m,α}(E) = ∫_ℝ q^m / (|q|^α + |E|)² dq
//! ```
//!
//! Both vanish for odd `m` and converge only when `α > m + 1`.

use std::f64::consts::PI;

use crate::quadrature::{integrate_halfline_with, QuadOptions};
use crate::{Error, Result};

/// A validated `(m, α, |E|)` triple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentQuery {
    m: u32,
    alpha: f64,
    energy_abs: f64,
}

impl MomentQuery {
    pub fn new(m: u32, alpha: f64, energy_abs: f64) -> Result<Self> {
        if !alpha.is_finite() || !(alpha > m as f64 + 1.0) {
            return Err(Error::Domain(format!(
                "moment integral of order {m} diverges for alpha = {alpha} (needs alpha > {})",
                m + 1
            )));
        }
        if !(energy_abs > 0.0 && energy_abs.is_finite()) {
            return Err(Error::Domain(format!("|E| must be positive and finite, got {energy_abs}")));
        }
        Ok(MomentQuery { m, alpha, energy_abs })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn energy_abs(&self) -> f64 {
        self.energy_abs
    }
}

/// `Ĵ_{m,α} = ∫₀^∞ w^m/(w^α+1) dw = π / (α sin(π(m+1)/α))`.
pub fn j_hat(m: u32, alpha: f64) -> f64 {
    PI / (alpha * (PI * (m as f64 + 1.0) / alpha).sin())
}

/// `M̂_{m,α} = ∫₀^∞ w^m/(w^α+1)² dw = ((α−m−1)/α) Ĵ_{m,α}`.
pub fn m_hat(m: u32, alpha: f64) -> f64 {
    (alpha - m as f64 - 1.0) / alpha * j_hat(m, alpha)
}

pub fn j_closed(q: MomentQuery) -> f64 {
    if q.m % 2 == 1 {
        return 0.0;
    }
    let mf = q.m as f64;
    2.0 * q.energy_abs.powf((mf + 1.0 - q.alpha) / q.alpha) * j_hat(q.m, q.alpha)
}

pub fn m_closed(q: MomentQuery) -> f64 {
    if q.m % 2 == 1 {
        return 0.0;
    }
    let mf = q.m as f64;
    2.0 * q.energy_abs.powf((mf + 1.0 - 2.0 * q.alpha) / q.alpha) * m_hat(q.m, q.alpha)
}

/// Validating shorthand for `j_closed(MomentQuery::new(..)?)`.
pub fn j_moment(m: u32, alpha: f64, energy_abs: f64) -> Result<f64> {
    Ok(j_closed(MomentQuery::new(m, alpha, energy_abs)?))
}

/// Validating shorthand for `m_closed(MomentQuery::new(..)?)`.
pub fn m_moment(m: u32, alpha: f64, energy_abs: f64) -> Result<f64> {
    Ok(m_closed(MomentQuery::new(m, alpha, energy_abs)?))
}

/// `∫_ℝ q^m/(|q|^α+|E|)^power dq` as two half-line quadratures, one per
/// sign of `q`, so odd moments cancel exactly.
fn moment_quadrature(q: MomentQuery, power: i32, tol: f64) -> Result<f64> {
    let (m, alpha, e) = (q.m as i32, q.alpha, q.energy_abs);
    let opts = QuadOptions::with_scale(e.powf(1.0 / alpha));
    let decay = power as f64 * alpha - m as f64;
    let half = |sign: f64| {
        integrate_halfline_with(
            |w: f64| (sign * w).powi(m) / (w.powf(alpha) + e).powi(power),
            decay,
            tol,
            &opts,
        )
        .map(|r| r.value)
    };
    Ok(half(1.0)? + half(-1.0)?)
}

/// `J_{m,α}(E)` by adaptive quadrature.
pub fn j_quadrature(q: MomentQuery, tol: f64) -> Result<f64> {
    moment_quadrature(q, 1, tol)
}

/// `M_{m,α}(E)` by adaptive quadrature.
pub fn m_quadrature(q: MomentQuery, tol: f64) -> Result<f64> {
    moment_quadrature(q, 2, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    fn q(m: u32, a: f64, e: f64) -> MomentQuery {
        MomentQuery::new(m, a, e).unwrap()
    }

    #[test]
    fn j_examples() {
        assert!((j_closed(q(0, 2.0, 1.0)) - PI).abs() < 1e-15);
        assert_eq!(j_closed(q(1, 4.0, 7.3)), 0.0);
        assert!((j_closed(q(2, 4.0, 1.0)) - PI * SQRT_2 / 2.0).abs() < 1e-14);
        assert!((j_closed(q(0, 4.0, 16.0)) - PI / (8.0 * SQRT_2)).abs() < 1e-15);
    }

    #[test]
    fn m_examples() {
        assert!((m_closed(q(0, 2.0, 1.0)) - PI / 2.0).abs() < 1e-15);
        assert_eq!(m_closed(q(3, 9.0, 2.0)), 0.0);
        assert!((m_closed(q(0, 4.0, 1.0)) - 3.0 * PI / (4.0 * SQRT_2)).abs() < 1e-14);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(MomentQuery::new(1, 2.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(MomentQuery::new(0, 1.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(MomentQuery::new(0, 2.0, 0.0), Err(Error::Domain(_))));
        assert!(matches!(MomentQuery::new(0, 2.0, -1.0), Err(Error::Domain(_))));
        assert!(j_moment(2, 3.0, 1.0).is_err());
        assert!(m_moment(2, 3.0 + 1e-12, 1.0).is_ok());
    }

    #[test]
    fn scaling_law() {
        for &(m, a) in &[(0, 1.5), (0, 4.0), (2, 3.5), (2, 5.5)] {
            for &e in &[0.1, 3.0, 250.0] {
                let lhs = j_closed(q(m, a, e));
                let rhs = e.powf((m as f64 + 1.0 - a) / a) * j_closed(q(m, a, 1.0));
                assert!(((lhs - rhs) / rhs).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn m_is_minus_energy_derivative_of_j() {
        // ∂J/∂|E| = −M, checked by central differences.
        for &(m, a) in &[(0, 1.5), (0, 2.5), (2, 4.0), (2, 5.5)] {
            for &e in &[0.1, 1.0, 10.0] {
                let h = 1e-5 * e;
                let d = (j_closed(q(m, a, e + h)) - j_closed(q(m, a, e - h))) / (2.0 * h);
                let mm = m_closed(q(m, a, e));
                assert!(((-d - mm) / mm).abs() < 1e-5, "m={m} a={a} e={e}");
            }
        }
    }

    #[test]
    fn quadrature_counterparts() {
        for &(m, a, e) in &[(0, 1.5, 0.1), (2, 4.0, 10.0), (2, 3.5, 1.0), (1, 2.5, 1.0)] {
            let query = q(m, a, e);
            let jq = j_quadrature(query, 1e-12).unwrap();
            let mq = m_quadrature(query, 1e-12).unwrap();
            if m % 2 == 1 {
                assert_eq!(jq, 0.0);
                assert_eq!(mq, 0.0);
            } else {
                assert!(((jq - j_closed(query)) / jq).abs() < 1e-10);
                assert!(((mq - m_closed(query)) / mq).abs() < 1e-10);
            }
        }
    }
}
