//! Bound states of the one-dimensional fractional Laplacian `(-Δ)^{α/2}`
//! perturbed by `V₀ δ⁽ⁿ⁾`, the n-th derivative of a Dirac delta.
//!
//! The eigenvalue problem is reduced in momentum space to a small
//! `(n+1)×(n+1)` coupling matrix whose entries are closed-form moment
//! integrals. Negative eigenvalues are the roots of `det(A(E) − I)`, and the
//! real-space eigenfunctions are inverse Fourier transforms that can be
//! written as Fox H-functions.
//!
//! Every closed form in the crate has an independent numerical route:
//!
//! - [`quadrature`]: adaptive Gauss–Kronrod integration for algebraic tails
//!   and oscillatory Fourier integrals.
//! - [`closed_integrals`]: the moment integrals `J_{m,α}(E)` and `M_{m,α}(E)`.
//! - [`foxh`]: complex log-gamma, Mellin–Barnes evaluation of Fox H-functions
//!   and the kernels `F_α`, `F_α¹`.
//! - [`spectrum`]: coupling matrix, determinant condition, root finding,
//!   coefficient extraction and normalization, residual checks.
//! - [`eigenfunction`]: real-space reconstruction of `ψ(x)` and grid sampling.
//! - [`cli`]: the `fracdelta` command-line front end and CSV emission.
//!
//! ```
//! use fracdelta::spectrum::{find_eigenvalues, SearchOptions, SpectralProblem};
//!
//! let problem = SpectralProblem::new(2.0, 0, -1.0).unwrap();
//! let roots = find_eigenvalues(&problem, &SearchOptions::default()).unwrap();
//! assert_eq!(roots.len(), 1);
//! assert!((roots[0].energy + 0.25).abs() < 1e-12);
//! ```

pub mod cli;
pub mod closed_integrals;
pub mod eigenfunction;
mod error;
pub mod foxh;
pub mod quadrature;
pub mod spectrum;
pub mod validation;

pub use error::{Error, Result};

pub use num_complex::Complex64;

/// Evaluation route for kernels that have both a Fox H and a direct
/// quadrature representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub enum Method {
    FoxH,
    #[default]
    Quadrature,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::FoxH => "foxh",
            Method::Quadrature => "quadrature",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "foxh" => Ok(Method::FoxH),
            "quadrature" => Ok(Method::Quadrature),
            other => Err(Error::InvalidInput(format!(
                "unknown method {other:?} (expected foxh or quadrature)"
            ))),
        }
    }
}
