//! Bound state of an attractive delta well under the fractional Laplacian.
//!
//! Solves for several orders α, compares with the closed-form energy and
//! prints a few samples of the wave function.

use fracdelta::eigenfunction::psi;
use fracdelta::spectrum::{closed_n0, find_eigenvalues, SearchOptions, SpectralProblem};
use fracdelta::Method;

fn main() -> fracdelta::Result<()> {
    let v0 = -1.0;
    println!("{:>6} {:>22} {:>22} {:>10}", "alpha", "E (solver)", "E (closed)", "residual");
    for alpha in [1.2, 1.5, 2.0, 2.5, 3.0] {
        let prob = SpectralProblem::new(alpha, 0, v0)?;
        let sols = find_eigenvalues(&prob, &SearchOptions::default())?;
        let closed = closed_n0(alpha, v0)?.expect("attractive well binds");
        let sol = &sols[0];
        println!("{alpha:>6} {:>22.15e} {closed:>22.15e} {:>10.2e}", sol.energy, sol.residual_norm);
    }

    let sol = &find_eigenvalues(&SpectralProblem::new(2.0, 0, v0)?, &SearchOptions::default())?[0];
    println!("\nalpha = 2 profile (exact: exp(-|x|/2)/sqrt 2)");
    for x in [0.0, 0.5, 1.0, 2.0, 4.0] {
        let exact = (-x / 2.0f64).exp() / 2f64.sqrt();
        println!("  x = {x:>4}  psi = {:.12}  exact = {exact:.12}", psi(sol, x, Method::Quadrature)?);
    }
    Ok(())
}
