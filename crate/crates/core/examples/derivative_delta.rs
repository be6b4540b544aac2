//! The first-derivative interaction, which needs α > 3.
//!
//! The bound-state energy does not depend on the sign of the coupling, and
//! the wave function has both an even and an odd part.

use fracdelta::eigenfunction::{psi, psi_n1_parts};
use fracdelta::spectrum::{closed_n1, find_eigenvalues, SearchOptions, SpectralProblem};
use fracdelta::Method;

fn main() -> fracdelta::Result<()> {
    let alpha = 5.5;
    for v0 in [2.0, -2.0] {
        let prob = SpectralProblem::new(alpha, 1, v0)?;
        let sol = &find_eigenvalues(&prob, &SearchOptions::default())?[0];
        println!("V0 = {v0:+}: E = {:.15e} (closed {:.15e})", sol.energy, -closed_n1(alpha, v0)?);
        println!("  K0 = {:.6}, K1 = {:.6}", sol.coefficients[0], sol.coefficients[1]);
        for x in [-2.0, -0.5, 0.5, 2.0] {
            let (even, odd) = psi_n1_parts(alpha, v0, x)?;
            println!(
                "  x = {x:+}  psi = {:+.10}  even = {even:+.10}  odd = {odd:+.10}",
                psi(sol, x, Method::Quadrature)?
            );
        }
    }
    Ok(())
}
