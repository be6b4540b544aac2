//! Second-derivative interaction (n = 2, α > 5): a 3x3 coupling system with
//! roots of both parities.

use fracdelta::eigenfunction::psi;
use fracdelta::spectrum::{det_condition, find_eigenvalues, SearchOptions, SpectralProblem};
use fracdelta::Method;

fn main() -> fracdelta::Result<()> {
    for (alpha, v0) in [(5.5, 1.0), (5.5, -1.0), (7.5, 2.0)] {
        let prob = SpectralProblem::new(alpha, 2, v0)?;
        let sols = find_eigenvalues(&prob, &SearchOptions::default())?;
        println!("alpha = {alpha}, V0 = {v0:+}: {} bound state(s)", sols.len());
        for sol in &sols {
            let d = det_condition(&prob, sol.energy_abs())?;
            println!("  E = {:.12e}  |det| = {:.1e}  residual = {:.1e}", sol.energy, d.norm(), sol.residual_norm);
            let k: Vec<String> = sol.coefficients.iter().map(|z| format!("{:+.5}{:+.5}i", z.re + 0.0, z.im + 0.0)).collect();
            println!("    K = [{}]", k.join(", "));
            println!(
                "    psi(-1) = {:+.8}, psi(1) = {:+.8}",
                psi(sol, -1.0, Method::Quadrature)?,
                psi(sol, 1.0, Method::Quadrature)?
            );
        }
    }
    Ok(())
}
