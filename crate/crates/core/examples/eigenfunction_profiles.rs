//! Normalized wave functions on an adaptive grid, using both kernel routes.

use fracdelta::eigenfunction::{normalization_grid, sample_grid, AdaptiveGrid};
use fracdelta::spectrum::{find_eigenvalues, SearchOptions, SpectralProblem};
use fracdelta::Method;

fn main() -> fracdelta::Result<()> {
    for (alpha, n, v0) in [(1.5, 0, -1.0), (3.0, 0, -2.0), (4.5, 1, 1.0)] {
        let sol = &find_eigenvalues(&SpectralProblem::new(alpha, n, v0)?, &SearchOptions::default())?[0];
        let grid = normalization_grid(sol, Method::Quadrature, &AdaptiveGrid::default())?;
        println!(
            "alpha = {alpha}, n = {n}, V0 = {v0}: E = {:.10e}, grid [{:.1}, {:.1}], trapezoid norm = {:.6}",
            sol.energy,
            grid.xs[0],
            grid.xs[grid.len() - 1],
            grid.trapezoid_norm()
        );
        let q = sample_grid(sol, -3.0, 3.0, 7, Method::Quadrature)?;
        let h = sample_grid(sol, -3.0, 3.0, 7, Method::FoxH)?;
        for ((x, a), b) in q.xs.iter().zip(&q.values).zip(&h.values) {
            println!("  x = {x:+.1}  quad = {a:+.10}  foxh = {b:+.10}");
        }
    }
    Ok(())
}
