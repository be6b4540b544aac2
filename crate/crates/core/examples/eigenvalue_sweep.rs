//! Ground-state energy as a function of α for the delta and derivative-delta
//! interactions, written as CSV to stdout.

use fracdelta::spectrum::{find_eigenvalues, SearchOptions, SpectralProblem};

fn main() -> fracdelta::Result<()> {
    println!("n,alpha,E_hat");
    for (n, lo, hi) in [(0u32, 1.1, 4.0), (1, 3.1, 7.0)] {
        let steps = 15;
        for i in 0..steps {
            let alpha = lo + (hi - lo) * i as f64 / (steps - 1) as f64;
            let prob = SpectralProblem::new(alpha, n, -1.0)?;
            if let Some(sol) = find_eigenvalues(&prob, &SearchOptions::default())?.first() {
                println!("{n},{alpha:.4},{:.12e}", sol.energy);
            }
        }
    }
    Ok(())
}
