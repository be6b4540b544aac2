//! The resolvent kernel F_α(x) and its derivative, evaluated both as a Fox H
//! function and by direct Fourier quadrature.

use fracdelta::foxh::{falpha, falpha1, DerivativeMethod};
use fracdelta::Method;

fn main() -> fracdelta::Result<()> {
    let e = 1.0;
    println!("{:>5} {:>5} {:>20} {:>20} {:>9} {:>20}", "alpha", "x", "F (Fox H)", "F (quad)", "diff", "F' (Fox H)");
    for alpha in [1.5, 2.0, 3.5, 5.5] {
        for x in [0.1, 1.0, 5.0] {
            let h = falpha(alpha, e, x, Method::FoxH)?;
            let q = falpha(alpha, e, x, Method::Quadrature)?;
            let d = if alpha > 2.0 { falpha1(alpha, e, x, DerivativeMethod::FoxH)? } else { f64::NAN };
            println!("{alpha:>5} {x:>5} {h:>20.14e} {q:>20.14e} {:>9.1e} {d:>20.14e}", (h - q).abs());
        }
    }
    println!("\nalpha = 2 is the Lorentzian transform: F = (pi/kappa) exp(-kappa |x|) with |E| = kappa^2");
    for x in [0.5f64, 2.0] {
        let exact = std::f64::consts::PI * (-x).exp();
        println!("  x = {x}: F = {:.15e}, exact = {exact:.15e}", falpha(2.0, 1.0, x, Method::FoxH)?);
    }
    Ok(())
}
