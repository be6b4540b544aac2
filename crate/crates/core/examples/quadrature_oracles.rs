//! Closed-form moment integrals against their quadrature counterparts.
//! Odd moments vanish by symmetry, so only even orders are listed.

use fracdelta::closed_integrals::{j_closed, j_quadrature, m_closed, m_quadrature, MomentQuery};
use fracdelta::quadrature::integrate_halfline;

fn main() -> fracdelta::Result<()> {
    println!("{:>2} {:>5} {:>6} {:>22} {:>9} {:>22} {:>9}", "m", "alpha", "|E|", "J", "J err", "M", "M err");
    for (m, alpha) in [(0, 1.5), (0, 3.0), (2, 3.5), (2, 5.5), (4, 7.5)] {
        for e in [0.1, 1.0, 10.0] {
            let q = MomentQuery::new(m, alpha, e)?;
            let (j, m_val) = (j_closed(q), m_closed(q));
            let jq = j_quadrature(q, 1e-13)?;
            let mq = if 2.0 * alpha > m as f64 + 1.0 { m_quadrature(q, 1e-13)? } else { f64::NAN };
            println!(
                "{m:>2} {alpha:>5} {e:>6} {j:>22.15e} {:>9.1e} {m_val:>22.15e} {:>9.1e}",
                ((j - jq) / j).abs(),
                ((m_val - mq) / m_val).abs()
            );
        }
    }

    let r = integrate_halfline(|w: f64| 1.0 / (1.0 + w * w), 2.0, 1e-13)?;
    println!("\nint_0^inf dw/(1+w^2) = {:.16} (pi/2 = {:.16}), {} evaluations", r.value, std::f64::consts::FRAC_PI_2, r.evaluations);
    Ok(())
}
