//! Log-gamma, Hermite polynomials and the two quadrature paths.

use pdem::numerics::{hermite_phys, ln_gamma, integrate, GaussHermite, QuadratureSpec};

fn main() -> pdem::Result<()> {
    for x in [0.5, 1.0, 10.5, 171.0] {
        println!("ln Γ({x}) = {:.15}", ln_gamma(x)?);
    }
    for n in [0, 1, 2, 4] {
        println!("H_{n}(0.7) = {}", hermite_phys(n, 0.7)?);
    }

    let gauss = integrate(|x: f64| (-x * x).exp(), &QuadratureSpec::real_line())?;
    let gh = GaussHermite::new(20)?.integrate(|x| x.powi(4));
    println!("∫exp(-x²) = {gauss:.15} (√π = {:.15})", std::f64::consts::PI.sqrt());
    println!("∫x⁴exp(-x²) by Gauss-Hermite = {gh:.15} (3√π/4 = {:.15})", 0.75 * std::f64::consts::PI.sqrt());
    Ok(())
}
