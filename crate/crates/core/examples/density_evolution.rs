//! Time evolution of a coherent-state density, computed two ways.

use num_complex::Complex64;
use pdem::coherent::{build_cs, evolve};
use pdem::{DeformationProfile, PhysicalParams};

fn main() -> pdem::Result<()> {
    let params = PhysicalParams::atomic(2.0);
    let cs = build_cs(Complex64::new(1.0, 0.0), &params, &DeformationProfile::constant(), 1e-12)?;
    let xs: Vec<f64> = (0..=16).map(|i| -8.0 + 2.0 * i as f64).collect();
    let period = 4.0 * std::f64::consts::PI / params.omega0;
    for t in [0.0, 3.0, 5.0, 7.0, period] {
        let state = evolve(&cs, t);
        let a = state.density(&xs);
        let b = state.density_route_b(&xs)?;
        let gap = a.iter().zip(&b).map(|(p, q)| (p - q).abs()).fold(0.0, f64::max);
        let row: Vec<String> = a.iter().map(|v| format!("{v:.4}")).collect();
        println!("t = {t:6.3}  routes differ by {gap:.1e}  ρ = [{}]", row.join(" "));
    }
    Ok(())
}
