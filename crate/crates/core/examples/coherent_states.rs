//! Barut-Girardello states: truncation, moments and uncertainties.

use num_complex::Complex64;
use pdem::coherent::{build_cs, energy_moments, lowering_residual, xp_uncertainty, DEFAULT_TOL};
use pdem::{DeformationProfile, PhysicalParams};

fn main() -> pdem::Result<()> {
    let params = PhysicalParams::atomic(2.0);
    let profile = DeformationProfile::constant();
    for alpha in [Complex64::new(0.5, 0.0), Complex64::new(1.0, 0.0), Complex64::new(-2.0, 1.5)] {
        let cs = build_cs(alpha, &params, &profile, DEFAULT_TOL)?;
        let m = energy_moments(&cs);
        let u = xp_uncertainty(&cs, cs.n_trunc() + 8)?;
        println!("α = {alpha}: N = {}, ‖K−c − αc‖ = {:.1e}", cs.n_trunc(), lowering_residual(&cs));
        println!("  ⟨H⟩ = {:.9}  ⟨H²⟩ = {:.9}  ΔH² = {:.9}", m.mean_h, m.mean_h2, m.var_h);
        println!("  ΔXΔP = {:.6} ≥ {:.6}", u.product, u.bound);
    }
    Ok(())
}
