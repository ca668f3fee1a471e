//! Spectrum and eigenfunctions in atomic units with λ = 2.

use pdem::{DeformationProfile, Eigenstate, PhysicalParams};

fn main() -> pdem::Result<()> {
    let params = PhysicalParams::atomic(2.0);
    for profile in [DeformationProfile::constant(), DeformationProfile::quadratic(0.1)?] {
        println!("profile {}", profile.name());
        let states: Vec<Eigenstate> = (0..4).map(|n| Eigenstate::new(n, &params, &profile)).collect::<pdem::Result<_>>()?;
        for s in &states {
            println!(
                "  n = {}  E = {:.4}  ψ(8) = {:+.6}  mass = {:.10}  ({:?} norm)",
                s.n(),
                s.energy(),
                s.eval(8.0),
                s.numerical_mass()?,
                s.norm_source()
            );
        }
        println!("  ⟨ψ0|ψ1⟩ = {:.2e}", states[0].overlap(&states[1])?);
    }
    Ok(())
}
