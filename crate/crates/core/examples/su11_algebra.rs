//! The ladder algebra on a grid and in the number basis.

use num_complex::Complex64;
use pdem::cli::verify::{closure_residual, eigen_residual};
use pdem::operators::{commutator, number_basis};
use pdem::oscillator::energy;
use pdem::{DeformationProfile, Grid, PhysicalParams};

fn main() -> pdem::Result<()> {
    let params = PhysicalParams::atomic(2.0);
    let profile = DeformationProfile::quadratic(0.1)?;
    for n in [401, 801, 1601] {
        let g = Grid::new(-6.0, 22.0, n)?;
        println!(
            "{n:5} points: ‖Hψ1 − E1ψ1‖ = {:.3e}  ‖[Q−,Q+]f − Hf‖ = {:.3e}",
            eigen_residual(&params, &profile, 1, energy(1, &params), &g)?,
            closure_residual(&params, &profile, &g)?
        );
    }

    let rep = number_basis(&params, 12)?;
    let target = nalgebra::DMatrix::identity(rep.dim, rep.dim) * Complex64::new(-3.0 / 16.0, 0.0);
    println!("Casimir deviation from −3/16: {:.1e}", rep.max_difference(&rep.casimir(true), &target));
    let k0 = &rep.k0 * Complex64::new(2.0, 0.0);
    println!("[K−,K+] − 2K0: {:.1e}", rep.max_difference(&commutator(&rep.k_minus, &rep.k_plus), &k0));
    Ok(())
}
