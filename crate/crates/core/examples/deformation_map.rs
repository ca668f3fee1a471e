//! The coordinate change ξ = μ(x) for the shipped deformation profiles.

use pdem::deformation::{mass, mu_inverse};
use pdem::DeformationProfile;

fn main() -> pdem::Result<()> {
    let profiles = [
        DeformationProfile::constant(),
        DeformationProfile::quadratic(0.1)?,
        DeformationProfile::exponential(0.3)?,
    ];
    for p in &profiles {
        let d = p.mu_domain();
        println!("{}: μ-range ({}, {})", p.name(), d.lo, d.hi);
        for x in [-4.0, 0.0, 2.0, 6.0] {
            let xi = p.mu(x);
            println!(
                "  x = {x:5.1}  U = {:8.4}  m = {:8.4}  μ = {xi:9.5}  back = {:9.5}",
                p.u(x),
                mass(p, x)?,
                mu_inverse(p, xi)?
            );
        }
    }
    Ok(())
}
