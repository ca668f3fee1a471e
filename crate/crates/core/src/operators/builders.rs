use crate::deformation::DeformationProfile;
use crate::oscillator::{log_weight_r, sho_potential, superpotential, PhysicalParams, LOG_WEIGHT_GUARD};
use crate::{Error, Result};

use super::grid::{Grid, GridOperator};

/// Which member of a ladder pair to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    fn suffix(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "−",
        }
    }
}

fn check_grid(profile: &DeformationProfile, grid: &Grid) -> Result<()> {
    let d = profile.x_domain();
    if !(d.contains(grid.x_min()) && d.contains(grid.x_max())) {
        return Err(Error::domain(format!(
            "grid [{}, {}] leaves the domain of profile {}",
            grid.x_min(),
            grid.x_max(),
            profile.name()
        )));
    }
    Ok(())
}

/// D = √U d/dx √U: sample g = √U·f, take second-order central differences,
/// multiply by √U. The first and last rows use one-sided stencils.
pub fn deformed_derivative(profile: &DeformationProfile, grid: &Grid) -> Result<GridOperator> {
    check_grid(profile, grid)?;
    let n = grid.n_points();
    let h2 = 2.0 * grid.spacing();
    let r: Vec<f64> = grid.sample(|x| profile.u(x).sqrt());
    let mut d = GridOperator::zeros(n, 2, 2, "D");
    for i in 1..n - 1 {
        d.set(i, i - 1, -r[i] * r[i - 1] / h2);
        d.set(i, i + 1, r[i] * r[i + 1] / h2);
    }
    d.set(0, 0, -3.0 * r[0] * r[0] / h2);
    d.set(0, 1, 4.0 * r[0] * r[1] / h2);
    d.set(0, 2, -r[0] * r[2] / h2);
    let l = n - 1;
    d.set(l, l, 3.0 * r[l] * r[l] / h2);
    d.set(l, l - 1, -4.0 * r[l] * r[l - 1] / h2);
    d.set(l, l - 2, r[l] * r[l - 2] / h2);
    d.set_boundary_rows(1);
    Ok(d)
}

/// q̂± = ∓(ħ/√(2m₀))·D + W(x).
pub fn gdoa_ladder<W: Fn(f64) -> f64>(
    w: W,
    params: &PhysicalParams,
    profile: &DeformationProfile,
    grid: &Grid,
    sign: Sign,
) -> Result<GridOperator> {
    let d = deformed_derivative(profile, grid)?;
    let wd = GridOperator::diagonal(&grid.sample(w), "W");
    Ok(d
        .scale(-sign.value() * params.kinetic_coefficient())
        .add(&wd)
        .with_label(format!("q{}", sign.suffix())))
}

/// 𝒬̂± = (q̂±)²/√(ħω₀) with W = 𝒲.
pub fn su11_ladder(
    params: &PhysicalParams,
    profile: &DeformationProfile,
    grid: &Grid,
    sign: Sign,
) -> Result<GridOperator> {
    let q = gdoa_ladder(|x| superpotential(params, profile, x), params, profile, grid, sign)?;
    Ok(q.compose(&q)
        .scale(params.hbar_omega().sqrt().recip())
        .with_label(format!("Q{}", sign.suffix())))
}

/// ℋ̂ = −(ħ²/2m₀)·D∘D + 𝒱_SHO.
pub fn hamiltonian(params: &PhysicalParams, profile: &DeformationProfile, grid: &Grid) -> Result<GridOperator> {
    let d = deformed_derivative(profile, grid)?;
    let c2 = params.kinetic_coefficient().powi(2);
    let v = GridOperator::diagonal(&grid.sample(|x| sho_potential(params, profile, x)), "V");
    Ok(d.compose(&d).scale(-c2).add(&v).with_label("H"))
}

/// (ħω₀)^{1/4}·R^{∓1/2}·op·R^{±1/2} with R = 1/r(x) built from `w`.
pub fn similarity_conjugate<W: Fn(f64) -> f64>(
    op: &GridOperator,
    w: W,
    params: &PhysicalParams,
    profile: &DeformationProfile,
    grid: &Grid,
    sign: Sign,
) -> Result<GridOperator> {
    if op.dim() != grid.n_points() {
        return Err(Error::domain("operator and grid sizes differ"));
    }
    let mut log_r = Vec::with_capacity(grid.n_points());
    for x in grid.points() {
        let lr = log_weight_r(&w, params, profile, x)?;
        if lr.abs() > LOG_WEIGHT_GUARD {
            return Err(Error::Overflow(format!("ln r({x}) = {lr} exceeds ±{LOG_WEIGHT_GUARD}")));
        }
        log_r.push(lr);
    }
    // ln R = −ln r; left factor R^{∓1/2}, right factor R^{±1/2}.
    let s = sign.value();
    let left: Vec<f64> = log_r.iter().map(|lr| 0.5 * s * lr).collect();
    let right: Vec<f64> = log_r.iter().map(|lr| -0.5 * s * lr).collect();
    Ok(op
        .conjugate_diagonal(&left, &right)
        .scale(params.hbar_omega().powf(0.25))
        .with_label(format!("T{}({})", sign.suffix(), op.label())))
}
