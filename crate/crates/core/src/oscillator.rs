//! The shifted-harmonic-oscillator sector: superpotential 𝒲, the potential
//! 𝒱_SHO, the similarity weight r, the spectrum and the eigenfunctions ψₙ.
//!
//! In ξ = μ(x) the Hamiltonian is an ordinary oscillator of frequency ω₀/4
//! centred on ξ* = 2λħ/(m₀ω₀). With
//!
//! ```text
//! y(x) = √(m₀ω₀/8ħ)·μ(x) − λ√(ħ/2m₀ω₀),   s = √2·y,
//! ```
//!
//! the k = ¼ states are the even oscillator levels:
//!
//! ```text
//! ψₙ(x) = (m₀ω₀/4ħ)^{1/4} · h₂ₙ(s) · U^{-1/2}(x),
//! ```
//!
//! where hₘ is the orthonormal Hermite function. Equivalently
//! ψₙ = Nₙ·H₂ₙ(√2·y)·e^{−y²}·U^{-1/2} with
//! Nₙ = (m₀ω₀/4πħ)^{1/4} / √(2^{2n}(2n)!).
//!
//! The weight r uses m₀ω₀μ²/(4ħ) in its first exponent term, so that
//! W = 𝒲 gives r ≡ 1 in any unit system.

use serde::{Deserialize, Serialize};

use crate::deformation::DeformationProfile;
use crate::numerics::{even_hermite_pos, hermite_functions, integrate, ln_gamma, QuadratureSpec};
use crate::operators::{gdoa_ladder, Grid, Sign, WINDOW_MARGIN};
use crate::{Error, Result};

/// Largest eigenstate index served by [`Eigenstate::new`].
pub const EIGENSTATE_CAP: usize = 400;

/// Bargmann index of the even-Hermite representation.
pub const BARGMANN_K: f64 = 0.25;

/// Largest |ln r| accepted before [`weight_r`] reports overflow.
pub const LOG_WEIGHT_GUARD: f64 = 700.0;

/// Beyond |s| = this + 4n + 1 every ψₙ underflows to zero.
const HERMITE_CUTOFF: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    pub hbar: f64,
    pub m0: f64,
    pub omega0: f64,
    pub lambda: f64,
}

impl PhysicalParams {
    pub fn new(hbar: f64, m0: f64, omega0: f64, lambda: f64) -> Result<Self> {
        for (name, v) in [("hbar", hbar), ("m0", m0), ("omega0", omega0)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::domain(format!("{name} must be positive and finite, got {v}")));
            }
        }
        if !lambda.is_finite() {
            return Err(Error::domain("lambda must be finite"));
        }
        Ok(Self { hbar, m0, omega0, lambda })
    }

    /// ħ = ω₀ = 1, m₀ = ½.
    pub fn atomic(lambda: f64) -> Self {
        Self { hbar: 1.0, m0: 0.5, omega0: 1.0, lambda }
    }

    /// ħ/√(2m₀), the coefficient of the deformed momentum in q̂±.
    pub fn kinetic_coefficient(&self) -> f64 {
        self.hbar / (2.0 * self.m0).sqrt()
    }

    pub fn hbar_omega(&self) -> f64 {
        self.hbar * self.omega0
    }

    /// The oscillator centre ξ* = 2λħ/(m₀ω₀), where y = 0.
    pub fn mu_star(&self) -> f64 {
        2.0 * self.lambda * self.hbar / (self.m0 * self.omega0)
    }

    pub fn y_of_mu(&self, mu: f64) -> f64 {
        (self.m0 * self.omega0 / (8.0 * self.hbar)).sqrt() * mu
            - self.lambda * (self.hbar / (2.0 * self.m0 * self.omega0)).sqrt()
    }

    /// (m₀ω₀/4ħ)^{1/4}, the ξ-space amplitude of the Hermite functions.
    pub fn xi_amplitude(&self) -> f64 {
        (self.m0 * self.omega0 / (4.0 * self.hbar)).powf(0.25)
    }
}

/// y(x) = √(m₀ω₀/8ħ)·μ(x) − λ√(ħ/2m₀ω₀).
pub fn y_coordinate(params: &PhysicalParams, profile: &DeformationProfile, x: f64) -> f64 {
    params.y_of_mu(profile.mu(x))
}

/// 𝒲(x) = (ω₀/4)√(m₀/2)·μ(x) − λħ/(2√(2m₀)).
pub fn superpotential(params: &PhysicalParams, profile: &DeformationProfile, x: f64) -> f64 {
    superpotential_of_mu(params, profile.mu(x))
}

pub fn superpotential_of_mu(params: &PhysicalParams, mu: f64) -> f64 {
    0.25 * params.omega0 * (0.5 * params.m0).sqrt() * mu
        - params.lambda * params.hbar / (2.0 * (2.0 * params.m0).sqrt())
}

/// d𝒲/dx = (ω₀/4)√(m₀/2)/U(x).
pub fn superpotential_derivative(params: &PhysicalParams, profile: &DeformationProfile, x: f64) -> f64 {
    0.25 * params.omega0 * (0.5 * params.m0).sqrt() / profile.u(x)
}

/// 𝒱_SHO(x) = (m₀ω₀²/2)·(μ(x)/4 − λħ/(2m₀ω₀))².
pub fn sho_potential(params: &PhysicalParams, profile: &DeformationProfile, x: f64) -> f64 {
    let d = profile.mu(x) / 4.0 - params.lambda * params.hbar / (2.0 * params.m0 * params.omega0);
    0.5 * params.m0 * params.omega0 * params.omega0 * d * d
}

/// 𝒲² − (ħ/√(2m₀))·U·𝒲′ + ħω₀/8, the factorized form of 𝒱_SHO.
pub fn sho_potential_factorized(params: &PhysicalParams, profile: &DeformationProfile, x: f64) -> f64 {
    let w = superpotential(params, profile, x);
    let wp = superpotential_derivative(params, profile, x);
    w * w - params.kinetic_coefficient() * profile.u(x) * wp + ground_energy(params)
}

/// ln r(x) = (m₀ω₀/4ħ)μ² − λμ − (2√(2m₀)/ħ)∫₀^μ W(μ′)dμ′.
pub fn log_weight_r<W: Fn(f64) -> f64>(
    w: W,
    params: &PhysicalParams,
    profile: &DeformationProfile,
    x: f64,
) -> Result<f64> {
    let mu = profile.mu(x);
    let integral = if mu == 0.0 {
        0.0
    } else {
        let (a, b, sign) = if mu > 0.0 { (0.0, mu, 1.0) } else { (mu, 0.0, -1.0) };
        sign * integrate(&w, &QuadratureSpec::new(a, b).with_tolerances(1e-14, 1e-14))?
    };
    Ok(params.m0 * params.omega0 * mu * mu / (4.0 * params.hbar) - params.lambda * mu
        - 2.0 * (2.0 * params.m0).sqrt() / params.hbar * integral)
}

/// r(x) = exp(ln r(x)), refusing values whose logarithm exceeds the guard.
pub fn weight_r<W: Fn(f64) -> f64>(
    w: W,
    params: &PhysicalParams,
    profile: &DeformationProfile,
    x: f64,
) -> Result<f64> {
    let lr = log_weight_r(w, params, profile, x)?;
    if lr.abs() > LOG_WEIGHT_GUARD {
        return Err(Error::Overflow(format!("ln r({x}) = {lr} exceeds ±{LOG_WEIGHT_GUARD}")));
    }
    Ok(lr.exp())
}

/// ℰₙ = (ħω₀/2)(n + ¼).
pub fn energy(n: usize, params: &PhysicalParams) -> f64 {
    0.5 * params.hbar_omega() * (n as f64 + BARGMANN_K)
}

pub fn ground_energy(params: &PhysicalParams) -> f64 {
    energy(0, params)
}

/// ln Nₙ for ψₙ = Nₙ·H₂ₙ(√2·y)·e^{−y²}·U^{-1/2}.
pub fn ln_closed_form_norm(n: usize, params: &PhysicalParams) -> f64 {
    let m = 2 * n;
    0.25 * (params.m0 * params.omega0 / (4.0 * std::f64::consts::PI * params.hbar)).ln()
        - 0.5 * (m as f64 * std::f64::consts::LN_2 + ln_gamma(m as f64 + 1.0).unwrap_or(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormSource {
    ClosedForm,
    Numerical,
}

/// The eigenstate |n, ¼⟩ as an evaluator for ψₙ(x).
#[derive(Debug, Clone)]
pub struct Eigenstate {
    n: usize,
    params: PhysicalParams,
    profile: DeformationProfile,
    ln_norm: f64,
    renorm: f64,
    norm_source: NormSource,
}

impl Eigenstate {
    pub fn new(n: usize, params: &PhysicalParams, profile: &DeformationProfile) -> Result<Self> {
        if n > EIGENSTATE_CAP {
            return Err(Error::CapExceeded { what: format!("eigenstate index {n}"), limit: EIGENSTATE_CAP });
        }
        let mut state = Self {
            n,
            params: *params,
            profile: profile.clone(),
            ln_norm: ln_closed_form_norm(n, params),
            renorm: 1.0,
            norm_source: NormSource::ClosedForm,
        };
        if !profile.has_full_line_mu() {
            let mass = state.xi_mass()?;
            if !(mass > 1e-300) || !mass.is_finite() {
                return Err(Error::Normalization(format!(
                    "ψ_{n} has mass {mass} on the μ-range of profile {}",
                    profile.name()
                )));
            }
            state.renorm = mass.sqrt().recip();
            state.norm_source = NormSource::Numerical;
        }
        Ok(state)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> f64 {
        BARGMANN_K
    }

    pub fn params(&self) -> &PhysicalParams {
        &self.params
    }

    pub fn profile(&self) -> &DeformationProfile {
        &self.profile
    }

    pub fn energy(&self) -> f64 {
        energy(self.n, &self.params)
    }

    /// Overall constant in front of H₂ₙ(√2·y)·e^{−y²}·U^{-1/2}.
    pub fn norm(&self) -> f64 {
        self.ln_norm.exp() * self.renorm
    }

    pub fn ln_norm(&self) -> f64 {
        self.ln_norm + self.renorm.ln()
    }

    pub fn norm_source(&self) -> NormSource {
        self.norm_source
    }

    /// Factor applied on top of the closed-form normalization (1 unless the
    /// μ-range is bounded).
    pub fn renormalization(&self) -> f64 {
        self.renorm
    }

    /// φ(ξ) = ψ(x)·U^{1/2}(x) as a function of ξ.
    pub fn eval_xi(&self, xi: f64) -> f64 {
        let s = std::f64::consts::SQRT_2 * self.params.y_of_mu(xi);
        if !(s.abs() < HERMITE_CUTOFF + (4 * self.n + 1) as f64) {
            return 0.0;
        }
        let h = hermite_functions(2 * self.n, s);
        self.params.xi_amplitude() * self.renorm * h[2 * self.n]
    }

    pub fn eval(&self, x: f64) -> f64 {
        let u = self.profile.u(x);
        if u.is_infinite() {
            return 0.0;
        }
        let phi = self.eval_xi(self.profile.mu(x));
        if phi == 0.0 || !phi.is_finite() && u == 0.0 {
            return 0.0;
        }
        phi / u.sqrt()
    }

    pub fn eval_many(&self, xs: &[f64]) -> Vec<f64> {
        xs.iter().map(|&x| self.eval(x)).collect()
    }

    /// ∫|φ|²dξ over the μ-range using the closed-form constant only.
    fn xi_mass(&self) -> Result<f64> {
        let d = self.profile.mu_domain();
        let amp = self.params.xi_amplitude();
        let n2 = 2 * self.n;
        let f = |xi: f64| {
            let s = std::f64::consts::SQRT_2 * self.params.y_of_mu(xi);
            let h = hermite_functions(n2, s)[n2] * amp;
            h * h
        };
        integrate(f, &QuadratureSpec::new(d.lo, d.hi).with_tolerances(1e-14, 1e-12))
    }

    /// ∫|ψₙ|²dx recomputed by quadrature in x.
    pub fn numerical_mass(&self) -> Result<f64> {
        let d = self.profile.x_domain();
        integrate(|x| self.eval(x).powi(2), &QuadratureSpec::new(d.lo, d.hi).with_tolerances(1e-14, 1e-12))
    }

    /// ⟨ψₙ|ψ_m⟩ by quadrature in x.
    pub fn overlap(&self, other: &Eigenstate) -> Result<f64> {
        let d = self.profile.x_domain();
        integrate(
            |x| self.eval(x) * other.eval(x),
            &QuadratureSpec::new(d.lo, d.hi).with_tolerances(1e-14, 1e-12),
        )
    }
}

/// The positive-coefficient form
/// √(√(m₀ω₀/ħ)/(2^{2n+1}Γ(2n+½)))·𝕳₂ₙ(y)·U^{-1/2}·e^{−y²}.
///
/// Kept for comparison: it is neither normalized nor orthogonal to the
/// eigenstates for n ≥ 1.
pub fn positive_hermite_form(
    n: usize,
    params: &PhysicalParams,
    profile: &DeformationProfile,
    x: f64,
) -> Result<f64> {
    let y = y_coordinate(params, profile, x);
    let m = 2 * n;
    let ln_c = 0.5
        * (0.5 * (params.m0 * params.omega0 / params.hbar).ln()
            - (m as f64 + 1.0) * std::f64::consts::LN_2
            - ln_gamma(m as f64 + 0.5)?);
    Ok(ln_c.exp() * even_hermite_pos(n, y)? * (-y * y).exp() / profile.u(x).sqrt())
}

/// Outcome of [`ladder_eigenstate_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct LadderReport {
    pub n: usize,
    pub n_points: usize,
    /// Max |ψₙ(ladder) − ψₙ(closed form)| over interior rows.
    pub max_deviation: f64,
    /// Interior rows used for the comparison.
    pub interior: std::ops::Range<usize>,
}

/// Build ψₙ by applying (q̂₊)² n times to ψ₀ on `grid`, fix its overall
/// constant by least squares against the closed form on the verification
/// window, and report the max deviation there.
pub fn ladder_eigenstate_check(
    n: usize,
    params: &PhysicalParams,
    profile: &DeformationProfile,
    grid: &Grid,
) -> Result<LadderReport> {
    check_resolution(params, profile, grid)?;
    let xs = grid.points();
    let ground = Eigenstate::new(0, params, profile)?;
    let target = Eigenstate::new(n, params, profile)?.eval_many(&xs);
    let mut v = ground.eval_many(&xs);
    let q_plus = gdoa_ladder(|x| superpotential(params, profile, x), params, profile, grid, Sign::Plus)?;
    let mut op_boundary = 0;
    for _ in 0..2 * n {
        v = q_plus.apply(&v);
        op_boundary += q_plus.bandwidth();
    }
    let interior = grid.window(WINDOW_MARGIN, op_boundary.max(q_plus.boundary_rows()));
    let (mut num, mut den) = (0.0, 0.0);
    for i in interior.clone() {
        num += target[i] * v[i];
        den += v[i] * v[i];
    }
    if !(den > 0.0) {
        return Err(Error::GridResolution("ladder route produced a vanishing state".into()));
    }
    let scale = num / den;
    let max_deviation = interior
        .clone()
        .map(|i| (scale * v[i] - target[i]).abs())
        .fold(0.0, f64::max);
    Ok(LadderReport { n, n_points: grid.n_points(), max_deviation, interior })
}

/// Requires at least four grid points per local oscillator length U·√(ħ/m₀Ω).
pub(crate) fn check_resolution(params: &PhysicalParams, profile: &DeformationProfile, grid: &Grid) -> Result<()> {
    let ell = (4.0 * params.hbar / (params.m0 * params.omega0)).sqrt();
    let h = grid.spacing();
    let worst = grid
        .points()
        .iter()
        .map(|&x| ell * profile.u(x) / h)
        .fold(f64::INFINITY, f64::min);
    if worst < 4.0 {
        return Err(Error::GridResolution(format!(
            "only {worst:.2} points per oscillator length on a grid with h = {h}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn atomic() -> PhysicalParams {
        PhysicalParams::atomic(2.0)
    }

    #[test]
    fn params_validation() {
        assert!(PhysicalParams::new(0.0, 1.0, 1.0, 0.0).is_err());
        assert!(PhysicalParams::new(1.0, -1.0, 1.0, 0.0).is_err());
        assert!(PhysicalParams::new(1.0, 1.0, 1.0, f64::NAN).is_err());
        assert_eq!(atomic().mu_star(), 8.0);
    }

    #[test]
    fn superpotential_values() {
        let p = atomic();
        let c = DeformationProfile::constant();
        assert_relative_eq!(superpotential(&p, &c, 0.0), -1.0, max_relative = 1e-15);
        assert!(superpotential(&p, &c, p.mu_star()).abs() < 1e-15);
        let p0 = PhysicalParams::new(1.3, 0.7, 2.1, 0.0).unwrap();
        assert_relative_eq!(superpotential(&p0, &c, 4.0), 2.1 * (0.35f64).sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn sho_values() {
        let p = atomic();
        let c = DeformationProfile::constant();
        assert_eq!(sho_potential(&p, &c, 8.0), 0.0);
        assert_relative_eq!(sho_potential(&PhysicalParams::atomic(0.0), &c, 4.0), 0.25, max_relative = 1e-15);
    }

    #[test]
    fn sho_two_forms_agree() {
        let profiles = [
            DeformationProfile::constant(),
            DeformationProfile::quadratic(1.0).unwrap(),
            DeformationProfile::quadratic(0.1).unwrap(),
            DeformationProfile::exponential(0.3).unwrap(),
        ];
        let params = [atomic(), PhysicalParams::new(1.7, 0.3, 2.2, -0.8).unwrap()];
        for prof in &profiles {
            for p in &params {
                for i in 0..100 {
                    let x = -5.0 + 0.13 * i as f64;
                    let a = sho_potential(p, prof, x);
                    let b = sho_potential_factorized(p, prof, x);
                    assert!((a - b).abs() <= 1e-10 * a.abs().max(1.0), "{} x={x}", prof.name());
                }
            }
        }
    }

    #[test]
    fn weight_cancels_for_the_oscillator_superpotential() {
        for prof in [DeformationProfile::constant(), DeformationProfile::quadratic(0.2).unwrap()] {
            for p in [atomic(), PhysicalParams::new(2.0, 0.4, 1.5, 0.7).unwrap()] {
                for x in [-3.0, 0.0, 1.0, 7.5] {
                    let r = weight_r(|mu| superpotential_of_mu(&p, mu), &p, &prof, x).unwrap();
                    assert!((r - 1.0).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn weight_with_zero_superpotential() {
        let p = PhysicalParams::new(1.0, 2.0, 3.0, 0.0).unwrap();
        let c = DeformationProfile::constant();
        let r = weight_r(|_| 0.0, &p, &c, 1.5).unwrap();
        assert_relative_eq!(r, (6.0 * 2.25 / 4.0f64).exp(), max_relative = 1e-14);
        assert!(matches!(weight_r(|_| 0.0, &p, &c, 40.0), Err(Error::Overflow(_))));
    }

    #[test]
    fn log_weight_derivative() {
        let p = atomic();
        let c = DeformationProfile::constant();
        let w = |mu: f64| 0.3 * mu.sin();
        let h = 1e-4;
        for mu in [-2.0, 0.5, 3.0] {
            let fd = (log_weight_r(w, &p, &c, mu + h).unwrap() - log_weight_r(w, &p, &c, mu - h).unwrap()) / (2.0 * h);
            let exact = p.m0 * p.omega0 * mu / (2.0 * p.hbar) - p.lambda - 2.0 * (2.0 * p.m0).sqrt() / p.hbar * w(mu);
            assert!((fd - exact).abs() < 1e-6);
        }
    }

    #[test]
    fn spectrum() {
        let p = atomic();
        assert_eq!(energy(0, &p), 0.125);
        assert_eq!(energy(1, &p), 0.625);
        for n in 0..50 {
            assert_eq!(energy(n + 1, &p) - energy(n, &p), 0.5);
            assert_eq!(energy(n, &p) - energy(0, &p), n as f64 * 0.5);
        }
    }

    #[test]
    fn eigenstates_are_orthonormal() {
        let p = atomic();
        let c = DeformationProfile::constant();
        for n in [0, 1, 2, 5] {
            let e = Eigenstate::new(n, &p, &c).unwrap();
            assert_eq!(e.norm_source(), NormSource::ClosedForm);
            assert!((e.numerical_mass().unwrap() - 1.0).abs() < 1e-7, "n={n}");
        }
        for n in 0..=4 {
            for m in 0..n {
                let a = Eigenstate::new(n, &p, &c).unwrap();
                let b = Eigenstate::new(m, &p, &c).unwrap();
                assert!(a.overlap(&b).unwrap().abs() < 1e-7);
            }
        }
    }

    #[test]
    fn closed_form_norm_matches_hermite_integral() {
        // ∫H_{2n}(y)² e^{−2y²} dy = 2^{2n−½} Γ(2n+½).
        for n in 0..6 {
            let m = 2 * n;
            let numeric = integrate(
                |y| {
                    let h = crate::numerics::hermite_phys(m, y).unwrap();
                    h * h * (-2.0 * y * y).exp()
                },
                &QuadratureSpec::real_line(),
            )
            .unwrap();
            let table = ((m as f64 - 0.5) * std::f64::consts::LN_2 + ln_gamma(m as f64 + 0.5).unwrap()).exp();
            assert!((numeric / table - 1.0).abs() < 1e-8, "n={n}");
        }
    }

    #[test]
    fn closed_form_constant_matches_hermite_function_route() {
        let p = PhysicalParams::new(1.3, 0.8, 1.9, 0.6).unwrap();
        let c = DeformationProfile::constant();
        for n in 0..6 {
            let e = Eigenstate::new(n, &p, &c).unwrap();
            for x in [-1.0, 0.3, 2.0] {
                let y = y_coordinate(&p, &c, x);
                let direct = e.norm()
                    * crate::numerics::hermite_phys(2 * n, std::f64::consts::SQRT_2 * y).unwrap()
                    * (-y * y).exp();
                assert!((direct - e.eval(x)).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn ground_state_is_the_shifted_gaussian() {
        let p = atomic();
        let c = DeformationProfile::constant();
        let e = Eigenstate::new(0, &p, &c).unwrap();
        let a = p.m0 * p.omega0 / (8.0 * p.hbar);
        let g = |x: f64| (-a * x * x + p.lambda * x / 2.0).exp();
        let ratio = e.eval(3.0) / g(3.0);
        for x in [-2.0, 5.0, 8.0, 12.0] {
            assert_relative_eq!(e.eval(x) / g(x), ratio, max_relative = 1e-12);
        }
    }

    #[test]
    fn ground_density_peaks_at_the_centre() {
        let p = atomic();
        let e = Eigenstate::new(0, &p, &DeformationProfile::constant()).unwrap();
        let xs: Vec<f64> = (0..=2800).map(|i| -6.0 + 0.01 * i as f64).collect();
        let best = xs.iter().cloned().fold((0.0, f64::MIN), |acc, x| {
            let d = e.eval(x).powi(2);
            if d > acc.1 { (x, d) } else { acc }
        });
        assert!((best.0 - 8.0).abs() < 0.011);
    }

    #[test]
    fn eigenfunctions_are_even_in_y() {
        let p = atomic();
        let c = DeformationProfile::constant();
        for n in 0..6 {
            let e = Eigenstate::new(n, &p, &c).unwrap();
            for d in [0.3, 1.7, 4.0, 9.0] {
                let (a, b) = (e.eval(8.0 + d), e.eval(8.0 - d));
                assert!((a - b).abs() <= 1e-13 * a.abs().max(1e-300));
            }
            assert!(e.eval(8.0 + 1e-3 * n as f64).signum() == if n % 2 == 0 { 1.0 } else { -1.0 });
        }
    }

    #[test]
    fn bounded_profiles_renormalize() {
        let p = atomic();
        let q = DeformationProfile::quadratic(0.1).unwrap();
        let e = Eigenstate::new(1, &p, &q).unwrap();
        assert_eq!(e.norm_source(), NormSource::Numerical);
        assert!((e.numerical_mass().unwrap() - 1.0).abs() < 1e-7);
        let x = DeformationProfile::exponential(0.2).unwrap();
        let e = Eigenstate::new(2, &p, &x).unwrap();
        assert!((e.numerical_mass().unwrap() - 1.0).abs() < 1e-7);
    }

    #[test]
    fn eigenstate_cap() {
        let p = atomic();
        let c = DeformationProfile::constant();
        assert!(Eigenstate::new(EIGENSTATE_CAP, &p, &c).is_ok());
        assert!(matches!(Eigenstate::new(EIGENSTATE_CAP + 1, &p, &c), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn positive_form_is_not_an_orthonormal_family() {
        let p = atomic();
        let c = DeformationProfile::constant();
        let quad = QuadratureSpec::real_line();
        let norm1 = integrate(|x| positive_hermite_form(1, &p, &c, x).unwrap().powi(2), &quad).unwrap();
        assert_relative_eq!(norm1, 11.0 / 3.0, max_relative = 1e-8);
        let overlap = integrate(
            |x| positive_hermite_form(0, &p, &c, x).unwrap() * positive_hermite_form(1, &p, &c, x).unwrap(),
            &quad,
        )
        .unwrap();
        assert!(overlap.abs() > 0.1);
        // n = 0 agrees with the eigenstate.
        let e = Eigenstate::new(0, &p, &c).unwrap();
        assert_relative_eq!(positive_hermite_form(0, &p, &c, 5.0).unwrap(), e.eval(5.0), max_relative = 1e-12);
    }

    #[test]
    fn ladder_route_n0_is_exact() {
        let p = atomic();
        let g = Grid::new(-6.0, 22.0, 801).unwrap();
        let r = ladder_eigenstate_check(0, &p, &DeformationProfile::constant(), &g).unwrap();
        assert!(r.max_deviation < 1e-14);
    }

    #[test]
    fn ladder_route_rejects_coarse_grids() {
        let p = atomic();
        let g = Grid::new(-6.0, 22.0, 20).unwrap();
        assert!(matches!(
            ladder_eigenstate_check(1, &p, &DeformationProfile::constant(), &g),
            Err(Error::GridResolution(_))
        ));
    }
}
