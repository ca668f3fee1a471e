//! Barut–Girardello coherent states of the k = ¼ representation.
//!
//! ```text
//! |α⟩ = √(√π / cosh 2|α|) · Σₙ αⁿ / √(n! Γ(n+½)) · |n, ¼⟩
//! ```
//!
//! Densities are evaluated by two independent routes: the coefficient sum
//! Σ cₙ ψₙ(x) (route A), and a single-prefactor Hermite series (route B):
//!
//! ```text
//! Ξ = N_α (m₀ω₀/4ħ)^{1/4} U^{-1/2} e^{−y²} Σₙ (α/4)ⁿ H₂ₙ(√2·y) / (n! Γ(n+½)).
//! ```

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::deformation::DeformationProfile;
use crate::numerics::{hermite_functions, ln_cosh, ln_gamma, sum_series, tanh_sech2, SeriesSpec};
use crate::operators::number_basis;
use crate::oscillator::{energy, Eigenstate, PhysicalParams, BARGMANN_K};
use crate::{Error, Result};

pub const ALPHA_MAX: f64 = 50.0;
pub const TRUNCATION_CAP: usize = 400;
pub const DEFAULT_TOL: f64 = 1e-12;
/// Dropped probability above which densities carry a truncation warning.
pub const WARN_TAIL: f64 = 1e-8;

const LN_SQRT_PI: f64 = 0.572_364_942_924_700_1;

/// ln 𝔇ₙ = ln(√π |α|^{2n} / (n! Γ(n+½) cosh 2|α|)).
fn ln_distribution(abs_alpha: f64, n: usize) -> f64 {
    if abs_alpha == 0.0 {
        return if n == 0 { 0.0 } else { f64::NEG_INFINITY };
    }
    let nf = n as f64;
    LN_SQRT_PI + 2.0 * nf * abs_alpha.ln()
        - ln_gamma(nf + 1.0).expect("positive argument")
        - ln_gamma(nf + 0.5).expect("positive argument")
        - ln_cosh(2.0 * abs_alpha)
}

fn coefficient(alpha: Complex64, n: usize) -> Complex64 {
    let mag = (0.5 * ln_distribution(alpha.norm(), n)).exp();
    if mag == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    Complex64::from_polar(mag, n as f64 * alpha.arg())
}

#[derive(Debug, Clone)]
pub struct CoherentState {
    alpha: Complex64,
    params: PhysicalParams,
    profile: DeformationProfile,
    coeffs: Vec<Complex64>,
    tail: f64,
    renorms: Vec<f64>,
}

fn check_alpha(alpha: Complex64) -> Result<()> {
    if !(alpha.re.is_finite() && alpha.im.is_finite()) {
        return Err(Error::domain(format!("non-finite label α = {alpha}")));
    }
    if alpha.norm() > ALPHA_MAX {
        return Err(Error::CapExceeded { what: format!("|α| = {}", alpha.norm()), limit: ALPHA_MAX as usize });
    }
    Ok(())
}

/// Dropped probability Σ_{n≥N} 𝔇ₙ for every N ≤ cap + 1.
fn tails(abs_alpha: f64) -> Vec<f64> {
    // Terms beyond the cap are negligible for |α| ≤ 50.
    let top = TRUNCATION_CAP + 40;
    let d: Vec<f64> = (0..=top).map(|n| ln_distribution(abs_alpha, n).exp()).collect();
    let mut tail = vec![0.0; top + 2];
    for n in (0..=top).rev() {
        tail[n] = tail[n + 1] + d[n];
    }
    tail
}

/// Smallest N with dropped probability below `tol` and a lowering-operator
/// residual |α·c_{N−1}| below `tol`.
pub fn build_cs(alpha: Complex64, params: &PhysicalParams, profile: &DeformationProfile, tol: f64) -> Result<CoherentState> {
    if !(tol > 0.0) {
        return Err(Error::domain(format!("truncation tolerance must be positive, got {tol}")));
    }
    check_alpha(alpha)?;
    let a = alpha.norm();
    let tail = tails(a);
    let n_trunc = (1..=TRUNCATION_CAP)
        .find(|&n| tail[n] < tol && a * (0.5 * ln_distribution(a, n - 1)).exp() < tol)
        .ok_or(Error::CapExceeded { what: format!("truncation order for |α| = {a}"), limit: TRUNCATION_CAP })?;
    CoherentState::assemble(alpha, params, profile, n_trunc, tail[n_trunc])
}

impl CoherentState {
    /// Fixed truncation order, as used for figure reproduction.
    pub fn with_truncation(
        alpha: Complex64,
        params: &PhysicalParams,
        profile: &DeformationProfile,
        n_trunc: usize,
    ) -> Result<Self> {
        check_alpha(alpha)?;
        if n_trunc == 0 || n_trunc > TRUNCATION_CAP {
            return Err(Error::CapExceeded { what: format!("truncation order {n_trunc}"), limit: TRUNCATION_CAP });
        }
        let tail = tails(alpha.norm())[n_trunc];
        Self::assemble(alpha, params, profile, n_trunc, tail)
    }

    fn assemble(
        alpha: Complex64,
        params: &PhysicalParams,
        profile: &DeformationProfile,
        n_trunc: usize,
        tail: f64,
    ) -> Result<Self> {
        let coeffs = (0..n_trunc).map(|n| coefficient(alpha, n)).collect();
        let renorms = if profile.has_full_line_mu() {
            vec![1.0; n_trunc]
        } else {
            (0..n_trunc)
                .map(|n| Eigenstate::new(n, params, profile).map(|e| e.renormalization()))
                .collect::<Result<_>>()?
        };
        Ok(Self { alpha, params: *params, profile: profile.clone(), coeffs, tail, renorms })
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn k(&self) -> f64 {
        BARGMANN_K
    }

    pub fn n_trunc(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn params(&self) -> &PhysicalParams {
        &self.params
    }

    pub fn profile(&self) -> &DeformationProfile {
        &self.profile
    }

    /// Σ_{n ≥ N_trunc} 𝔇ₙ.
    pub fn tail(&self) -> f64 {
        self.tail
    }

    /// Σ_{n < N_trunc} |cₙ|².
    pub fn retained_probability(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn distribution(&self, n: usize) -> f64 {
        distribution(self, n)
    }

    pub fn truncation_warning(&self) -> Option<String> {
        (self.tail > WARN_TAIL).then(|| {
            format!(
                "truncation at N = {} drops probability {:.3e} for α = {}",
                self.n_trunc(),
                self.tail,
                self.alpha
            )
        })
    }

    pub fn density(&self, xs: &[f64]) -> Vec<f64> {
        self.expansion(0.0).density_route_a(xs)
    }

    pub fn density_route_b(&self, xs: &[f64]) -> Result<Vec<f64>> {
        self.expansion(0.0).density_route_b(xs)
    }

    fn expansion(&self, t: f64) -> Expansion<'_> {
        let w = self.params.omega0 * t;
        let rot = Complex64::from_polar(1.0, -0.5 * w);
        Expansion {
            cs: self,
            label: self.alpha * rot,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c * Complex64::from_polar(1.0, -0.5 * w * n as f64))
                .collect(),
            phase: Complex64::from_polar(1.0, -w / 8.0),
        }
    }
}

/// 𝔇ₙ = √π |α|^{2n} / (n! Γ(n+½) cosh 2|α|), for any n.
pub fn distribution(cs: &CoherentState, n: usize) -> f64 {
    ln_distribution(cs.alpha.norm(), n).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnergyMoments {
    pub mean_h: f64,
    pub mean_h2: f64,
    pub var_h: f64,
}

/// Closed forms of ⟨ℋ̂⟩, ⟨ℋ̂²⟩ and (Δℋ̂)².
pub fn energy_moments(cs: &CoherentState) -> EnergyMoments {
    let a = cs.alpha.norm();
    let ho = cs.params.hbar_omega();
    let (t, sech2) = tanh_sech2(2.0 * a);
    EnergyMoments {
        mean_h: ho / 8.0 * (1.0 + 4.0 * a * t),
        mean_h2: ho * ho / 64.0 * (1.0 + 16.0 * a * a + 16.0 * a * t),
        var_h: ho * ho / 64.0 * (8.0 * a * t + 16.0 * a * a * sech2),
    }
}

/// The same moments as Σ ℰₙᵖ 𝔇ₙ (variance as Σ (ℰₙ − ⟨ℋ̂⟩)² 𝔇ₙ).
pub fn energy_moments_series(cs: &CoherentState, tol: f64) -> Result<EnergyMoments> {
    let a = cs.alpha.norm();
    let min_terms = a.ceil() as usize + 2;
    let d = |n: usize| ln_distribution(a, n).exp();
    let e = |n: usize| energy(n, &cs.params);
    let run = |f: &dyn Fn(usize) -> f64| -> Result<f64> {
        Ok(sum_series(SeriesSpec::new(f, tol, 100_000).with_min_terms(min_terms))?.value)
    };
    let mean_h = run(&|n| e(n) * d(n))?;
    let mean_h2 = run(&|n| e(n) * e(n) * d(n))?;
    let var_h = run(&|n| (e(n) - mean_h).powi(2) * d(n))?;
    Ok(EnergyMoments { mean_h, mean_h2, var_h })
}

/// ‖𝒦₋c − αc‖ for the truncated coefficient vector.
pub fn lowering_residual(cs: &CoherentState) -> f64 {
    let c = &cs.coeffs;
    let n = c.len();
    (0..n)
        .map(|i| {
            let lowered = if i + 1 < n {
                c[i + 1] * (((i + 1) as f64) * (i as f64 + 0.5)).sqrt()
            } else {
                Complex64::new(0.0, 0.0)
            };
            (lowered - cs.alpha * c[i]).norm_sqr()
        })
        .sum::<f64>()
        .sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Uncertainty {
    pub dx: f64,
    pub dp: f64,
    pub product: f64,
    /// |⟨ℋ̂⟩|/(ħω₀).
    pub bound: f64,
    /// ΔX² + ΔP² − 2⟨ℋ̂⟩/(ħω₀).
    pub sum_check: f64,
}

/// ΔX, ΔP from the number-basis matrices of dimension `n_max`.
pub fn xp_uncertainty(cs: &CoherentState, n_max: usize) -> Result<Uncertainty> {
    if n_max < cs.n_trunc() + 2 {
        return Err(Error::Truncation(format!(
            "basis dimension {n_max} must exceed the truncation order {} by at least 2",
            cs.n_trunc()
        )));
    }
    if cs.tail > 1e-10 {
        return Err(Error::Truncation(format!("state drops probability {:.3e} > 1e-10", cs.tail)));
    }
    let rep = number_basis(&cs.params, n_max)?;
    let v = rep.embed(&cs.coeffs)?;
    let var = |m: &nalgebra::DMatrix<Complex64>| {
        let mv = m * &v;
        let nrm = v.norm_squared();
        let mean = v.dotc(&mv).re / nrm;
        (mv.norm_squared() / nrm - mean * mean).max(0.0)
    };
    let (vx, vp) = (var(&rep.x), var(&rep.p));
    let mean_h = energy_moments(cs).mean_h;
    let ho = cs.params.hbar_omega();
    Ok(Uncertainty {
        dx: vx.sqrt(),
        dp: vp.sqrt(),
        product: (vx * vp).sqrt(),
        bound: mean_h.abs() / ho,
        sum_check: vx + vp - 2.0 * mean_h / ho,
    })
}

/// A coherent state after time t.
#[derive(Debug, Clone)]
pub struct EvolvedState {
    base: CoherentState,
    t: f64,
    global_phase: Complex64,
}

/// α ↦ α e^{−iω₀t/2}, with global phase e^{−iω₀t/8}.
pub fn evolve(cs: &CoherentState, t: f64) -> EvolvedState {
    EvolvedState {
        base: cs.clone(),
        t,
        global_phase: Complex64::from_polar(1.0, -cs.params.omega0 * t / 8.0),
    }
}

impl EvolvedState {
    pub fn base(&self) -> &CoherentState {
        &self.base
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn global_phase(&self) -> Complex64 {
        self.global_phase
    }

    pub fn alpha(&self) -> Complex64 {
        self.base.expansion(self.t).label
    }

    /// cₙ(t) = cₙ e^{−iω₀tn/2}, without the global phase.
    pub fn coeffs(&self) -> Vec<Complex64> {
        self.base.expansion(self.t).coeffs
    }

    pub fn distribution(&self, n: usize) -> f64 {
        distribution(&self.base, n)
    }

    pub fn density(&self, xs: &[f64]) -> Vec<f64> {
        self.base.expansion(self.t).density_route_a(xs)
    }

    pub fn density_route_b(&self, xs: &[f64]) -> Result<Vec<f64>> {
        self.base.expansion(self.t).density_route_b(xs)
    }
}

struct Expansion<'a> {
    cs: &'a CoherentState,
    label: Complex64,
    coeffs: Vec<Complex64>,
    phase: Complex64,
}

impl Expansion<'_> {
    fn amplitude_a(&self, x: f64) -> Complex64 {
        let cs = self.cs;
        let p = &cs.params;
        let s = std::f64::consts::SQRT_2 * p.y_of_mu(cs.profile.mu(x));
        let h = hermite_functions(2 * (self.coeffs.len() - 1), s);
        let sum: Complex64 = self
            .coeffs
            .iter()
            .zip(&cs.renorms)
            .enumerate()
            .map(|(n, (c, r))| c * (h[2 * n] * r))
            .sum();
        self.phase * sum * (p.xi_amplitude() / cs.profile.u(x).sqrt())
    }

    fn amplitude_b(&self, x: f64) -> Complex64 {
        let cs = self.cs;
        let p = &cs.params;
        let y = p.y_of_mu(cs.profile.mu(x));
        let s = std::f64::consts::SQRT_2 * y;
        let a = self.label.norm();
        let theta = self.label.arg();
        let n_terms = if a == 0.0 { 1 } else { self.coeffs.len() };
        let hermite = even_hermite_log(n_terms, s);
        let terms: Vec<(f64, Complex64)> = hermite
            .iter()
            .enumerate()
            .map(|(n, &(ln_h, sign))| {
                let nf = n as f64;
                let ln_alpha = if n == 0 { 0.0 } else { nf * (a / 4.0).ln() };
                let ln_mag = ln_h + ln_alpha
                    - ln_gamma(nf + 1.0).expect("positive")
                    - ln_gamma(nf + 0.5).expect("positive");
                (ln_mag, Complex64::from_polar(sign, nf * theta))
            })
            .collect();
        let top = terms.iter().map(|t| t.0).fold(f64::NEG_INFINITY, f64::max);
        let sum: Complex64 = terms.iter().map(|(l, ph)| ph * (l - top).exp()).sum();
        let ln_norm = 0.5 * (LN_SQRT_PI - ln_cosh(2.0 * a));
        let scale = (ln_norm + top - y * y).exp() * p.xi_amplitude() / cs.profile.u(x).sqrt();
        self.phase * sum * scale
    }

    fn density_route_a(&self, xs: &[f64]) -> Vec<f64> {
        xs.par_iter().map(|&x| self.amplitude_a(x).norm_sqr()).collect()
    }

    fn density_route_b(&self, xs: &[f64]) -> Result<Vec<f64>> {
        if !self.cs.profile.has_full_line_mu() {
            return Err(Error::domain(format!(
                "the Hermite-series route needs μ onto ℝ; profile {} has a bounded μ-range",
                self.cs.profile.name()
            )));
        }
        Ok(xs.par_iter().map(|&x| self.amplitude_b(x).norm_sqr()).collect())
    }
}

/// (ln|H₂ₙ(s)|, sign H₂ₙ(s)) for n = 0 … count − 1, overflow-free.
fn even_hermite_log(count: usize, s: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(count);
    let mut ln_scale = 0.0;
    let (mut prev, mut curr) = (0.0, 1.0);
    out.push((0.0, 1.0));
    let top = 2 * count.saturating_sub(1);
    for m in 0..top {
        let next = 2.0 * s * curr - 2.0 * m as f64 * prev;
        prev = curr;
        curr = next;
        if curr.abs() > 1e150 {
            prev *= 1e-150;
            curr *= 1e-150;
            ln_scale += 150.0 * std::f64::consts::LN_10;
        }
        if (m + 1) % 2 == 0 {
            out.push(if curr == 0.0 {
                (f64::NEG_INFINITY, 1.0)
            } else {
                (curr.abs().ln() + ln_scale, curr.signum())
            });
        }
    }
    out
}
