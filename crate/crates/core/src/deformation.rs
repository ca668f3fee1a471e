//! Deforming function `U(x)`, position-dependent mass `M = 1/U²`, the point
//! transformation `ξ = μ(x) = ∫₀ˣ dy/U(y)` and the ordering-dependent
//! effective potential.

use std::fmt;
use std::sync::Arc;

use crate::numerics::{integrate, QuadratureSpec};
use crate::oscillator::PhysicalParams;
use crate::{Error, Result};

/// An interval of the real line; either end may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const REAL_LINE: Interval = Interval {
        lo: f64::NEG_INFINITY,
        hi: f64::INFINITY,
    };

    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || !(lo < hi) {
            return Err(Error::domain(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }

    /// Open-interval membership; μ never reaches a finite end of its range.
    pub fn contains_open(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }

    pub fn is_real_line(&self) -> bool {
        self.lo == f64::NEG_INFINITY && self.hi == f64::INFINITY
    }
}

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Kind {
    Constant,
    Quadratic { gamma: f64 },
    Exponential { gamma: f64 },
    Custom(Arc<Custom>),
}

struct Custom {
    label: String,
    u: RealFn,
    u_prime: Option<RealFn>,
    u_second: Option<RealFn>,
    mu: Option<RealFn>,
    scale: f64,
}

/// Builder for a user-supplied deforming function.
pub struct CustomProfile {
    label: String,
    u: RealFn,
    u_prime: Option<RealFn>,
    u_second: Option<RealFn>,
    mu: Option<RealFn>,
    x_domain: Interval,
    mu_domain: Option<Interval>,
    scale: f64,
}

impl CustomProfile {
    pub fn new(label: impl Into<String>, u: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            label: label.into(),
            u: Arc::new(u),
            u_prime: None,
            u_second: None,
            mu: None,
            x_domain: Interval::REAL_LINE,
            mu_domain: None,
            scale: 1.0,
        }
    }

    pub fn derivatives(
        mut self,
        first: impl Fn(f64) -> f64 + Send + Sync + 'static,
        second: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        self.u_prime = Some(Arc::new(first));
        self.u_second = Some(Arc::new(second));
        self
    }

    /// Closed form of μ(x), anchored so that μ(0) = 0.
    pub fn mu_closed(mut self, mu: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.mu = Some(Arc::new(mu));
        self
    }

    pub fn x_domain(mut self, domain: Interval) -> Self {
        self.x_domain = domain;
        self
    }

    /// Range of μ over the x-domain. When omitted, finite x-ends are
    /// integrated numerically and infinite ones are taken to map to infinity.
    pub fn mu_domain(mut self, domain: Interval) -> Self {
        self.mu_domain = Some(domain);
        self
    }

    /// Length scale used for finite-difference steps (h = 1e-4 · scale).
    pub fn length_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }

    pub fn build(self) -> Result<DeformationProfile> {
        if !self.x_domain.contains(0.0) {
            return Err(Error::domain("x-domain must contain the μ anchor x = 0"));
        }
        if !(self.scale > 0.0) {
            return Err(Error::domain("length scale must be positive"));
        }
        let custom = Arc::new(Custom {
            label: self.label,
            u: self.u,
            u_prime: self.u_prime,
            u_second: self.u_second,
            mu: self.mu,
            scale: self.scale,
        });
        let mut profile = DeformationProfile {
            kind: Kind::Custom(custom),
            x_domain: self.x_domain,
            mu_domain: Interval::REAL_LINE,
        };
        profile.mu_domain = match self.mu_domain {
            Some(d) => d,
            None => {
                let end = |x: f64, inf: f64| -> Result<f64> {
                    if x.is_infinite() {
                        Ok(inf)
                    } else {
                        profile.mu_numeric(x)
                    }
                };
                Interval::new(
                    end(self.x_domain.lo, f64::NEG_INFINITY)?,
                    end(self.x_domain.hi, f64::INFINITY)?,
                )?
            }
        };
        Ok(profile)
    }
}

/// The deforming function `U(x) > 0` together with its μ-map.
#[derive(Clone)]
pub struct DeformationProfile {
    kind: Kind,
    x_domain: Interval,
    mu_domain: Interval,
}

impl fmt::Debug for DeformationProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DeformationProfile")
            .field("name", &self.name())
            .field("x_domain", &self.x_domain)
            .field("mu_domain", &self.mu_domain)
            .finish()
    }
}

impl DeformationProfile {
    /// U ≡ 1: constant mass, μ(x) = x.
    pub fn constant() -> Self {
        Self {
            kind: Kind::Constant,
            x_domain: Interval::REAL_LINE,
            mu_domain: Interval::REAL_LINE,
        }
    }

    /// U(x) = 1 + γx², γ > 0; μ(x) = arctan(√γ x)/√γ has bounded range.
    pub fn quadratic(gamma: f64) -> Result<Self> {
        if gamma == 0.0 {
            return Ok(Self::constant());
        }
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::domain(format!(
                "U = 1 + γx² needs γ > 0 to stay positive, got {gamma}"
            )));
        }
        let half = std::f64::consts::FRAC_PI_2 / gamma.sqrt();
        Ok(Self {
            kind: Kind::Quadratic { gamma },
            x_domain: Interval::REAL_LINE,
            mu_domain: Interval { lo: -half, hi: half },
        })
    }

    /// U(x) = e^{γx}; μ(x) = (1 − e^{−γx})/γ is bounded on one side.
    pub fn exponential(gamma: f64) -> Result<Self> {
        if gamma == 0.0 {
            return Ok(Self::constant());
        }
        if !gamma.is_finite() {
            return Err(Error::domain("exponential rate must be finite"));
        }
        let mu_domain = if gamma > 0.0 {
            Interval { lo: f64::NEG_INFINITY, hi: 1.0 / gamma }
        } else {
            Interval { lo: 1.0 / gamma, hi: f64::INFINITY }
        };
        Ok(Self {
            kind: Kind::Exponential { gamma },
            x_domain: Interval::REAL_LINE,
            mu_domain,
        })
    }

    /// Look up a shipped profile: `const`, `quadratic:γ`, `exp:γ`.
    pub fn from_name(name: &str, params: &[f64]) -> Result<Self> {
        let one = |what: &str| -> Result<f64> {
            match params {
                [g] => Ok(*g),
                _ => Err(Error::config(format!("profile `{what}` takes exactly one parameter"))),
            }
        };
        match name {
            "const" | "constant" | "unit" => {
                if params.is_empty() {
                    Ok(Self::constant())
                } else {
                    Err(Error::config("profile `const` takes no parameters"))
                }
            }
            "quadratic" | "quad" => Self::quadratic(one("quadratic")?),
            "exp" | "exponential" => Self::exponential(one("exp")?),
            other => Err(Error::config(format!(
                "unknown profile `{other}` (expected const, quadratic or exp)"
            ))),
        }
    }

    pub fn name(&self) -> String {
        match &self.kind {
            Kind::Constant => "const".into(),
            Kind::Quadratic { gamma } => format!("quadratic:{gamma}"),
            Kind::Exponential { gamma } => format!("exp:{gamma}"),
            Kind::Custom(c) => c.label.clone(),
        }
    }

    pub fn x_domain(&self) -> Interval {
        self.x_domain
    }

    pub fn mu_domain(&self) -> Interval {
        self.mu_domain
    }

    /// True when μ maps onto the whole real line, the setting in which the
    /// closed-form eigenfunction normalization holds.
    pub fn has_full_line_mu(&self) -> bool {
        self.mu_domain.is_real_line()
    }

    pub fn is_constant(&self) -> bool {
        matches!(self.kind, Kind::Constant)
    }

    pub fn u(&self, x: f64) -> f64 {
        match &self.kind {
            Kind::Constant => 1.0,
            Kind::Quadratic { gamma } => 1.0 + gamma * x * x,
            Kind::Exponential { gamma } => (gamma * x).exp(),
            Kind::Custom(c) => (c.u)(x),
        }
    }

    pub fn u_prime(&self, x: f64) -> f64 {
        match &self.kind {
            Kind::Constant => 0.0,
            Kind::Quadratic { gamma } => 2.0 * gamma * x,
            Kind::Exponential { gamma } => gamma * (gamma * x).exp(),
            Kind::Custom(c) => match &c.u_prime {
                Some(d) => d(x),
                None => {
                    let h = 1e-4 * c.scale;
                    let u = &c.u;
                    (-u(x + 2.0 * h) + 8.0 * u(x + h) - 8.0 * u(x - h) + u(x - 2.0 * h)) / (12.0 * h)
                }
            },
        }
    }

    pub fn u_second(&self, x: f64) -> f64 {
        match &self.kind {
            Kind::Constant => 0.0,
            Kind::Quadratic { gamma } => 2.0 * gamma,
            Kind::Exponential { gamma } => gamma * gamma * (gamma * x).exp(),
            Kind::Custom(c) => match &c.u_second {
                Some(d) => d(x),
                None => {
                    let h = 1e-4 * c.scale;
                    let u = &c.u;
                    (-u(x + 2.0 * h) + 16.0 * u(x + h) - 30.0 * u(x) + 16.0 * u(x - h)
                        - u(x - 2.0 * h))
                        / (12.0 * h * h)
                }
            },
        }
    }

    /// μ(x) without domain checks. Closed form when available.
    pub fn mu(&self, x: f64) -> f64 {
        match &self.kind {
            Kind::Constant => x,
            Kind::Quadratic { gamma } => (gamma.sqrt() * x).atan() / gamma.sqrt(),
            Kind::Exponential { gamma } => -(-gamma * x).exp_m1() / gamma,
            Kind::Custom(c) => match &c.mu {
                Some(mu) => mu(x),
                None => self.mu_numeric(x).unwrap_or(f64::NAN),
            },
        }
    }

    /// μ(x) = ∫₀ˣ dy/U(y) by quadrature, regardless of any closed form.
    pub fn mu_numeric(&self, x: f64) -> Result<f64> {
        if x == 0.0 {
            return Ok(0.0);
        }
        let (a, b, sign) = if x > 0.0 { (0.0, x, 1.0) } else { (x, 0.0, -1.0) };
        let spec = QuadratureSpec::new(a, b).with_tolerances(1e-14, 1e-13);
        Ok(sign * integrate(|y| 1.0 / self.u(y), &spec)?)
    }

    fn mu_inverse_unchecked(&self, xi: f64) -> Result<f64> {
        match &self.kind {
            Kind::Constant => Ok(xi),
            Kind::Quadratic { gamma } => Ok((gamma.sqrt() * xi).tan() / gamma.sqrt()),
            Kind::Exponential { gamma } => Ok(-(-gamma * xi).ln_1p() / gamma),
            Kind::Custom(_) => self.mu_inverse_newton(xi),
        }
    }

    // Safeguarded Newton on μ(x) − ξ with μ'(x) = 1/U(x).
    fn mu_inverse_newton(&self, xi: f64) -> Result<f64> {
        let dom = self.x_domain;
        let (mut lo, mut hi) = if xi >= 0.0 { (0.0, 1.0) } else { (-1.0, 0.0) };
        let clamp = |x: f64| x.clamp(dom.lo, dom.hi);
        let mut expansions = 0;
        loop {
            lo = clamp(lo);
            hi = clamp(hi);
            let (flo, fhi) = (self.mu(lo) - xi, self.mu(hi) - xi);
            if flo <= 0.0 && fhi >= 0.0 {
                break;
            }
            expansions += 1;
            if expansions > 200 || (lo == dom.lo && hi == dom.hi) {
                return Err(Error::RootFind(format!("cannot bracket μ⁻¹({xi})")));
            }
            if flo > 0.0 {
                lo = 2.0 * lo - 1.0;
            }
            if fhi < 0.0 {
                hi = 2.0 * hi + 1.0;
            }
        }
        let mut x = 0.5 * (lo + hi);
        for _ in 0..200 {
            let f = self.mu(x) - xi;
            if f.abs() <= 1e-15 * xi.abs().max(1.0) {
                return Ok(x);
            }
            if f > 0.0 {
                hi = x;
            } else {
                lo = x;
            }
            let newton = x - f * self.u(x);
            x = if newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
            if hi - lo <= 4.0 * f64::EPSILON * x.abs().max(1.0) {
                return Ok(x);
            }
        }
        Err(Error::RootFind(format!("μ⁻¹({xi}) did not converge")))
    }

    fn check_x(&self, x: f64) -> Result<()> {
        if self.x_domain.contains(x) && x.is_finite() {
            Ok(())
        } else {
            Err(Error::domain(format!("x = {x} outside profile domain")))
        }
    }
}

/// Von Roos-type ordering exponents with A + B + C = 2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderingParams {
    a: f64,
    b: f64,
    c: f64,
}

impl OrderingParams {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if ![a, b, c].iter().all(|v| v.is_finite()) || (a + b + c - 2.0).abs() > 1e-12 {
            return Err(Error::domain(format!(
                "ordering exponents must satisfy A + B + C = 2, got {a} + {b} + {c}"
            )));
        }
        Ok(Self { a, b, c })
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn c(&self) -> f64 {
        self.c
    }
}

/// M(x)/m₀ = 1/U²(x).
pub fn mass(profile: &DeformationProfile, x: f64) -> Result<f64> {
    profile.check_x(x)?;
    let u = profile.u(x);
    Ok(1.0 / (u * u))
}

pub fn mu_map(profile: &DeformationProfile, x: f64) -> Result<f64> {
    profile.check_x(x)?;
    let v = profile.mu(x);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::domain(format!("μ({x}) could not be evaluated")))
    }
}

pub fn mu_inverse(profile: &DeformationProfile, xi: f64) -> Result<f64> {
    if !profile.mu_domain.contains_open(xi) && !(profile.mu_domain.is_real_line() && xi.is_finite()) {
        return Err(Error::domain(format!(
            "ξ = {xi} outside μ-range ({}, {})",
            profile.mu_domain.lo, profile.mu_domain.hi
        )));
    }
    profile.mu_inverse_unchecked(xi)
}

/// V(x) + (ħ²/2m₀)(½−A)(½−C)U′² + (ħ²/4m₀)(1−A−C)U″U.
pub fn effective_potential<V: Fn(f64) -> f64>(
    potential: V,
    profile: &DeformationProfile,
    ordering: &OrderingParams,
    params: &PhysicalParams,
    x: f64,
) -> f64 {
    let k = params.hbar * params.hbar / params.m0;
    let up = profile.u_prime(x);
    potential(x)
        + 0.5 * k * (0.5 - ordering.a) * (0.5 - ordering.c) * up * up
        + 0.25 * k * (1.0 - ordering.a - ordering.c) * profile.u_second(x) * profile.u(x)
}

/// Function samples on an arbitrary set of nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct Sampled {
    pub nodes: Vec<f64>,
    pub values: Vec<f64>,
}

/// φ*(ξᵢ) = ψ(xᵢ)·U^{1/2}(xᵢ) on the image nodes ξᵢ = μ(xᵢ).
pub fn xi_transform(psi: &Sampled, profile: &DeformationProfile) -> Result<Sampled> {
    let mut nodes = Vec::with_capacity(psi.nodes.len());
    let mut values = Vec::with_capacity(psi.nodes.len());
    for (&x, &v) in psi.nodes.iter().zip(&psi.values) {
        nodes.push(mu_map(profile, x)?);
        values.push(v * profile.u(x).sqrt());
    }
    Ok(Sampled { nodes, values })
}

/// Inverse of [`xi_transform`]: ψ(xⱼ) = φ*(ξⱼ)·U^{−1/2}(xⱼ), xⱼ = μ⁻¹(ξⱼ).
pub fn xi_transform_inverse(phi: &Sampled, profile: &DeformationProfile) -> Result<Sampled> {
    let mut nodes = Vec::with_capacity(phi.nodes.len());
    let mut values = Vec::with_capacity(phi.nodes.len());
    for (&xi, &v) in phi.nodes.iter().zip(&phi.values) {
        let x = mu_inverse(profile, xi)?;
        nodes.push(x);
        values.push(v / profile.u(x).sqrt());
    }
    Ok(Sampled { nodes, values })
}

/// The ξ-space representation φ*(ξ) = ψ(μ⁻¹(ξ))·U^{1/2}(μ⁻¹(ξ)) as a function.
/// Points outside the μ-range evaluate to zero.
pub fn xi_representation<'a, F>(psi: F, profile: &'a DeformationProfile) -> impl Fn(f64) -> f64 + 'a
where
    F: Fn(f64) -> f64 + 'a,
{
    move |xi| match mu_inverse(profile, xi) {
        Ok(x) => psi(x) * profile.u(x).sqrt(),
        Err(_) => 0.0,
    }
}
