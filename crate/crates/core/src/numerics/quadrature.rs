//! Adaptive Gauss–Kronrod quadrature on finite and infinite intervals, and
//! Gauss–Hermite rules for e^{−y²}-weighted integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Integration interval and stopping tolerances. Either bound may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub lower: f64,
    pub upper: f64,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl QuadratureSpec {
    pub fn new(lower: f64, upper: f64) -> Self {
        Self {
            lower,
            upper,
            abs_tol: 1e-13,
            rel_tol: 1e-12,
            max_subdivisions: 4000,
        }
    }

    pub fn real_line() -> Self {
        Self::new(f64::NEG_INFINITY, f64::INFINITY)
    }

    pub fn with_tolerances(mut self, abs_tol: f64, rel_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self.rel_tol = rel_tol;
        self
    }

    pub fn with_max_subdivisions(mut self, max_subdivisions: usize) -> Self {
        self.max_subdivisions = max_subdivisions;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.lower.is_nan() || self.upper.is_nan() || !(self.lower < self.upper) {
            return Err(Error::domain(format!(
                "quadrature requires lower < upper, got [{}, {}]",
                self.lower, self.upper
            )));
        }
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::domain("quadrature tolerances must be positive"));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::domain("max_subdivisions must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Segment {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// ∫ f over `spec`'s interval.
///
/// Infinite limits are mapped onto finite ones (x = t/(1−t²) for the whole
/// line, x = a ± t/(1−t) for half lines); the 15-point Kronrod rule never
/// samples the mapped endpoints.
pub fn integrate<F: Fn(f64) -> f64>(f: F, spec: &QuadratureSpec) -> Result<f64> {
    spec.validate()?;
    let (lo, hi) = (spec.lower, spec.upper);
    match (lo.is_infinite(), hi.is_infinite()) {
        (false, false) => adaptive(&f, lo, hi, spec),
        (true, true) => {
            let g = |t: f64| {
                let d = 1.0 - t * t;
                mapped(&f, t / d, (1.0 + t * t) / (d * d))
            };
            adaptive(&g, -1.0, 1.0, spec)
        }
        (false, true) => {
            let g = |t: f64| {
                let d = 1.0 - t;
                mapped(&f, lo + t / d, 1.0 / (d * d))
            };
            adaptive(&g, 0.0, 1.0, spec)
        }
        (true, false) => {
            let g = |t: f64| {
                let d = 1.0 - t;
                mapped(&f, hi - t / d, 1.0 / (d * d))
            };
            adaptive(&g, 0.0, 1.0, spec)
        }
    }
}

// Integrand value times Jacobian; a vanishing integrand wins over an
// unbounded Jacobian at the mapped endpoints.
fn mapped<F: Fn(f64) -> f64>(f: &F, x: f64, jacobian: f64) -> f64 {
    if !x.is_finite() {
        return 0.0;
    }
    let v = f(x);
    if v == 0.0 {
        0.0
    } else {
        v * jacobian
    }
}

fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    let first = kronrod(f, a, b);
    let mut total = first.value;
    let mut total_err = first.error;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    let mut subdivisions = 1;
    // Seed a few uniform splits so narrow peaks are not missed by the first rule.
    while subdivisions < 8 {
        let seg = heap.pop().expect("heap is non-empty");
        let mid = 0.5 * (seg.a + seg.b);
        let (l, r) = (kronrod(f, seg.a, mid), kronrod(f, mid, seg.b));
        total += l.value + r.value - seg.value;
        total_err += l.error + r.error - seg.error;
        heap.push(l);
        heap.push(r);
        subdivisions += 1;
    }
    loop {
        if !total.is_finite() {
            return Err(Error::domain("integrand is not finite on the domain"));
        }
        if total_err <= spec.abs_tol.max(spec.rel_tol * total.abs()) {
            return Ok(total);
        }
        if subdivisions >= spec.max_subdivisions {
            return Err(Error::NonConvergence {
                what: format!("quadrature error estimate {total_err:.3e} above tolerance"),
                iterations: subdivisions,
            });
        }
        let seg = heap.pop().expect("heap is non-empty");
        let mid = 0.5 * (seg.a + seg.b);
        let (l, r) = (kronrod(f, seg.a, mid), kronrod(f, mid, seg.b));
        total += l.value + r.value - seg.value;
        total_err += l.error + r.error - seg.error;
        heap.push(l);
        heap.push(r);
        subdivisions += 1;
        if subdivisions % 64 == 0 {
            // Re-sum to shed accumulated cancellation error.
            total = heap.iter().map(|s| s.value).sum();
            total_err = heap.iter().map(|s| s.error).sum();
        }
    }
}

/// Nodes and weights for ∫ e^{−y²} g(y) dy ≈ Σ wᵢ g(yᵢ).
#[derive(Debug, Clone)]
pub struct GaussHermite {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussHermite {
    /// Golub–Welsch: nodes are the eigenvalues of the Jacobi matrix with
    /// off-diagonal √(k/2), weights √π·v₀².
    pub fn new(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::domain("Gauss-Hermite order must be at least 1"));
        }
        let jacobi = DMatrix::from_fn(order, order, |i, j| {
            if i + 1 == j || j + 1 == i {
                (i.max(j) as f64 / 2.0).sqrt()
            } else {
                0.0
            }
        });
        let eigen = SymmetricEigen::new(jacobi);
        let mut pairs: Vec<(f64, f64)> = (0..order)
            .map(|k| {
                let v0 = eigen.eigenvectors[(0, k)];
                (eigen.eigenvalues[k], PI.sqrt() * v0 * v0)
            })
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (nodes, weights) = pairs.into_iter().unzip();
        Ok(Self { nodes, weights })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, g: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&y, &w)| w * g(y))
            .sum()
    }
}

/// Composite trapezoid rule on uniformly spaced samples.
pub fn trapezoid(samples: &[f64], spacing: f64) -> f64 {
    match samples.len() {
        0 | 1 => 0.0,
        n => spacing * (samples[1..n - 1].iter().sum::<f64>() + 0.5 * (samples[0] + samples[n - 1])),
    }
}
