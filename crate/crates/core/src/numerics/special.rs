//! Gamma, Pochhammer and Hermite families.

use std::f64::consts::PI;

use crate::{Error, Result};

/// Highest Hermite degree evaluated by the raw recurrences.
pub const HERMITE_MAX_DEGREE: usize = 512;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural logarithm of Γ(x) for x > 0.
///
/// Lanczos approximation with g = 7; arguments below ½ go through the
/// reflection formula.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("ln_gamma requires x > 0, got {x}")));
    }
    if x == 1.0 || x == 2.0 {
        return Ok(0.0);
    }
    if x < 0.5 {
        // Γ(x)Γ(1-x) = π / sin(πx), and sin(πx) > 0 on (0, ½).
        return Ok((PI / (PI * x).sin()).ln() - lanczos_ln_gamma(1.0 - x));
    }
    Ok(lanczos_ln_gamma(x))
}

fn lanczos_ln_gamma(x: f64) -> f64 {
    let z = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + acc.ln()
}

/// Rising factorial a(a+1)…(a+n−1); equals 1 when n = 0.
pub fn pochhammer(a: f64, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, k| acc * (a + k as f64))
}

/// Physicists' Hermite polynomial H_n(y) by upward recurrence.
pub fn hermite_phys(n: usize, y: f64) -> Result<f64> {
    check_degree(n)?;
    let value = raw_recurrence(n, y, -1.0);
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow(format!(
            "H_{n}({y}) exceeds f64 range; use hermite_phys_scaled"
        )))
    }
}

/// The even polynomial 𝕳_{2n}(y): H_{2n} with every coefficient made positive.
///
/// Equal to (−1)ⁿ H_{2n}(iy). Since i^{-m} H_m(iy) obeys
/// G_{m+1} = 2y G_m + 2m G_{m−1}, the value comes from that recurrence.
pub fn even_hermite_pos(n: usize, y: f64) -> Result<f64> {
    let degree = 2 * n;
    check_degree(degree)?;
    let value = raw_recurrence(degree, y, 1.0);
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow(format!("𝕳_{degree}({y}) exceeds f64 range")))
    }
}

fn check_degree(n: usize) -> Result<()> {
    if n > HERMITE_MAX_DEGREE {
        return Err(Error::CapExceeded {
            what: format!("Hermite degree {n}"),
            limit: HERMITE_MAX_DEGREE,
        });
    }
    Ok(())
}

// sign = -1 gives H_n, sign = +1 the positive-coefficient family.
fn raw_recurrence(n: usize, y: f64, sign: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut curr = 2.0 * y;
    for m in 1..n {
        let next = 2.0 * y * curr + sign * 2.0 * m as f64 * prev;
        prev = curr;
        curr = next;
    }
    curr
}

/// A real number stored as `mantissa · 2^exponent`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    pub mantissa: f64,
    pub exponent: i32,
}

impl Scaled {
    pub fn to_f64(self) -> f64 {
        self.mantissa * 2f64.powi(self.exponent)
    }

    /// ln|value|; −∞ for zero.
    pub fn ln_abs(self) -> f64 {
        self.mantissa.abs().ln() + self.exponent as f64 * std::f64::consts::LN_2
    }

    pub fn signum(self) -> f64 {
        if self.mantissa == 0.0 {
            0.0
        } else {
            self.mantissa.signum()
        }
    }
}

/// H_n(y) in overflow-free scaled form. Same degree cap as [`hermite_phys`].
pub fn hermite_phys_scaled(n: usize, y: f64) -> Result<Scaled> {
    check_degree(n)?;
    const LIMIT: f64 = 1e150;
    let mut exponent = 0i32;
    if n == 0 {
        return Ok(Scaled { mantissa: 1.0, exponent });
    }
    let mut prev = 1.0;
    let mut curr = 2.0 * y;
    for m in 1..n {
        let next = 2.0 * y * curr - 2.0 * m as f64 * prev;
        prev = curr;
        curr = next;
        if curr.abs() > LIMIT {
            let (_, e) = frexp(curr);
            let scale = 2f64.powi(-e);
            curr *= scale;
            prev *= scale;
            exponent += e;
        }
    }
    Ok(Scaled { mantissa: curr, exponent })
}

fn frexp(x: f64) -> (f64, i32) {
    if x == 0.0 || !x.is_finite() {
        return (x, 0);
    }
    let e = x.abs().log2().floor() as i32 + 1;
    (x * 2f64.powi(-e), e)
}

/// Orthonormal Hermite functions h_0(s) … h_max(s),
/// h_m(s) = H_m(s) e^{−s²/2} / √(2^m m! √π).
///
/// Uses the normalized three-term recurrence with running rescaling, so
/// no degree cap is needed.
pub fn hermite_functions(max_degree: usize, s: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(max_degree + 1);
    // Track values as value · e^{log_scale}; fold the Gaussian in at the end.
    let mut log_scale = -0.5 * s * s - 0.25 * PI.ln();
    let mut prev = 0.0;
    let mut curr = 1.0;
    let mut raw = Vec::with_capacity(max_degree + 1);
    let mut scales = Vec::with_capacity(max_degree + 1);
    raw.push(curr);
    scales.push(log_scale);
    for m in 0..max_degree {
        let mf = m as f64;
        let next = (2.0 / (mf + 1.0)).sqrt() * s * curr - (mf / (mf + 1.0)).sqrt() * prev;
        prev = curr;
        curr = next;
        if curr.abs() > 1e100 {
            prev *= 1e-100;
            curr *= 1e-100;
            log_scale += 100.0 * std::f64::consts::LN_10;
        }
        raw.push(curr);
        scales.push(log_scale);
    }
    for (v, ls) in raw.into_iter().zip(scales) {
        out.push(if v == 0.0 { 0.0 } else { v * ls.exp() });
    }
    out
}

/// ln cosh(z) without overflow.
pub fn ln_cosh(z: f64) -> f64 {
    let a = z.abs();
    a + (-2.0 * a).exp().ln_1p() - std::f64::consts::LN_2
}

/// tanh(z) and sech²(z) = 1 − tanh²(z), stable for large |z|.
pub fn tanh_sech2(z: f64) -> (f64, f64) {
    let a = z.abs();
    let e = (-2.0 * a).exp();
    let t = (1.0 - e) / (1.0 + e);
    let sech2 = 4.0 * e / ((1.0 + e) * (1.0 + e));
    (t.copysign(z), sech2)
}
