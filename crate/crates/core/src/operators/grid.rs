use std::fmt;
use std::ops::Range;

use num_complex::Complex64;

use crate::{Error, Result};

/// Minimum number of rows excluded at each end when computing interior norms.
pub const INTERIOR_MARGIN: usize = 5;

/// Length excluded at each end by the verification residuals.
pub const WINDOW_MARGIN: f64 = 0.5;

/// A uniform grid on [x_min, x_max].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    x_min: f64,
    x_max: f64,
    n_points: usize,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) || !(x_min < x_max) {
            return Err(Error::domain(format!("grid needs finite x_min < x_max, got [{x_min}, {x_max}]")));
        }
        if n_points < 16 {
            return Err(Error::domain(format!("grid needs at least 16 points, got {n_points}")));
        }
        Ok(Self { x_min, x_max, n_points })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        if i + 1 == self.n_points {
            self.x_max
        } else {
            self.x_min + i as f64 * self.spacing()
        }
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.x(i)).collect()
    }

    pub fn sample<F: Fn(f64) -> f64>(&self, f: F) -> Vec<f64> {
        (0..self.n_points).map(|i| f(self.x(i))).collect()
    }

    /// Rows at least `max(rows, INTERIOR_MARGIN)` away from either end.
    pub fn interior(&self, rows: usize) -> Range<usize> {
        let m = rows.max(INTERIOR_MARGIN).min(self.n_points / 2);
        m..self.n_points - m
    }

    /// Rows at least `margin` length units and at least
    /// `max(min_rows, INTERIOR_MARGIN)` rows away from either end.
    pub fn window(&self, margin: f64, min_rows: usize) -> Range<usize> {
        let by_length = (margin / self.spacing()).ceil() as usize;
        self.interior(by_length.max(min_rows))
    }

    /// Halve the spacing, keeping the end points.
    pub fn refined(&self) -> Grid {
        Grid { n_points: 2 * self.n_points - 1, ..*self }
    }
}

/// Max |v[i]| over `rows`.
pub fn max_abs_on(values: &[f64], rows: Range<usize>) -> f64 {
    values[rows].iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// A real banded linear operator on grid-sampled functions.
///
/// Row `i` stores columns `i − kl ..= i + ku`. `boundary_rows` counts rows at
/// each end that are touched by one-sided stencils, directly or through
/// composition.
#[derive(Clone, PartialEq)]
pub struct GridOperator {
    label: String,
    n: usize,
    kl: usize,
    ku: usize,
    data: Vec<f64>,
    boundary_rows: usize,
}

impl fmt::Debug for GridOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GridOperator")
            .field("label", &self.label)
            .field("n", &self.n)
            .field("kl", &self.kl)
            .field("ku", &self.ku)
            .field("boundary_rows", &self.boundary_rows)
            .finish()
    }
}

impl GridOperator {
    pub fn zeros(n: usize, kl: usize, ku: usize, label: impl Into<String>) -> Self {
        let kl = kl.min(n.saturating_sub(1));
        let ku = ku.min(n.saturating_sub(1));
        Self { label: label.into(), n, kl, ku, data: vec![0.0; n * (kl + ku + 1)], boundary_rows: 0 }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![1.0; n], "I")
    }

    pub fn diagonal(values: &[f64], label: impl Into<String>) -> Self {
        let mut op = Self::zeros(values.len(), 0, 0, label);
        op.data.copy_from_slice(values);
        op
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn lower_bandwidth(&self) -> usize {
        self.kl
    }

    pub fn upper_bandwidth(&self) -> usize {
        self.ku
    }

    pub fn bandwidth(&self) -> usize {
        self.kl.max(self.ku)
    }

    pub fn boundary_rows(&self) -> usize {
        self.boundary_rows
    }

    pub(crate) fn set_boundary_rows(&mut self, rows: usize) {
        self.boundary_rows = rows;
    }

    fn width(&self) -> usize {
        self.kl + self.ku + 1
    }

    fn cols(&self, i: usize) -> Range<usize> {
        i.saturating_sub(self.kl)..(i + self.ku + 1).min(self.n)
    }

    fn idx(&self, i: usize, j: usize) -> Option<usize> {
        if i >= self.n || j >= self.n || j + self.kl < i || j > i + self.ku {
            None
        } else {
            Some(i * self.width() + (j + self.kl - i))
        }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.idx(i, j).map_or(0.0, |k| self.data[k])
    }

    /// Set an entry inside the band; panics outside it.
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let k = self.idx(i, j).unwrap_or_else(|| panic!("({i}, {j}) outside band of {}", self.label));
        self.data[k] = v;
    }

    pub fn apply(&self, f: &[f64]) -> Vec<f64> {
        assert_eq!(f.len(), self.n, "field length does not match operator {}", self.label);
        (0..self.n)
            .map(|i| self.cols(i).map(|j| self.get(i, j) * f[j]).sum())
            .collect()
    }

    pub fn apply_complex(&self, f: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(f.len(), self.n, "field length does not match operator {}", self.label);
        (0..self.n)
            .map(|i| self.cols(i).map(|j| f[j] * self.get(i, j)).sum())
            .collect()
    }

    /// self ∘ other.
    pub fn compose(&self, other: &GridOperator) -> GridOperator {
        assert_eq!(self.n, other.n);
        let mut out = GridOperator::zeros(
            self.n,
            self.kl + other.kl,
            self.ku + other.ku,
            format!("{}·{}", self.label, other.label),
        );
        for i in 0..self.n {
            for k in self.cols(i) {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in other.cols(k) {
                    let kk = out.idx(i, j).expect("product stays inside the summed band");
                    out.data[kk] += a * other.get(k, j);
                }
            }
        }
        out.boundary_rows = self.boundary_rows.max(other.boundary_rows + self.bandwidth());
        out
    }

    fn combine(&self, other: &GridOperator, a: f64, b: f64, label: String) -> GridOperator {
        assert_eq!(self.n, other.n);
        let mut out = GridOperator::zeros(self.n, self.kl.max(other.kl), self.ku.max(other.ku), label);
        for i in 0..self.n {
            for j in out.cols(i) {
                let v = a * self.get(i, j) + b * other.get(i, j);
                let k = out.idx(i, j).expect("inside union band");
                out.data[k] = v;
            }
        }
        out.boundary_rows = self.boundary_rows.max(other.boundary_rows);
        out
    }

    pub fn add(&self, other: &GridOperator) -> GridOperator {
        self.combine(other, 1.0, 1.0, format!("({} + {})", self.label, other.label))
    }

    pub fn sub(&self, other: &GridOperator) -> GridOperator {
        self.combine(other, 1.0, -1.0, format!("({} − {})", self.label, other.label))
    }

    pub fn scale(&self, c: f64) -> GridOperator {
        let mut out = self.clone();
        out.data.iter_mut().for_each(|v| *v *= c);
        out.label = format!("{c}·{}", self.label);
        out
    }

    /// [self, other] = self∘other − other∘self.
    pub fn commutator(&self, other: &GridOperator) -> GridOperator {
        self.compose(other)
            .sub(&other.compose(self))
            .with_label(format!("[{}, {}]", self.label, other.label))
    }

    /// Matrix transpose, the adjoint for real operators.
    pub fn transpose(&self) -> GridOperator {
        let mut out = GridOperator::zeros(self.n, self.ku, self.kl, format!("{}ᵀ", self.label));
        for i in 0..self.n {
            for j in self.cols(i) {
                out.set(j, i, self.get(i, j));
            }
        }
        out.boundary_rows = self.boundary_rows + self.bandwidth();
        out
    }

    /// A_ij ↦ A_ij · exp(left_log[i] + right_log[j]).
    pub fn conjugate_diagonal(&self, left_log: &[f64], right_log: &[f64]) -> GridOperator {
        let mut out = self.clone();
        for i in 0..self.n {
            for j in self.cols(i) {
                let k = self.idx(i, j).unwrap();
                if out.data[k] != 0.0 {
                    out.data[k] *= (left_log[i] + right_log[j]).exp();
                }
            }
        }
        out
    }

    /// Max |A_ij − B_ij| over rows in `rows`.
    pub fn max_entry_difference(&self, other: &GridOperator, rows: Range<usize>) -> f64 {
        let band = self.kl.max(other.kl)..=self.ku.max(other.ku);
        let (lo, hi) = (*band.start(), *band.end());
        rows.flat_map(|i| (i.saturating_sub(lo)..(i + hi + 1).min(self.n)).map(move |j| (i, j)))
            .map(|(i, j)| (self.get(i, j) - other.get(i, j)).abs())
            .fold(0.0, f64::max)
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j)).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tridiag(n: usize) -> GridOperator {
        let mut op = GridOperator::zeros(n, 1, 1, "T");
        for i in 0..n {
            op.set(i, i, 2.0 + i as f64);
            if i > 0 {
                op.set(i, i - 1, -1.0);
            }
            if i + 1 < n {
                op.set(i, i + 1, 0.5 * i as f64);
            }
        }
        op
    }

    fn dense_mul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
        let n = a.len();
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
            .collect()
    }

    #[test]
    fn grid_basics() {
        let g = Grid::new(-6.0, 22.0, 801).unwrap();
        assert!((g.spacing() - 0.035).abs() < 1e-16);
        assert_eq!(g.x(800), 22.0);
        assert_eq!(g.interior(0), 5..796);
        assert_eq!(g.interior(9), 9..792);
        assert_eq!(g.refined().n_points(), 1601);
        assert_eq!(g.window(0.5, 0), 15..786);
        assert_eq!(g.window(0.1, 7), 7..794);
        assert!(Grid::new(0.0, 1.0, 15).is_err());
        assert!(Grid::new(1.0, 1.0, 100).is_err());
    }

    #[test]
    fn compose_matches_dense_product() {
        let a = tridiag(9);
        let b = tridiag(9).transpose().scale(0.3);
        let c = a.compose(&b).to_dense();
        let d = dense_mul(&a.to_dense(), &b.to_dense());
        for i in 0..9 {
            for j in 0..9 {
                assert!((c[i][j] - d[i][j]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn apply_and_linearity() {
        let a = tridiag(7);
        let f: Vec<f64> = (0..7).map(|i| (i as f64).sin()).collect();
        let g: Vec<f64> = (0..7).map(|i| (i as f64).cos()).collect();
        let sum: Vec<f64> = f.iter().zip(&g).map(|(x, y)| 2.0 * x - y).collect();
        let lhs = a.apply(&sum);
        let (af, ag) = (a.apply(&f), a.apply(&g));
        for i in 0..7 {
            assert!((lhs[i] - (2.0 * af[i] - ag[i])).abs() < 1e-14);
        }
        let cf: Vec<Complex64> = f.iter().zip(&g).map(|(&re, &im)| Complex64::new(re, im)).collect();
        let ac = a.apply_complex(&cf);
        for i in 0..7 {
            assert!((ac[i].re - af[i]).abs() < 1e-15 && (ac[i].im - ag[i]).abs() < 1e-15);
        }
    }

    #[test]
    fn commutator_with_identity_vanishes() {
        let a = tridiag(10);
        let c = a.commutator(&GridOperator::identity(10));
        assert!(c.to_dense().iter().flatten().all(|v| *v == 0.0));
    }

    #[test]
    fn diagonal_conjugation_is_a_similarity() {
        let a = tridiag(8);
        let b = tridiag(8).transpose();
        let w: Vec<f64> = (0..8).map(|i| 0.3 * i as f64 - 1.0).collect();
        let neg: Vec<f64> = w.iter().map(|v| -v).collect();
        let t = |op: &GridOperator| op.conjugate_diagonal(&w, &neg);
        let lhs = t(&a).commutator(&t(&b));
        let rhs = t(&a.commutator(&b));
        assert!(lhs.max_entry_difference(&rhs, 0..8) < 1e-12);
    }

    #[test]
    fn boundary_rows_propagate() {
        let mut d = GridOperator::zeros(20, 2, 2, "D");
        d.set_boundary_rows(1);
        assert_eq!(d.compose(&d).boundary_rows(), 3);
        assert_eq!(d.add(&GridOperator::identity(20)).boundary_rows(), 1);
    }
}
