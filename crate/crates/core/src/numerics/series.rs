//! Tolerance-controlled summation of rapidly decaying series.

use std::ops::Add;

use num_complex::Complex64;

use crate::{Error, Result};

/// Values a series can be summed over.
pub trait SeriesValue: Copy + Add<Output = Self> {
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
}

impl SeriesValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl SeriesValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// Σ_{n≥0} term(n), summed until three consecutive terms each fall below
/// `tol · max(1, |partial sum|)`.
///
/// Terms with index below `min_terms` never count towards the quiet run,
/// for series whose terms grow before they decay.
pub struct SeriesSpec<F> {
    pub term: F,
    pub tol: f64,
    pub max_terms: usize,
    pub min_terms: usize,
}

impl<F> SeriesSpec<F> {
    pub fn new(term: F, tol: f64, max_terms: usize) -> Self {
        Self { term, tol, max_terms, min_terms: 0 }
    }

    pub fn with_min_terms(mut self, min_terms: usize) -> Self {
        self.min_terms = min_terms;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum<T> {
    pub value: T,
    pub terms_used: usize,
}

const QUIET_RUN: usize = 3;

pub fn sum_series<T, F>(spec: SeriesSpec<F>) -> Result<SeriesSum<T>>
where
    T: SeriesValue,
    F: Fn(usize) -> T,
{
    if !(spec.tol > 0.0) {
        return Err(Error::domain(format!("series tolerance must be positive, got {}", spec.tol)));
    }
    if spec.max_terms == 0 {
        return Err(Error::domain("series max_terms must be at least 1"));
    }
    let mut sum = T::zero();
    let mut quiet = 0;
    for n in 0..spec.max_terms {
        let term = (spec.term)(n);
        sum = sum + term;
        if n >= spec.min_terms && term.magnitude() < spec.tol * sum.magnitude().max(1.0) {
            quiet += 1;
            if quiet == QUIET_RUN {
                return Ok(SeriesSum { value: sum, terms_used: n + 1 });
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::CapExceeded {
        what: "series terms".into(),
        limit: spec.max_terms,
    })
}
