use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::oscillator::{PhysicalParams, BARGMANN_K};
use crate::{Error, Result};

/// Exact generators in the truncated basis |n, ¼⟩, n = 0 … N_max − 1.
#[derive(Debug, Clone, PartialEq)]
pub struct NumberBasisRep {
    pub dim: usize,
    pub hbar_omega: f64,
    pub k0: DMatrix<Complex64>,
    pub k_plus: DMatrix<Complex64>,
    pub k_minus: DMatrix<Complex64>,
    pub hamiltonian: DMatrix<Complex64>,
    pub q_plus: DMatrix<Complex64>,
    pub q_minus: DMatrix<Complex64>,
    pub x: DMatrix<Complex64>,
    pub p: DMatrix<Complex64>,
}

/// (𝒦₊)_{n+1,n} = √((n+1)(n+½)), (𝒦₋)_{n−1,n} = √(n(n−½)), (𝒦₀)_{nn} = n+¼.
pub fn number_basis(params: &PhysicalParams, n_max: usize) -> Result<NumberBasisRep> {
    if n_max < 2 {
        return Err(Error::domain(format!("number basis needs N_max ≥ 2, got {n_max}")));
    }
    let re = |v: f64| Complex64::new(v, 0.0);
    let k0 = DMatrix::from_fn(n_max, n_max, |i, j| if i == j { re(i as f64 + BARGMANN_K) } else { re(0.0) });
    let k_plus = DMatrix::from_fn(n_max, n_max, |i, j| {
        if i == j + 1 {
            let n = j as f64;
            re(((n + 1.0) * (n + 2.0 * BARGMANN_K)).sqrt())
        } else {
            re(0.0)
        }
    });
    let k_minus = k_plus.adjoint();
    let ho = params.hbar_omega();
    let half = re(0.5);
    let i_half = Complex64::new(0.0, 0.5);
    Ok(NumberBasisRep {
        dim: n_max,
        hbar_omega: ho,
        hamiltonian: &k0 * re(0.5 * ho),
        q_plus: &k_plus * re(0.5 * ho.sqrt()),
        q_minus: &k_minus * re(0.5 * ho.sqrt()),
        x: (&k_plus + &k_minus) * half,
        p: (&k_plus - &k_minus) * i_half,
        k0,
        k_plus,
        k_minus,
    })
}

impl NumberBasisRep {
    /// K±K∓ ordering of the Casimir: 𝒦₀(𝒦₀ ∓ 1) − 𝒦±𝒦∓, equal to k(k−1)·I.
    pub fn casimir(&self, upper_first: bool) -> DMatrix<Complex64> {
        let id = DMatrix::<Complex64>::identity(self.dim, self.dim);
        if upper_first {
            &self.k0 * (&self.k0 - &id) - &self.k_plus * &self.k_minus
        } else {
            &self.k0 * (&self.k0 + &id) - &self.k_minus * &self.k_plus
        }
    }

    /// Rows where products of two ladder matrices are unaffected by truncation.
    pub fn trusted_rows(&self) -> std::ops::Range<usize> {
        0..self.dim - 1
    }

    /// Max |A_ij − B_ij| over trusted rows.
    pub fn max_difference(&self, a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
        let mut m: f64 = 0.0;
        for i in self.trusted_rows() {
            for j in 0..self.dim {
                m = m.max((a[(i, j)] - b[(i, j)]).norm());
            }
        }
        m
    }

    /// Pad coefficients with zeros to the basis dimension.
    pub fn embed(&self, coeffs: &[Complex64]) -> Result<DVector<Complex64>> {
        if coeffs.len() > self.dim {
            return Err(Error::Truncation(format!(
                "{} coefficients do not fit a basis of dimension {}",
                coeffs.len(),
                self.dim
            )));
        }
        let mut v = DVector::zeros(self.dim);
        v.rows_mut(0, coeffs.len()).copy_from_slice(coeffs);
        Ok(v)
    }

    /// ⟨v|A|v⟩/⟨v|v⟩.
    pub fn expectation(&self, a: &DMatrix<Complex64>, v: &DVector<Complex64>) -> Complex64 {
        v.dotc(&(a * v)) / v.norm_squared()
    }
}

pub fn commutator(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    a * b - b * a
}
