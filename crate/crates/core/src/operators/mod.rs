//! Finite-difference realizations of the deformed operators on a uniform
//! grid, and exact matrices in the |n, ¼⟩ basis.
//!
//! Grid identities hold up to O(h²) on interior rows; rows reached by the
//! one-sided boundary stencils are tracked per operator and excluded from
//! every residual.

mod builders;
mod convergence;
mod grid;
mod number_basis;

pub use builders::{deformed_derivative, gdoa_ladder, hamiltonian, similarity_conjugate, su11_ladder, Sign};
pub use convergence::{convergence_study, ConvergenceStudy};
pub use grid::{max_abs_on, Grid, GridOperator, INTERIOR_MARGIN, WINDOW_MARGIN};
pub use number_basis::{commutator, number_basis, NumberBasisRep};
