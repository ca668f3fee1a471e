//! su(1,1) coherent states for position-dependent effective mass (PDEM)
//! systems built on the shifted harmonic oscillator.
//!
//! The crate is organized bottom-up:
//!
//! * [`numerics`]: special functions, quadrature and series summation.
//! * [`deformation`]: the deforming function `U(x)`, the mass `1/U²`, the
//!   point transformation `ξ = μ(x)` and the ordering-dependent effective
//!   potential.
//! * [`oscillator`]: superpotential, shifted-oscillator potential, the
//!   similarity weight `r(x)`, the spectrum and the `k = 1/4` eigenfunctions.
//! * [`operators`]: finite-difference realizations of every operator on a
//!   uniform grid, plus exact matrices in the `|n, 1/4⟩` basis.
//! * [`coherent`]: Barut–Girardello coherent states, their energy moments,
//!   uncertainty products and time evolution.
//! * [`cli`]: the `pdem` command-line front end and the verification suite.
//!
//! Every runnable example under `examples/` exercises one of these layers.

pub mod cli;
pub mod coherent;
pub mod deformation;
mod error;
pub mod numerics;
pub mod operators;
pub mod oscillator;

pub use coherent::{CoherentState, EvolvedState};
pub use deformation::{DeformationProfile, OrderingParams};
pub use error::{Error, Result};
pub use operators::{Grid, GridOperator, NumberBasisRep};
pub use oscillator::{Eigenstate, PhysicalParams};
