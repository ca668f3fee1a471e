//! Special functions, quadrature and series summation shared by every
//! other module.

mod quadrature;
mod series;
mod special;

pub use quadrature::{integrate, trapezoid, GaussHermite, QuadratureSpec};
pub use series::{sum_series, SeriesSpec, SeriesSum, SeriesValue};
pub use special::{
    even_hermite_pos, hermite_functions, hermite_phys, hermite_phys_scaled, ln_cosh, ln_gamma,
    pochhammer, tanh_sech2, Scaled, HERMITE_MAX_DEGREE,
};
