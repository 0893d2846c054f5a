//! Numerical building blocks: summation, quadrature and special functions.

pub mod bell;
pub mod combinatorics;
pub mod gamma;
pub mod hypergeometric;
pub mod quadrature;
pub mod sum;

pub use bell::{bell_incomplete, BellTable};
pub use combinatorics::{binomial, factorial, ln_factorial, pochhammer, scaled_pochhammer};
pub use gamma::{erlang_cdf_bound, gamma_cdf, gamma_ln_pdf, regularized_lower_gamma};
pub use hypergeometric::{gauss_2f1, ln_kummer_1f1};
pub use quadrature::{integrate_adaptive, integrate_with_breakpoints, Quadrature, QuadratureSpec};
pub use sum::{CompensatedSum, ExactSum};
