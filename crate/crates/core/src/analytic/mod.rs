//! Gamma moment matching, Laplace-transform derivatives and the resulting
//! coverage bounds.

mod bounds;
mod efficiency;
mod laplace;
mod moments;
mod sensitivity;

pub use bounds::{
    coverage_bounds_theorem1, coverage_bounds_theorem2, coverage_heuristic, BoundEngine, BoundResult, Theorem,
};
pub use efficiency::{spectral_efficiency, SE_TAIL_TOLERANCE};
pub use laplace::{LaplaceContext, LaplaceMethod, LaplaceSeries, DEFAULT_ORDER_CAP};
pub use moments::{campbell_moments, gamma_params, GammaApprox};
pub use sensitivity::{sensitivity, Sensitivity, SensitivityTarget};
