use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("{what} = {value} is outside the domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: String,
    },

    #[error("cluster slant range {r_clu_km} km exceeds the visible dome limit {r_max_km} km")]
    ClusterExceedsDome { r_clu_km: f64, r_max_km: f64 },

    #[error("beam at off-axis angle {off_axis_rad} rad never intersects the Earth-visible cone")]
    BeamMissesEarth { off_axis_rad: f64 },

    #[error("quadrature did not converge: estimate {estimate} with error {error}")]
    NonConvergence { estimate: f64, error: f64 },

    #[error("derivative order {order} exceeds the cap {cap}; use the theorem 2 bounds (Gamma-approximated cluster power) instead")]
    OrderCap { order: usize, cap: usize },

    #[error("shape parameter {shape} is below 1; enlarge the cluster angle or the satellite density")]
    ShapeBelowOne { shape: f64 },

    #[error("need at least {needed} samples, got {got}")]
    InsufficientSamples { needed: usize, got: usize },

    #[error("coverage {last_coverage} at the largest threshold {gamma_max} exceeds {tolerance}; extend the threshold grid")]
    InsufficientRange {
        gamma_max: f64,
        last_coverage: f64,
        tolerance: f64,
    },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn domain(what: &'static str, value: f64, domain: impl Into<String>) -> Self {
        Error::Domain {
            what,
            value,
            domain: domain.into(),
        }
    }

    /// True for errors that stem from numerics rather than bad configuration.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence { .. }
                | Error::OrderCap { .. }
                | Error::ShapeBelowOne { .. }
                | Error::InsufficientRange { .. }
        )
    }
}
