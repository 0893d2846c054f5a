use core::f64::consts::PI;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::geometry::{ClusterGeometry, Region, SystemParams};

/// Derivative requested from [`sensitivity`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SensitivityTarget {
    /// `dk_D/dR_clu`.
    ClusterShapeVsRange,
    /// `dθ_D/dR_clu`.
    ClusterScaleVsRange,
    /// `dk/dm` for the region's Gamma law.
    ShapeVsM(Region),
    /// `dθ/dm` for the region's Gamma law.
    ScaleVsM(Region),
}

/// A derivative value; `at_boundary` marks the `R_clu → R_min` limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sensitivity {
    pub value: f64,
    pub at_boundary: bool,
}

/// Closed-form derivatives of the moment-matched Gamma parameters.
///
/// With `X = R_lo^(2−α) − R_hi^(2−α)` and `Y = R_lo^(2−2α) − R_hi^(2−2α)`
///
/// ```text
/// k = πλ R_S/R_E · 4(α−1)/(α−2)² · m/(m+1) · X²/Y
/// θ = G (1 + 1/m) (α−2)/(2α−2) · Y/X
/// ```
///
/// so `dk/dm = k/(m(m+1))` and `dθ/dm = −θ/(m(m+1))`.
pub fn sensitivity(p: &SystemParams, g: &ClusterGeometry, m: f64, which: SensitivityTarget) -> Result<Sensitivity> {
    let alpha = p.path_loss_exponent;
    if !(alpha > 2.0) {
        return Err(Error::invalid("path_loss_exponent", "must exceed 2"));
    }
    if !(m > 0.0) {
        return Err(Error::invalid("nakagami_m", "must be positive"));
    }
    let region = match which {
        SensitivityTarget::ClusterShapeVsRange | SensitivityTarget::ClusterScaleVsRange => Region::Cluster,
        SensitivityTarget::ShapeVsM(r) | SensitivityTarget::ScaleVsM(r) => r,
    };
    let (lo, hi) = g.bounds(region);
    let a = alpha - 2.0;
    let b = 2.0 * alpha - 2.0;
    let k0 = PI * p.sat_density_per_km2 * p.sat_orbit_radius_km / p.earth_radius_km * 4.0 * (alpha - 1.0)
        / (a * a)
        * m
        / (m + 1.0);
    let t0 = region.gain(p) * (1.0 + 1.0 / m) * a / b;
    let at_boundary = !(hi - lo > 1e-9 * lo);
    let x = lo.powf(-a) - hi.powf(-a);
    let y = lo.powf(-b) - hi.powf(-b);

    let value = match which {
        SensitivityTarget::ShapeVsM(_) | SensitivityTarget::ScaleVsM(_) if at_boundary => {
            return Err(Error::domain("region width", hi - lo, "r_hi > r_lo"));
        }
        SensitivityTarget::ShapeVsM(_) => k0 * x * x / y / (m * (m + 1.0)),
        SensitivityTarget::ScaleVsM(_) => -t0 * y / x / (m * (m + 1.0)),
        // X ~ a R^(−a−1) δ and Y ~ b R^(−b−1) δ as R_clu = R_min + δ, δ → 0
        SensitivityTarget::ClusterShapeVsRange if at_boundary => k0 * a * a / b * lo,
        SensitivityTarget::ClusterScaleVsRange if at_boundary => -t0 * b / a * alpha * lo.powf(-alpha - 1.0) / 2.0,
        SensitivityTarget::ClusterShapeVsRange => {
            let (dx, dy) = (a * hi.powf(-a - 1.0), b * hi.powf(-b - 1.0));
            k0 * x / (y * y) * (2.0 * dx * y - x * dy)
        }
        SensitivityTarget::ClusterScaleVsRange => {
            let (dx, dy) = (a * hi.powf(-a - 1.0), b * hi.powf(-b - 1.0));
            t0 / (x * x) * (dy * x - y * dx)
        }
    };
    Ok(Sensitivity { value, at_boundary })
}
