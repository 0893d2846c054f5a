use core::f64::consts::PI;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::geometry::{ClusterGeometry, Region, SystemParams};

/// Mean and variance of the accumulated power of a region by Campbell's
/// theorem, under Nakagami-m fading with parameter `m`.
pub fn campbell_moments(p: &SystemParams, g: &ClusterGeometry, region: Region, m: f64) -> Result<(f64, f64)> {
    let alpha = p.path_loss_exponent;
    if !(alpha > 2.0) {
        return Err(Error::invalid("path_loss_exponent", "must exceed 2"));
    }
    if !(m > 0.0) {
        return Err(Error::invalid("nakagami_m", "must be positive"));
    }
    let (lo, hi) = g.bounds(region);
    let gain = region.gain(p);
    let c = PI * p.sat_density_per_km2 * p.sat_orbit_radius_km / p.earth_radius_km;
    let x = lo.powf(2.0 - alpha) - hi.powf(2.0 - alpha);
    let y = lo.powf(2.0 - 2.0 * alpha) - hi.powf(2.0 - 2.0 * alpha);
    let mean = 2.0 * gain / (alpha - 2.0) * c * x;
    let var = 2.0 * gain * gain / (2.0 * alpha - 2.0) * c * (1.0 + 1.0 / m) * y;
    Ok((mean, var))
}

/// Moment-matched Gamma law of `D` or `I`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaApprox {
    pub shape: f64,
    pub scale: f64,
    pub region: Region,
}

impl GammaApprox {
    pub fn new(shape: f64, scale: f64, region: Region) -> Result<Self> {
        if !(shape > 0.0 && shape.is_finite()) {
            return Err(Error::domain("gamma shape", shape, "0 < k < inf"));
        }
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::domain("gamma scale", scale, "0 < theta < inf"));
        }
        Ok(GammaApprox { shape, scale, region })
    }

    pub fn shape_floor(&self) -> usize {
        self.shape.floor() as usize
    }

    pub fn shape_ceil(&self) -> usize {
        self.shape.ceil() as usize
    }

    pub fn mean(&self) -> f64 {
        self.shape * self.scale
    }

    pub fn variance(&self) -> f64 {
        self.shape * self.scale * self.scale
    }
}

/// `k = E[X]²/Var[X]`, `θ = Var[X]/E[X]` for the region's accumulated power.
pub fn gamma_params(p: &SystemParams, g: &ClusterGeometry, region: Region, m: f64) -> Result<GammaApprox> {
    let (lo, hi) = g.bounds(region);
    if !(hi > lo) {
        return Err(Error::domain("region width", hi - lo, "r_hi > r_lo"));
    }
    let (mean, var) = campbell_moments(p, g, region, m)?;
    if !(mean > 0.0 && var > 0.0) {
        return Err(Error::invalid("sat_density_per_km2", "the region holds no satellites on average"));
    }
    GammaApprox::new(mean * mean / var, var / mean, region)
}
