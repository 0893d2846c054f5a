//! Spherical geometry of the observable dome and the serving cluster cap.
//!
//! The user sits at `(0, 0, R_E)` and satellites live on the sphere of radius
//! `R_S`. A satellite at polar angle `φ` (measured from the user's zenith at
//! the Earth's centre) is at slant range `r² = R_S² + R_E² − 2 R_S R_E cos φ`.
//! Lengths are km, areas km², angles radians.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_traits::Float;

use crate::error::{Error, Result};

/// Full description of one coverage scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemParams {
    pub earth_radius_km: f64,
    pub sat_orbit_radius_km: f64,
    pub min_elevation_rad: f64,
    pub cluster_polar_angle_rad: f64,
    pub sat_density_per_km2: f64,
    pub path_loss_exponent: f64,
    pub nakagami_m: f64,
    pub gain_inside: f64,
    pub gain_outside: f64,
    pub sir_thresholds_db: Vec<f64>,
    pub rng_seed: u64,
    pub mc_trials: u64,
}

impl SystemParams {
    /// The reference scenario: 500 km altitude, 25° minimum elevation, 1.6°
    /// cluster angle, `α = 3`, `m = 2`, side lobes 10 dB down and thresholds
    /// −10..=10 dB. The density is set so the dome holds `visible_mean`
    /// satellites on average (50 and 300 give the sparse and dense scenarios).
    pub fn reference(visible_mean: f64) -> Self {
        let mut p = SystemParams {
            earth_radius_km: 6371.0,
            sat_orbit_radius_km: 6871.0,
            min_elevation_rad: 25f64.to_radians(),
            cluster_polar_angle_rad: 1.6f64.to_radians(),
            sat_density_per_km2: 0.0,
            path_loss_exponent: 3.0,
            nakagami_m: 2.0,
            gain_inside: 1.0,
            gain_outside: 0.1,
            sir_thresholds_db: (-10..=10).map(f64::from).collect(),
            rng_seed: 1,
            mc_trials: 100_000,
        };
        p.set_visible_mean(visible_mean);
        p
    }

    /// Sets the density so that `λ_S |A|` equals `visible_mean`.
    pub fn set_visible_mean(&mut self, visible_mean: f64) {
        self.sat_density_per_km2 = visible_mean / dome_area(self);
    }

    pub fn visible_mean(&self) -> f64 {
        self.sat_density_per_km2 * dome_area(self)
    }

    /// Mean number of satellites on the whole orbital sphere.
    pub fn sphere_mean(&self) -> f64 {
        self.sat_density_per_km2 * 4.0 * PI * self.sat_orbit_radius_km.powi(2)
    }

    pub fn sir_thresholds_lin(&self) -> Vec<f64> {
        self.sir_thresholds_db.iter().map(|&db| db_to_lin(db)).collect()
    }

    pub fn validate(&self) -> Result<()> {
        let (re, rs) = (self.earth_radius_km, self.sat_orbit_radius_km);
        if !(re > 0.0 && re.is_finite()) {
            return Err(Error::invalid("earth_radius_km", "must be positive and finite"));
        }
        if !(rs > re && rs.is_finite()) {
            return Err(Error::invalid("sat_orbit_radius_km", "must exceed the earth radius"));
        }
        if !(self.min_elevation_rad > 0.0 && self.min_elevation_rad < PI / 2.0) {
            return Err(Error::invalid("min_elevation_rad", "must lie in (0, pi/2)"));
        }
        if !(self.cluster_polar_angle_rad > 0.0 && self.cluster_polar_angle_rad < PI) {
            return Err(Error::invalid("cluster_polar_angle_rad", "must lie in (0, pi)"));
        }
        if !(self.sat_density_per_km2 >= 0.0 && self.sat_density_per_km2.is_finite()) {
            return Err(Error::invalid("sat_density_per_km2", "must be finite and nonnegative"));
        }
        if !(self.path_loss_exponent > 2.0 && self.path_loss_exponent.is_finite()) {
            return Err(Error::invalid("path_loss_exponent", "must exceed 2"));
        }
        if !(self.nakagami_m >= 0.5) {
            return Err(Error::invalid("nakagami_m", "must be at least 0.5"));
        }
        if !(self.gain_inside > 0.0 && self.gain_outside > 0.0)
            || !(self.gain_inside.is_finite() && self.gain_outside.is_finite())
        {
            return Err(Error::invalid("gain", "gains must be positive and finite"));
        }
        if self.gain_outside > self.gain_inside {
            return Err(Error::invalid("gain_outside", "must not exceed gain_inside"));
        }
        if self.sir_thresholds_db.iter().any(|g| g.is_nan()) {
            return Err(Error::invalid("sir_thresholds_db", "contains NaN"));
        }
        let (r_clu, r_max) = (cluster_slant_range(self), max_slant_range(self));
        if r_clu > r_max * (1.0 + 1e-12) {
            return Err(Error::ClusterExceedsDome {
                r_clu_km: r_clu,
                r_max_km: r_max,
            });
        }
        Ok(())
    }
}

pub fn db_to_lin(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn lin_to_db(lin: f64) -> f64 {
    10.0 * lin.log10()
}

/// Slant range to the dome rim, where the elevation equals `θ_min`.
pub fn max_slant_range(p: &SystemParams) -> f64 {
    let (re, rs, th) = (p.earth_radius_km, p.sat_orbit_radius_km, p.min_elevation_rad);
    -re * th.sin() + (rs * rs - re * re * th.cos().powi(2)).sqrt()
}

/// Area of the observable dome, `2π R_S` times its cap height.
pub fn dome_area(p: &SystemParams) -> f64 {
    let (re, rs) = (p.earth_radius_km, p.sat_orbit_radius_km);
    2.0 * PI * rs * (rs - re - max_slant_range(p) * p.min_elevation_rad.sin())
}

/// Slant range to the rim of the cluster cap.
pub fn cluster_slant_range(p: &SystemParams) -> f64 {
    range_at_polar_angle(p.earth_radius_km, p.sat_orbit_radius_km, p.cluster_polar_angle_rad)
}

/// Area of the cluster cap.
pub fn cluster_area(p: &SystemParams) -> f64 {
    let rs = p.sat_orbit_radius_km;
    4.0 * PI * rs * rs * (p.cluster_polar_angle_rad / 2.0).sin().powi(2)
}

fn range_at_polar_angle(re: f64, rs: f64, phi: f64) -> f64 {
    // R_S² + R_E² − 2 R_S R_E cos φ without cancellation at small φ
    ((rs - re).powi(2) + 4.0 * rs * re * (phi / 2.0).sin().powi(2)).sqrt()
}

/// Polar angle (at the Earth's centre) of a satellite at slant range `r`.
pub fn polar_angle_at_range(p: &SystemParams, r: f64) -> f64 {
    let (re, rs) = (p.earth_radius_km, p.sat_orbit_radius_km);
    // sin²(φ/2) = (r² − (R_S − R_E)²) / (4 R_S R_E)
    let s2 = ((r * r - (rs - re).powi(2)) / (4.0 * rs * re)).clamp(0.0, 1.0);
    2.0 * s2.sqrt().asin()
}

/// Cluster slant range reached by a beam steered `off_axis_rad` away from nadir.
pub fn off_axis_to_cluster_range(p: &SystemParams, off_axis_rad: f64) -> Result<f64> {
    if !(off_axis_rad > 0.0 && off_axis_rad < PI / 2.0) {
        return Err(Error::domain("off-axis angle", off_axis_rad, "(0, pi/2)"));
    }
    let (re, rs) = (p.earth_radius_km, p.sat_orbit_radius_km);
    let (s, c) = off_axis_rad.sin_cos();
    // R_S²(cos²θ − 1) + R_E²
    let disc = re * re - rs * rs * s * s;
    if disc < 0.0 {
        return Err(Error::BeamMissesEarth { off_axis_rad });
    }
    Ok(rs * c - disc.sqrt())
}

/// Inverse of [`off_axis_to_cluster_range`]: the nadir angle at the satellite
/// under which the user appears at slant range `r`.
pub fn cluster_range_to_off_axis(p: &SystemParams, r: f64) -> Result<f64> {
    let (re, rs) = (p.earth_radius_km, p.sat_orbit_radius_km);
    if !(r > rs - re) || !r.is_finite() {
        return Err(Error::domain("cluster slant range", r, "r > R_S - R_E"));
    }
    let cos = ((rs * rs + r * r - re * re) / (2.0 * rs * r)).min(1.0);
    Ok(cos.acos())
}

/// The two disjoint parts of the observable dome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    /// Serving cap; accumulated power `D`.
    Cluster,
    /// Remaining dome; accumulated interference `I`.
    Outside,
}

impl Region {
    pub fn gain(self, p: &SystemParams) -> f64 {
        match self {
            Region::Cluster => p.gain_inside,
            Region::Outside => p.gain_outside,
        }
    }
}

/// Distances and areas derived from a validated [`SystemParams`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClusterGeometry {
    pub earth_radius_km: f64,
    pub sat_orbit_radius_km: f64,
    pub r_min_km: f64,
    pub r_clu_km: f64,
    pub r_max_km: f64,
    pub dome_area_km2: f64,
    pub cluster_area_km2: f64,
    pub outside_area_km2: f64,
    // r_hi² − r_lo² per region, kept free of cancellation
    cluster_span_sq: f64,
    outside_span_sq: f64,
}

impl ClusterGeometry {
    pub fn new(p: &SystemParams) -> Result<Self> {
        p.validate()?;
        let (re, rs) = (p.earth_radius_km, p.sat_orbit_radius_km);
        let r_max = max_slant_range(p);
        let r_clu = cluster_slant_range(p).min(r_max);
        let dome = dome_area(p);
        let cluster = cluster_area(p).min(dome);
        Ok(ClusterGeometry {
            earth_radius_km: re,
            sat_orbit_radius_km: rs,
            r_min_km: rs - re,
            r_clu_km: r_clu,
            r_max_km: r_max,
            dome_area_km2: dome,
            cluster_area_km2: cluster,
            outside_area_km2: dome - cluster,
            cluster_span_sq: 4.0 * rs * re * (p.cluster_polar_angle_rad / 2.0).sin().powi(2),
            outside_span_sq: (r_max - r_clu) * (r_max + r_clu),
        })
    }

    /// `(r_lo, r_hi)` slant-range limits of a region.
    pub fn bounds(&self, region: Region) -> (f64, f64) {
        match region {
            Region::Cluster => (self.r_min_km, self.r_clu_km),
            Region::Outside => (self.r_clu_km, self.r_max_km),
        }
    }

    pub fn area(&self, region: Region) -> f64 {
        match region {
            Region::Cluster => self.cluster_area_km2,
            Region::Outside => self.outside_area_km2,
        }
    }

    /// `r_hi² − r_lo²`.
    pub fn span_sq(&self, region: Region) -> f64 {
        match region {
            Region::Cluster => self.cluster_span_sq,
            Region::Outside => self.outside_span_sq,
        }
    }

    /// Polar angles `(φ_lo, φ_hi)` bounding a region on the satellite sphere.
    pub fn polar_bounds(&self, region: Region) -> (f64, f64) {
        let (lo, hi) = self.bounds(region);
        let angle = |r: f64| {
            let s2 = ((r * r - self.r_min_km.powi(2))
                / (4.0 * self.sat_orbit_radius_km * self.earth_radius_km))
                .clamp(0.0, 1.0);
            2.0 * s2.sqrt().asin()
        };
        let lo = if region == Region::Cluster { 0.0 } else { angle(lo) };
        (lo, angle(hi))
    }

    fn check_range(&self, region: Region, r: f64) -> Result<()> {
        let (lo, hi) = self.bounds(region);
        if self.span_sq(region) <= 0.0 {
            return Err(Error::domain("region width", 0.0, "a region of positive area"));
        }
        let slack = 1e-12 * hi;
        if !(r >= lo - slack && r <= hi + slack) {
            return Err(Error::domain("slant range", r, "[r_lo, r_hi] of the region"));
        }
        Ok(())
    }

    /// Density of the slant range of a satellite placed uniformly in `region`.
    ///
    /// Uniformity on the sphere makes `r²` uniform, so the density is
    /// `2r / (r_hi² − r_lo²)` in both regions.
    pub fn distance_pdf(&self, region: Region, r: f64) -> Result<f64> {
        self.check_range(region, r)?;
        Ok(2.0 * r / self.span_sq(region))
    }

    pub fn distance_cdf(&self, region: Region, r: f64) -> Result<f64> {
        self.check_range(region, r)?;
        let lo = self.bounds(region).0;
        Ok((((r - lo) * (r + lo)) / self.span_sq(region)).clamp(0.0, 1.0))
    }

    /// Mean number of satellites in `region`.
    pub fn mean_count(&self, p: &SystemParams, region: Region) -> f64 {
        p.sat_density_per_km2 * self.area(region)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specialfns::{integrate_adaptive, QuadratureSpec};

    fn deg(x: f64) -> f64 {
        x.to_radians()
    }

    #[test]
    fn slant_range_limits() {
        let mut p = SystemParams::reference(50.0);
        p.min_elevation_rad = PI / 2.0;
        assert!((max_slant_range(&p) - 500.0).abs() < 1e-9);
        assert!(dome_area(&p).abs() < 1e-6);
        p.min_elevation_rad = 0.0;
        let tangent = (6871f64.powi(2) - 6371f64.powi(2)).sqrt();
        assert!((max_slant_range(&p) - tangent).abs() < 1e-9);
    }

    #[test]
    fn slant_range_matches_elevation_search() {
        let p = SystemParams::reference(50.0);
        let (re, rs) = (p.earth_radius_km, p.sat_orbit_radius_km);
        let elevation = |phi: f64| {
            let (x, z) = (rs * phi.sin(), rs * phi.cos() - re);
            z.atan2(x)
        };
        // elevation falls monotonically with polar angle; bisect for 25°
        let (mut lo, mut hi) = (0.0, PI / 2.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if elevation(mid) > p.min_elevation_rad {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let chord = range_at_polar_angle(re, rs, lo);
        assert!((chord - max_slant_range(&p)).abs() < 1e-8);
        assert!((max_slant_range(&p) - 1031.8).abs() < 0.05);
    }

    #[test]
    fn areas_match_surface_integrals() {
        let p = SystemParams::reference(50.0);
        let g = ClusterGeometry::new(&p).unwrap();
        let rs = p.sat_orbit_radius_km;
        let spec = QuadratureSpec::default();
        let cap = |phi_hi: f64| {
            integrate_adaptive(|phi: f64| 2.0 * PI * rs * rs * phi.sin(), 0.0, phi_hi, &spec)
                .unwrap()
                .value
        };
        let phi_dome = g.polar_bounds(Region::Outside).1;
        assert!((cap(phi_dome) / g.dome_area_km2 - 1.0).abs() < 1e-9);
        assert!((cap(p.cluster_polar_angle_rad) / g.cluster_area_km2 - 1.0).abs() < 1e-9);
        let h = rs - p.earth_radius_km - g.r_max_km * p.min_elevation_rad.sin();
        assert!((g.dome_area_km2 - 2.0 * PI * rs * h).abs() < 1e-6);
    }

    #[test]
    fn cluster_area_closed_forms_agree() {
        let p = SystemParams::reference(50.0);
        let (re, rs) = (p.earth_radius_km, p.sat_orbit_radius_km);
        let r = cluster_slant_range(&p);
        let direct = (rs * rs + re * re - 2.0 * rs * re * p.cluster_polar_angle_rad.cos()).sqrt();
        assert!((r - direct).abs() < 1e-9);
        let via_range = 2.0 * PI * rs * (rs - re - (rs * rs - re * re - r * r) / (2.0 * re));
        assert!((cluster_area(&p) / via_range - 1.0).abs() < 1e-9);
    }

    #[test]
    fn reference_counts() {
        let p = SystemParams::reference(50.0);
        let g = ClusterGeometry::new(&p).unwrap();
        let ratio = 4.0 * PI * p.sat_orbit_radius_km.powi(2) / g.dome_area_km2;
        assert!((ratio - 214.0).abs() < 1.5, "{ratio}");
        assert!((g.mean_count(&p, Region::Cluster) / 2.0837 - 1.0).abs() < 0.02);
        assert!((p.sphere_mean() / 10_700.0 - 1.0).abs() < 0.02);
        assert!((p.visible_mean() - 50.0).abs() < 1e-9);
    }

    #[test]
    fn zero_cluster_angle_limit() {
        let mut p = SystemParams::reference(50.0);
        p.cluster_polar_angle_rad = 0.0;
        assert_eq!(cluster_slant_range(&p), 500.0);
        assert_eq!(cluster_area(&p), 0.0);
        assert!(p.validate().is_err());
    }

    #[test]
    fn oversized_cluster_rejected() {
        let mut p = SystemParams::reference(50.0);
        p.cluster_polar_angle_rad = deg(20.0);
        assert!(matches!(p.validate(), Err(Error::ClusterExceedsDome { .. })));
    }

    #[test]
    fn off_axis_round_trip_and_monotone() {
        let p = SystemParams::reference(50.0);
        let near = off_axis_to_cluster_range(&p, 1e-6).unwrap();
        assert!((near - 500.0).abs() < 1e-6);
        let mut last = 0.0;
        for i in 1..60 {
            let th = deg(i as f64);
            let r = off_axis_to_cluster_range(&p, th).unwrap();
            assert!(r > last);
            last = r;
            assert!((cluster_range_to_off_axis(&p, r).unwrap() - th).abs() < 1e-9);
        }
        // sin θ > R_E / R_S misses the Earth
        assert!(matches!(
            off_axis_to_cluster_range(&p, deg(70.0)),
            Err(Error::BeamMissesEarth { .. })
        ));
        assert!(off_axis_to_cluster_range(&p, 0.0).is_err());
    }

    #[test]
    fn distance_laws() {
        let p = SystemParams::reference(50.0);
        let g = ClusterGeometry::new(&p).unwrap();
        let spec = QuadratureSpec::default();
        for region in [Region::Cluster, Region::Outside] {
            let (lo, hi) = g.bounds(region);
            assert_eq!(g.distance_cdf(region, lo).unwrap(), 0.0);
            assert!((g.distance_cdf(region, hi).unwrap() - 1.0).abs() < 1e-15);
            let total = integrate_adaptive(|r: f64| g.distance_pdf(region, r).unwrap(), lo, hi, &spec)
                .unwrap()
                .value;
            assert!((total - 1.0).abs() < 1e-12);
            for i in 1..10 {
                let r = lo + (hi - lo) * i as f64 / 10.0;
                let h = 1e-4 * (hi - lo);
                let fd = (g.distance_cdf(region, r + h).unwrap() - g.distance_cdf(region, r - h).unwrap())
                    / (2.0 * h);
                let pdf = g.distance_pdf(region, r).unwrap();
                assert!((fd / pdf - 1.0).abs() < 1e-6);
            }
            assert!(g.distance_pdf(region, hi + 1.0).is_err());
        }
        // inside density as r / (R_E R_S (1 − cos φ))
        let r = 520.0;
        let expected = r / (p.earth_radius_km * p.sat_orbit_radius_km * (1.0 - p.cluster_polar_angle_rad.cos()));
        assert!((g.distance_pdf(Region::Cluster, r).unwrap() / expected - 1.0).abs() < 1e-9);
        // outside density matches R_E (R_S cos φ − R_E − R_max sin θ) normalisation
        let (re, rs) = (p.earth_radius_km, p.sat_orbit_radius_km);
        let norm = re * (rs * p.cluster_polar_angle_rad.cos() - re - g.r_max_km * p.min_elevation_rad.sin());
        assert!((g.distance_pdf(Region::Outside, 900.0).unwrap() / (900.0 / norm) - 1.0).abs() < 1e-9);
    }
}
