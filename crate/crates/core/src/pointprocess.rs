//! Homogeneous Poisson point process on the visible part of the satellite sphere.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_traits::Float;
use rand::Rng;
use rand_distr::{Distribution, Poisson};

use crate::geometry::{ClusterGeometry, Region, SystemParams};

/// One satellite of a sampled constellation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SatelliteSample {
    /// Earth-centred position, km.
    pub position: [f64; 3],
    pub distance_to_user_km: f64,
    pub in_cluster: bool,
}

/// Poisson count with mean `rate`.
pub fn sample_count<R: Rng + ?Sized>(rate: f64, rng: &mut R) -> u64 {
    if !(rate > 0.0) {
        return 0;
    }
    let count: f64 = Poisson::new(rate).expect("finite positive rate").sample(rng);
    count as u64
}

/// `n` points uniform on the annulus of the sphere of radius `sat_radius`
/// between polar angles `zenith_lo` and `zenith_hi`.
///
/// By the hat-box property the height is uniform, so sampling needs no
/// rejection.
pub fn sample_cap_uniform<R: Rng + ?Sized>(
    n: usize,
    zenith_lo: f64,
    zenith_hi: f64,
    sat_radius: f64,
    rng: &mut R,
) -> Vec<[f64; 3]> {
    let (h_lo, h_hi) = (cap_height(sat_radius, zenith_lo), cap_height(sat_radius, zenith_hi));
    (0..n)
        .map(|_| point_at_height(sat_radius, h_lo + (h_hi - h_lo) * rng.random::<f64>(), rng))
        .collect()
}

// depth below the north pole, 2 R sin²(φ/2)
fn cap_height(radius: f64, polar: f64) -> f64 {
    2.0 * radius * (polar / 2.0).sin().powi(2)
}

fn point_at_height<R: Rng + ?Sized>(radius: f64, h: f64, rng: &mut R) -> [f64; 3] {
    let rho = (h * (2.0 * radius - h)).max(0.0).sqrt();
    let (s, c) = (2.0 * PI * rng.random::<f64>()).sin_cos();
    [rho * c, rho * s, radius - h]
}

/// Satellites visible to the typical user, split by region.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Constellation {
    pub cluster: Vec<SatelliteSample>,
    pub outside: Vec<SatelliteSample>,
}

impl Constellation {
    pub fn clear(&mut self) {
        self.cluster.clear();
        self.outside.clear();
    }

    pub fn len(&self) -> usize {
        self.cluster.len() + self.outside.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = &SatelliteSample> {
        self.cluster.iter().chain(self.outside.iter())
    }
}

/// Draws one constellation snapshot restricted to the observable dome.
pub fn sample_constellation<R: Rng + ?Sized>(p: &SystemParams, g: &ClusterGeometry, rng: &mut R) -> Constellation {
    let mut out = Constellation::default();
    sample_constellation_into(p, g, rng, &mut out);
    out
}

/// As [`sample_constellation`], reusing the buffers of `out`.
pub fn sample_constellation_into<R: Rng + ?Sized>(
    p: &SystemParams,
    g: &ClusterGeometry,
    rng: &mut R,
    out: &mut Constellation,
) {
    out.clear();
    for region in [Region::Cluster, Region::Outside] {
        let n = sample_count(g.mean_count(p, region), rng);
        let (lo, hi) = g.polar_bounds(region);
        let rs = g.sat_orbit_radius_km;
        let (h_lo, h_hi) = (cap_height(rs, lo), cap_height(rs, hi));
        let target = match region {
            Region::Cluster => &mut out.cluster,
            Region::Outside => &mut out.outside,
        };
        target.reserve(n as usize);
        for _ in 0..n {
            let h = h_lo + (h_hi - h_lo) * rng.random::<f64>();
            let position = point_at_height(rs, h, rng);
            // r² = (R_S − R_E)² + 2 R_E h
            let d = (g.r_min_km * g.r_min_km + 2.0 * g.earth_radius_km * h).sqrt();
            target.push(SatelliteSample {
                position,
                distance_to_user_km: d,
                in_cluster: region == Region::Cluster,
            });
        }
    }
}
