use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::geometry::{lin_to_db, ClusterGeometry, Region, SystemParams};

use super::laplace::{LaplaceContext, LaplaceMethod};
use super::moments::{gamma_params, GammaApprox};

/// Which coverage bound family to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theorem {
    /// `I` approximated by a Gamma law; needs derivatives of `L_D` up to
    /// order `⌈k_I⌉ − 1`.
    One,
    /// `D` approximated by a Gamma law; needs derivatives of `L_I` up to
    /// order `⌈k_D⌉ − 1`.
    Two,
}

impl Theorem {
    pub fn number(self) -> u8 {
        match self {
            Theorem::One => 1,
            Theorem::Two => 2,
        }
    }
}

/// Coverage bounds at one threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundResult {
    pub gamma_lin: f64,
    pub gamma_db: f64,
    pub lower: f64,
    pub upper: f64,
    pub heuristic: f64,
    pub theorem: Theorem,
    /// Highest derivative order that entered the bounds.
    pub order_used: usize,
    /// False when the shape is below one, so that the lower bound is the
    /// trivial 0.
    pub lower_defined: bool,
    /// Shape of the approximated variable.
    pub shape: f64,
    /// `t_0..=t_order_used`.
    pub terms: Vec<f64>,
}

/// `(⌈k⌉ − k) bound(⌊k⌋) + (k − ⌊k⌋) bound(⌈k⌉)`.
pub fn coverage_heuristic(bound_floor: f64, bound_ceil: f64, k: f64) -> f64 {
    let fl = k.floor();
    if fl == k {
        return bound_floor;
    }
    (fl + 1.0 - k) * bound_floor + (k - fl) * bound_ceil
}

/// Bound evaluator for one theorem on one scenario.
#[derive(Debug, Clone)]
pub struct BoundEngine {
    theorem: Theorem,
    laplace: LaplaceContext,
    approx: GammaApprox,
    method: LaplaceMethod,
}

impl BoundEngine {
    pub fn new(p: &SystemParams, g: &ClusterGeometry, theorem: Theorem) -> Result<Self> {
        let (transformed, approximated) = match theorem {
            Theorem::One => (Region::Cluster, Region::Outside),
            Theorem::Two => (Region::Outside, Region::Cluster),
        };
        let laplace = LaplaceContext::new(p, g, transformed)?;
        let approx = gamma_params(p, g, approximated, p.nakagami_m)?;
        Self::from_parts(theorem, laplace, approx)
    }

    /// Pairs a transform with an explicit Gamma law, e.g. to force an integer
    /// shape.
    pub fn from_parts(theorem: Theorem, laplace: LaplaceContext, approx: GammaApprox) -> Result<Self> {
        let expected = match theorem {
            Theorem::One => (Region::Cluster, Region::Outside),
            Theorem::Two => (Region::Outside, Region::Cluster),
        };
        if (laplace.region(), approx.region) != expected {
            return Err(Error::invalid("theorem", "transform and Gamma law belong to the wrong regions"));
        }
        if theorem == Theorem::One && approx.shape < 1.0 {
            return Err(Error::ShapeBelowOne { shape: approx.shape });
        }
        let order = approx.shape_ceil().saturating_sub(1);
        if order > laplace.order_cap() {
            return Err(Error::OrderCap {
                order,
                cap: laplace.order_cap(),
            });
        }
        Ok(BoundEngine {
            theorem,
            laplace,
            approx,
            method: LaplaceMethod::Quadrature,
        })
    }

    pub fn with_method(mut self, method: LaplaceMethod) -> Self {
        self.method = method;
        self
    }

    pub fn theorem(&self) -> Theorem {
        self.theorem
    }

    pub fn approx(&self) -> &GammaApprox {
        &self.approx
    }

    pub fn laplace(&self) -> &LaplaceContext {
        &self.laplace
    }

    fn transform_point(&self, gamma_lin: f64) -> Result<f64> {
        if !(gamma_lin > 0.0 && gamma_lin.is_finite()) {
            return Err(Error::domain("SIR threshold", gamma_lin, "0 < gamma < inf"));
        }
        Ok(match self.theorem {
            Theorem::One => 1.0 / (gamma_lin * self.approx.scale),
            Theorem::Two => gamma_lin / self.approx.scale,
        })
    }

    fn bound_from_sum(&self, partial: f64) -> f64 {
        let b = match self.theorem {
            Theorem::One => 1.0 - partial,
            Theorem::Two => partial,
        };
        b.clamp(0.0, 1.0)
    }

    /// Bound with the Erlang shape forced to `k_tilde`.
    pub fn bound_with_shape(&self, k_tilde: usize, gamma_lin: f64) -> Result<f64> {
        let s = self.transform_point(gamma_lin)?;
        if k_tilde == 0 {
            return Ok(self.bound_from_sum(0.0));
        }
        let series = self.laplace.series_with(s, k_tilde - 1, self.method)?;
        Ok(self.bound_from_sum(series.partial_sum(k_tilde)))
    }

    pub fn evaluate(&self, gamma_lin: f64) -> Result<BoundResult> {
        let s = self.transform_point(gamma_lin)?;
        let k = self.approx.shape;
        let (kf, kc) = (self.approx.shape_floor(), self.approx.shape_ceil());
        let order = kc.saturating_sub(1);
        let series = self.laplace.series_with(s, order, self.method)?;
        let at_floor = self.bound_from_sum(series.partial_sum(kf));
        let at_ceil = self.bound_from_sum(series.partial_sum(kc));
        let lower_defined = !(self.theorem == Theorem::Two && kf == 0);
        let (lower, upper) = match self.theorem {
            Theorem::One => (at_ceil, at_floor),
            Theorem::Two => (if lower_defined { at_floor } else { 0.0 }, at_ceil),
        };
        let heuristic = coverage_heuristic(at_floor, at_ceil, k).clamp(lower, upper);
        Ok(BoundResult {
            gamma_lin,
            gamma_db: lin_to_db(gamma_lin),
            lower,
            upper,
            heuristic,
            theorem: self.theorem,
            order_used: order,
            lower_defined,
            shape: k,
            terms: series.terms,
        })
    }
}

/// Theorem-1 bounds: the interference is replaced by its Gamma approximation.
pub fn coverage_bounds_theorem1(p: &SystemParams, g: &ClusterGeometry, gamma_lin: f64) -> Result<BoundResult> {
    BoundEngine::new(p, g, Theorem::One)?.evaluate(gamma_lin)
}

/// Theorem-2 bounds: the cluster power is replaced by its Gamma approximation.
pub fn coverage_bounds_theorem2(p: &SystemParams, g: &ClusterGeometry, gamma_lin: f64) -> Result<BoundResult> {
    BoundEngine::new(p, g, Theorem::Two)?.evaluate(gamma_lin)
}
