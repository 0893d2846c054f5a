use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::geometry::{ClusterGeometry, Region, SystemParams};
use crate::specialfns::{
    gauss_2f1, integrate_with_breakpoints, ln_factorial, scaled_pochhammer, BellTable, CompensatedSum,
    QuadratureSpec,
};

/// Highest derivative order assembled by default.
pub const DEFAULT_ORDER_CAP: usize = 40;

/// How single-satellite integrals are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaplaceMethod {
    /// Adaptive quadrature over the slant range; any `m`.
    Quadrature,
    /// Gauss hypergeometric closed form; Rayleigh fading (`m = 1`) only.
    ClosedForm,
}

/// Laplace transform of the accumulated power of one region.
///
/// With `c = s G`, `v = c r^-α` and `f_R` the slant-range density, the
/// transform is `L(s) = exp(−λ|A| (1 − ρ(s)))` where
/// `ρ(s) = E[(1 + v/m)^-m]`. Derivatives are carried in the scaled form
///
/// ```text
/// y_n = (−1)^n sⁿ (log L)⁽ⁿ⁾(s) / n! = λ|A| E[(m)_n / (n! mⁿ) vⁿ (1 + v/m)^(−m−n)]
/// ```
///
/// which is positive for every `n`, with `y_0 = λ|A| (1 − ρ(s))`.
#[derive(Debug, Clone)]
pub struct LaplaceContext {
    region: Region,
    gain: f64,
    alpha: f64,
    m: f64,
    mean_count: f64,
    lo: f64,
    hi: f64,
    span_sq: f64,
    spec: QuadratureSpec,
    order_cap: usize,
}

impl LaplaceContext {
    /// Context for `region` with the scenario's Nakagami `m`.
    pub fn new(p: &SystemParams, g: &ClusterGeometry, region: Region) -> Result<Self> {
        let (lo, hi) = g.bounds(region);
        let ctx = LaplaceContext {
            region,
            gain: region.gain(p),
            alpha: p.path_loss_exponent,
            m: p.nakagami_m,
            mean_count: g.mean_count(p, region),
            lo,
            hi,
            span_sq: g.span_sq(region),
            spec: QuadratureSpec::default(),
            order_cap: DEFAULT_ORDER_CAP,
        };
        ctx.with_m(p.nakagami_m)
    }

    pub fn with_m(mut self, m: f64) -> Result<Self> {
        if !(m >= 0.5) {
            return Err(Error::invalid("nakagami_m", "must be at least 0.5"));
        }
        self.m = m;
        Ok(self)
    }

    pub fn with_order_cap(mut self, cap: usize) -> Self {
        self.order_cap = cap;
        self
    }

    pub fn with_quadrature(mut self, spec: QuadratureSpec) -> Result<Self> {
        spec.validate()?;
        self.spec = spec;
        Ok(self)
    }

    pub fn region(&self) -> Region {
        self.region
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn order_cap(&self) -> usize {
        self.order_cap
    }

    /// `λ |A|` of the region.
    pub fn mean_count(&self) -> f64 {
        self.mean_count
    }

    fn check_s(s: f64) -> Result<()> {
        if s >= 0.0 && s.is_finite() {
            Ok(())
        } else {
            Err(Error::domain("transform point", s, "0 <= s < inf"))
        }
    }

    fn check_method(&self, method: LaplaceMethod) -> Result<()> {
        if method == LaplaceMethod::ClosedForm && self.m != 1.0 {
            return Err(Error::invalid("nakagami_m", "the closed form needs m = 1"));
        }
        Ok(())
    }

    fn degenerate(&self) -> bool {
        !(self.span_sq > 0.0) || !(self.mean_count > 0.0)
    }

    /// `E[(m)_n / (n! mⁿ) vⁿ (1 + v/m)^(−m−n)]` for `n >= 1`, or `1 − ρ(s)`
    /// for `n = 0`.
    fn single_sat_term(&self, n: usize, s: f64, method: LaplaceMethod) -> Result<f64> {
        if s == 0.0 || !(self.span_sq > 0.0) {
            return Ok(0.0);
        }
        match method {
            LaplaceMethod::Quadrature => self.single_sat_term_quadrature(n, s),
            LaplaceMethod::ClosedForm => self.single_sat_term_closed(n, s),
        }
    }

    fn single_sat_term_quadrature(&self, n: usize, s: f64) -> Result<f64> {
        let (m, alpha) = (self.m, self.alpha);
        let ln_c = (s * self.gain).ln();
        let ln_sp = scaled_pochhammer(m, n).ln();
        let nf = n as f64;
        let norm = 2.0 / self.span_sq;
        let integrand = |r: f64| {
            let ln_v = ln_c - alpha * r.ln();
            let v = ln_v.exp();
            let kernel = if n == 0 {
                -(-m * (v / m).ln_1p()).exp_m1()
            } else {
                (ln_sp + nf * ln_v - (m + nf) * (v / m).ln_1p()).exp()
            };
            norm * r * kernel
        };
        // the kernel peaks where v = n
        let mut points = alloc::vec![self.lo];
        if n > 0 {
            let peak = ((ln_c - nf.ln()) / alpha).exp();
            if peak > self.lo && peak < self.hi {
                points.push(peak);
            }
        }
        points.push(self.hi);
        Ok(integrate_with_breakpoints(integrand, &points, &self.spec)?.value)
    }

    fn single_sat_term_closed(&self, n: usize, s: f64) -> Result<f64> {
        let alpha = self.alpha;
        let c = s * self.gain;
        let (w_lo, w_hi) = (self.lo.powf(alpha) / c, self.hi.powf(alpha) / c);
        // u = r^α = c w turns the range average into ∫ w^(b−1) (1 + w)^(−a) dw
        let b = if n == 0 { 2.0 / alpha } else { 1.0 + 2.0 / alpha };
        let a = (n + 1) as f64;
        let ln_integral = ln_beta_kernel(b, a, w_lo, w_hi)?;
        let ln_front = (2.0 / (self.span_sq * alpha)).ln() + (2.0 / alpha) * c.ln();
        Ok((ln_front + ln_integral).exp())
    }

    /// `ρ(s)`, the Laplace transform of one satellite's received power.
    pub fn single_sat_laplace(&self, s: f64) -> Result<f64> {
        self.single_sat_laplace_with(s, LaplaceMethod::Quadrature)
    }

    pub fn single_sat_laplace_with(&self, s: f64, method: LaplaceMethod) -> Result<f64> {
        Self::check_s(s)?;
        self.check_method(method)?;
        Ok(1.0 - self.single_sat_term(0, s, method)?)
    }

    /// `L(s) = E[e^(−sX)]` for the region's accumulated power `X`.
    pub fn laplace(&self, s: f64) -> Result<f64> {
        Ok((-self.scaled_log_derivative(0, s, LaplaceMethod::Quadrature)?).exp())
    }

    /// `y_n` as defined on the type; `y_0 = −log L(s)`.
    pub fn scaled_log_derivative(&self, n: usize, s: f64, method: LaplaceMethod) -> Result<f64> {
        Self::check_s(s)?;
        self.check_method(method)?;
        if self.degenerate() {
            return Ok(0.0);
        }
        Ok(self.mean_count * self.single_sat_term(n, s, method)?)
    }

    /// `dⁿ log L / dsⁿ` at `s > 0`.
    pub fn log_laplace_derivative(&self, n: usize, s: f64) -> Result<f64> {
        self.log_laplace_derivative_with(n, s, LaplaceMethod::Quadrature)
    }

    pub fn log_laplace_derivative_with(&self, n: usize, s: f64, method: LaplaceMethod) -> Result<f64> {
        if n == 0 {
            return Ok(-self.scaled_log_derivative(0, s, method)?);
        }
        if !(s > 0.0) {
            return Err(Error::domain("transform point", s, "s > 0"));
        }
        let y = self.scaled_log_derivative(n, s, method)?;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        Ok(sign * (ln_factorial(n) + y.ln() - n as f64 * s.ln()).exp())
    }

    /// Terms `t_0..=t_order` of `L` at `s`, where
    /// `t_n = (−1)^n sⁿ L⁽ⁿ⁾(s) / n! = E[(sX)ⁿ/n! e^(−sX)]`.
    pub fn series(&self, s: f64, order: usize) -> Result<LaplaceSeries> {
        self.series_with(s, order, LaplaceMethod::Quadrature)
    }

    pub fn series_with(&self, s: f64, order: usize, method: LaplaceMethod) -> Result<LaplaceSeries> {
        if order > self.order_cap {
            return Err(Error::OrderCap {
                order,
                cap: self.order_cap,
            });
        }
        let y = (0..=order)
            .map(|n| self.scaled_log_derivative(n, s, method))
            .collect::<Result<Vec<_>>>()?;
        Ok(LaplaceSeries::from_scaled(s, y))
    }

    /// `dⁿL/dsⁿ` at `s > 0` by Faà di Bruno's formula.
    pub fn laplace_derivative(&self, n: usize, s: f64) -> Result<f64> {
        if n == 0 {
            return self.laplace(s);
        }
        if !(s > 0.0) {
            return Err(Error::domain("transform point", s, "s > 0"));
        }
        let t = self.series(s, n)?.terms[n];
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        Ok(sign * (ln_factorial(n) + t.ln() - n as f64 * s.ln()).exp())
    }
}

/// Derivative terms of a Laplace transform at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct LaplaceSeries {
    pub s: f64,
    /// `L(s)`.
    pub laplace: f64,
    /// `y_0..=y_order`.
    pub scaled_log_derivatives: Vec<f64>,
    /// `t_0..=t_order`.
    pub terms: Vec<f64>,
}

impl LaplaceSeries {
    /// Assembles `t_n = L Σ_q B_{n,q}(1! y_1, 2! y_2, ...) / n!`.
    pub fn from_scaled(s: f64, y: Vec<f64>) -> Self {
        let laplace = (-y[0]).exp();
        let bell = BellTable::scaled(&y[1..]);
        let terms = (0..y.len()).map(|n| laplace * bell.complete(n)).collect();
        LaplaceSeries {
            s,
            laplace,
            scaled_log_derivatives: y,
            terms,
        }
    }

    /// The same terms from `n t_n = Σ_k k y_k t_{n−k}`, used as a cross-check.
    pub fn recurrence_terms(&self) -> Vec<f64> {
        let y = &self.scaled_log_derivatives;
        let mut t = Vec::with_capacity(y.len());
        t.push(self.laplace);
        for n in 1..y.len() {
            let mut sum = CompensatedSum::new();
            for k in 1..=n {
                sum.add(k as f64 * y[k] * t[n - k]);
            }
            t.push(sum.value() / n as f64);
        }
        t
    }

    /// `Σ_{n<k} t_n`.
    pub fn partial_sum(&self, k: usize) -> f64 {
        self.terms[..k].iter().copied().collect::<CompensatedSum>().value()
    }
}

/// `ln ∫_{w_lo}^{w_hi} w^(b−1) (1 + w)^(−a) dw` for `b > 0`.
///
/// Below `w = 1` the integral is taken from the origin, above it from
/// infinity (when `a > b`), so neither piece subtracts two nearly equal
/// hypergeometric values.
fn ln_beta_kernel(b: f64, a: f64, w_lo: f64, w_hi: f64) -> Result<f64> {
    // ∫_0^w = w^b / b 2F1(a, b; b+1; −w)
    let head = |w: f64| -> Result<f64> {
        if w == 0.0 {
            return Ok(f64::NEG_INFINITY);
        }
        Ok(b * w.ln() - b.ln() + gauss_2f1(a, b, b + 1.0, -w)?.ln())
    };
    // ∫_w^∞ = w^(b−a) / (a−b) 2F1(a, a−b; a−b+1; −1/w)
    let tail = |w: f64| -> Result<f64> {
        if w.is_infinite() {
            return Ok(f64::NEG_INFINITY);
        }
        let d = a - b;
        Ok(-d * w.ln() - d.ln() + gauss_2f1(a, d, d + 1.0, -1.0 / w)?.ln())
    };
    let ln_sub = |big: f64, small: f64| big + (-(small - big).exp()).ln_1p();

    let use_tail = a > b;
    let mut pieces = Vec::with_capacity(2);
    if w_lo < 1.0 || !use_tail {
        let top = if use_tail { w_hi.min(1.0) } else { w_hi };
        pieces.push(ln_sub(head(top)?, head(w_lo)?));
    }
    if use_tail && w_hi > 1.0 {
        let bottom = w_lo.max(1.0);
        pieces.push(ln_sub(tail(bottom)?, tail(w_hi)?));
    }
    let peak = pieces.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if peak == f64::NEG_INFINITY {
        return Ok(peak);
    }
    Ok(peak + pieces.iter().map(|l| (l - peak).exp()).sum::<f64>().ln())
}
