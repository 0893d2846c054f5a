//! Globally adaptive 21-point Gauss-Kronrod integration (QUADPACK `qag` style).

use alloc::vec::Vec;
use num_traits::Float;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            abs_tol: 1e-300,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureSpec {
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) {
            return Err(Error::invalid("quadrature tolerance", "tolerances must be positive"));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::invalid("max_subdivisions", "must be at least 1"));
        }
        Ok(())
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
}

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_119_834_270,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// weights of the embedded 10-point Gauss rule, attached to XGK[1], XGK[3], ...
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn gauss_kronrod21<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut gauss = 0.0;
    let mut res_abs = kronrod.abs();
    let mut fv = [(0.0, 0.0); 10];
    for (j, &x) in XGK[..10].iter().enumerate() {
        let dx = half * x;
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv[j] = (f1, f2);
        kronrod += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for (j, &(f1, f2)) in fv.iter().enumerate() {
        res_asc += WGK[j] * ((f1 - mean).abs() + (f2 - mean).abs());
    }
    let value = kronrod * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();

    let mut error = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Segment { a, b, value, error }
}

/// Integrate `f` over `[a, b]`.
///
/// Returns [`Error::NonConvergence`] carrying the best estimate when the
/// subdivision budget runs out before the error target is met.
pub fn integrate_adaptive<F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Quadrature>
where
    F: FnMut(f64) -> f64,
{
    integrate_with_breakpoints(f, &[a, b], spec)
}

/// Like [`integrate_adaptive`] but starts from the given increasing breakpoints,
/// useful when the integrand has features at known locations.
pub fn integrate_with_breakpoints<F>(mut f: F, points: &[f64], spec: &QuadratureSpec) -> Result<Quadrature>
where
    F: FnMut(f64) -> f64,
{
    spec.validate()?;
    if points.len() < 2 {
        return Err(Error::invalid("breakpoints", "need at least two points"));
    }
    for w in points.windows(2) {
        if !(w[0] < w[1]) || !w[0].is_finite() || !w[1].is_finite() {
            return Err(Error::invalid("integration limits", "need finite a < b"));
        }
    }

    let mut segments: Vec<Segment> = points
        .windows(2)
        .map(|w| gauss_kronrod21(&mut f, w[0], w[1]))
        .collect();

    loop {
        let value: f64 = segments.iter().map(|s| s.value).sum();
        let error: f64 = segments.iter().map(|s| s.error).sum();
        if !value.is_finite() {
            return Err(Error::NonConvergence { estimate: value, error });
        }
        if error <= spec.target(value) {
            return Ok(Quadrature { value, error });
        }
        if segments.len() >= spec.max_subdivisions {
            return Err(Error::NonConvergence { estimate: value, error });
        }
        let (worst, _) = segments
            .iter()
            .enumerate()
            .fold((0, -1.0), |(bi, be), (i, s)| if s.error > be { (i, s.error) } else { (bi, be) });
        let seg = segments.swap_remove(worst);
        let mid = 0.5 * (seg.a + seg.b);
        if !(seg.a < mid && mid < seg.b) {
            // cannot split further in floating point
            return Err(Error::NonConvergence { estimate: value, error });
        }
        segments.push(gauss_kronrod21(&mut f, seg.a, mid));
        segments.push(gauss_kronrod21(&mut f, mid, seg.b));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn polynomial_and_trig() {
        let q = integrate_adaptive(|x| x, 0.0, 1.0, &spec()).unwrap();
        assert!((q.value - 0.5).abs() < 1e-15);
        let q = integrate_adaptive(f64::sin, 0.0, PI, &spec()).unwrap();
        assert!((q.value - 2.0).abs() < 1e-14);
        assert!(q.error <= 1e-12 * 2.0);
    }

    #[test]
    fn peaked_integrand() {
        // narrow Lorentzian, exact value 2 atan(1000)/1000 ... scaled
        let q = integrate_adaptive(|x| 1.0 / (1e-6 + x * x), -1.0, 1.0, &spec()).unwrap();
        let exact = 2.0 * (1.0 / 1e-3f64).atan() / 1e-3;
        assert!((q.value - exact).abs() / exact < 1e-11);
    }

    #[test]
    fn endpoint_singularity_converges_with_budget() {
        let q = integrate_adaptive(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, &spec()).unwrap();
        assert!((q.value - 2.0).abs() < 1e-10);
    }

    #[test]
    fn budget_exhaustion_reports_estimate() {
        let tight = QuadratureSpec {
            rel_tol: 1e-15,
            abs_tol: 1e-300,
            max_subdivisions: 3,
        };
        match integrate_adaptive(|x: f64| (50.0 * x).sin().abs(), 0.0, 3.0, &tight) {
            Err(Error::NonConvergence { estimate, .. }) => assert!(estimate.is_finite()),
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_limits() {
        assert!(integrate_adaptive(|x| x, 1.0, 1.0, &spec()).is_err());
        let bad = QuadratureSpec { rel_tol: 0.0, ..spec() };
        assert!(integrate_adaptive(|x| x, 0.0, 1.0, &bad).is_err());
    }
}
