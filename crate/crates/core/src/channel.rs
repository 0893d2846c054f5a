//! Small-scale fading models and the two-level sectored antenna gain.

use num_traits::Float;
use rand::Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};

use crate::error::{Error, Result};
use crate::specialfns::ln_kummer_1f1;

fn check_m(m: f64) -> Result<()> {
    if m >= 0.5 && m.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid("nakagami_m", "must be finite and at least 0.5"))
    }
}

/// Density of the Nakagami-m power `H`, a unit-mean Gamma(m, 1/m) variable.
pub fn nakagami_power_pdf(m: f64, h: f64) -> Result<f64> {
    check_m(m)?;
    if h < 0.0 {
        return Err(Error::domain("fading power", h, "h >= 0"));
    }
    if h == 0.0 {
        return Ok(match m {
            m if m < 1.0 => f64::INFINITY,
            m if m == 1.0 => 1.0,
            _ => 0.0,
        });
    }
    Ok((m * m.ln() - m * h + (m - 1.0) * h.ln() - libm::lgamma(m)).exp())
}

pub fn sample_nakagami_power<R: Rng + ?Sized>(m: f64, rng: &mut R) -> Result<f64> {
    Ok(nakagami_distribution(m)?.sample(rng))
}

fn nakagami_distribution(m: f64) -> Result<Gamma<f64>> {
    check_m(m)?;
    Gamma::new(m, 1.0 / m).map_err(|_| Error::invalid("nakagami_m", "rejected by the Gamma sampler"))
}

/// Shadowed-Rician parameters: shadowing severity `m`, half the scattered
/// power `b0` and the mean line-of-sight power `omega`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShadowedRicianParams {
    pub m: f64,
    pub b0: f64,
    pub omega: f64,
}

impl ShadowedRicianParams {
    /// Average shadowing.
    pub const AVERAGE: ShadowedRicianParams = ShadowedRicianParams {
        m: 2.0,
        b0: 0.128,
        omega: 0.832,
    };

    pub fn validate(&self) -> Result<()> {
        check_m(self.m)?;
        if !(self.b0 > 0.0 && self.b0.is_finite()) {
            return Err(Error::invalid("sr_b0", "must be positive and finite"));
        }
        if !(self.omega >= 0.0 && self.omega.is_finite()) {
            return Err(Error::invalid("sr_omega", "must be finite and nonnegative"));
        }
        Ok(())
    }

    pub fn mean_power(&self) -> f64 {
        2.0 * self.b0 + self.omega
    }
}

/// Density of the shadowed-Rician power.
pub fn shadowed_rician_power_pdf(sr: &ShadowedRicianParams, h: f64) -> Result<f64> {
    sr.validate()?;
    if h < 0.0 {
        return Err(Error::domain("fading power", h, "h >= 0"));
    }
    let (m, b0, om) = (sr.m, sr.b0, sr.omega);
    let denom = 2.0 * m * b0 + om;
    let ln_front = m * (2.0 * m * b0 / denom).ln() - (2.0 * b0).ln();
    let ln_hyp = ln_kummer_1f1(m, 1.0, om * h / (2.0 * b0 * denom))?;
    Ok((ln_front - h / (2.0 * b0) + ln_hyp).exp())
}

pub fn sample_shadowed_rician_power<R: Rng + ?Sized>(sr: &ShadowedRicianParams, rng: &mut R) -> Result<f64> {
    Ok(FadingSampler::new(Fading::ShadowedRician(*sr))?.sample(rng))
}

/// Fading law applied independently to every link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Fading {
    Nakagami { m: f64 },
    ShadowedRician(ShadowedRicianParams),
}

impl Fading {
    pub fn pdf(&self, h: f64) -> Result<f64> {
        match self {
            Fading::Nakagami { m } => nakagami_power_pdf(*m, h),
            Fading::ShadowedRician(sr) => shadowed_rician_power_pdf(sr, h),
        }
    }

    pub fn mean_power(&self) -> f64 {
        match self {
            Fading::Nakagami { .. } => 1.0,
            Fading::ShadowedRician(sr) => sr.mean_power(),
        }
    }
}

/// Prepared sampler for a [`Fading`] law.
#[derive(Debug, Clone, Copy)]
pub enum FadingSampler {
    Nakagami(Gamma<f64>),
    ShadowedRician { los: Option<Gamma<f64>>, b0_sqrt: f64 },
}

impl FadingSampler {
    pub fn new(fading: Fading) -> Result<Self> {
        match fading {
            Fading::Nakagami { m } => Ok(FadingSampler::Nakagami(nakagami_distribution(m)?)),
            Fading::ShadowedRician(sr) => {
                sr.validate()?;
                let los = if sr.omega > 0.0 {
                    Some(
                        Gamma::new(sr.m, sr.omega / sr.m)
                            .map_err(|_| Error::invalid("sr_m", "rejected by the Gamma sampler"))?,
                    )
                } else {
                    None
                };
                Ok(FadingSampler::ShadowedRician {
                    los,
                    b0_sqrt: sr.b0.sqrt(),
                })
            }
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            FadingSampler::Nakagami(g) => g.sample(rng),
            FadingSampler::ShadowedRician { los, b0_sqrt } => {
                let amplitude = los.as_ref().map_or(0.0, |g| g.sample(rng).sqrt());
                let re: f64 = StandardNormal.sample(rng);
                let im: f64 = StandardNormal.sample(rng);
                let x = amplitude + b0_sqrt * re;
                let y = b0_sqrt * im;
                x * x + y * y
            }
        }
    }
}

/// Sectored transmit antenna.
///
/// Carrier frequency, receive gain and the speed of light scale every link
/// equally and drop out of the SIR; they are kept for reference only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AntennaConfig {
    pub gain_inside: f64,
    pub gain_outside: f64,
    pub carrier_freq_hz: f64,
    pub rx_gain: f64,
    pub speed_of_light: f64,
}

impl AntennaConfig {
    pub fn new(gain_inside: f64, gain_outside: f64) -> Result<Self> {
        if !(gain_inside > 0.0 && gain_outside > 0.0) {
            return Err(Error::invalid("gain", "gains must be positive"));
        }
        Ok(AntennaConfig {
            gain_inside,
            gain_outside,
            carrier_freq_hz: 20e9,
            rx_gain: 1.0,
            speed_of_light: 299_792_458.0,
        })
    }
}

pub fn antenna_gain(in_cluster: bool, a: &AntennaConfig) -> f64 {
    if in_cluster {
        a.gain_inside
    } else {
        a.gain_outside
    }
}
