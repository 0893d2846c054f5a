use alloc::vec::Vec;

use num_traits::Float;
use rand::Rng;

use crate::channel::{Fading, FadingSampler};
use crate::error::Result;
use crate::geometry::{ClusterGeometry, SystemParams};
use crate::pointprocess::{sample_constellation_into, Constellation};
use crate::rng::substream;

/// Which satellites serve the typical user.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Every satellite in the cluster cap transmits jointly.
    Cluster,
    /// Only the nearest visible satellite serves; all others interfere
    /// through their side lobes.
    Nearest,
}

/// One realisation of the received powers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Snapshot {
    pub d_power: f64,
    pub i_power: f64,
    pub sir: f64,
}

impl Snapshot {
    /// An empty serving set gives SIR 0; otherwise no interference gives +inf.
    pub fn from_powers(d_power: f64, i_power: f64) -> Self {
        let sir = if d_power <= 0.0 {
            0.0
        } else if i_power <= 0.0 {
            f64::INFINITY
        } else {
            d_power / i_power
        };
        Snapshot {
            d_power,
            i_power,
            sir,
        }
    }
}

/// A single satellite-to-user link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Link {
    pub distance_km: f64,
    pub fade: f64,
    pub in_cluster: bool,
}

/// Accumulates `D` and `I` over explicit links.
pub fn evaluate_links(links: &[Link], p: &SystemParams, mode: Mode) -> Snapshot {
    let alpha = p.path_loss_exponent;
    let path = |l: &Link| l.fade * l.distance_km.powf(-alpha);
    match mode {
        Mode::Cluster => {
            let (mut d, mut i) = (0.0, 0.0);
            for l in links {
                if l.in_cluster {
                    d += p.gain_inside * path(l);
                } else {
                    i += p.gain_outside * path(l);
                }
            }
            Snapshot::from_powers(d, i)
        }
        Mode::Nearest => {
            let nearest = links
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.distance_km.total_cmp(&b.1.distance_km))
                .map(|(idx, _)| idx);
            let Some(serving) = nearest else {
                return Snapshot::from_powers(0.0, 0.0);
            };
            let d = p.gain_inside * path(&links[serving]);
            let i = links
                .iter()
                .enumerate()
                .filter(|(idx, _)| *idx != serving)
                .map(|(_, l)| p.gain_outside * path(l))
                .sum();
            Snapshot::from_powers(d, i)
        }
    }
}

/// Reusable snapshot generator for one scenario.
#[derive(Debug, Clone)]
pub struct Simulator {
    params: SystemParams,
    geometry: ClusterGeometry,
    fading: FadingSampler,
    constellation: Constellation,
    links: Vec<Link>,
}

impl Simulator {
    pub fn new(params: &SystemParams, fading: Fading) -> Result<Self> {
        let geometry = ClusterGeometry::new(params)?;
        Ok(Simulator {
            params: params.clone(),
            geometry,
            fading: FadingSampler::new(fading)?,
            constellation: Constellation::default(),
            links: Vec::new(),
        })
    }

    /// Nakagami-m fading with the scenario's own `m`.
    pub fn nakagami(params: &SystemParams) -> Result<Self> {
        Self::new(params, Fading::Nakagami { m: params.nakagami_m })
    }

    pub fn params(&self) -> &SystemParams {
        &self.params
    }

    pub fn geometry(&self) -> &ClusterGeometry {
        &self.geometry
    }

    pub fn simulate<R: Rng + ?Sized>(&mut self, rng: &mut R, mode: Mode) -> Snapshot {
        sample_constellation_into(&self.params, &self.geometry, rng, &mut self.constellation);
        self.links.clear();
        for s in self.constellation.iter() {
            self.links.push(Link {
                distance_km: s.distance_to_user_km,
                fade: self.fading.sample(rng),
                in_cluster: s.in_cluster,
            });
        }
        evaluate_links(&self.links, &self.params, mode)
    }

    /// Snapshot of trial `index` on its own substream of the scenario seed.
    pub fn trial(&mut self, index: u64, mode: Mode) -> Snapshot {
        let mut rng = substream(self.params.rng_seed, index);
        self.simulate(&mut rng, mode)
    }
}

/// One-off snapshot under Nakagami fading with the scenario's `m`.
pub fn simulate_snapshot<R: Rng + ?Sized>(p: &SystemParams, rng: &mut R, mode: Mode) -> Result<Snapshot> {
    Ok(Simulator::nakagami(p)?.simulate(rng, mode))
}
