//! Scenario files: flat `key = value` text with optional `[sweep]` sections.
//!
//! ```text
//! # scenario 1
//! altitude_km = 500
//! theta_min_deg = 25
//! phi_clu_deg = 1.6
//! visible_mean = 50
//! nakagami_m = 2
//! sir_thresholds_db = -10:1:10
//!
//! [sweep]
//! phi_clu_deg = 0.5:0.25:3
//! ```
//!
//! Keys left out keep the values of scenario 1. Lists are either
//! comma-separated or `start:step:stop` ranges with both ends included.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use satcov::channel::{Fading, ShadowedRicianParams};
use satcov::geometry::{off_axis_to_cluster_range, polar_angle_at_range, SystemParams};

use crate::error::{CliError, Result};
use crate::rician::rician_k_to_nakagami_m;

/// Value shape of a key.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Number,
    Integer,
    List,
    Text,
}

/// `(key, group, kind)`. Keys sharing a group set the same quantity.
const KEYS: &[(&str, &str, Kind)] = &[
    ("earth_radius_km", "earth_radius", Kind::Number),
    ("sat_orbit_radius_km", "orbit", Kind::Number),
    ("altitude_km", "orbit", Kind::Number),
    ("min_elevation_rad", "elevation", Kind::Number),
    ("theta_min_deg", "elevation", Kind::Number),
    ("cluster_polar_angle_rad", "cluster", Kind::Number),
    ("phi_clu_deg", "cluster", Kind::Number),
    ("off_axis_deg", "cluster", Kind::Number),
    ("sat_density_per_km2", "density", Kind::Number),
    ("visible_mean", "density", Kind::Number),
    ("path_loss_exponent", "alpha", Kind::Number),
    ("nakagami_m", "m", Kind::Number),
    ("rician_k", "m", Kind::Number),
    ("gain_inside", "gain_inside", Kind::Number),
    ("gain_outside", "gain_outside", Kind::Number),
    ("sir_thresholds_db", "thresholds", Kind::List),
    ("rng_seed", "seed", Kind::Integer),
    ("mc_trials", "trials", Kind::Integer),
    ("fading", "fading", Kind::Text),
    ("sr_m", "sr_m", Kind::Number),
    ("sr_b0", "sr_b0", Kind::Number),
    ("sr_omega", "sr_omega", Kind::Number),
    ("out_dir", "out_dir", Kind::Text),
];

fn lookup(key: &str) -> Option<(&'static str, &'static str, Kind)> {
    KEYS.iter().find(|(k, _, _)| *k == key).copied()
}

/// Every key accepted in a scenario file.
pub fn known_keys() -> impl Iterator<Item = &'static str> {
    KEYS.iter().map(|(k, _, _)| *k)
}

/// Parses `start:step:stop` or a comma-separated list.
pub fn parse_list(text: &str) -> Result<Vec<f64>> {
    let text = text.trim();
    if text.contains(':') {
        let parts: Vec<&str> = text.split(':').map(str::trim).collect();
        let [start, step, stop] = parts.as_slice() else {
            return Err(CliError::config(format!("range `{text}` must be start:step:stop")));
        };
        let (start, step, stop) = (parse_number(start)?, parse_number(step)?, parse_number(stop)?);
        if !(step > 0.0) || stop < start {
            return Err(CliError::config(format!("range `{text}` needs step > 0 and stop >= start")));
        }
        let span = (stop - start) / step;
        let count = span.round();
        if (span - count).abs() > 1e-9 * count.max(1.0) {
            return Err(CliError::config(format!("range `{text}`: step does not divide the span")));
        }
        return Ok((0..=count as usize).map(|i| start + step * i as f64).collect());
    }
    let values = text.split(',').map(|v| parse_number(v.trim())).collect::<Result<Vec<_>>>()?;
    if values.is_empty() {
        return Err(CliError::config("empty list"));
    }
    Ok(values)
}

fn parse_number(text: &str) -> Result<f64> {
    text.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| CliError::config(format!("`{text}` is not a finite number")))
}

fn parse_integer(text: &str) -> Result<u64> {
    text.parse::<u64>()
        .map_err(|_| CliError::config(format!("`{text}` is not a non-negative integer")))
}

/// One swept parameter and its values.
#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub key: String,
    pub values: Vec<f64>,
}

/// A fully resolved scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub params: SystemParams,
    pub fading: Fading,
    pub out_dir: Option<PathBuf>,
}

/// One point of a sweep: the swept values and the scenario they produce.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub labels: Vec<(String, f64)>,
    pub scenario: Scenario,
}

/// Parsed but unresolved scenario file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ScenarioFile {
    // group -> (key, raw value)
    entries: BTreeMap<&'static str, (&'static str, String)>,
    sweeps: Vec<Sweep>,
}

impl ScenarioFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut file = ScenarioFile::default();
        let mut in_sweep = false;
        for (index, raw) in text.lines().enumerate() {
            let line_no = index + 1;
            let line = raw.split(['#', ';']).next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(section) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                in_sweep = match section.trim() {
                    "scenario" => false,
                    "sweep" => true,
                    other => return Err(CliError::config(format!("line {line_no}: unknown section [{other}]"))),
                };
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::config(format!("line {line_no}: expected `key = value`")));
            };
            let (key, value) = (key.trim(), value.trim());
            let at = |e: CliError| match e {
                CliError::Config(msg) => CliError::Config(format!("line {line_no}: {msg}")),
                other => other,
            };
            if in_sweep {
                file.add_sweep(key, value).map_err(at)?;
            } else {
                file.set(key, value).map_err(at)?;
            }
        }
        Ok(file)
    }

    /// Sets `key`, rejecting unknown keys and a second key for the same quantity.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let (key, group, kind) = lookup(key).ok_or_else(|| CliError::config(format!("unknown key `{key}`")))?;
        check_value(key, kind, value)?;
        if let Some((prev, _)) = self.entries.get(group) {
            return Err(CliError::config(format!("`{key}` conflicts with `{prev}`")));
        }
        self.entries.insert(group, (key, value.to_string()));
        Ok(())
    }

    /// Sets `key`, replacing whichever key previously set the same quantity.
    pub fn replace(&mut self, key: &str, value: &str) -> Result<()> {
        let (key, group, kind) = lookup(key).ok_or_else(|| CliError::config(format!("unknown key `{key}`")))?;
        check_value(key, kind, value)?;
        self.entries.insert(group, (key, value.to_string()));
        Ok(())
    }

    fn add_sweep(&mut self, key: &str, value: &str) -> Result<()> {
        let (key, _, kind) = lookup(key).ok_or_else(|| CliError::config(format!("unknown key `{key}`")))?;
        if !matches!(kind, Kind::Number | Kind::Integer) {
            return Err(CliError::config(format!("`{key}` cannot be swept")));
        }
        if self.sweeps.iter().any(|s| s.key == key) {
            return Err(CliError::config(format!("`{key}` swept twice")));
        }
        let values = parse_list(value)?;
        if kind == Kind::Integer && values.iter().any(|v| v.fract() != 0.0 || *v < 0.0) {
            return Err(CliError::config(format!("`{key}` takes non-negative integers")));
        }
        self.sweeps.push(Sweep {
            key: key.to_string(),
            values,
        });
        Ok(())
    }

    pub fn sweeps(&self) -> &[Sweep] {
        &self.sweeps
    }

    /// The scenario without sweeps applied.
    pub fn scenario(&self) -> Result<Scenario> {
        let get = |group: &str| self.entries.get(group).map(|(k, v)| (*k, v.as_str()));
        let num = |group: &str| get(group).map(|(k, v)| parse_number(v).map(|x| (k, x))).transpose();

        let mut p = SystemParams::reference(50.0);
        if let Some((_, re)) = num("earth_radius")? {
            p.earth_radius_km = re;
        }
        match num("orbit")? {
            Some(("altitude_km", h)) => p.sat_orbit_radius_km = p.earth_radius_km + h,
            Some((_, rs)) => p.sat_orbit_radius_km = rs,
            None => p.sat_orbit_radius_km = p.earth_radius_km + 500.0,
        }
        match num("elevation")? {
            Some(("theta_min_deg", d)) => p.min_elevation_rad = d.to_radians(),
            Some((_, r)) => p.min_elevation_rad = r,
            None => {}
        }
        if let Some((_, a)) = num("alpha")? {
            p.path_loss_exponent = a;
        }
        match num("m")? {
            Some(("rician_k", k)) => {
                p.nakagami_m = rician_k_to_nakagami_m(k)
                    .ok_or_else(|| CliError::config(format!("rician_k = {k} must be non-negative")))?;
            }
            Some((_, m)) => p.nakagami_m = m,
            None => {}
        }
        if let Some((_, g)) = num("gain_inside")? {
            p.gain_inside = g;
        }
        if let Some((_, g)) = num("gain_outside")? {
            p.gain_outside = g;
        }
        match num("cluster")? {
            Some(("phi_clu_deg", d)) => p.cluster_polar_angle_rad = d.to_radians(),
            Some(("off_axis_deg", d)) => {
                let r = off_axis_to_cluster_range(&p, d.to_radians())?;
                p.cluster_polar_angle_rad = polar_angle_at_range(&p, r);
            }
            Some((_, r)) => p.cluster_polar_angle_rad = r,
            None => {}
        }
        if let Some((_, v)) = get("thresholds") {
            p.sir_thresholds_db = parse_list(v)?;
        }
        if let Some((_, v)) = get("seed") {
            p.rng_seed = parse_integer(v)?;
        }
        if let Some((_, v)) = get("trials") {
            p.mc_trials = parse_integer(v)?;
        }
        match num("density")? {
            Some(("visible_mean", v)) => p.set_visible_mean(v),
            Some((_, d)) => p.sat_density_per_km2 = d,
            None => p.set_visible_mean(50.0),
        }
        p.validate()?;

        let sr_given = ["sr_m", "sr_b0", "sr_omega"].iter().any(|g| get(g).is_some());
        let fading = match get("fading").map(|(_, v)| v) {
            None | Some("nakagami") => {
                if sr_given {
                    return Err(CliError::config("sr_* keys need `fading = shadowed_rician`"));
                }
                Fading::Nakagami { m: p.nakagami_m }
            }
            Some("shadowed_rician") => {
                let mut sr = ShadowedRicianParams::AVERAGE;
                if let Some((_, v)) = num("sr_m")? {
                    sr.m = v;
                }
                if let Some((_, v)) = num("sr_b0")? {
                    sr.b0 = v;
                }
                if let Some((_, v)) = num("sr_omega")? {
                    sr.omega = v;
                }
                sr.validate()?;
                Fading::ShadowedRician(sr)
            }
            Some(other) => {
                return Err(CliError::config(format!(
                    "fading = `{other}`; expected `nakagami` or `shadowed_rician`"
                )))
            }
        };
        Ok(Scenario {
            params: p,
            fading,
            out_dir: get("out_dir").map(|(_, v)| PathBuf::from(v)),
        })
    }

    /// Every combination of swept values, first sweep varying slowest.
    ///
    /// Without sweeps this is the single base scenario with no labels.
    pub fn sweep_points(&self) -> Result<Vec<SweepPoint>> {
        let mut points = vec![(self.clone(), Vec::<(String, f64)>::new())];
        for sweep in &self.sweeps {
            let mut next = Vec::with_capacity(points.len() * sweep.values.len());
            for (file, labels) in &points {
                for &v in &sweep.values {
                    let mut f = file.clone();
                    f.replace(&sweep.key, &format_value(v))?;
                    let mut l = labels.clone();
                    l.push((sweep.key.clone(), v));
                    next.push((f, l));
                }
            }
            points = next;
        }
        points
            .into_iter()
            .map(|(f, labels)| {
                Ok(SweepPoint {
                    labels,
                    scenario: f.scenario()?,
                })
            })
            .collect()
    }
}

fn format_value(v: f64) -> String {
    // shortest representation that parses back to the same value
    format!("{v:?}")
}

fn check_value(key: &str, kind: Kind, value: &str) -> Result<()> {
    let wrap = |e: CliError| match e {
        CliError::Config(msg) => CliError::Config(format!("`{key}`: {msg}")),
        other => other,
    };
    match kind {
        Kind::Number => parse_number(value).map(|_| ()).map_err(wrap),
        Kind::Integer => parse_integer(value).map(|_| ()).map_err(wrap),
        Kind::List => parse_list(value).map(|_| ()).map_err(wrap),
        Kind::Text if value.is_empty() => Err(CliError::config(format!("`{key}` is empty"))),
        Kind::Text => Ok(()),
    }
}
