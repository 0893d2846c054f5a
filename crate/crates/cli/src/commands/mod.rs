//! Subcommand implementations. Each returns its output files; writing them is
//! left to the caller.

mod reproduce;

pub use reproduce::{reproduce, Figure};

use satcov::analytic::{
    campbell_moments, gamma_params, sensitivity as sensitivity_value, BoundEngine, SensitivityTarget, Theorem,
};
use satcov::channel::Fading;
use satcov::geometry::{db_to_lin, ClusterGeometry, Region, SystemParams};
use satcov::montecarlo::{empirical_cdf, empirical_moments, CoverageCounter, CoverageCurve, Mode, Snapshot};
use satcov::specialfns::gamma_cdf;

use crate::config::{Scenario, ScenarioFile};
use crate::error::Result;
use crate::output::{float, Artifact, Table};
use crate::runner::Runner;

/// Command-line overrides shared by the subcommands.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Options {
    pub theorem: Option<Theorem>,
    pub mode: Option<Mode>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    /// Also write the raw per-trial powers (`simulate` only).
    pub dump: bool,
}

impl Options {
    fn apply(&self, p: &mut SystemParams) {
        if let Some(t) = self.trials {
            p.mc_trials = t;
        }
        if let Some(s) = self.seed {
            p.rng_seed = s;
        }
    }

    fn mode(&self) -> Mode {
        self.mode.unwrap_or(Mode::Cluster)
    }
}

pub fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Cluster => "cluster",
        Mode::Nearest => "nearest",
    }
}

pub fn region_name(region: Region) -> &'static str {
    match region {
        Region::Cluster => "cluster",
        Region::Outside => "interference",
    }
}

/// Runs `f` on every sweep point and stacks the results with the swept values
/// as leading columns.
fn swept(file: &ScenarioFile, opts: &Options, mut f: impl FnMut(&Scenario) -> Result<Table>) -> Result<Table> {
    let mut out = Table::new::<&str>(&[]);
    for point in file.sweep_points()? {
        let mut scenario = point.scenario;
        opts.apply(&mut scenario.params);
        out.append(f(&scenario)?.with_labels(&point.labels));
    }
    Ok(out)
}

/// Analytic bounds and heuristic over the scenario's threshold grid.
pub fn analyze_table(p: &SystemParams, theorem: Theorem, runner: &Runner) -> Result<Table> {
    let g = ClusterGeometry::new(p)?;
    let engine = BoundEngine::new(p, &g, theorem)?;
    let results = runner.map(&p.sir_thresholds_db, |&db| engine.evaluate(db_to_lin(db)));
    let mut t = Table::new(&["gamma_db", "lower", "upper", "heuristic", "theorem", "order_used"]);
    for (db, r) in p.sir_thresholds_db.iter().zip(results) {
        let r = r?;
        t.push(vec![
            float(*db),
            float(r.lower),
            float(r.upper),
            float(r.heuristic),
            theorem.number().to_string(),
            r.order_used.to_string(),
        ]);
    }
    Ok(t)
}

pub fn analyze(file: &ScenarioFile, opts: &Options, runner: &Runner) -> Result<Vec<Artifact>> {
    let theorem = opts.theorem.unwrap_or(Theorem::One);
    let table = swept(file, opts, |s| analyze_table(&s.params, theorem, runner))?;
    Ok(vec![Artifact::csv("analyze", &table)])
}

fn coverage_table(curve: &CoverageCurve, mode: Mode) -> Table {
    let mut t = Table::new(&["gamma_db", "estimate", "ci95", "n_trials", "mode"]);
    for pt in &curve.points {
        t.push(vec![
            float(pt.gamma_db),
            float(pt.estimate),
            float(pt.ci95_halfwidth),
            pt.n_trials.to_string(),
            mode_name(mode).to_string(),
        ]);
    }
    t
}

fn dump_table(snapshots: &[Snapshot]) -> Table {
    let mut t = Table::new(&["trial", "d_power", "i_power", "sir"]);
    for (i, s) in snapshots.iter().enumerate() {
        t.push(vec![i.to_string(), float(s.d_power), float(s.i_power), float(s.sir)]);
    }
    t
}

/// Monte Carlo coverage curve of one scenario.
pub fn simulate_table(p: &SystemParams, fading: Fading, mode: Mode, runner: &Runner) -> Result<Table> {
    Ok(coverage_table(&runner.coverage(p, fading, mode, p.mc_trials)?, mode))
}

pub fn simulate(file: &ScenarioFile, opts: &Options, runner: &Runner) -> Result<Vec<Artifact>> {
    let mode = opts.mode();
    if !opts.dump {
        let table = swept(file, opts, |s| simulate_table(&s.params, s.fading, mode, runner))?;
        return Ok(vec![Artifact::csv("simulate", &table)]);
    }
    let mut dump = Table::new::<&str>(&[]);
    let table = swept(file, opts, |s| {
        let p = &s.params;
        let snaps = runner.snapshots(p, s.fading, mode, p.mc_trials)?;
        let mut counter = CoverageCounter::new(&p.sir_thresholds_db);
        for snap in &snaps {
            counter.add(snap.sir);
        }
        dump.append(dump_table(&snaps));
        Ok(coverage_table(&counter.curve(), mode))
    })?;
    Ok(vec![Artifact::csv("simulate", &table), Artifact::csv("simulate_samples", &dump)])
}

/// Nakagami parameters checked by `validate-gamma` besides the scenario's own.
pub const VALIDATION_M: [f64; 3] = [1.0, 2.0, 3.0];

/// Gamma-approximation diagnostics for one scenario and one `m`.
pub fn validate_rows(p: &SystemParams, m: f64, runner: &Runner) -> Result<Table> {
    let mut p = p.clone();
    p.nakagami_m = m;
    let g = ClusterGeometry::new(&p)?;
    let snaps = runner.snapshots(&p, Fading::Nakagami { m }, Mode::Cluster, p.mc_trials)?;
    let mut t = Table::new(&["region", "m", "shape", "scale", "ks_distance", "mean_z", "var_z"]);
    for region in [Region::Cluster, Region::Outside] {
        let samples: Vec<f64> = snaps
            .iter()
            .map(|s| if region == Region::Cluster { s.d_power } else { s.i_power })
            .collect();
        let approx = gamma_params(&p, &g, region, m)?;
        let cdf = empirical_cdf(&samples)?;
        let mut failure = None;
        let ks = cdf.ks_distance(|x| {
            gamma_cdf(approx.shape, approx.scale, x).unwrap_or_else(|e| {
                failure = Some(e);
                f64::NAN
            })
        });
        if let Some(e) = failure {
            return Err(e.into());
        }
        let moments = empirical_moments(&samples)?;
        let (mean, var) = campbell_moments(&p, &g, region, m)?;
        t.push(vec![
            region_name(region).to_string(),
            float(m),
            float(approx.shape),
            float(approx.scale),
            float(ks),
            float(moments.mean.z_score(mean)),
            float(moments.variance.z_score(var)),
        ]);
    }
    Ok(t)
}

pub fn validate_gamma(file: &ScenarioFile, opts: &Options, runner: &Runner) -> Result<Vec<Artifact>> {
    let table = swept(file, opts, |s| {
        let mut ms = VALIDATION_M.to_vec();
        if !ms.contains(&s.params.nakagami_m) {
            ms.push(s.params.nakagami_m);
        }
        let mut t = Table::new::<&str>(&[]);
        for m in ms {
            t.append(validate_rows(&s.params, m, runner)?);
        }
        Ok(t)
    })?;
    Ok(vec![Artifact::csv("validate_gamma", &table)])
}

/// Closed-form sensitivities of the Gamma parameters.
pub fn sensitivity_table(p: &SystemParams) -> Result<Table> {
    let g = ClusterGeometry::new(p)?;
    let m = p.nakagami_m;
    let targets = [
        ("dk_dr_clu", Region::Cluster, SensitivityTarget::ClusterShapeVsRange),
        ("dtheta_dr_clu", Region::Cluster, SensitivityTarget::ClusterScaleVsRange),
        ("dk_dm", Region::Cluster, SensitivityTarget::ShapeVsM(Region::Cluster)),
        ("dtheta_dm", Region::Cluster, SensitivityTarget::ScaleVsM(Region::Cluster)),
        ("dk_dm", Region::Outside, SensitivityTarget::ShapeVsM(Region::Outside)),
        ("dtheta_dm", Region::Outside, SensitivityTarget::ScaleVsM(Region::Outside)),
    ];
    let mut t = Table::new(&["quantity", "region", "value", "at_boundary"]);
    for (name, region, target) in targets {
        let s = sensitivity_value(p, &g, m, target)?;
        t.push(vec![
            name.to_string(),
            region_name(region).to_string(),
            float(s.value),
            s.at_boundary.to_string(),
        ]);
    }
    Ok(t)
}

pub fn sensitivity(file: &ScenarioFile, opts: &Options) -> Result<Vec<Artifact>> {
    let table = swept(file, opts, |s| sensitivity_table(&s.params))?;
    Ok(vec![Artifact::csv("sensitivity", &table)])
}
