use std::fmt;
use std::str::FromStr;

use satcov::analytic::{gamma_params, BoundEngine, Theorem};
use satcov::channel::{Fading, ShadowedRicianParams};
use satcov::geometry::{db_to_lin, ClusterGeometry, Region, SystemParams};
use satcov::montecarlo::{empirical_cdf, CoverageCurve, Mode};
use satcov::pointprocess::sample_constellation;
use satcov::rng::substream;
use satcov::specialfns::gamma_cdf;

use crate::config::Scenario;
use crate::error::{CliError, Result};
use crate::output::{float, Artifact, Table};
use crate::runner::Runner;

/// Reproducible figure or table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Figure {
    /// Mean satellite counts per region.
    Table1,
    /// Cluster versus nearest-satellite serving.
    Fig2,
    /// Nakagami versus shadowed-Rician fading.
    Fig3,
    /// Interference CDF versus its Gamma approximation.
    Fig4,
    /// Cluster-power CDF versus its Gamma approximation.
    Fig5,
    /// Interference-based bounds versus simulation.
    Fig6,
    /// Cluster-power-based bounds versus simulation.
    Fig7,
    /// Coverage against the cluster angle.
    Fig8,
    /// Coverage against the cluster angle for weak and strong line of sight.
    Fig9,
}

impl Figure {
    pub const ALL: [Figure; 9] = [
        Figure::Table1,
        Figure::Fig2,
        Figure::Fig3,
        Figure::Fig4,
        Figure::Fig5,
        Figure::Fig6,
        Figure::Fig7,
        Figure::Fig8,
        Figure::Fig9,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Figure::Table1 => "table1",
            Figure::Fig2 => "fig2",
            Figure::Fig3 => "fig3",
            Figure::Fig4 => "fig4",
            Figure::Fig5 => "fig5",
            Figure::Fig6 => "fig6",
            Figure::Fig7 => "fig7",
            Figure::Fig8 => "fig8",
            Figure::Fig9 => "fig9",
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Figure {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        Figure::ALL.into_iter().find(|f| f.id() == s).ok_or_else(|| {
            let ids: Vec<&str> = Figure::ALL.iter().map(|f| f.id()).collect();
            CliError::config(format!("unknown figure `{s}`; expected one of {}", ids.join(", ")))
        })
    }
}

/// Visible means of the two reference scenarios.
pub const SCENARIO_VISIBLE_MEANS: [f64; 2] = [50.0, 300.0];

/// Cluster angles swept by `fig8` and `fig9`, in degrees.
pub fn cluster_angle_grid_deg() -> Vec<f64> {
    (0..=25).map(|i| 0.5 + 0.1 * i as f64).collect()
}

/// Thresholds shown by `fig8` and `fig9`, in dB.
pub const ANGLE_SWEEP_THRESHOLDS_DB: [f64; 4] = [-10.0, -5.0, 0.0, 5.0];

/// Nakagami parameters compared by `fig9`: Rayleigh and an effectively
/// deterministic channel.
pub const LOS_SWEEP_M: [f64; 2] = [1.0, 1e20];

/// Shadowed-Rician `(m, b0, Ω)` for average shadowing, indexed by Nakagami `m`.
pub const AVERAGE_SHADOWING: [(f64, ShadowedRicianParams); 3] = [
    (1.0, ShadowedRicianParams { m: 1.0, b0: 0.128, omega: 0.827 }),
    (2.0, ShadowedRicianParams::AVERAGE),
    (3.0, ShadowedRicianParams { m: 3.0, b0: 0.126, omega: 0.835 }),
];

fn with_visible_mean(p: &SystemParams, visible_mean: f64, m: f64) -> SystemParams {
    let mut q = p.clone();
    q.nakagami_m = m;
    q.set_visible_mean(visible_mean);
    q
}

fn nakagami_coverage(p: &SystemParams, mode: Mode, runner: &Runner) -> Result<CoverageCurve> {
    runner.coverage(p, Fading::Nakagami { m: p.nakagami_m }, mode, p.mc_trials)
}

/// Writes the data and a gnuplot script rendering it.
pub fn reproduce(figure: Figure, base: &Scenario, runner: &Runner) -> Result<Vec<Artifact>> {
    let p = &base.params;
    let (table, script) = match figure {
        Figure::Table1 => table1(p, runner)?,
        Figure::Fig2 => fig2(p, runner)?,
        Figure::Fig3 => fig3(p, runner)?,
        Figure::Fig4 => cdf_figure(figure, p, Region::Outside, SCENARIO_VISIBLE_MEANS[0], runner)?,
        Figure::Fig5 => cdf_figure(figure, p, Region::Cluster, SCENARIO_VISIBLE_MEANS[1], runner)?,
        Figure::Fig6 => bounds_figure(figure, p, Theorem::One, SCENARIO_VISIBLE_MEANS[0], runner)?,
        Figure::Fig7 => bounds_figure(figure, p, Theorem::Two, SCENARIO_VISIBLE_MEANS[1], runner)?,
        Figure::Fig8 => angle_figure(figure, p, &[2.0], runner)?,
        Figure::Fig9 => angle_figure(figure, p, &LOS_SWEEP_M, runner)?,
    };
    Ok(vec![
        Artifact::csv(figure.id(), &table),
        Artifact {
            file_name: format!("{}.gp", figure.id()),
            contents: script,
        },
    ])
}

fn script_header(figure: Figure, title: &str, xlabel: &str, ylabel: &str) -> String {
    format!(
        "set terminal pngcairo size 900,600\n\
         set output '{id}.png'\n\
         set datafile separator ','\n\
         set title '{title}'\n\
         set xlabel '{xlabel}'\n\
         set ylabel '{ylabel}'\n\
         set key outside right\n\
         set grid\n",
        id = figure.id()
    )
}

fn plot_line(clauses: &[String]) -> String {
    format!("plot {}\n", clauses.join(", \\\n     "))
}

fn table1(p: &SystemParams, runner: &Runner) -> Result<(Table, String)> {
    let mut t = Table::new(&[
        "scenario",
        "visible_mean",
        "cluster_mean",
        "cluster_mean_empirical",
        "sphere_mean",
        "visible_mean_empirical",
    ]);
    for (i, &visible) in SCENARIO_VISIBLE_MEANS.iter().enumerate() {
        let q = with_visible_mean(p, visible, p.nakagami_m);
        let g = ClusterGeometry::new(&q)?;
        let counts = runner.map_blocks(q.mc_trials, |range| {
            let mut sums = (0u64, 0u64);
            for trial in range {
                let c = sample_constellation(&q, &g, &mut substream(q.rng_seed, trial));
                sums.0 += c.cluster.len() as u64;
                sums.1 += c.len() as u64;
            }
            sums
        });
        let (cluster, visible_total) = counts.iter().fold((0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
        let n = q.mc_trials.max(1) as f64;
        t.push(vec![
            (i + 1).to_string(),
            float(visible),
            float(g.mean_count(&q, Region::Cluster)),
            float(cluster as f64 / n),
            float(q.sphere_mean()),
            float(visible_total as f64 / n),
        ]);
    }
    let mut s = script_header(Figure::Table1, "Mean satellite counts", "scenario", "mean count");
    s.push_str("set style data histograms\nset style fill solid 0.6\nset logscale y\n");
    s.push_str(&plot_line(&[
        "'table1.csv' using 3:xtic(1) title 'cluster (analytic)'".into(),
        "'' using 4 title 'cluster (simulated)'".into(),
        "'' using 2 title 'visible (analytic)'".into(),
        "'' using 6 title 'visible (simulated)'".into(),
    ]));
    Ok((t, s))
}

fn fig2(p: &SystemParams, runner: &Runner) -> Result<(Table, String)> {
    let visible = [50.0, 100.0, 300.0];
    let mut header = vec!["gamma_db".to_string()];
    let mut curves = Vec::new();
    for v in visible {
        let q = with_visible_mean(p, v, 2.0);
        for mode in [Mode::Cluster, Mode::Nearest] {
            let name = format!("{}_{}", super::mode_name(mode), v as u64);
            header.push(name.clone());
            header.push(format!("{name}_ci95"));
            curves.push(nakagami_coverage(&q, mode, runner)?);
        }
    }
    let t = wide_table(&header, &p.sir_thresholds_db, &curves);
    let mut s = script_header(Figure::Fig2, "Cluster versus nearest-satellite serving, m = 2", "SIR threshold (dB)", "coverage probability");
    let clauses: Vec<String> = (0..curves.len())
        .map(|i| format!("'fig2.csv' using 1:{} with linespoints title columnhead({})", 2 + 2 * i, 2 + 2 * i))
        .collect();
    s.push_str(&plot_line(&clauses));
    Ok((t, s))
}

fn wide_table(header: &[String], thresholds: &[f64], curves: &[CoverageCurve]) -> Table {
    let mut t = Table::new(header);
    for (j, db) in thresholds.iter().enumerate() {
        let mut row = vec![float(*db)];
        for c in curves {
            row.push(float(c.points[j].estimate));
            row.push(float(c.points[j].ci95_halfwidth));
        }
        t.push(row);
    }
    t
}

fn fig3(p: &SystemParams, runner: &Runner) -> Result<(Table, String)> {
    let mut header = vec!["gamma_db".to_string()];
    let mut curves = Vec::new();
    for (m, sr) in AVERAGE_SHADOWING {
        let q = with_visible_mean(p, p.visible_mean(), m);
        header.push(format!("nakagami_m{}", m as u64));
        header.push(format!("nakagami_m{}_ci95", m as u64));
        curves.push(nakagami_coverage(&q, Mode::Cluster, runner)?);
        header.push(format!("shadowed_rician_m{}", m as u64));
        header.push(format!("shadowed_rician_m{}_ci95", m as u64));
        curves.push(runner.coverage(&q, Fading::ShadowedRician(sr), Mode::Cluster, q.mc_trials)?);
    }
    let t = wide_table(&header, &p.sir_thresholds_db, &curves);
    let mut s = script_header(Figure::Fig3, "Nakagami-m versus shadowed-Rician fading", "SIR threshold (dB)", "coverage probability");
    let clauses: Vec<String> = (0..curves.len())
        .map(|i| {
            let style = if i % 2 == 0 { "lines" } else { "points" };
            format!("'fig3.csv' using 1:{} with {style} title columnhead({})", 2 + 2 * i, 2 + 2 * i)
        })
        .collect();
    s.push_str(&plot_line(&clauses));
    Ok((t, s))
}

/// Points of the CDF comparison per `m`.
pub const CDF_POINTS: usize = 200;

fn cdf_figure(figure: Figure, p: &SystemParams, region: Region, visible: f64, runner: &Runner) -> Result<(Table, String)> {
    let mut t = Table::new(&["m", "power", "empirical_cdf", "gamma_cdf"]);
    for m in [1.0, 2.0, 3.0] {
        let q = with_visible_mean(p, visible, m);
        let g = ClusterGeometry::new(&q)?;
        let approx = gamma_params(&q, &g, region, m)?;
        let snaps = runner.snapshots(&q, Fading::Nakagami { m }, Mode::Cluster, q.mc_trials)?;
        let samples: Vec<f64> = snaps
            .iter()
            .map(|s| if region == Region::Cluster { s.d_power } else { s.i_power })
            .collect();
        let cdf = empirical_cdf(&samples)?;
        let sorted = cdf.sorted();
        let top = sorted[((sorted.len() - 1) as f64 * 0.995) as usize];
        for i in 0..=CDF_POINTS {
            let x = top * i as f64 / CDF_POINTS as f64;
            t.push(vec![
                float(m),
                float(x),
                float(cdf.eval(x)),
                float(gamma_cdf(approx.shape, approx.scale, x)?),
            ]);
        }
    }
    let what = if region == Region::Cluster { "cluster power" } else { "interference power" };
    let mut s = script_header(figure, &format!("CDF of the {what} and its Gamma approximation"), what, "CDF");
    let mut clauses = Vec::new();
    for m in 1..=3 {
        clauses.push(format!(
            "'{id}.csv' using 2:($1=={m}?$3:1/0) with lines title 'simulated m={m}'",
            id = figure.id()
        ));
        clauses.push(format!("'' using 2:($1=={m}?$4:1/0) with lines dashtype 2 title 'Gamma m={m}'"));
    }
    s.push_str(&plot_line(&clauses));
    Ok((t, s))
}

fn bounds_figure(figure: Figure, p: &SystemParams, theorem: Theorem, visible: f64, runner: &Runner) -> Result<(Table, String)> {
    let mut t = Table::new(&["m", "gamma_db", "mc", "mc_ci95", "lower", "upper", "heuristic"]);
    for m in [1.0, 2.0, 3.0] {
        let q = with_visible_mean(p, visible, m);
        let g = ClusterGeometry::new(&q)?;
        let engine = BoundEngine::new(&q, &g, theorem)?;
        let bounds = runner.map(&q.sir_thresholds_db, |&db| engine.evaluate(db_to_lin(db)));
        let mc = nakagami_coverage(&q, Mode::Cluster, runner)?;
        for (pt, b) in mc.points.iter().zip(bounds) {
            let b = b?;
            t.push(vec![
                float(m),
                float(pt.gamma_db),
                float(pt.estimate),
                float(pt.ci95_halfwidth),
                float(b.lower),
                float(b.upper),
                float(b.heuristic),
            ]);
        }
    }
    let title = format!("Theorem {} bounds versus simulation", theorem.number());
    let mut s = script_header(figure, &title, "SIR threshold (dB)", "coverage probability");
    let mut clauses = Vec::new();
    for m in 1..=3 {
        let id = figure.id();
        clauses.push(format!("'{id}.csv' using 2:($1=={m}?$3:1/0) with points title 'simulated m={m}'"));
        clauses.push(format!("'' using 2:($1=={m}?$5:1/0) with lines dashtype 2 title 'lower m={m}'"));
        clauses.push(format!("'' using 2:($1=={m}?$6:1/0) with lines dashtype 3 title 'upper m={m}'"));
        clauses.push(format!("'' using 2:($1=={m}?$7:1/0) with lines title 'heuristic m={m}'"));
    }
    s.push_str(&plot_line(&clauses));
    Ok((t, s))
}

fn angle_figure(figure: Figure, p: &SystemParams, ms: &[f64], runner: &Runner) -> Result<(Table, String)> {
    let mut t = Table::new(&["m", "phi_clu_deg", "gamma_db", "mc", "mc_ci95", "heuristic"]);
    let angles = cluster_angle_grid_deg();
    for &m in ms {
        for &deg in &angles {
            let mut q = p.clone();
            q.nakagami_m = m;
            q.cluster_polar_angle_rad = deg.to_radians();
            q.sir_thresholds_db = ANGLE_SWEEP_THRESHOLDS_DB.to_vec();
            let g = ClusterGeometry::new(&q)?;
            let engine = BoundEngine::new(&q, &g, Theorem::One)?;
            let mc = nakagami_coverage(&q, Mode::Cluster, runner)?;
            for pt in &mc.points {
                let b = engine.evaluate(db_to_lin(pt.gamma_db))?;
                t.push(vec![
                    float(m),
                    float(deg),
                    float(pt.gamma_db),
                    float(pt.estimate),
                    float(pt.ci95_halfwidth),
                    float(b.heuristic),
                ]);
            }
        }
    }
    let mut s = script_header(figure, "Coverage against the cluster angle", "cluster polar angle (deg)", "coverage probability");
    let mut clauses = Vec::new();
    for &m in ms {
        for db in ANGLE_SWEEP_THRESHOLDS_DB {
            let sel = format!("($1=={m:e} && $3=={db}?$6:1/0)");
            let first = clauses.is_empty();
            let src = if first { format!("'{}.csv'", figure.id()) } else { "''".to_string() };
            clauses.push(format!("{src} using 2:{sel} with lines title 'm={m:e}, {db} dB'"));
        }
    }
    s.push_str(&plot_line(&clauses));
    Ok((t, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ScenarioFile;

    fn run(figure: Figure, trials: u64) -> Vec<Vec<f64>> {
        let base = ScenarioFile::parse(&format!("mc_trials = {trials}\n")).unwrap().scenario().unwrap();
        let arts: Vec<Artifact> = reproduce(figure, &base, &Runner::new(0).unwrap()).unwrap();
        assert_eq!(arts.len(), 2);
        assert_eq!(arts[0].file_name, format!("{figure}.csv"));
        assert!(arts[1].contents.contains(&format!("'{figure}.csv'")));
        arts[0]
            .contents
            .lines()
            .skip(1)
            .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
            .collect()
    }

    #[test]
    fn figure_ids_round_trip() {
        for f in Figure::ALL {
            assert_eq!(f.id().parse::<Figure>().unwrap(), f);
        }
        assert!("fig1".parse::<Figure>().is_err());
    }

    #[test]
    fn table1_counts() {
        let rows = run(Figure::Table1, 20_000);
        for (row, (cluster_ref, sphere_ref)) in rows.iter().zip([(2.0837, 10_700.0), (12.5020, 64_100.0)]) {
            assert!((row[2] / cluster_ref - 1.0).abs() < 0.02, "{row:?}");
            assert!((row[4] / sphere_ref - 1.0).abs() < 0.02, "{row:?}");
            // empirical counts within 5 standard errors of the Poisson means
            assert!((row[3] - row[2]).abs() < 5.0 * (row[2] / 20_000.0).sqrt(), "{row:?}");
            assert!((row[5] - row[1]).abs() < 5.0 * (row[1] / 20_000.0).sqrt(), "{row:?}");
        }
    }

    #[test]
    fn fig8_coverage_grows_with_cluster_angle() {
        let rows = run(Figure::Fig8, 4000);
        // columns: m, phi_clu_deg, gamma_db, mc, mc_ci95, heuristic
        for db in [-10.0, -5.0, 0.0, 5.0] {
            let series: Vec<&Vec<f64>> = rows.iter().filter(|r| r[2] == db).collect();
            assert_eq!(series.len(), 26);
            for w in series.windows(2) {
                assert!(w[1][5] >= w[0][5] - 1e-12, "heuristic drops at {db} dB: {:?} -> {:?}", w[0], w[1]);
                assert!(w[1][3] + w[1][4] + w[0][4] >= w[0][3], "simulation drops at {db} dB: {:?} -> {:?}", w[0], w[1]);
            }
        }
    }

    /// First cluster angle where the strong line-of-sight curve overtakes Rayleigh.
    fn crossing(rows: &[Vec<f64>], db: f64) -> f64 {
        let at = |m: f64| -> Vec<(f64, f64)> {
            rows.iter().filter(|r| r[0] == m && r[2] == db).map(|r| (r[1], r[5])).collect()
        };
        let (weak, strong) = (at(1.0), at(1e20));
        weak.iter()
            .zip(&strong)
            .find(|(w, s)| s.1 > w.1)
            .map_or(f64::INFINITY, |(w, _)| w.0)
    }

    #[test]
    fn fig9_crossing_moves_left_as_threshold_drops() {
        let rows = run(Figure::Fig9, 500);
        let points: Vec<f64> = [5.0, 0.0, -5.0].iter().map(|&db| crossing(&rows, db)).collect();
        assert!(points[0].is_finite(), "no crossing at 5 dB");
        assert!(points.windows(2).all(|w| w[1] < w[0]), "crossings {points:?}");
    }
}
