use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use satcov_cli::commands::{self, Figure, Options};
use satcov_cli::config::ScenarioFile;
use satcov_cli::output::emit;
use satcov_cli::runner::{threads_from_env, Runner};
use satcov_cli::{CliError, Result};
use satcov::analytic::Theorem;
use satcov::montecarlo::Mode;

const SCHEMAS: &str = "\
CSV schemas (floats carry 17 significant digits; swept keys lead as extra columns):
  analyze          gamma_db,lower,upper,heuristic,theorem,order_used
  simulate         gamma_db,estimate,ci95,n_trials,mode
  simulate --dump  trial,d_power,i_power,sir            (simulate_samples.csv)
  validate-gamma   region,m,shape,scale,ks_distance,mean_z,var_z
  sensitivity      quantity,region,value,at_boundary
  reproduce        one CSV and one gnuplot script per figure

Scenario keys: a Rician factor can be given as `rician_k`; it is converted to
the Nakagami m = (K+1)^2/(2K+1) with the same amount of fading.

Environment: SATCOV_THREADS caps the worker count (0 = one per core).
Exit codes: 0 success, 1 IO error, 2 configuration error, 3 numeric or order-cap error.";

#[derive(Parser, Debug)]
#[command(name = "satcov", version, about = "SIR coverage of clustered LEO satellite downlinks", after_help = SCHEMAS)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Scenario file (`key = value` lines, optional `[sweep]` section).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override `mc_trials`.
    #[arg(long)]
    trials: Option<u64>,
    /// Override `rng_seed`.
    #[arg(long)]
    seed: Option<u64>,
    /// Write CSV files here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (0 = one per core); defaults to SATCOV_THREADS.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Cluster,
    Nearest,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coverage bounds and heuristic from Theorem 1 or 2.
    Analyze {
        #[command(flatten)]
        common: Common,
        /// 1: Gamma-approximated interference, 2: Gamma-approximated cluster power.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        theorem: u8,
    },
    /// Monte Carlo coverage curve with 95% Wilson intervals.
    Simulate {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "cluster")]
        mode: ModeArg,
        /// Also write per-trial powers to simulate_samples.csv.
        #[arg(long)]
        dump: bool,
    },
    /// KS distances and moment z-scores of the Gamma approximations.
    ValidateGamma {
        #[command(flatten)]
        common: Common,
    },
    /// Reproduce a figure or table as CSV plus a gnuplot script.
    Reproduce {
        #[command(flatten)]
        common: Common,
        /// table1, fig2, ..., fig9
        #[arg(long)]
        figure: String,
    },
    /// Closed-form derivatives of the Gamma shape and scale parameters.
    Sensitivity {
        #[command(flatten)]
        common: Common,
    },
}

fn load(common: &Common, required: bool) -> Result<ScenarioFile> {
    match &common.config {
        Some(path) => ScenarioFile::load(path),
        None if required => Err(CliError::config("--config <file> is required")),
        None => Ok(ScenarioFile::default()),
    }
}

fn runner(common: &Common) -> Result<Runner> {
    Runner::new(match common.threads {
        Some(t) => t,
        None => threads_from_env()?,
    })
}

fn options(common: &Common) -> Options {
    Options {
        trials: common.trials,
        seed: common.seed,
        ..Options::default()
    }
}

fn run(cli: Cli) -> Result<()> {
    let (common, artifacts, out_dir) = match &cli.command {
        Command::Analyze { common, theorem } => {
            let file = load(common, true)?;
            let opts = Options {
                theorem: Some(if *theorem == 1 { Theorem::One } else { Theorem::Two }),
                ..options(common)
            };
            (common, commands::analyze(&file, &opts, &runner(common)?)?, file.scenario()?.out_dir)
        }
        Command::Simulate { common, mode, dump } => {
            let file = load(common, true)?;
            let opts = Options {
                mode: Some(match mode {
                    ModeArg::Cluster => Mode::Cluster,
                    ModeArg::Nearest => Mode::Nearest,
                }),
                dump: *dump,
                ..options(common)
            };
            (common, commands::simulate(&file, &opts, &runner(common)?)?, file.scenario()?.out_dir)
        }
        Command::ValidateGamma { common } => {
            let file = load(common, true)?;
            let arts = commands::validate_gamma(&file, &options(common), &runner(common)?)?;
            (common, arts, file.scenario()?.out_dir)
        }
        Command::Sensitivity { common } => {
            let file = load(common, true)?;
            (common, commands::sensitivity(&file, &options(common))?, file.scenario()?.out_dir)
        }
        Command::Reproduce { common, figure } => {
            let figure: Figure = figure.parse()?;
            let file = load(common, false)?;
            let mut scenario = file.scenario()?;
            if let Some(t) = common.trials {
                scenario.params.mc_trials = t;
            }
            if let Some(s) = common.seed {
                scenario.params.rng_seed = s;
            }
            let arts = commands::reproduce(figure, &scenario, &runner(common)?)?;
            (common, arts, scenario.out_dir)
        }
    };
    let dir = common.out.clone().or(out_dir);
    emit(&artifacts, dir.as_deref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("satcov: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

#[cfg(test)]
mod tests {
    use std::fs;
    use std::path::Path;

    use clap::CommandFactory;
    use tempfile::TempDir;

    use super::*;

    const SCENARIO_1: &str = "\
earth_radius_km = 6371
altitude_km = 500
theta_min_deg = 25
phi_clu_deg = 1.6
visible_mean = 50
nakagami_m = 2
sir_thresholds_db = -10:1:10
rng_seed = 1
mc_trials = 5000
";

    fn satcov(args: &[&str], out: &Path) -> Result<()> {
        let mut argv = vec!["satcov"];
        argv.extend_from_slice(args);
        if !args.contains(&"--threads") {
            argv.extend(["--threads", "0"]);
        }
        argv.extend(["--out", out.to_str().unwrap()]);
        run(Cli::try_parse_from(argv).unwrap())
    }

    /// Runs into a fresh directory and returns the named CSV.
    fn csv(args: &[&str], name: &str) -> String {
        let dir = TempDir::new().unwrap();
        satcov(args, dir.path()).unwrap();
        fs::read_to_string(dir.path().join(name)).unwrap()
    }

    fn write(dir: &Path, name: &str, text: &str) -> String {
        let path = dir.join(name);
        fs::write(&path, text).unwrap();
        path.to_str().unwrap().to_string()
    }

    fn rows(csv: &str) -> Vec<Vec<String>> {
        csv.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
    }

    fn exit_code(args: &[&str]) -> i32 {
        let dir = TempDir::new().unwrap();
        satcov(args, dir.path()).map_or_else(|e| e.exit_code(), |()| 0)
    }

    #[test]
    fn analyze_scenario_one() {
        let dir = TempDir::new().unwrap();
        let cfg = write(dir.path(), "s1.ini", SCENARIO_1);
        let out = csv(&["analyze", "--config", &cfg, "--theorem", "1"], "analyze.csv");
        assert!(out.starts_with("gamma_db,lower,upper,heuristic,theorem,order_used\n"));
        let rows = rows(&out);
        assert_eq!(rows.len(), 21);
        for r in &rows {
            let v: Vec<f64> = r[1..4].iter().map(|x| x.parse().unwrap()).collect();
            assert!(v[0] <= v[2] && v[2] <= v[1], "{r:?}");
            assert_eq!(r[4], "1");
            // every float cell carries 17 significant digits
            assert_eq!(r[1].split('e').next().unwrap().trim_start_matches('-').len(), 18);
        }
    }

    #[test]
    fn theorem_one_is_rejected_on_dense_scenario() {
        let dir = TempDir::new().unwrap();
        let cfg = write(dir.path(), "s2.ini", &SCENARIO_1.replace("visible_mean = 50", "visible_mean = 300"));
        let err = satcov(&["analyze", "--config", &cfg, "--theorem", "1"], dir.path()).unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert!(err.to_string().contains("use the theorem 2"));
        let ok = csv(&["analyze", "--config", &cfg, "--theorem", "2"], "analyze.csv");
        assert_eq!(rows(&ok).len(), 21);
        assert!(rows(&ok).iter().all(|r| r[5].parse::<usize>().unwrap() < 10));
    }

    #[test]
    fn simulate_is_deterministic_and_writes_files() {
        let dir = TempDir::new().unwrap();
        let cfg = write(dir.path(), "s1.ini", SCENARIO_1);
        let a = csv(&["simulate", "--config", &cfg, "--threads", "1"], "simulate.csv");
        let b = csv(&["simulate", "--config", &cfg, "--threads", "3"], "simulate.csv");
        assert_eq!(a, b);
        assert!(a.starts_with("gamma_db,estimate,ci95,n_trials,mode\n"));
        assert!(rows(&a).iter().all(|r| r[3] == "5000" && r[4] == "cluster"));

        let out = dir.path().join("out");
        satcov(&["simulate", "--config", &cfg, "--mode", "nearest", "--dump", "--trials", "300"], &out).unwrap();
        let curve = fs::read_to_string(out.join("simulate.csv")).unwrap();
        assert!(rows(&curve).iter().all(|r| r[3] == "300" && r[4] == "nearest"));
        let dump = fs::read_to_string(out.join("simulate_samples.csv")).unwrap();
        assert!(dump.starts_with("trial,d_power,i_power,sir\n"));
        assert_eq!(rows(&dump).len(), 300);
    }

    #[test]
    fn seed_changes_the_sample() {
        let dir = TempDir::new().unwrap();
        let cfg = write(dir.path(), "s1.ini", SCENARIO_1);
        let a = csv(&["simulate", "--config", &cfg, "--seed", "5"], "simulate.csv");
        let b = csv(&["simulate", "--config", &cfg, "--seed", "6"], "simulate.csv");
        assert_ne!(a, b);
    }

    #[test]
    fn sweep_columns_lead() {
        let dir = TempDir::new().unwrap();
        let cfg = write(dir.path(), "sw.ini", &format!("{SCENARIO_1}[sweep]\nnakagami_m = 1, 3\n"));
        let out = csv(&["sensitivity", "--config", &cfg], "sensitivity.csv");
        assert!(out.starts_with("nakagami_m,quantity,region,value,at_boundary\n"));
        assert_eq!(rows(&out).len(), 12);
    }

    #[test]
    fn validate_gamma_reports_each_region_and_m() {
        let dir = TempDir::new().unwrap();
        let cfg = write(dir.path(), "s1.ini", SCENARIO_1);
        let out = csv(&["validate-gamma", "--config", &cfg], "validate_gamma.csv");
        assert!(out.starts_with("region,m,shape,scale,ks_distance,mean_z,var_z\n"));
        let rows = rows(&out);
        assert_eq!(rows.len(), 6);
        for r in rows.iter().filter(|r| r[0] == "interference") {
            assert!(r[4].parse::<f64>().unwrap() < 0.05);
        }
    }

    #[test]
    fn config_errors_exit_with_two() {
        let dir = TempDir::new().unwrap();
        let bad = write(dir.path(), "bad.ini", "visible_mean = 50\nwarp_factor = 9\n");
        let err = satcov(&["analyze", "--config", &bad], dir.path()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("warp_factor"));
        let too_wide = write(dir.path(), "wide.ini", "phi_clu_deg = 30\n");
        assert_eq!(exit_code(&["analyze", "--config", &too_wide]), 2);
        assert_eq!(exit_code(&["reproduce", "--figure", "fig11"]), 2);
        assert_eq!(exit_code(&["analyze"]), 2);
        let missing = dir.path().join("missing.ini");
        assert_eq!(exit_code(&["analyze", "--config", missing.to_str().unwrap()]), 1);
    }

    #[test]
    fn help_documents_schemas() {
        let help = Cli::command().render_long_help().to_string();
        assert!(help.contains("gamma_db,lower,upper,heuristic,theorem,order_used"));
        assert!(help.contains("gamma_db,estimate,ci95,n_trials,mode"));
        assert!(help.contains("SATCOV_THREADS"));
    }

    #[test]
    fn reproduce_writes_csv_and_script() {
        let dir = TempDir::new().unwrap();
        satcov(&["reproduce", "--figure", "table1", "--trials", "2000"], dir.path()).unwrap();
        let table = fs::read_to_string(dir.path().join("table1.csv")).unwrap();
        assert_eq!(rows(&table).len(), 2);
        let script = fs::read_to_string(dir.path().join("table1.gp")).unwrap();
        assert!(script.contains("set datafile separator ','") && script.contains("table1.csv"));
    }
}
