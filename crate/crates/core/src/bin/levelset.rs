use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use levelset::config::{read_config_file, RunConfig};
use levelset::runner::{bench, convergence_csv, convergence_study, run, ConvergenceCase};
use levelset::{Result, Scheme};

/// Repeats per bench run unless configured otherwise.
const BENCH_REPEATS: &str = "20";

#[derive(Parser)]
#[command(name = "levelset", version, about = "Hamilton-Jacobi level-set solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve once, writing snapshots and a timing report.
    Run(RunArgs),
    /// Solve repeatedly and report timing statistics.
    Bench(RunArgs),
    /// Print a derivative convergence table as CSV.
    Convergence(ConvergenceArgs),
}

#[derive(Args)]
struct RunArgs {
    /// `key = value` file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// rockets | rigid_rotation
    #[arg(long)]
    problem: Option<String>,
    #[arg(long)]
    grid_counts: Option<usize>,
    #[arg(long, num_args = 2, value_names = ["T0", "TF"], allow_negative_numbers = true)]
    tspan: Option<Vec<f64>>,
    #[arg(long)]
    checkpoints: Option<usize>,
    /// first | eno2 | eno3 | weno5
    #[arg(long)]
    scheme: Option<String>,
    /// cfl_1 | cfl_2 | cfl_3
    #[arg(long)]
    integrator: Option<String>,
    #[arg(long)]
    cfl_factor: Option<f64>,
    #[arg(long)]
    clamp: Option<String>,
    /// Output directory.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    repeats: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// printed | minmax
    #[arg(long)]
    rocket_form: Option<String>,
    #[arg(long)]
    periodic_theta: Option<String>,
}

impl RunArgs {
    /// `defaults` fill keys that neither the file nor a flag sets.
    fn resolve(&self, defaults: &[(&str, &str)]) -> Result<RunConfig> {
        let mut map = match &self.config {
            Some(path) => read_config_file(path)?,
            None => BTreeMap::new(),
        };
        let mut set = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                map.insert(k.to_owned(), v);
            }
        };
        set("problem", self.problem.clone());
        set("grid_counts", self.grid_counts.map(|n| n.to_string()));
        set(
            "tspan",
            self.tspan.as_ref().map(|t| format!("{} {}", t[0], t[1])),
        );
        set("checkpoints", self.checkpoints.map(|n| n.to_string()));
        set("scheme", self.scheme.clone());
        set("integrator", self.integrator.clone());
        set("cfl_factor", self.cfl_factor.map(|c| c.to_string()));
        set("clamp", self.clamp.clone());
        set(
            "output_dir",
            self.output.as_ref().map(|p| p.display().to_string()),
        );
        set("repeats", self.repeats.map(|n| n.to_string()));
        set("seed", self.seed.map(|n| n.to_string()));
        set("rocket_form", self.rocket_form.clone());
        set("periodic_theta", self.periodic_theta.clone());
        for (k, v) in defaults {
            map.entry((*k).to_owned()).or_insert_with(|| (*v).to_owned());
        }
        RunConfig::from_map(&map)
    }
}

#[derive(Args)]
struct ConvergenceArgs {
    /// first | eno2 | eno3 | weno5
    #[arg(long, default_value = "weno5")]
    scheme: String,
    /// sine | linear
    #[arg(long, default_value = "sine")]
    case: String,
    /// Nodes on the coarsest grid.
    #[arg(long, default_value_t = 32)]
    n0: usize,
    #[arg(long, default_value_t = 3)]
    refinements: usize,
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run(args) => {
            let config = args.resolve(&[])?;
            let out = run(&config)?;
            let last = out
                .solution
                .checkpoints
                .last()
                .expect("at least one checkpoint");
            println!(
                "{} steps, {} snapshots in {}, final time {}, loop time {:.3} s",
                out.solution.report.steps_taken,
                out.snapshots.len(),
                config.output_dir.display(),
                last.time,
                out.solution.report.global_time_mean
            );
        }
        Command::Bench(args) => {
            let config = args.resolve(&[("repeats", BENCH_REPEATS)])?;
            let report = bench(&config)?;
            let text = report.to_text(&config.to_pairs());
            std::fs::create_dir_all(&config.output_dir).map_err(|e| levelset::Error::Io {
                path: config.output_dir.clone(),
                source: e,
            })?;
            let path = config.output_dir.join("bench_report.txt");
            std::fs::write(&path, &text).map_err(|e| levelset::Error::Io {
                path: path.clone(),
                source: e,
            })?;
            print!("{text}");
        }
        Command::Convergence(args) => {
            let scheme: Scheme = args.scheme.parse()?;
            let case: ConvergenceCase = args.case.parse()?;
            let rows = convergence_study(case, scheme, args.n0, args.refinements)?;
            print!("{}", convergence_csv(&rows));
        }
    }
    Ok(())
}
