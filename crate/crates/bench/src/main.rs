use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use rwca_bench::{
    emit_report, generate_two_to_all, load_topology, run_experiment_with, BenchError, Capacity,
    ExperimentConfig, ReportFormat, SolverChoice,
};
use rwca_core::io::{demand_records, parse_instance, parse_solution, DemandRecord, SolutionFile};
use rwca_core::{
    solve_rwa_exact, solve_rwa_first_fit, solve_rwca_exact, solve_rwca_heuristic, verify_solution,
    FirstFitOrder, Instance, SolveLimits, SolveResult, SolveStatus,
};

#[derive(Parser)]
#[command(
    name = "rwca",
    version,
    about = "Optical-bypass vs aggregation-enabled provisioning"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Bypass,
    Rwca,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveMethod {
    Exact,
    Heuristic,
}

#[derive(Subcommand)]
enum Command {
    /// Run paired experiments on sampled two-to-all traffic and write reports.
    Bench {
        /// Bundled name (nsfnet, india, example) or topology JSON file.
        #[arg(long, default_value = "nsfnet")]
        topology: String,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Wavelengths per link: `auto` (one per demand) or a number.
        #[arg(long, default_value = "auto")]
        wavelengths: Capacity,
        #[arg(long, default_value = "auto")]
        solver: SolverChoice,
        /// Per-solve wall-clock budget in seconds.
        #[arg(long, env = "RWCA_TIME_BUDGET", default_value_t = 300.0)]
        time_budget: f64,
        /// Demand JSON file to use instead of sampled traffic.
        #[arg(long)]
        demands: Option<PathBuf>,
        #[arg(long, default_value = "report")]
        out: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "csv,json,svg")]
        formats: Vec<ReportFormat>,
        #[arg(long)]
        quiet: bool,
    },
    /// Solve one instance and print the solution as JSON.
    Solve {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long, value_enum, default_value = "exact")]
        method: SolveMethod,
        #[arg(long, env = "RWCA_TIME_BUDGET", default_value_t = 300.0)]
        time_budget: f64,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a solution against an instance.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        solution: PathBuf,
    },
    /// Sample two-to-all demands for a topology and print them as JSON.
    Gen {
        #[arg(long)]
        topology: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String, BenchError> {
    fs::read_to_string(path).map_err(|e| BenchError::io(path, e))
}

fn write_or_print(out: Option<&Path>, body: &str) -> Result<(), BenchError> {
    match out {
        Some(p) => fs::write(p, body).map_err(|e| BenchError::io(p, e)),
        None => {
            // A closed pipe downstream is not an error worth reporting.
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            Ok(())
        }
    }
}

fn load_instance(path: &Path) -> Result<Instance, BenchError> {
    parse_instance(&read(path)?).map_err(|e| BenchError::format(path.display().to_string(), e))
}

fn budget(secs: f64) -> Result<Duration, BenchError> {
    Duration::try_from_secs_f64(secs)
        .ok()
        .filter(|d| !d.is_zero())
        .ok_or_else(|| {
            BenchError::Config(format!(
                "time budget must be a positive number of seconds, got {secs}"
            ))
        })
}

fn bench(
    config: ExperimentConfig,
    out: &Path,
    formats: &[ReportFormat],
    quiet: bool,
) -> Result<(), BenchError> {
    let e = run_experiment_with(&config, |r| {
        if !quiet {
            eprintln!(
                "sample {:>3}  bypass {:>4} ({})  rwca {:>4} ({})  gain {}",
                r.sample,
                r.bypass.cost.map_or("-".into(), |c| c.to_string()),
                r.bypass.status.as_str(),
                r.rwca.cost.map_or("-".into(), |c| c.to_string()),
                r.rwca.status.as_str(),
                r.gain_pct.map_or("-".into(), |g| format!("{g:.2}%")),
            );
        }
    })?;
    let written = emit_report(&e, out, formats)?;
    let s = &e.summary;
    let fmt = |x: Option<f64>| x.map_or("-".into(), |v| format!("{v:.2}%"));
    let mut stdout = std::io::stdout().lock();
    let _ = writeln!(
        stdout,
        "{}: {} samples, mean gain {}, max {}, pooled {}{}",
        e.topology,
        s.samples,
        fmt(s.mean_gain_pct),
        fmt(s.max_gain_pct),
        fmt(s.pooled_gain_pct),
        if s.all_optimal {
            ""
        } else {
            " (not all optimal)"
        }
    );
    for p in written {
        let _ = writeln!(stdout, "wrote {}", p.display());
    }
    Ok(())
}

fn solve(
    instance: &Path,
    mode: Mode,
    method: SolveMethod,
    time_budget: f64,
    out: Option<&Path>,
) -> Result<(), BenchError> {
    let instance = load_instance(instance)?;
    let limits = SolveLimits::new(budget(time_budget)?, 50_000_000)
        .map_err(|e| BenchError::Config(e.to_string()))?;
    let result = match (mode, method) {
        (Mode::Bypass, SolveMethod::Exact) => solve_rwa_exact(&instance, limits),
        (Mode::Rwca, SolveMethod::Exact) => solve_rwca_exact(&instance, limits),
        (Mode::Bypass, SolveMethod::Heuristic) => {
            heuristic_result(solve_rwa_first_fit(&instance, FirstFitOrder::ById).ok())
        }
        (Mode::Rwca, SolveMethod::Heuristic) => {
            heuristic_result(solve_rwca_heuristic(&instance).ok())
        }
    };
    let file = match &result.solution {
        Some(s) => {
            verify_solution(&instance, s).map_err(BenchError::Verification)?;
            SolutionFile::from_solution(&instance.topology, s, Some(result.status))
        }
        None => SolutionFile {
            status: Some(result.status),
            lower_bound: Some(result.lower_bound),
            metrics: None,
            provisions: Vec::new(),
        },
    };
    let mut body = serde_json::to_string_pretty(&file).expect("solution serialises");
    body.push('\n');
    write_or_print(out, &body)
}

fn heuristic_result(solution: Option<rwca_core::Solution>) -> SolveResult {
    SolveResult {
        status: if solution.is_some() {
            SolveStatus::Feasible
        } else {
            SolveStatus::Infeasible
        },
        solution,
        lower_bound: 0,
        explored_nodes: 0,
    }
}

fn verify(instance: &Path, solution: &Path) -> Result<(), BenchError> {
    let instance = load_instance(instance)?;
    let text = read(solution)?;
    let s = parse_solution(&instance.topology, &text)
        .map_err(|e| BenchError::format(solution.display().to_string(), e))?;
    match verify_solution(&instance, &s) {
        Ok(m) => {
            println!(
                "valid: {} wavelength-links on {} wavelengths",
                m.wavelength_links, m.distinct_wavelengths
            );
            Ok(())
        }
        Err(violations) => {
            for v in &violations {
                eprintln!("{v}");
            }
            Err(BenchError::Verification(violations))
        }
    }
}

fn gen(topology: &str, seed: u64, out: Option<&Path>) -> Result<(), BenchError> {
    let topology = load_topology(topology)?;
    if topology.node_count() < 2 {
        return Err(BenchError::Config(
            "two-to-all traffic needs at least two nodes".into(),
        ));
    }
    let sample = generate_two_to_all(&topology, seed);
    let mut body = serde_json::to_string_pretty(&demand_records(&topology, &sample.demands))
        .expect("demands serialise");
    body.push('\n');
    write_or_print(out, &body)
}

fn run(cli: Cli) -> Result<(), BenchError> {
    match cli.command {
        Command::Bench {
            topology,
            samples,
            seed,
            k,
            wavelengths,
            solver,
            time_budget,
            demands,
            out,
            formats,
            quiet,
        } => {
            let demands = match demands {
                Some(p) => {
                    let text = read(&p)?;
                    let records: Vec<DemandRecord> = serde_json::from_str(&text)
                        .map_err(|e| BenchError::format(p.display().to_string(), e.into()))?;
                    Some(records)
                }
                None => None,
            };
            let config = ExperimentConfig {
                topology,
                samples,
                seed,
                k_paths: k,
                capacity: wavelengths,
                solver,
                time_budget: budget(time_budget)?,
                demands,
            };
            bench(config, &out, &formats, quiet)
        }
        Command::Solve {
            instance,
            mode,
            method,
            time_budget,
            out,
        } => solve(&instance, mode, method, time_budget, out.as_deref()),
        Command::Verify { instance, solution } => verify(&instance, &solution),
        Command::Gen {
            topology,
            seed,
            out,
        } => gen(&topology, seed, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
