//! Paired bypass / aggregation runs over sampled two-to-all traffic.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rwca_core::io::{demands_from_records, DemandRecord};
use rwca_core::{
    relative_gain, rwa_lower_bound, rwca_lower_bound, solve_rwa_exact, solve_rwa_first_fit,
    solve_rwca_exact, solve_rwca_heuristic, verify_solution, Demand, FirstFitOrder, Instance,
    Solution, SolveLimits, SolveResult, SolveStatus, Topology,
};
use serde::Serialize;

use crate::error::BenchError;
use crate::topologies::load_topology;
use crate::traffic::generate_two_to_all;

pub const DEFAULT_TIME_BUDGET: Duration = Duration::from_secs(300);
const NODE_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverChoice {
    Exact,
    Heuristic,
    /// Exact, falling back to the heuristic when the budget runs out
    /// without an incumbent.
    #[default]
    Auto,
}

impl FromStr for SolverChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "exact" => Ok(SolverChoice::Exact),
            "heuristic" => Ok(SolverChoice::Heuristic),
            "auto" => Ok(SolverChoice::Auto),
            _ => Err(format!(
                "unknown solver `{s}` (expected exact, heuristic or auto)"
            )),
        }
    }
}

impl fmt::Display for SolverChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolverChoice::Exact => "exact",
            SolverChoice::Heuristic => "heuristic",
            SolverChoice::Auto => "auto",
        })
    }
}

/// Wavelengths per link. `Auto` gives one per demand, which never binds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Capacity {
    #[default]
    Auto,
    Fixed(u32),
}

impl Capacity {
    pub fn resolve(self, demands: usize) -> u32 {
        match self {
            Capacity::Auto => demands.max(1) as u32,
            Capacity::Fixed(w) => w,
        }
    }
}

impl FromStr for Capacity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(Capacity::Auto);
        }
        s.parse().map(Capacity::Fixed).map_err(|_| {
            format!("invalid wavelength capacity `{s}` (expected auto or a positive integer)")
        })
    }
}

impl fmt::Display for Capacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Capacity::Auto => f.write_str("auto"),
            Capacity::Fixed(w) => write!(f, "{w}"),
        }
    }
}

impl Serialize for Capacity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    /// Bundled topology name or path to a topology file.
    pub topology: String,
    pub samples: usize,
    pub seed: u64,
    pub k_paths: usize,
    pub capacity: Capacity,
    pub solver: SolverChoice,
    #[serde(skip)]
    pub time_budget: Duration,
    /// Fixed demands instead of sampled traffic. A pinned run has exactly
    /// one sample.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub demands: Option<Vec<DemandRecord>>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            topology: "nsfnet".into(),
            samples: 10,
            seed: 1,
            k_paths: 3,
            capacity: Capacity::Auto,
            solver: SolverChoice::Auto,
            time_budget: DEFAULT_TIME_BUDGET,
            demands: None,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), BenchError> {
        let bad = |m: &str| Err(BenchError::Config(m.to_string()));
        if self.samples == 0 {
            return bad("samples must be at least 1");
        }
        if self.k_paths == 0 {
            return bad("k must be at least 1");
        }
        if self.capacity == Capacity::Fixed(0) {
            return bad("wavelength capacity must be positive");
        }
        if self.time_budget.is_zero() {
            return bad("time budget must be positive");
        }
        if self.demands.as_ref().is_some_and(|d| d.is_empty()) {
            return bad("pinned demand list is empty");
        }
        Ok(())
    }

    fn limits(&self) -> SolveLimits {
        SolveLimits::new(self.time_budget, NODE_BUDGET).expect("validated")
    }
}

/// One model's result on one sample.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModeOutcome {
    pub status: SolveStatus,
    pub cost: Option<usize>,
    pub wavelengths: Option<usize>,
    pub aggregated_pairs: usize,
    pub lower_bound: usize,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GainRecord {
    pub sample: usize,
    pub seed: u64,
    pub sources: Vec<String>,
    pub demands: usize,
    pub wavelength_capacity: u32,
    pub bypass: ModeOutcome,
    pub rwca: ModeOutcome,
    /// Relative saving of the aggregation-enabled cost, in percent.
    pub gain_pct: Option<f64>,
    /// Gain if the aggregation-enabled run reached its lower bound. Equals
    /// `gain_pct` when that run is optimal.
    pub gain_upper_pct: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub samples: usize,
    pub compared: usize,
    pub all_optimal: bool,
    pub mean_gain_pct: Option<f64>,
    pub min_gain_pct: Option<f64>,
    pub max_gain_pct: Option<f64>,
    /// Gain of the summed costs over all compared samples.
    pub pooled_gain_pct: Option<f64>,
    pub total_bypass: usize,
    pub total_rwca: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Experiment {
    pub topology: String,
    pub nodes: usize,
    pub links: usize,
    pub config: ExperimentConfig,
    pub records: Vec<GainRecord>,
    pub summary: Summary,
}

#[derive(Clone, Copy)]
enum Model {
    Bypass,
    Rwca,
}

fn checked(instance: &Instance, solution: &Solution) -> Result<(), BenchError> {
    verify_solution(instance, solution)
        .map(|_| ())
        .map_err(BenchError::Verification)
}

fn heuristic(instance: &Instance, model: Model) -> Option<Solution> {
    match model {
        Model::Bypass => solve_rwa_first_fit(instance, FirstFitOrder::ById).ok(),
        Model::Rwca => solve_rwca_heuristic(instance).ok(),
    }
}

fn bound(instance: &Instance, model: Model) -> usize {
    match model {
        Model::Bypass => rwa_lower_bound(instance),
        Model::Rwca => rwca_lower_bound(instance),
    }
}

fn solve(
    instance: &Instance,
    model: Model,
    solver: SolverChoice,
    limits: SolveLimits,
) -> Result<ModeOutcome, BenchError> {
    let start = Instant::now();
    let exact = || match model {
        Model::Bypass => solve_rwa_exact(instance, limits),
        Model::Rwca => solve_rwca_exact(instance, limits),
    };
    let SolveResult {
        mut solution,
        mut status,
        lower_bound,
        ..
    } = match solver {
        SolverChoice::Heuristic => {
            let solution = heuristic(instance, model);
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
        SolverChoice::Exact | SolverChoice::Auto => exact(),
    };
    if solver == SolverChoice::Auto && status == SolveStatus::LimitExceeded {
        if let Some(h) = heuristic(instance, model) {
            if solution.as_ref().is_none_or(|s| h.cost() < s.cost()) {
                solution = Some(h);
            }
        }
    }
    let lower_bound = lower_bound.max(bound(instance, model));
    if let Some(s) = &solution {
        checked(instance, s)?;
        if status == SolveStatus::Feasible && s.cost() == lower_bound {
            status = SolveStatus::Optimal;
        }
    }
    let metrics = solution.as_ref().map(rwca_core::solution_metrics);
    Ok(ModeOutcome {
        status,
        cost: metrics.map(|m| m.wavelength_links),
        wavelengths: metrics.map(|m| m.distinct_wavelengths),
        aggregated_pairs: solution.as_ref().map_or(0, Solution::group_count),
        lower_bound,
        elapsed: start.elapsed(),
    })
}

fn pct(bypass: usize, rwca: usize) -> Option<f64> {
    relative_gain(bypass, rwca).ok()
}

/// Solves both models on one instance and records the comparison.
pub fn compare(
    instance: &Instance,
    solver: SolverChoice,
    limits: SolveLimits,
    sample: usize,
    seed: u64,
    sources: Vec<String>,
) -> Result<GainRecord, BenchError> {
    let bypass = solve(instance, Model::Bypass, solver, limits)?;
    let rwca = solve(instance, Model::Rwca, solver, limits)?;
    let (gain_pct, gain_upper_pct) = match (bypass.cost, rwca.cost) {
        (Some(b), Some(r)) => {
            let upper = if rwca.status == SolveStatus::Optimal {
                pct(b, r)
            } else {
                pct(b, rwca.lower_bound)
            };
            (pct(b, r), upper)
        }
        _ => (None, None),
    };
    Ok(GainRecord {
        sample,
        seed,
        sources,
        demands: instance.demands.len(),
        wavelength_capacity: instance.wavelength_capacity,
        bypass,
        rwca,
        gain_pct,
        gain_upper_pct,
    })
}

pub fn summarize(records: &[GainRecord]) -> Summary {
    let gains: Vec<f64> = records.iter().filter_map(|r| r.gain_pct).collect();
    let compared: Vec<&GainRecord> = records.iter().filter(|r| r.gain_pct.is_some()).collect();
    let total_bypass = compared.iter().filter_map(|r| r.bypass.cost).sum();
    let total_rwca = compared.iter().filter_map(|r| r.rwca.cost).sum();
    let fold = |f: fn(f64, f64) -> f64| gains.iter().copied().reduce(f);
    Summary {
        samples: records.len(),
        compared: gains.len(),
        all_optimal: records.iter().all(|r| {
            r.bypass.status == SolveStatus::Optimal && r.rwca.status == SolveStatus::Optimal
        }),
        mean_gain_pct: (!gains.is_empty()).then(|| gains.iter().sum::<f64>() / gains.len() as f64),
        min_gain_pct: fold(f64::min),
        max_gain_pct: fold(f64::max),
        pooled_gain_pct: pct(total_bypass, total_rwca),
        total_bypass,
        total_rwca,
    }
}

/// Per-sample seeds: successive outputs of a generator seeded with the
/// experiment seed.
pub fn sample_seeds(seed: u64, samples: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).map(|_| rng.next_u64()).collect()
}

fn build(
    topology: &Topology,
    demands: Vec<Demand>,
    config: &ExperimentConfig,
) -> Result<Instance, BenchError> {
    let w = config.capacity.resolve(demands.len());
    Instance::new(topology.clone(), demands, config.k_paths, w)
        .map_err(|e| BenchError::format("instance", e.into()))
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<Experiment, BenchError> {
    run_experiment_with(config, |_| {})
}

/// Like [`run_experiment`], calling `progress` after each sample.
pub fn run_experiment_with(
    config: &ExperimentConfig,
    mut progress: impl FnMut(&GainRecord),
) -> Result<Experiment, BenchError> {
    config.validate()?;
    let topology = load_topology(&config.topology)?;
    let limits = config.limits();
    let mut records = Vec::new();
    if let Some(pinned) = &config.demands {
        let demands = demands_from_records(&topology, pinned)
            .map_err(|e| BenchError::format("demands", e))?;
        let instance = build(&topology, demands, config)?;
        let r = compare(&instance, config.solver, limits, 0, config.seed, Vec::new())?;
        progress(&r);
        records.push(r);
    } else {
        if topology.node_count() < 2 {
            return Err(BenchError::Config(
                "two-to-all traffic needs at least two nodes".into(),
            ));
        }
        for (sample, seed) in sample_seeds(config.seed, config.samples)
            .into_iter()
            .enumerate()
        {
            let traffic = generate_two_to_all(&topology, seed);
            let sources = traffic
                .sources
                .iter()
                .map(|&s| topology.node_name(s).to_string())
                .collect();
            let instance = build(&topology, traffic.demands, config)?;
            let r = compare(&instance, config.solver, limits, sample, seed, sources)?;
            progress(&r);
            records.push(r);
        }
    }
    let summary = summarize(&records);
    Ok(Experiment {
        topology: topology.name().to_string(),
        nodes: topology.node_count(),
        links: topology.link_count(),
        config: config.clone(),
        records,
        summary,
    })
}
