//! Experiment harness comparing optical-bypass provisioning with
//! aggregation-enabled provisioning on reference networks.

pub mod error;
pub mod experiment;
pub mod report;
pub mod topologies;
pub mod traffic;

pub use error::BenchError;
pub use experiment::{
    compare, run_experiment, run_experiment_with, sample_seeds, summarize, Capacity, Experiment,
    ExperimentConfig, GainRecord, ModeOutcome, SolverChoice, Summary,
};
pub use report::{emit_report, render_csv, render_json, render_svg, ReportFormat};
pub use topologies::{bundled, load_topology};
pub use traffic::{generate_two_to_all, TrafficSample};
