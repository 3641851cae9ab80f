//! Optical network provisioning with and without in-network lightpath
//! aggregation.
//!
//! Two models are solved over the same fixed-grid, wavelength-continuous
//! network:
//!
//! * **bypass** (classical routing and wavelength assignment): each demand
//!   gets its own lightpath from source to destination;
//! * **aggregation-enabled** (routing, wavelength and computing assignment):
//!   two QPSK demands bound for the same node may additionally be added
//!   optically at an intermediate node into one 16-QAM lightpath, which is
//!   split again at the shared destination.
//!
//! Both are minimised in wavelength-link units, the number of occupied
//! (link, wavelength) pairs.

pub mod candidates;
pub mod error;
pub mod io;
pub mod matching;
pub mod model;
pub mod oracle;
pub mod paths;
pub mod rwa;
pub mod rwca;
pub mod search;
pub mod verifier;

pub use candidates::{enumerate_aggregation_candidates, CandidateSet};
pub use error::{FormatError, GainError, ModelError, OracleError, SolveError, TopologyError};
pub use model::{
    build_topology, relative_gain, solution_metrics, AggregationCandidate, Demand, DemandId,
    GroupWavelengths, Instance, Lightpath, Link, LinkId, Metrics, ModulationFormat, NodeId, Path,
    Provision, Solution, SolutionMeta, Topology, Wavelength,
};
pub use oracle::{brute_force_optimum, OracleCaps, OracleMode};
pub use paths::{k_shortest_paths, HopMatrix};
pub use rwa::{rwa_lower_bound, solve_rwa_exact, solve_rwa_first_fit, FirstFitOrder};
pub use rwca::{
    rwca_lower_bound, solve_rwca_exact, solve_rwca_heuristic, solve_rwca_with_candidates,
};
pub use search::{SolveLimits, SolveResult, SolveStatus};
pub use verifier::{verify_solution, Violation, ViolationKind};
