//! Solver-independent feasibility check.
//!
//! A solution is valid when every demand is carried exactly once, every path
//! is a simple walk over existing links with the right endpoints, groups obey
//! the aggregation rules, and no (link, wavelength) pair is used twice.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::model::{
    hop_count, is_simple, solution_metrics, AggregationCandidate, DemandId, GroupWavelengths,
    Instance, LinkId, Metrics, NodeId, Provision, Solution, Topology, Wavelength,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ViolationKind {
    UnassignedDemand,
    DuplicateAssignment,
    NonSimplePath,
    WrongEndpoints,
    WavelengthClash,
    WavelengthOutOfRange,
    GroupWavelengthMismatch,
    GroupDestinationMismatch,
    GroupNodeIsDestination,
    TributaryOverlap,
}

impl ViolationKind {
    pub const ALL: [ViolationKind; 10] = [
        ViolationKind::UnassignedDemand,
        ViolationKind::DuplicateAssignment,
        ViolationKind::NonSimplePath,
        ViolationKind::WrongEndpoints,
        ViolationKind::WavelengthClash,
        ViolationKind::WavelengthOutOfRange,
        ViolationKind::GroupWavelengthMismatch,
        ViolationKind::GroupDestinationMismatch,
        ViolationKind::GroupNodeIsDestination,
        ViolationKind::TributaryOverlap,
    ];
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.kind, self.detail)
    }
}

struct Checker<'a> {
    topology: &'a Topology,
    capacity: u32,
    violations: Vec<Violation>,
    occupied: BTreeMap<(LinkId, Wavelength), String>,
}

impl<'a> Checker<'a> {
    fn push(&mut self, kind: ViolationKind, detail: String) {
        self.violations.push(Violation { kind, detail });
    }

    fn show(&self, path: &[NodeId]) -> String {
        self.topology.format_path(path)
    }

    /// Links of a well-formed simple path; records a violation otherwise.
    fn path_links(
        &mut self,
        owner: &str,
        path: &[NodeId],
        min_links: usize,
    ) -> Option<Vec<LinkId>> {
        if path.is_empty() || path.iter().any(|n| !self.topology.contains(*n)) {
            self.push(
                ViolationKind::NonSimplePath,
                format!("{owner}: path {path:?} references nodes outside the topology"),
            );
            return None;
        }
        if !is_simple(path) {
            let shown = self.show(path);
            self.push(
                ViolationKind::NonSimplePath,
                format!("{owner}: path {shown} repeats a node"),
            );
            return None;
        }
        if hop_count(path) < min_links {
            let shown = self.show(path);
            self.push(
                ViolationKind::WrongEndpoints,
                format!("{owner}: path {shown} has fewer than {min_links} link(s)"),
            );
            return None;
        }
        match self.topology.path_links(path) {
            Some(links) => Some(links),
            None => {
                let shown = self.show(path);
                self.push(
                    ViolationKind::NonSimplePath,
                    format!("{owner}: path {shown} uses a missing link"),
                );
                None
            }
        }
    }

    fn endpoints(&mut self, owner: &str, path: &[NodeId], from: NodeId, to: NodeId) {
        if path.first() != Some(&from) || path.last() != Some(&to) {
            let shown = self.show(path);
            let (f, t) = (
                self.topology.node_name(from).to_string(),
                self.topology.node_name(to).to_string(),
            );
            self.push(
                ViolationKind::WrongEndpoints,
                format!("{owner}: path {shown} must run from {f} to {t}"),
            );
        }
    }

    fn wavelength(&mut self, owner: &str, w: Wavelength) -> bool {
        if w >= self.capacity {
            self.push(
                ViolationKind::WavelengthOutOfRange,
                format!("{owner}: wavelength {w} outside [0, {})", self.capacity),
            );
            return false;
        }
        true
    }

    fn occupy(&mut self, owner: &str, links: &[LinkId], w: Wavelength) {
        for &l in links {
            if let Some(prev) = self.occupied.get(&(l, w)) {
                let detail = format!(
                    "link {} on wavelength {w} used by both {prev} and {owner}",
                    self.topology.format_link(l)
                );
                self.push(ViolationKind::WavelengthClash, detail);
            } else {
                self.occupied.insert((l, w), owner.to_string());
            }
        }
    }
}

/// Checks every solution and aggregation rule; on success recomputes the
/// metrics from the occupied (link, wavelength) set. All violations are
/// reported, not just the first.
pub fn verify_solution(
    instance: &Instance,
    solution: &Solution,
) -> Result<Metrics, Vec<Violation>> {
    let topology = &instance.topology;
    let mut c = Checker {
        topology,
        capacity: instance.wavelength_capacity,
        violations: Vec::new(),
        occupied: BTreeMap::new(),
    };

    let mut coverage: BTreeMap<DemandId, Vec<usize>> = instance
        .demands
        .iter()
        .map(|d| (d.id, Vec::new()))
        .collect();
    for (i, p) in solution.provisions.iter().enumerate() {
        let ds = p.demands();
        if ds.len() == 2 && ds[0] == ds[1] {
            c.push(
                ViolationKind::DuplicateAssignment,
                format!("group #{i} aggregates demand {} with itself", ds[0]),
            );
        }
        let unique: HashSet<DemandId> = ds.into_iter().collect();
        for d in unique {
            match coverage.get_mut(&d) {
                Some(v) => v.push(i),
                None => c.push(
                    ViolationKind::UnassignedDemand,
                    format!("provision #{i} carries demand {d} which is not in the instance"),
                ),
            }
        }
    }
    for (d, at) in &coverage {
        match at.len() {
            0 => c.push(
                ViolationKind::UnassignedDemand,
                format!("demand {d} is not carried"),
            ),
            1 => {}
            _ => c.push(
                ViolationKind::DuplicateAssignment,
                format!("demand {d} is carried by provisions {at:?}"),
            ),
        }
    }

    for (i, p) in solution.provisions.iter().enumerate() {
        match p {
            Provision::Alone {
                demand,
                path,
                wavelength,
            } => {
                let owner = format!("lightpath of {demand}");
                let links = c.path_links(&owner, path, 1);
                if let Some(d) = instance.demand(*demand) {
                    c.endpoints(&owner, path, d.source, d.destination);
                }
                if c.wavelength(&owner, *wavelength) {
                    if let Some(links) = links {
                        c.occupy(&owner, &links, *wavelength);
                    }
                }
            }
            Provision::Grouped {
                candidate,
                wavelengths,
            } => check_group(&mut c, instance, i, candidate, wavelengths),
        }
    }

    if c.violations.is_empty() {
        let metrics = solution_metrics(solution);
        debug_assert_eq!(metrics.wavelength_links, c.occupied.len());
        Ok(metrics)
    } else {
        Err(c.violations)
    }
}

fn check_group(
    c: &mut Checker<'_>,
    instance: &Instance,
    index: usize,
    g: &AggregationCandidate,
    w: &GroupWavelengths,
) {
    let owner = format!(
        "group #{index} ({}+{} at {})",
        g.demand_a,
        g.demand_b,
        node_label(c.topology, g.agg_node)
    );
    let da = instance.demand(g.demand_a);
    let db = instance.demand(g.demand_b);

    if let (Some(a), Some(b)) = (da, db) {
        if a.destination != b.destination {
            c.push(
                ViolationKind::GroupDestinationMismatch,
                format!(
                    "{owner}: {} ends at {} but {} ends at {}",
                    a.id,
                    c.topology.node_name(a.destination),
                    b.id,
                    c.topology.node_name(b.destination)
                ),
            );
        }
        if g.agg_node == a.destination || g.agg_node == b.destination {
            c.push(
                ViolationKind::GroupNodeIsDestination,
                format!("{owner}: aggregation node is a demand destination"),
            );
        }
    }

    let trib_a = c.path_links(
        &format!("{owner} tributary {}", g.demand_a),
        &g.tributary_a,
        0,
    );
    let trib_b = c.path_links(
        &format!("{owner} tributary {}", g.demand_b),
        &g.tributary_b,
        0,
    );
    let agg = c.path_links(&format!("{owner} aggregate"), &g.aggregate_path, 1);
    if let Some(a) = da {
        c.endpoints(
            &format!("{owner} tributary {}", a.id),
            &g.tributary_a,
            a.source,
            g.agg_node,
        );
        c.endpoints(
            &format!("{owner} aggregate"),
            &g.aggregate_path,
            g.agg_node,
            a.destination,
        );
    }
    if let Some(b) = db {
        c.endpoints(
            &format!("{owner} tributary {}", b.id),
            &g.tributary_b,
            b.source,
            g.agg_node,
        );
    }

    for (trib, d) in [(&g.tributary_a, g.demand_a), (&g.tributary_b, g.demand_b)] {
        if trib.is_empty() || g.aggregate_path.is_empty() {
            continue;
        }
        let mut walk = trib.clone();
        walk.extend_from_slice(&g.aggregate_path[1..]);
        if is_simple(trib) && is_simple(&g.aggregate_path) && !is_simple(&walk) {
            c.push(
                ViolationKind::NonSimplePath,
                format!("{owner}: tributary of {d} followed by the aggregate path revisits a node"),
            );
        }
    }

    if let (Some(la), Some(lb)) = (&trib_a, &trib_b) {
        let shared: Vec<String> = la
            .iter()
            .filter(|l| lb.contains(l))
            .map(|&l| c.topology.format_link(l))
            .collect();
        if !shared.is_empty() {
            c.push(
                ViolationKind::TributaryOverlap,
                format!(
                    "{owner}: tributaries of {} and {} share {}",
                    g.demand_a,
                    g.demand_b,
                    shared.join(", ")
                ),
            );
        }
    }

    if w.tributary_a != w.aggregate || w.tributary_b != w.aggregate {
        c.push(
            ViolationKind::GroupWavelengthMismatch,
            format!(
                "{owner}: tributary wavelengths {}/{} differ from aggregate wavelength {}",
                w.tributary_a, w.tributary_b, w.aggregate
            ),
        );
    }

    // Tributaries that overlap are reported once above, not again as clashes.
    let overlap =
        matches!((&trib_a, &trib_b), (Some(a), Some(b)) if a.iter().any(|l| b.contains(l)));
    let parts = [
        (
            format!("{owner} tributary {}", g.demand_a),
            trib_a,
            w.tributary_a,
        ),
        (
            format!("{owner} tributary {}", g.demand_b),
            trib_b.filter(|_| !overlap),
            w.tributary_b,
        ),
        (format!("{owner} aggregate"), agg, w.aggregate),
    ];
    for (name, links, wl) in parts {
        if c.wavelength(&name, wl) {
            if let Some(links) = links {
                c.occupy(&name, &links, wl);
            }
        }
    }
}

fn node_label(t: &Topology, n: NodeId) -> String {
    if t.contains(n) {
        t.node_name(n).to_string()
    } else {
        n.to_string()
    }
}
