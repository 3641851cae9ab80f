//! Domain types: topology, demands, lightpaths, aggregation candidates and
//! solver-agnostic solutions.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{GainError, ModelError, TopologyError};

/// Index of a node inside its [`Topology`] (input order).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub usize);

/// Index of an undirected link inside its [`Topology`] (input order).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinkId(pub usize);

/// User-facing demand identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DemandId(pub u32);

/// Wavelength index; `0` is the first channel of the grid.
pub type Wavelength = u32;

/// A node sequence. A path of length one is a zero-link path.
pub type Path = Vec<NodeId>;

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n{}", self.0)
    }
}

impl fmt::Display for LinkId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "l{}", self.0)
    }
}

impl fmt::Display for DemandId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Link {
    pub id: LinkId,
    pub a: NodeId,
    pub b: NodeId,
}

impl Link {
    pub fn other(&self, end: NodeId) -> NodeId {
        if end == self.a {
            self.b
        } else {
            self.a
        }
    }
}

/// Undirected, connected, simple graph of optical nodes and fiber links.
#[derive(Debug, Clone)]
pub struct Topology {
    name: String,
    nodes: Vec<String>,
    links: Vec<Link>,
    adjacency: Vec<Vec<(NodeId, LinkId)>>,
    by_name: HashMap<String, NodeId>,
    by_ends: HashMap<(NodeId, NodeId), LinkId>,
}

impl Topology {
    /// Builds and validates a topology from node names and endpoint-name pairs.
    /// Link ids follow input order.
    pub fn new<S, L>(
        name: impl Into<String>,
        nodes: &[S],
        links: &[(L, L)],
    ) -> Result<Self, TopologyError>
    where
        S: AsRef<str>,
        L: AsRef<str>,
    {
        if nodes.is_empty() {
            return Err(TopologyError::NoNodes);
        }
        let mut by_name = HashMap::with_capacity(nodes.len());
        for (i, n) in nodes.iter().enumerate() {
            let n = n.as_ref();
            if by_name.insert(n.to_string(), NodeId(i)).is_some() {
                return Err(TopologyError::DuplicateNode(n.to_string()));
            }
        }
        let mut indexed = Vec::with_capacity(links.len());
        for (a, b) in links {
            let lookup = |s: &str| {
                by_name
                    .get(s)
                    .copied()
                    .ok_or_else(|| TopologyError::UnknownNode(s.to_string()))
            };
            indexed.push((lookup(a.as_ref())?, lookup(b.as_ref())?));
        }
        Self::from_indices(
            name,
            nodes.iter().map(|s| s.as_ref().to_string()).collect(),
            &indexed,
        )
    }

    /// Builds a topology from node names and index pairs.
    pub fn from_indices(
        name: impl Into<String>,
        nodes: Vec<String>,
        links: &[(NodeId, NodeId)],
    ) -> Result<Self, TopologyError> {
        if nodes.is_empty() {
            return Err(TopologyError::NoNodes);
        }
        let n = nodes.len();
        let mut by_name = HashMap::with_capacity(n);
        for (i, s) in nodes.iter().enumerate() {
            if by_name.insert(s.clone(), NodeId(i)).is_some() {
                return Err(TopologyError::DuplicateNode(s.clone()));
            }
        }
        if links.is_empty() && n > 1 {
            return Err(TopologyError::NoLinks);
        }
        let mut adjacency = vec![Vec::new(); n];
        let mut by_ends = HashMap::with_capacity(links.len() * 2);
        let mut out = Vec::with_capacity(links.len());
        for (i, &(a, b)) in links.iter().enumerate() {
            for end in [a, b] {
                if end.0 >= n {
                    return Err(TopologyError::UnknownNode(end.to_string()));
                }
            }
            if a == b {
                return Err(TopologyError::SelfLoop(nodes[a.0].clone()));
            }
            let id = LinkId(i);
            if by_ends.contains_key(&(a, b)) {
                return Err(TopologyError::DuplicateLink(
                    nodes[a.0].clone(),
                    nodes[b.0].clone(),
                ));
            }
            by_ends.insert((a, b), id);
            by_ends.insert((b, a), id);
            adjacency[a.0].push((b, id));
            adjacency[b.0].push((a, id));
            out.push(Link { id, a, b });
        }
        for adj in &mut adjacency {
            adj.sort();
        }

        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for &(v, _) in &adjacency[u] {
                if !seen[v.0] {
                    seen[v.0] = true;
                    queue.push_back(v.0);
                }
            }
        }
        if let Some(lost) = seen.iter().position(|s| !s) {
            return Err(TopologyError::Disconnected(nodes[lost].clone()));
        }

        Ok(Self {
            name: name.into(),
            nodes,
            links: out,
            adjacency,
            by_name,
            by_ends,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn link_count(&self) -> usize {
        self.links.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len()).map(NodeId)
    }

    pub fn node_names(&self) -> &[String] {
        &self.nodes
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn link(&self, id: LinkId) -> &Link {
        &self.links[id.0]
    }

    pub fn node_name(&self, id: NodeId) -> &str {
        &self.nodes[id.0]
    }

    pub fn node_id(&self, name: &str) -> Option<NodeId> {
        self.by_name.get(name).copied()
    }

    pub fn contains(&self, id: NodeId) -> bool {
        id.0 < self.nodes.len()
    }

    /// Neighbours sorted by node index.
    pub fn neighbors(&self, id: NodeId) -> &[(NodeId, LinkId)] {
        &self.adjacency[id.0]
    }

    pub fn link_between(&self, a: NodeId, b: NodeId) -> Option<LinkId> {
        self.by_ends.get(&(a, b)).copied()
    }

    /// Links traversed by `path`, or `None` if two consecutive nodes are not adjacent.
    pub fn path_links(&self, path: &[NodeId]) -> Option<Vec<LinkId>> {
        path.windows(2)
            .map(|w| self.link_between(w[0], w[1]))
            .collect()
    }

    /// Human-readable rendering such as `A-X-C`.
    pub fn format_path(&self, path: &[NodeId]) -> String {
        path.iter()
            .map(|&n| {
                if self.contains(n) {
                    self.node_name(n).to_string()
                } else {
                    n.to_string()
                }
            })
            .collect::<Vec<_>>()
            .join("-")
    }

    pub fn format_link(&self, id: LinkId) -> String {
        let l = self.link(id);
        format!("{}-{}", self.node_name(l.a), self.node_name(l.b))
    }
}

/// Validated constructor kept for symmetry with the other operations.
pub fn build_topology<S: AsRef<str>>(
    name: &str,
    nodes: &[S],
    links: &[(S, S)],
) -> Result<Topology, TopologyError> {
    Topology::new(name, nodes, links)
}

/// `true` when no node repeats.
pub fn is_simple(path: &[NodeId]) -> bool {
    let mut seen = BTreeSet::new();
    path.iter().all(|n| seen.insert(*n))
}

/// Number of links of a node sequence.
pub fn hop_count(path: &[NodeId]) -> usize {
    path.len().saturating_sub(1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ModulationFormat {
    Qpsk,
    #[serde(rename = "16QAM")]
    SixteenQam,
}

impl ModulationFormat {
    pub fn bits_per_symbol(self) -> u32 {
        match self {
            ModulationFormat::Qpsk => 2,
            ModulationFormat::SixteenQam => 4,
        }
    }

    /// Format of the lightpath obtained by optically adding two lightpaths:
    /// bits per symbol add up.
    pub fn aggregate(self, other: Self) -> Option<Self> {
        match self.bits_per_symbol() + other.bits_per_symbol() {
            4 => Some(ModulationFormat::SixteenQam),
            _ => None,
        }
    }
}

/// Nominal line rate of every demand.
pub const DEFAULT_RATE_GBPS: u32 = 400;

/// A unit-rate connection request. It fills one wavelength when carried alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Demand {
    pub id: DemandId,
    pub source: NodeId,
    pub destination: NodeId,
    pub rate_gbps: u32,
    pub format: ModulationFormat,
}

impl Demand {
    pub fn new(id: u32, source: NodeId, destination: NodeId) -> Result<Self, ModelError> {
        if source == destination {
            return Err(ModelError::LoopDemand(DemandId(id)));
        }
        Ok(Self {
            id: DemandId(id),
            source,
            destination,
            rate_gbps: DEFAULT_RATE_GBPS,
            format: ModulationFormat::Qpsk,
        })
    }
}

/// An all-optical channel on a single wavelength along a simple path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lightpath {
    pub path: Path,
    pub wavelength: Wavelength,
    pub format: ModulationFormat,
    pub carried: Vec<DemandId>,
}

impl Lightpath {
    pub fn hops(&self) -> usize {
        hop_count(&self.path)
    }
}

/// Two demands with a shared destination, the node where they are optically
/// added, the paths that bring them there, and the path of the aggregate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AggregationCandidate {
    pub demand_a: DemandId,
    pub demand_b: DemandId,
    pub agg_node: NodeId,
    /// From the source of `demand_a` to `agg_node`; a single node when they coincide.
    pub tributary_a: Path,
    pub tributary_b: Path,
    /// From `agg_node` to the shared destination.
    pub aggregate_path: Path,
}

impl AggregationCandidate {
    /// Wavelength-links this group occupies.
    pub fn cost(&self) -> usize {
        hop_count(&self.tributary_a)
            + hop_count(&self.tributary_b)
            + hop_count(&self.aggregate_path)
    }

    pub fn destination(&self) -> Option<NodeId> {
        self.aggregate_path.last().copied()
    }

    pub fn demands(&self) -> [DemandId; 2] {
        [self.demand_a, self.demand_b]
    }
}

/// Wavelengths of the three lightpaths of a group. A valid group uses one value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupWavelengths {
    pub tributary_a: Wavelength,
    pub tributary_b: Wavelength,
    pub aggregate: Wavelength,
}

impl GroupWavelengths {
    pub fn uniform(w: Wavelength) -> Self {
        Self {
            tributary_a: w,
            tributary_b: w,
            aggregate: w,
        }
    }
}

/// How one demand, or one aggregated pair, is carried.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provision {
    Alone {
        demand: DemandId,
        path: Path,
        wavelength: Wavelength,
    },
    Grouped {
        candidate: AggregationCandidate,
        wavelengths: GroupWavelengths,
    },
}

impl Provision {
    pub fn demands(&self) -> Vec<DemandId> {
        match self {
            Provision::Alone { demand, .. } => vec![*demand],
            Provision::Grouped { candidate, .. } => candidate.demands().to_vec(),
        }
    }

    /// Lightpaths realised by this provision. Zero-link tributaries are not lightpaths.
    pub fn lightpaths(&self) -> Vec<Lightpath> {
        match self {
            Provision::Alone {
                demand,
                path,
                wavelength,
            } => vec![Lightpath {
                path: path.clone(),
                wavelength: *wavelength,
                format: ModulationFormat::Qpsk,
                carried: vec![*demand],
            }],
            Provision::Grouped {
                candidate: c,
                wavelengths: w,
            } => {
                let mut out = Vec::with_capacity(3);
                for (path, wl, d) in [
                    (&c.tributary_a, w.tributary_a, c.demand_a),
                    (&c.tributary_b, w.tributary_b, c.demand_b),
                ] {
                    if path.len() > 1 {
                        out.push(Lightpath {
                            path: path.clone(),
                            wavelength: wl,
                            format: ModulationFormat::Qpsk,
                            carried: vec![d],
                        });
                    }
                }
                out.push(Lightpath {
                    path: c.aggregate_path.clone(),
                    wavelength: w.aggregate,
                    format: ModulationFormat::Qpsk
                        .aggregate(ModulationFormat::Qpsk)
                        .expect("two QPSK channels aggregate"),
                    carried: vec![c.demand_a, c.demand_b],
                });
                out
            }
        }
    }

    fn sort_key(&self) -> DemandId {
        self.demands()
            .into_iter()
            .min()
            .expect("provision carries a demand")
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SolutionMeta {
    pub optimal: bool,
    pub lower_bound: Option<usize>,
    pub solve_time: Option<Duration>,
}

/// Provisioning of every demand of an instance.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Solution {
    pub provisions: Vec<Provision>,
    pub meta: SolutionMeta,
}

impl Solution {
    /// Orders provisions by their smallest demand id.
    pub fn new(mut provisions: Vec<Provision>) -> Self {
        provisions.sort_by_key(Provision::sort_key);
        Self {
            provisions,
            meta: SolutionMeta::default(),
        }
    }

    pub fn lightpaths(&self) -> Vec<Lightpath> {
        self.provisions
            .iter()
            .flat_map(Provision::lightpaths)
            .collect()
    }

    pub fn provision_of(&self, demand: DemandId) -> Option<&Provision> {
        self.provisions
            .iter()
            .find(|p| p.demands().contains(&demand))
    }

    pub fn group_count(&self) -> usize {
        self.provisions
            .iter()
            .filter(|p| matches!(p, Provision::Grouped { .. }))
            .count()
    }

    pub fn cost(&self) -> usize {
        solution_metrics(self).wavelength_links
    }
}

/// Spectral cost of a solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Metrics {
    pub wavelength_links: usize,
    pub distinct_wavelengths: usize,
}

pub fn solution_metrics(solution: &Solution) -> Metrics {
    let lightpaths = solution.lightpaths();
    let wavelengths: BTreeSet<Wavelength> = lightpaths.iter().map(|l| l.wavelength).collect();
    Metrics {
        wavelength_links: lightpaths.iter().map(Lightpath::hops).sum(),
        distinct_wavelengths: wavelengths.len(),
    }
}

/// Percentage of wavelength-links saved by aggregation relative to bypass.
pub fn relative_gain(bypass_cost: usize, rwca_cost: usize) -> Result<f64, GainError> {
    if bypass_cost == 0 {
        return Err(GainError::ZeroBaseline);
    }
    Ok(100.0 * (bypass_cost as f64 - rwca_cost as f64) / bypass_cost as f64)
}

/// Candidate paths per endpoint pair when none is given.
pub const DEFAULT_K_PATHS: usize = 3;

/// A topology, its traffic, and the solver knobs that define one problem.
#[derive(Debug, Clone)]
pub struct Instance {
    pub topology: Topology,
    pub demands: Vec<Demand>,
    pub k_paths: usize,
    pub wavelength_capacity: u32,
}

impl Instance {
    pub fn new(
        topology: Topology,
        demands: Vec<Demand>,
        k_paths: usize,
        wavelength_capacity: u32,
    ) -> Result<Self, ModelError> {
        if k_paths == 0 {
            return Err(ModelError::ZeroPaths);
        }
        if wavelength_capacity == 0 {
            return Err(ModelError::ZeroCapacity);
        }
        let mut ids = BTreeSet::new();
        for d in &demands {
            if !ids.insert(d.id) {
                return Err(ModelError::DuplicateDemand(d.id));
            }
            for end in [d.source, d.destination] {
                if !topology.contains(end) {
                    return Err(ModelError::UnknownEndpoint(d.id, end));
                }
            }
            if d.source == d.destination {
                return Err(ModelError::LoopDemand(d.id));
            }
        }
        Ok(Self {
            topology,
            demands,
            k_paths,
            wavelength_capacity,
        })
    }

    /// `k = 3` and one wavelength per demand, which always admits a solution.
    pub fn with_defaults(topology: Topology, demands: Vec<Demand>) -> Result<Self, ModelError> {
        let w = demands.len().max(1) as u32;
        Self::new(topology, demands, DEFAULT_K_PATHS, w)
    }

    pub fn demand(&self, id: DemandId) -> Option<&Demand> {
        self.demands.iter().find(|d| d.id == id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star() -> Topology {
        Topology::new(
            "star",
            &["A", "B", "X", "C"],
            &[("A", "X"), ("B", "X"), ("X", "C")],
        )
        .unwrap()
    }

    #[test]
    fn builds_example_graph() {
        let t = star();
        assert_eq!(t.node_count(), 4);
        assert_eq!(t.link_count(), 3);
        assert_eq!(t.link_between(NodeId(2), NodeId(3)), Some(LinkId(2)));
        assert_eq!(t.link_between(NodeId(3), NodeId(2)), Some(LinkId(2)));
        assert_eq!(t.link_between(NodeId(0), NodeId(3)), None);
    }

    #[test]
    fn rejects_bad_graphs() {
        assert_eq!(
            Topology::new("t", &["A"], &[("A", "A")]).unwrap_err(),
            TopologyError::SelfLoop("A".into())
        );
        assert_eq!(
            Topology::new("t", &["A", "B", "C", "D"], &[("A", "B")]).unwrap_err(),
            TopologyError::Disconnected("C".into())
        );
        assert_eq!(
            Topology::new("t", &["A", "B"], &[("A", "B"), ("B", "A")]).unwrap_err(),
            TopologyError::DuplicateLink("B".into(), "A".into())
        );
        assert_eq!(
            Topology::new("t", &["A", "A"], &[("A", "A")]).unwrap_err(),
            TopologyError::DuplicateNode("A".into())
        );
        assert_eq!(
            Topology::new("t", &["A", "B"], &[("A", "Z")]).unwrap_err(),
            TopologyError::UnknownNode("Z".into())
        );
        let empty: [&str; 0] = [];
        assert_eq!(
            Topology::new("t", &empty, &[] as &[(&str, &str)]).unwrap_err(),
            TopologyError::NoNodes
        );
    }

    #[test]
    fn aggregation_adds_bits_per_symbol() {
        let q = ModulationFormat::Qpsk;
        assert_eq!(q.bits_per_symbol(), 2);
        assert_eq!(q.aggregate(q), Some(ModulationFormat::SixteenQam));
        assert_eq!(ModulationFormat::SixteenQam.bits_per_symbol(), 4);
        assert_eq!(ModulationFormat::SixteenQam.aggregate(q), None);
    }

    #[test]
    fn gain_values() {
        assert_eq!(relative_gain(4, 3).unwrap(), 25.0);
        assert_eq!(relative_gain(10, 8).unwrap(), 20.0);
        assert_eq!(relative_gain(7, 7).unwrap(), 0.0);
        assert_eq!(relative_gain(0, 0), Err(GainError::ZeroBaseline));
    }

    #[test]
    fn star_metrics() {
        let (a, b, x, c) = (NodeId(0), NodeId(1), NodeId(2), NodeId(3));
        let bypass = Solution::new(vec![
            Provision::Alone {
                demand: DemandId(0),
                path: vec![a, x, c],
                wavelength: 0,
            },
            Provision::Alone {
                demand: DemandId(1),
                path: vec![b, x, c],
                wavelength: 1,
            },
        ]);
        assert_eq!(
            solution_metrics(&bypass),
            Metrics {
                wavelength_links: 4,
                distinct_wavelengths: 2
            }
        );
        let grouped = Solution::new(vec![Provision::Grouped {
            candidate: AggregationCandidate {
                demand_a: DemandId(0),
                demand_b: DemandId(1),
                agg_node: x,
                tributary_a: vec![a, x],
                tributary_b: vec![b, x],
                aggregate_path: vec![x, c],
            },
            wavelengths: GroupWavelengths::uniform(0),
        }]);
        assert_eq!(
            solution_metrics(&grouped),
            Metrics {
                wavelength_links: 3,
                distinct_wavelengths: 1
            }
        );
        let lps = grouped.lightpaths();
        assert_eq!(lps.len(), 3);
        assert!(lps
            .iter()
            .all(|l| (l.carried.len() == 2) == (l.format == ModulationFormat::SixteenQam)));
        assert_eq!(solution_metrics(&Solution::default()), Metrics::default());
    }

    #[test]
    fn zero_length_tributary_is_not_a_lightpath() {
        let g = Provision::Grouped {
            candidate: AggregationCandidate {
                demand_a: DemandId(0),
                demand_b: DemandId(1),
                agg_node: NodeId(1),
                tributary_a: vec![NodeId(0), NodeId(1)],
                tributary_b: vec![NodeId(1)],
                aggregate_path: vec![NodeId(1), NodeId(2)],
            },
            wavelengths: GroupWavelengths::uniform(0),
        };
        assert_eq!(g.lightpaths().len(), 2);
    }

    #[test]
    fn instance_validation() {
        let t = star();
        assert!(Demand::new(0, NodeId(1), NodeId(1)).is_err());
        let d = vec![Demand::new(0, NodeId(0), NodeId(3)).unwrap()];
        assert_eq!(
            Instance::new(t.clone(), d.clone(), 0, 1).unwrap_err(),
            ModelError::ZeroPaths
        );
        assert_eq!(
            Instance::new(t.clone(), d.clone(), 1, 0).unwrap_err(),
            ModelError::ZeroCapacity
        );
        let dup = vec![d[0].clone(), d[0].clone()];
        assert!(matches!(
            Instance::new(t.clone(), dup, 1, 1),
            Err(ModelError::DuplicateDemand(_))
        ));
        let far = vec![Demand::new(1, NodeId(0), NodeId(9)).unwrap()];
        assert!(matches!(
            Instance::new(t.clone(), far, 1, 1),
            Err(ModelError::UnknownEndpoint(..))
        ));
        let inst = Instance::with_defaults(t, d).unwrap();
        assert_eq!((inst.k_paths, inst.wavelength_capacity), (3, 1));
    }
}
