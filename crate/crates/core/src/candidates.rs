//! Candidate generation for the path-based models.

use std::collections::HashMap;

use crate::model::{hop_count, is_simple, AggregationCandidate, Instance, NodeId, Path, Topology};
use crate::paths::k_shortest_paths;

/// Everything a solver may choose from: per-demand routes for carrying a
/// demand alone, and aggregation groups over demand pairs.
#[derive(Debug, Clone, Default)]
pub struct CandidateSet {
    /// Indexed like `Instance::demands`.
    pub alone: Vec<Vec<Path>>,
    pub groups: Vec<AggregationCandidate>,
}

impl CandidateSet {
    /// Alone routes only: the optical-bypass model.
    pub fn bypass(instance: &Instance) -> Self {
        let mut cache = PathCache::new(&instance.topology, instance.k_paths);
        let alone = instance
            .demands
            .iter()
            .map(|d| cache.get(d.source, d.destination).to_vec())
            .collect();
        Self {
            alone,
            groups: Vec::new(),
        }
    }

    /// Drops groups whose link set contains the link set of an earlier or
    /// cheaper group for the same pair; such a group is never needed for an
    /// optimum.
    pub fn without_dominated_groups(&self, topology: &Topology) -> Self {
        let mut keep = Vec::with_capacity(self.groups.len());
        let mut by_pair: HashMap<_, Vec<(usize, Vec<usize>)>> = HashMap::new();
        for (i, g) in self.groups.iter().enumerate() {
            let mut links: Vec<usize> = [&g.tributary_a, &g.tributary_b, &g.aggregate_path]
                .iter()
                .flat_map(|p| topology.path_links(p).unwrap_or_default())
                .map(|l| l.0)
                .collect();
            links.sort_unstable();
            by_pair
                .entry((g.demand_a, g.demand_b))
                .or_default()
                .push((i, links));
        }
        for family in by_pair.values() {
            for (i, links) in family {
                let dominated = family.iter().any(|(j, other)| {
                    j != i && is_subset(other, links) && (other.len() < links.len() || j < i)
                });
                if !dominated {
                    keep.push(*i);
                }
            }
        }
        keep.sort_unstable();
        Self {
            alone: self.alone.clone(),
            groups: keep.into_iter().map(|i| self.groups[i].clone()).collect(),
        }
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|l| big.binary_search(l).is_ok())
}

/// Memoised `k_shortest_paths`.
pub(crate) struct PathCache<'a> {
    topology: &'a Topology,
    k: usize,
    memo: HashMap<(NodeId, NodeId), Vec<Path>>,
}

impl<'a> PathCache<'a> {
    pub(crate) fn new(topology: &'a Topology, k: usize) -> Self {
        Self {
            topology,
            k,
            memo: HashMap::new(),
        }
    }

    pub(crate) fn get(&mut self, s: NodeId, t: NodeId) -> &[Path] {
        let (topology, k) = (self.topology, self.k);
        self.memo
            .entry((s, t))
            .or_insert_with(|| k_shortest_paths(topology, s, t, k))
    }
}

/// Alone routes for every demand plus every valid aggregation group.
///
/// For each unordered pair of demands with the same destination `t`
/// (listed in demand order) and each node `v != t`, tributaries come from
/// the k shortest paths source→`v` and the aggregate from the k shortest
/// paths `v`→`t`. Groups whose tributaries share a link, or whose tributary
/// and aggregate together revisit a node, are dropped.
pub fn enumerate_aggregation_candidates(instance: &Instance) -> CandidateSet {
    let topology = &instance.topology;
    let mut cache = PathCache::new(topology, instance.k_paths);
    let alone: Vec<Vec<Path>> = instance
        .demands
        .iter()
        .map(|d| cache.get(d.source, d.destination).to_vec())
        .collect();

    let mut groups = Vec::new();
    for (i, a) in instance.demands.iter().enumerate() {
        for b in &instance.demands[i + 1..] {
            if a.destination != b.destination {
                continue;
            }
            let t = a.destination;
            for v in topology.nodes().filter(|&v| v != t) {
                let trib_a = cache.get(a.source, v).to_vec();
                let trib_b = cache.get(b.source, v).to_vec();
                let aggs = cache.get(v, t).to_vec();
                for agg in &aggs {
                    if hop_count(agg) == 0 {
                        continue;
                    }
                    let fits = |trib: &Path| {
                        let mut walk = trib.clone();
                        walk.extend_from_slice(&agg[1..]);
                        is_simple(&walk)
                    };
                    let trib_b_ok: Vec<&Path> = trib_b.iter().filter(|p| fits(p)).collect();
                    for ta in trib_a.iter().filter(|p| fits(p)) {
                        let la = topology
                            .path_links(ta)
                            .expect("k-shortest paths follow links");
                        for tb in &trib_b_ok {
                            let lb = topology
                                .path_links(tb)
                                .expect("k-shortest paths follow links");
                            if la.iter().any(|l| lb.contains(l)) {
                                continue;
                            }
                            groups.push(AggregationCandidate {
                                demand_a: a.id,
                                demand_b: b.id,
                                agg_node: v,
                                tributary_a: ta.clone(),
                                tributary_b: (*tb).clone(),
                                aggregate_path: agg.clone(),
                            });
                        }
                    }
                }
            }
        }
    }
    CandidateSet { alone, groups }
}
