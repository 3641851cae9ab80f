//! Hop-count shortest paths and loopless k-shortest paths.
//!
//! Paths are ordered by hop count, then lexicographically by node index, so
//! every query has a single well-defined answer.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::model::{LinkId, NodeId, Path, Topology};

/// Hop distances from `from` to every node, skipping banned nodes and links.
fn bfs(
    topology: &Topology,
    from: NodeId,
    banned_nodes: &HashSet<NodeId>,
    banned_links: &HashSet<LinkId>,
) -> Vec<Option<usize>> {
    let mut dist = vec![None; topology.node_count()];
    if banned_nodes.contains(&from) {
        return dist;
    }
    dist[from.0] = Some(0);
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u.0].unwrap();
        for &(v, l) in topology.neighbors(u) {
            if dist[v.0].is_none() && !banned_nodes.contains(&v) && !banned_links.contains(&l) {
                dist[v.0] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Hop distance from `from` to every node.
pub fn hop_distances(topology: &Topology, from: NodeId) -> Vec<usize> {
    bfs(topology, from, &HashSet::new(), &HashSet::new())
        .into_iter()
        .map(|d| d.expect("topology is connected"))
        .collect()
}

/// All-pairs hop distances.
#[derive(Debug, Clone)]
pub struct HopMatrix {
    dist: Vec<Vec<usize>>,
}

impl HopMatrix {
    pub fn new(topology: &Topology) -> Self {
        Self {
            dist: topology
                .nodes()
                .map(|n| hop_distances(topology, n))
                .collect(),
        }
    }

    pub fn get(&self, a: NodeId, b: NodeId) -> usize {
        self.dist[a.0][b.0]
    }
}

/// Smallest (hops, node sequence) path from `s` to `t` avoiding the banned
/// elements: BFS distances to `t`, then a greedy walk taking the
/// lowest-index neighbour that stays on a shortest path.
fn best_path(
    topology: &Topology,
    s: NodeId,
    t: NodeId,
    banned_nodes: &HashSet<NodeId>,
    banned_links: &HashSet<LinkId>,
) -> Option<Path> {
    let to_t = bfs(topology, t, banned_nodes, banned_links);
    let mut remaining = to_t[s.0]?;
    let mut path = vec![s];
    let mut cur = s;
    while remaining > 0 {
        let (next, _) = topology
            .neighbors(cur)
            .iter()
            .find(|&&(v, l)| to_t[v.0] == Some(remaining - 1) && !banned_links.contains(&l))
            .copied()?;
        path.push(next);
        cur = next;
        remaining -= 1;
    }
    Some(path)
}

/// Up to `k` distinct simple paths from `s` to `t` (Yen's algorithm), in
/// nondecreasing hop count with lexicographic tie-break. Returns `[[s]]`
/// when `s == t`.
pub fn k_shortest_paths(topology: &Topology, s: NodeId, t: NodeId, k: usize) -> Vec<Path> {
    if k == 0 {
        return Vec::new();
    }
    if s == t {
        return vec![vec![s]];
    }
    let none_n = HashSet::new();
    let none_l = HashSet::new();
    let Some(first) = best_path(topology, s, t, &none_n, &none_l) else {
        return Vec::new();
    };
    let mut accepted: Vec<Path> = vec![first];
    let mut candidates: BTreeSet<(usize, Path)> = BTreeSet::new();

    while accepted.len() < k {
        let prev = accepted.last().unwrap().clone();
        for j in 0..prev.len() - 1 {
            let spur = prev[j];
            let root = &prev[..=j];
            let mut banned_links = HashSet::new();
            for p in &accepted {
                if p.len() > j + 1 && &p[..=j] == root {
                    if let Some(l) = topology.link_between(p[j], p[j + 1]) {
                        banned_links.insert(l);
                    }
                }
            }
            let banned_nodes: HashSet<NodeId> = root[..j].iter().copied().collect();
            if let Some(tail) = best_path(topology, spur, t, &banned_nodes, &banned_links) {
                let mut full = root[..j].to_vec();
                full.extend(tail);
                if !accepted.contains(&full) {
                    candidates.insert((full.len(), full));
                }
            }
        }
        match candidates.pop_first() {
            Some((_, p)) => accepted.push(p),
            None => break,
        }
    }
    accepted
}

/// Shortest-path hop count between two nodes.
pub fn shortest_hops(topology: &Topology, s: NodeId, t: NodeId) -> usize {
    hop_distances(topology, s)[t.0]
}
