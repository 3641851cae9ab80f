//! Two-to-all traffic: two distinct source nodes, each sending one demand
//! to every other node.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rwca_core::{Demand, NodeId, Topology};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrafficSample {
    pub sources: [NodeId; 2],
    pub demands: Vec<Demand>,
}

/// Demand ids run from 0 in (source, destination) order: all demands of
/// the first source, then the second. Needs at least two nodes.
pub fn generate_two_to_all(topology: &Topology, seed: u64) -> TrafficSample {
    let n = topology.node_count();
    assert!(n >= 2, "two-to-all traffic needs at least two nodes");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picked = sample(&mut rng, n, 2);
    let sources = [NodeId(picked.index(0)), NodeId(picked.index(1))];
    let mut demands = Vec::with_capacity(2 * (n - 1));
    for s in sources {
        for t in topology.nodes().filter(|&t| t != s) {
            let id = demands.len() as u32;
            demands.push(Demand::new(id, s, t).expect("source differs from destination"));
        }
    }
    TrafficSample { sources, demands }
}
