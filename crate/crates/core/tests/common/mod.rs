#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rwca_core::{Demand, Instance, NodeId, Topology};

pub fn star_topology() -> Topology {
    Topology::new(
        "star",
        &["A", "B", "X", "C"],
        &[("A", "X"), ("B", "X"), ("X", "C")],
    )
    .unwrap()
}

pub fn instance(topology: Topology, demands: &[(&str, &str)], k: usize, w: u32) -> Instance {
    let ds = demands
        .iter()
        .enumerate()
        .map(|(i, (s, t))| {
            Demand::new(
                i as u32,
                topology.node_id(s).unwrap(),
                topology.node_id(t).unwrap(),
            )
            .unwrap()
        })
        .collect();
    Instance::new(topology, ds, k, w).unwrap()
}

/// Demands A->C and B->C on the four-node example graph.
pub fn star(w: u32) -> Instance {
    instance(star_topology(), &[("A", "C"), ("B", "C")], 3, w)
}

pub fn path_graph(w: u32, k: usize) -> Instance {
    let t = Topology::new("path", &["A", "B", "C"], &[("A", "B"), ("B", "C")]).unwrap();
    instance(t, &[("A", "C"), ("B", "C")], k, w)
}

pub const NSFNET_NODES: [&str; 14] = [
    "WA", "CA1", "CA2", "UT", "CO", "TX", "NE", "IL", "PA", "GA", "MI", "NY", "NJ", "MD",
];

pub const NSFNET_LINKS: [(&str, &str); 21] = [
    ("WA", "CA1"),
    ("WA", "CA2"),
    ("WA", "IL"),
    ("CA1", "CA2"),
    ("CA1", "UT"),
    ("CA2", "TX"),
    ("UT", "CO"),
    ("UT", "MI"),
    ("CO", "TX"),
    ("CO", "NE"),
    ("TX", "GA"),
    ("TX", "MD"),
    ("NE", "IL"),
    ("IL", "PA"),
    ("PA", "GA"),
    ("PA", "NY"),
    ("PA", "NJ"),
    ("MI", "NY"),
    ("MI", "NJ"),
    ("NY", "MD"),
    ("NJ", "MD"),
];

pub fn nsfnet() -> Topology {
    Topology::new("nsfnet", &NSFNET_NODES, &NSFNET_LINKS).unwrap()
}

/// Connected random graph: a random spanning tree plus extra links.
pub fn random_topology(rng: &mut ChaCha8Rng, n: usize) -> Topology {
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut links: Vec<(NodeId, NodeId)> = Vec::new();
    for i in 1..n {
        links.push((NodeId(rng.gen_range(0..i)), NodeId(i)));
    }
    for a in 0..n {
        for b in (a + 1)..n {
            let exists = links
                .iter()
                .any(|&(x, y)| (x.0, y.0) == (a, b) || (x.0, y.0) == (b, a));
            if !exists && rng.gen_bool(0.35) {
                links.push((NodeId(a), NodeId(b)));
            }
        }
    }
    Topology::from_indices("random", names, &links).unwrap()
}

/// Tiny instance: <= 5 nodes, <= 4 demands biased towards shared
/// destinations, W <= 4, k large enough to list every simple path.
pub fn random_tiny_instance(seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(3..=5);
    let topology = random_topology(&mut rng, n);
    let hubs = [rng.gen_range(0..n), rng.gen_range(0..n)];
    let count = rng.gen_range(1..=4);
    let mut demands = Vec::new();
    for id in 0..count {
        let dst = if rng.gen_bool(0.75) {
            hubs[rng.gen_range(0..2)]
        } else {
            rng.gen_range(0..n)
        };
        let mut src = rng.gen_range(0..n);
        while src == dst {
            src = rng.gen_range(0..n);
        }
        demands.push(Demand::new(id, NodeId(src), NodeId(dst)).unwrap());
    }
    let w = rng.gen_range(1..=4);
    Instance::new(topology, demands, 64, w).unwrap()
}
