//! Exhaustive optimiser for tiny instances.
//!
//! Shares nothing with the solvers except the model types and the verifier:
//! it walks every simple path, every pairing of same-destination demands,
//! every aggregation node and every wavelength, and keeps the cheapest
//! assignment the verifier accepts.

use std::collections::HashSet;

use crate::error::OracleError;
use crate::model::{
    AggregationCandidate, GroupWavelengths, Instance, LinkId, NodeId, Path, Provision, Solution,
    Topology, Wavelength,
};
use crate::search::{SolveResult, SolveStatus};
use crate::verifier::verify_solution;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleCaps {
    pub max_nodes: usize,
    pub max_demands: usize,
    pub max_wavelengths: u32,
}

impl Default for OracleCaps {
    fn default() -> Self {
        Self {
            max_nodes: 6,
            max_demands: 4,
            max_wavelengths: 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    Bypass,
    Rwca,
}

/// Every simple path from `s` to `t`, by plain depth-first search.
pub fn all_simple_paths(topology: &Topology, s: NodeId, t: NodeId) -> Vec<Path> {
    fn walk(topology: &Topology, t: NodeId, path: &mut Path, out: &mut Vec<Path>) {
        let u = *path.last().unwrap();
        if u == t {
            out.push(path.clone());
            return;
        }
        for &(v, _) in topology.neighbors(u) {
            if !path.contains(&v) {
                path.push(v);
                walk(topology, t, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(topology, t, &mut vec![s], &mut out);
    out
}

/// A routing option with its occupied links.
#[derive(Clone)]
struct Choice {
    provision: Provision,
    links: Vec<LinkId>,
}

fn links(topology: &Topology, paths: &[&Path]) -> Vec<LinkId> {
    paths
        .iter()
        .flat_map(|p| {
            p.windows(2)
                .map(|w| topology.link_between(w[0], w[1]).unwrap())
        })
        .collect()
}

fn group_choices(instance: &Instance, a: usize, b: usize) -> Vec<Choice> {
    let topo = &instance.topology;
    let (da, db) = (&instance.demands[a], &instance.demands[b]);
    let t = da.destination;
    let mut out = Vec::new();
    for v in topo.nodes().filter(|&v| v != t) {
        let tribs = |s: NodeId| {
            if s == v {
                vec![vec![v]]
            } else {
                all_simple_paths(topo, s, v)
            }
        };
        let (ta, tb) = (tribs(da.source), tribs(db.source));
        for agg in all_simple_paths(topo, v, t) {
            for pa in &ta {
                if pa[..pa.len() - 1].iter().any(|n| agg.contains(n)) {
                    continue;
                }
                let la = links(topo, &[pa]);
                for pb in &tb {
                    if pb[..pb.len() - 1].iter().any(|n| agg.contains(n)) {
                        continue;
                    }
                    let lb = links(topo, &[pb]);
                    if la.iter().any(|l| lb.contains(l)) {
                        continue;
                    }
                    out.push(Choice {
                        provision: Provision::Grouped {
                            candidate: AggregationCandidate {
                                demand_a: da.id,
                                demand_b: db.id,
                                agg_node: v,
                                tributary_a: pa.clone(),
                                tributary_b: pb.clone(),
                                aggregate_path: agg.clone(),
                            },
                            wavelengths: GroupWavelengths::uniform(0),
                        },
                        links: links(topo, &[pa, pb, &agg]),
                    });
                }
            }
        }
    }
    out.sort_by_key(|c| c.links.len());
    out
}

struct Search<'a> {
    instance: &'a Instance,
    mode: OracleMode,
    alone: Vec<Vec<Choice>>,
    pairs: Vec<Vec<Option<Vec<Choice>>>>,
    done: Vec<bool>,
    picked: Vec<Provision>,
    occupied: HashSet<(LinkId, Wavelength)>,
    best: Option<(usize, Solution)>,
    leaves: u64,
}

impl Search<'_> {
    fn run(&mut self, cost: usize) {
        if self.best.as_ref().is_some_and(|(b, _)| cost >= *b) {
            return;
        }
        let Some(i) = (0..self.done.len()).find(|&i| !self.done[i]) else {
            self.leaves += 1;
            let s = Solution::new(self.picked.clone());
            if let Ok(m) = verify_solution(self.instance, &s) {
                assert_eq!(m.wavelength_links, cost);
                self.best = Some((cost, s));
            }
            return;
        };
        self.done[i] = true;
        let alone = self.alone[i].clone();
        for c in &alone {
            self.place(c, cost);
        }
        if self.mode == OracleMode::Rwca {
            for j in (i + 1)..self.done.len() {
                if self.done[j] {
                    continue;
                }
                if let Some(choices) = self.pairs[i][j].clone() {
                    self.done[j] = true;
                    for c in &choices {
                        self.place(c, cost);
                    }
                    self.done[j] = false;
                }
            }
        }
        self.done[i] = false;
    }

    fn place(&mut self, c: &Choice, cost: usize) {
        for w in 0..self.instance.wavelength_capacity {
            if c.links.iter().any(|l| self.occupied.contains(&(*l, w))) {
                continue;
            }
            for l in &c.links {
                self.occupied.insert((*l, w));
            }
            let p = match &c.provision {
                Provision::Alone { demand, path, .. } => Provision::Alone {
                    demand: *demand,
                    path: path.clone(),
                    wavelength: w,
                },
                Provision::Grouped { candidate, .. } => Provision::Grouped {
                    candidate: candidate.clone(),
                    wavelengths: GroupWavelengths::uniform(w),
                },
            };
            self.picked.push(p);
            self.run(cost + c.links.len());
            self.picked.pop();
            for l in &c.links {
                self.occupied.remove(&(*l, w));
            }
        }
    }
}

/// True minimum wavelength-links over all simple paths; `k_paths` is ignored.
pub fn brute_force_optimum(
    instance: &Instance,
    caps: OracleCaps,
    mode: OracleMode,
) -> Result<SolveResult, OracleError> {
    if instance.topology.node_count() > caps.max_nodes {
        return Err(OracleError::CapsExceeded(format!(
            "{} nodes > {}",
            instance.topology.node_count(),
            caps.max_nodes
        )));
    }
    if instance.demands.len() > caps.max_demands {
        return Err(OracleError::CapsExceeded(format!(
            "{} demands > {}",
            instance.demands.len(),
            caps.max_demands
        )));
    }
    if instance.wavelength_capacity > caps.max_wavelengths {
        return Err(OracleError::CapsExceeded(format!(
            "{} wavelengths > {}",
            instance.wavelength_capacity, caps.max_wavelengths
        )));
    }
    let topo = &instance.topology;
    let n = instance.demands.len();
    let alone = instance
        .demands
        .iter()
        .map(|d| {
            let mut v: Vec<Choice> = all_simple_paths(topo, d.source, d.destination)
                .into_iter()
                .map(|p| Choice {
                    links: links(topo, &[&p]),
                    provision: Provision::Alone {
                        demand: d.id,
                        path: p,
                        wavelength: 0,
                    },
                })
                .collect();
            v.sort_by_key(|c| c.links.len());
            v
        })
        .collect();
    let pairs = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let same = instance.demands[i].destination == instance.demands[j].destination;
                    (mode == OracleMode::Rwca && i < j && same)
                        .then(|| group_choices(instance, i, j))
                })
                .collect()
        })
        .collect();
    let mut search = Search {
        instance,
        mode,
        alone,
        pairs,
        done: vec![false; n],
        picked: Vec::new(),
        occupied: HashSet::new(),
        best: None,
        leaves: 0,
    };
    search.run(0);
    Ok(match search.best {
        Some((cost, mut s)) => {
            s.meta.optimal = true;
            s.meta.lower_bound = Some(cost);
            SolveResult {
                solution: Some(s),
                status: SolveStatus::Optimal,
                lower_bound: cost,
                explored_nodes: search.leaves,
            }
        }
        None => SolveResult {
            solution: None,
            status: SolveStatus::Infeasible,
            lower_bound: 0,
            explored_nodes: search.leaves,
        },
    })
}

/// Every complete assignment of the instance in the given mode, without
/// any pruning. Only meant for checking the verifier on very small inputs.
pub fn enumerate_assignments(instance: &Instance, mode: OracleMode) -> Vec<Solution> {
    fn rec(
        instance: &Instance,
        mode: OracleMode,
        done: &mut Vec<bool>,
        picked: &mut Vec<Provision>,
        out: &mut Vec<Solution>,
    ) {
        let topo = &instance.topology;
        let Some(i) = (0..done.len()).find(|&i| !done[i]) else {
            out.push(Solution::new(picked.clone()));
            return;
        };
        let d = &instance.demands[i];
        done[i] = true;
        for w in 0..instance.wavelength_capacity {
            for path in all_simple_paths(topo, d.source, d.destination) {
                picked.push(Provision::Alone {
                    demand: d.id,
                    path,
                    wavelength: w,
                });
                rec(instance, mode, done, picked, out);
                picked.pop();
            }
        }
        if mode == OracleMode::Rwca {
            for j in (i + 1)..done.len() {
                let e = &instance.demands[j];
                if done[j] {
                    continue;
                }
                done[j] = true;
                // Every structurally possible group, valid or not.
                for v in topo.nodes() {
                    let tribs = |s: NodeId| {
                        if s == v {
                            vec![vec![v]]
                        } else {
                            all_simple_paths(topo, s, v)
                        }
                    };
                    for agg in all_simple_paths(topo, v, d.destination) {
                        for ta in tribs(d.source) {
                            for tb in tribs(e.source) {
                                for (wa, wb, wg) in wavelength_triples(instance.wavelength_capacity)
                                {
                                    picked.push(Provision::Grouped {
                                        candidate: AggregationCandidate {
                                            demand_a: d.id,
                                            demand_b: e.id,
                                            agg_node: v,
                                            tributary_a: ta.clone(),
                                            tributary_b: tb.clone(),
                                            aggregate_path: agg.clone(),
                                        },
                                        wavelengths: GroupWavelengths {
                                            tributary_a: wa,
                                            tributary_b: wb,
                                            aggregate: wg,
                                        },
                                    });
                                    rec(instance, mode, done, picked, out);
                                    picked.pop();
                                }
                            }
                        }
                    }
                }
                done[j] = false;
            }
        }
        done[i] = false;
    }
    let mut out = Vec::new();
    rec(
        instance,
        mode,
        &mut vec![false; instance.demands.len()],
        &mut Vec::new(),
        &mut out,
    );
    out
}

fn wavelength_triples(capacity: u32) -> Vec<(Wavelength, Wavelength, Wavelength)> {
    let mut v = Vec::new();
    for a in 0..capacity {
        for b in 0..capacity {
            for g in 0..capacity {
                v.push((a, b, g));
            }
        }
    }
    v
}
