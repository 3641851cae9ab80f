//! Routing, wavelength and computing assignment: the bypass model plus the
//! option of optically adding two same-destination demands at an
//! intermediate node and carrying them on one higher-order lightpath.

use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap};

use crate::candidates::{enumerate_aggregation_candidates, CandidateSet};
use crate::error::SolveError;
use crate::matching::max_weight_matching_value;
use crate::model::{hop_count, GroupWavelengths, Instance, NodeId, Provision, Solution};
use crate::paths::HopMatrix;
use crate::search::{branch_and_bound, first_fit, SolveLimits, SolveResult};

/// Exact optimum over the enumerated candidate set.
pub fn solve_rwca_exact(instance: &Instance, limits: SolveLimits) -> SolveResult {
    let candidates = enumerate_aggregation_candidates(instance);
    solve_rwca_with_candidates(instance, &candidates, limits)
}

/// Exact optimum over a caller-supplied candidate set. With no groups this
/// is the bypass model.
pub fn solve_rwca_with_candidates(
    instance: &Instance,
    candidates: &CandidateSet,
    limits: SolveLimits,
) -> SolveResult {
    let pruned = candidates.without_dominated_groups(&instance.topology);
    let seed = heuristic_with(instance, &pruned).ok();
    branch_and_bound(instance, &pruned, limits, seed)
}

/// Greedy pairing by descending saving, then first-fit wavelengths.
pub fn solve_rwca_heuristic(instance: &Instance) -> Result<Solution, SolveError> {
    let candidates = enumerate_aggregation_candidates(instance);
    heuristic_with(instance, &candidates)
}

fn heuristic_with(instance: &Instance, candidates: &CandidateSet) -> Result<Solution, SolveError> {
    let demands = &instance.demands;
    let index_of: HashMap<_, _> = demands.iter().enumerate().map(|(i, d)| (d.id, i)).collect();
    let alone_cost = |i: usize| hop_count(&candidates.alone[i][0]);

    // Cheapest group per pair; ties keep the first enumerated.
    let mut best: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (gi, g) in candidates.groups.iter().enumerate() {
        let (Some(&a), Some(&b)) = (index_of.get(&g.demand_a), index_of.get(&g.demand_b)) else {
            continue;
        };
        let key = (a.min(b), a.max(b));
        match best.get(&key) {
            Some(&cur) if candidates.groups[cur].cost() <= g.cost() => {}
            _ => {
                best.insert(key, gi);
            }
        }
    }
    let mut savings: Vec<(i64, (usize, usize), usize)> = best
        .into_iter()
        .map(|((a, b), gi)| {
            let s = (alone_cost(a) + alone_cost(b)) as i64 - candidates.groups[gi].cost() as i64;
            (s, (a, b), gi)
        })
        .filter(|(s, _, _)| *s > 0)
        .collect();
    savings.sort_by_key(|&(s, (a, b), _)| {
        (
            Reverse(s),
            demands[a].id.min(demands[b].id),
            demands[a].id.max(demands[b].id),
        )
    });

    let mut taken = vec![false; demands.len()];
    // (is_group, links, provision template)
    let mut units: Vec<(bool, Vec<usize>, Provision)> = Vec::new();
    let links_of = |paths: &[&[NodeId]]| -> Vec<usize> {
        paths
            .iter()
            .flat_map(|p| {
                instance
                    .topology
                    .path_links(p)
                    .expect("candidate paths follow links")
            })
            .map(|l| l.0)
            .collect()
    };
    for (_, (a, b), gi) in savings {
        if taken[a] || taken[b] {
            continue;
        }
        taken[a] = true;
        taken[b] = true;
        let g = &candidates.groups[gi];
        units.push((
            true,
            links_of(&[&g.tributary_a, &g.tributary_b, &g.aggregate_path]),
            Provision::Grouped {
                candidate: g.clone(),
                wavelengths: GroupWavelengths::uniform(0),
            },
        ));
    }
    for (i, d) in demands.iter().enumerate() {
        if !taken[i] {
            let path = candidates.alone[i][0].clone();
            units.push((
                false,
                links_of(&[&path]),
                Provision::Alone {
                    demand: d.id,
                    path,
                    wavelength: 0,
                },
            ));
        }
    }
    units.sort_by_key(|(group, links, p)| {
        (
            Reverse(*group),
            Reverse(links.len()),
            p.demands().into_iter().min(),
        )
    });

    let refs: Vec<&[usize]> = units.iter().map(|(_, l, _)| l.as_slice()).collect();
    let colors = first_fit(&refs, instance.wavelength_capacity).ok_or(SolveError::Infeasible {
        capacity: instance.wavelength_capacity,
    })?;
    Ok(Solution::new(
        units
            .into_iter()
            .zip(colors)
            .map(|((_, _, p), w)| match p {
                Provision::Alone { demand, path, .. } => Provision::Alone {
                    demand,
                    path,
                    wavelength: w,
                },
                Provision::Grouped { candidate, .. } => Provision::Grouped {
                    candidate,
                    wavelengths: GroupWavelengths::uniform(w),
                },
            })
            .collect(),
    ))
}

/// Sum of shortest-path hop counts minus a maximum-weight matching of
/// same-destination pairs, each pair weighted by its best shortest-path
/// aggregation saving. Never exceeds the optimal aggregation-enabled cost,
/// whatever the candidate paths.
pub fn rwca_lower_bound(instance: &Instance) -> usize {
    let hops = HopMatrix::new(&instance.topology);
    let demands = &instance.demands;
    let total: usize = demands
        .iter()
        .map(|d| hops.get(d.source, d.destination))
        .sum();

    let mut classes: BTreeMap<NodeId, Vec<usize>> = BTreeMap::new();
    for (i, d) in demands.iter().enumerate() {
        classes.entry(d.destination).or_default().push(i);
    }
    let saving = |a: usize, b: usize| -> u64 {
        let (da, db) = (&demands[a], &demands[b]);
        let t = da.destination;
        let apart = hops.get(da.source, t) + hops.get(db.source, t);
        instance
            .topology
            .nodes()
            .filter(|&v| v != t)
            .map(|v| {
                apart.saturating_sub(
                    hops.get(da.source, v) + hops.get(db.source, v) + hops.get(v, t),
                )
            })
            .max()
            .unwrap_or(0) as u64
    };
    let matched: u64 = classes
        .values()
        .map(|m| max_weight_matching_value(m.len(), |i, j| Some(saving(m[i], m[j]))))
        .sum();
    total.saturating_sub(matched as usize)
}
