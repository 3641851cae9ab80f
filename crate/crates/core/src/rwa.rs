//! Optical-bypass baseline: every demand rides its own end-to-end lightpath.

use std::cmp::Reverse;

use crate::candidates::CandidateSet;
use crate::error::SolveError;
use crate::model::{hop_count, Instance, Provision, Solution};
use crate::paths::HopMatrix;
use crate::search::{branch_and_bound, first_fit, SolveLimits, SolveResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FirstFitOrder {
    #[default]
    ById,
    ByLongestPath,
}

/// Minimum wavelength-link routing and wavelength assignment over the k
/// candidate paths of each demand, seeded with first fit.
pub fn solve_rwa_exact(instance: &Instance, limits: SolveLimits) -> SolveResult {
    let candidates = CandidateSet::bypass(instance);
    let seed = solve_rwa_first_fit(instance, FirstFitOrder::ById).ok();
    branch_and_bound(instance, &candidates, limits, seed)
}

/// Sum of shortest-path hop counts. No bypass routing can do better.
pub fn rwa_lower_bound(instance: &Instance) -> usize {
    let hops = HopMatrix::new(&instance.topology);
    instance
        .demands
        .iter()
        .map(|d| hops.get(d.source, d.destination))
        .sum()
}

/// Each demand on its first candidate path, lowest clash-free wavelength,
/// demands visited in the requested order.
pub fn solve_rwa_first_fit(
    instance: &Instance,
    ordering: FirstFitOrder,
) -> Result<Solution, SolveError> {
    let candidates = CandidateSet::bypass(instance);
    let mut order: Vec<usize> = (0..instance.demands.len()).collect();
    match ordering {
        FirstFitOrder::ById => order.sort_by_key(|&i| instance.demands[i].id),
        FirstFitOrder::ByLongestPath => order.sort_by_key(|&i| {
            (
                Reverse(hop_count(&candidates.alone[i][0])),
                instance.demands[i].id,
            )
        }),
    }
    let links: Vec<Vec<usize>> = order
        .iter()
        .map(|&i| {
            instance
                .topology
                .path_links(&candidates.alone[i][0])
                .expect("candidate paths follow links")
                .into_iter()
                .map(|l| l.0)
                .collect()
        })
        .collect();
    let refs: Vec<&[usize]> = links.iter().map(Vec::as_slice).collect();
    let colors = first_fit(&refs, instance.wavelength_capacity).ok_or(SolveError::Infeasible {
        capacity: instance.wavelength_capacity,
    })?;
    Ok(Solution::new(
        order
            .iter()
            .zip(colors)
            .map(|(&i, w)| Provision::Alone {
                demand: instance.demands[i].id,
                path: candidates.alone[i][0].clone(),
                wavelength: w,
            })
            .collect(),
    ))
}
