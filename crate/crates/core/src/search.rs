//! Depth-first branch-and-bound over a path-based assignment model.
//!
//! The model has one binary variable per (alone route, wavelength) and per
//! (aggregation group, wavelength), a cover constraint per demand and a
//! capacity of one per (link, wavelength). The search branches on routing
//! choices only and checks that each complete routing fits the wavelength
//! grid by colouring the conflict graph of its lightpath units. Capacity is
//! enforced during the search through per-link load (at most `W` units per
//! link).
//!
//! Bound: demands are searched destination by destination. The unrouted
//! demands of each destination contribute the optimum of their relaxation
//! that ignores link capacity: a minimum-cost cover by alone routes and
//! pairs, solved exactly by a subset DP for up to [`EXACT_CLASS_LIMIT`]
//! demands and replaced by a per-demand half-pair bound beyond that.

use std::cmp::Reverse;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::candidates::CandidateSet;
use crate::error::SolveError;
use crate::model::{
    hop_count, GroupWavelengths, Instance, Provision, Solution, SolutionMeta, Wavelength,
};

/// Largest number of same-destination demands bounded by the exact subset DP.
pub const EXACT_CLASS_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveLimits {
    pub time_budget: Duration,
    pub node_budget: u64,
}

impl SolveLimits {
    pub fn new(time_budget: Duration, node_budget: u64) -> Result<Self, SolveError> {
        if time_budget.is_zero() {
            return Err(SolveError::InvalidLimits("time budget must be positive"));
        }
        if node_budget == 0 {
            return Err(SolveError::InvalidLimits("node budget must be positive"));
        }
        Ok(Self {
            time_budget,
            node_budget,
        })
    }
}

impl Default for SolveLimits {
    fn default() -> Self {
        Self {
            time_budget: Duration::from_secs(300),
            node_budget: 50_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SolveStatus {
    Optimal,
    Feasible,
    Infeasible,
    LimitExceeded,
}

impl SolveStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveStatus::Optimal => "Optimal",
            SolveStatus::Feasible => "Feasible",
            SolveStatus::Infeasible => "Infeasible",
            SolveStatus::LimitExceeded => "LimitExceeded",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub solution: Option<Solution>,
    pub status: SolveStatus,
    /// Proven lower bound on the optimal wavelength-link count.
    pub lower_bound: usize,
    pub explored_nodes: u64,
}

impl SolveResult {
    pub fn cost(&self) -> Option<usize> {
        self.solution.as_ref().map(Solution::cost)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum UnitKind {
    Alone(usize),
    Group(usize),
}

/// One lightpath unit: a demand alone on a route, or a group.
#[derive(Debug, Clone)]
struct Unit {
    kind: UnitKind,
    partner: Option<usize>,
    links: Vec<usize>,
    cost: usize,
    lightpaths: usize,
}

enum ClassBound {
    /// Half-units, indexed by a bitmask over the class members.
    Exact(Vec<u64>),
    /// Per-member half-units.
    PerDemand(Vec<u64>),
}

struct Class {
    members: Vec<usize>,
    bound: ClassBound,
}

impl Class {
    fn remaining_half(&self, covered: &[bool]) -> u64 {
        match &self.bound {
            ClassBound::Exact(table) => {
                let mask = self
                    .members
                    .iter()
                    .enumerate()
                    .filter(|(_, d)| !covered[**d])
                    .fold(0usize, |m, (i, _)| m | (1 << i));
                table[mask]
            }
            ClassBound::PerDemand(lb) => self
                .members
                .iter()
                .zip(lb)
                .filter(|(d, _)| !covered[**d])
                .map(|(_, v)| v)
                .sum(),
        }
    }
}

type Incumbent = (Vec<(usize, usize)>, Vec<Wavelength>);

struct Engine<'a> {
    instance: &'a Instance,
    candidates: &'a CandidateSet,
    options: Vec<Vec<Unit>>,
    order: Vec<usize>,
    class_of: Vec<usize>,
    classes: Vec<Class>,
    /// `suffix_half[c]`: bound of all classes from `c` on with nothing routed.
    suffix_half: Vec<u64>,
    covered: Vec<bool>,
    load: Vec<u32>,
    chosen: Vec<(usize, usize)>,
    best_cost: usize,
    /// Chosen (demand, option) pairs and their unit colours.
    best: Option<Incumbent>,
    explored: u64,
    started: Instant,
    limits: SolveLimits,
    aborted: bool,
}

fn ceil_half(half: u64) -> usize {
    half.div_ceil(2) as usize
}

impl<'a> Engine<'a> {
    fn new(instance: &'a Instance, candidates: &'a CandidateSet, limits: SolveLimits) -> Self {
        let topology = &instance.topology;
        let n = instance.demands.len();
        let index_of: HashMap<_, _> = instance
            .demands
            .iter()
            .enumerate()
            .map(|(i, d)| (d.id, i))
            .collect();
        let links_of = |paths: &[&[crate::model::NodeId]]| -> Vec<usize> {
            let mut out: Vec<usize> = paths
                .iter()
                .flat_map(|p| {
                    topology
                        .path_links(p)
                        .expect("candidate paths follow links")
                })
                .map(|l| l.0)
                .collect();
            out.sort_unstable();
            out
        };

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (instance.demands[i].destination, instance.demands[i].id));
        let mut rank = vec![0; n];
        for (r, &d) in order.iter().enumerate() {
            rank[d] = r;
        }

        let mut options: Vec<Vec<Unit>> = vec![Vec::new(); n];
        let mut alone_min = vec![usize::MAX; n];
        for (d, paths) in candidates.alone.iter().enumerate() {
            for (pi, p) in paths.iter().enumerate() {
                let cost = hop_count(p);
                alone_min[d] = alone_min[d].min(cost);
                options[d].push(Unit {
                    kind: UnitKind::Alone(pi),
                    partner: None,
                    links: links_of(&[p]),
                    cost,
                    lightpaths: 1,
                });
            }
        }
        let mut pair_min: HashMap<(usize, usize), usize> = HashMap::new();
        for (gi, g) in candidates.groups.iter().enumerate() {
            let (Some(&a), Some(&b)) = (index_of.get(&g.demand_a), index_of.get(&g.demand_b))
            else {
                continue;
            };
            if a == b || instance.demands[a].destination != instance.demands[b].destination {
                continue;
            }
            let (lead, partner) = if rank[a] < rank[b] { (a, b) } else { (b, a) };
            let cost = g.cost();
            let e = pair_min.entry((a.min(b), a.max(b))).or_insert(usize::MAX);
            *e = (*e).min(cost);
            options[lead].push(Unit {
                kind: UnitKind::Group(gi),
                partner: Some(partner),
                links: links_of(&[&g.tributary_a, &g.tributary_b, &g.aggregate_path]),
                cost,
                lightpaths: 1
                    + usize::from(g.tributary_a.len() > 1)
                    + usize::from(g.tributary_b.len() > 1),
            });
        }

        let mut classes: Vec<Class> = Vec::new();
        let mut class_of = vec![0; n];
        for &d in &order {
            let dest = instance.demands[d].destination;
            match classes.last_mut() {
                Some(c) if instance.demands[c.members[0]].destination == dest => c.members.push(d),
                _ => classes.push(Class {
                    members: vec![d],
                    bound: ClassBound::PerDemand(Vec::new()),
                }),
            }
            class_of[d] = classes.len() - 1;
        }
        let pair = |a: usize, b: usize| pair_min.get(&(a.min(b), a.max(b))).copied();
        for c in &mut classes {
            let m = &c.members;
            if m.len() <= EXACT_CLASS_LIMIT {
                let mut table = vec![0u64; 1 << m.len()];
                for mask in 1usize..table.len() {
                    let i = mask.trailing_zeros() as usize;
                    let rest = mask & !(1 << i);
                    let mut best = 2 * alone_min[m[i]] as u64 + table[rest];
                    for j in (i + 1)..m.len() {
                        if rest & (1 << j) != 0 {
                            if let Some(g) = pair(m[i], m[j]) {
                                best = best.min(2 * g as u64 + table[rest & !(1 << j)]);
                            }
                        }
                    }
                    table[mask] = best;
                }
                c.bound = ClassBound::Exact(table);
            } else {
                let lb = m
                    .iter()
                    .map(|&i| {
                        let grouped = m
                            .iter()
                            .filter(|&&j| j != i)
                            .filter_map(|&j| pair(i, j))
                            .min()
                            .unwrap_or(usize::MAX);
                        (2 * alone_min[i]).min(grouped) as u64
                    })
                    .collect();
                c.bound = ClassBound::PerDemand(lb);
            }
        }
        let none = vec![false; n];
        let mut suffix_half = vec![0u64; classes.len() + 1];
        for c in (0..classes.len()).rev() {
            suffix_half[c] = suffix_half[c + 1] + classes[c].remaining_half(&none);
        }

        Self {
            instance,
            candidates,
            options,
            order,
            class_of,
            classes,
            suffix_half,
            covered: vec![false; n],
            load: vec![0; topology.link_count()],
            chosen: Vec::new(),
            best_cost: usize::MAX,
            best: None,
            explored: 0,
            started: Instant::now(),
            limits,
            aborted: false,
        }
    }

    fn root_bound(&self) -> usize {
        ceil_half(self.suffix_half[0])
    }

    fn out_of_budget(&mut self) -> bool {
        if self.explored >= self.limits.node_budget
            || (self.explored.is_multiple_of(256)
                && self.started.elapsed() >= self.limits.time_budget)
        {
            self.aborted = true;
        }
        self.aborted
    }

    fn dfs(&mut self, mut r: usize, cost: usize) {
        while r < self.order.len() && self.covered[self.order[r]] {
            r += 1;
        }
        if r == self.order.len() {
            self.leaf(cost);
            return;
        }
        self.explored += 1;
        if self.out_of_budget() {
            return;
        }
        let d = self.order[r];
        let c = self.class_of[d];
        let capacity = self.instance.wavelength_capacity;

        let mut kids: Vec<(u64, usize)> = Vec::new();
        for (oi, unit) in self.options[d].iter().enumerate() {
            if unit.partner.is_some_and(|p| self.covered[p]) {
                continue;
            }
            if unit.links.iter().any(|&l| self.load[l] >= capacity) {
                continue;
            }
            self.covered[d] = true;
            if let Some(p) = unit.partner {
                self.covered[p] = true;
            }
            let rest = self.classes[c].remaining_half(&self.covered) + self.suffix_half[c + 1];
            self.covered[d] = false;
            if let Some(p) = unit.partner {
                self.covered[p] = false;
            }
            let half = 2 * (cost + unit.cost) as u64 + rest;
            if ceil_half(half) < self.best_cost {
                kids.push((half, oi));
            }
        }
        kids.sort_unstable();

        for (half, oi) in kids {
            if ceil_half(half) >= self.best_cost {
                continue;
            }
            let (partner, unit_cost) = {
                let u = &self.options[d][oi];
                (u.partner, u.cost)
            };
            self.apply(d, oi, partner, true);
            self.dfs(r + 1, cost + unit_cost);
            self.apply(d, oi, partner, false);
            if self.aborted {
                return;
            }
        }
    }

    fn apply(&mut self, d: usize, oi: usize, partner: Option<usize>, on: bool) {
        self.covered[d] = on;
        if let Some(p) = partner {
            self.covered[p] = on;
        }
        for &l in &self.options[d][oi].links {
            if on {
                self.load[l] += 1;
            } else {
                self.load[l] -= 1;
            }
        }
        if on {
            self.chosen.push((d, oi));
        } else {
            self.chosen.pop();
        }
    }

    fn leaf(&mut self, cost: usize) {
        if cost >= self.best_cost {
            return;
        }
        let units: Vec<(&[usize], usize)> = self
            .chosen
            .iter()
            .map(|&(d, oi)| {
                let u = &self.options[d][oi];
                (u.links.as_slice(), u.lightpaths)
            })
            .collect();
        if let Some(colors) = assign_wavelengths(&units, self.instance.wavelength_capacity) {
            self.best_cost = cost;
            self.best = Some((self.chosen.clone(), colors));
        }
    }

    fn build(&self, chosen: &[(usize, usize)], colors: &[Wavelength]) -> Solution {
        let provisions = chosen
            .iter()
            .zip(colors)
            .map(|(&(d, oi), &w)| match self.options[d][oi].kind {
                UnitKind::Alone(pi) => Provision::Alone {
                    demand: self.instance.demands[d].id,
                    path: self.candidates.alone[d][pi].clone(),
                    wavelength: w,
                },
                UnitKind::Group(gi) => Provision::Grouped {
                    candidate: self.candidates.groups[gi].clone(),
                    wavelengths: GroupWavelengths::uniform(w),
                },
            })
            .collect();
        Solution::new(provisions)
    }
}

/// Exact minimisation of wavelength-links over `candidates`.
///
/// `seed`, when given, must be a feasible solution; it serves as the initial
/// incumbent and is returned if nothing strictly cheaper exists.
pub(crate) fn branch_and_bound(
    instance: &Instance,
    candidates: &CandidateSet,
    limits: SolveLimits,
    seed: Option<Solution>,
) -> SolveResult {
    let mut engine = Engine::new(instance, candidates, limits);
    if let Some(s) = &seed {
        engine.best_cost = s.cost();
    }
    let root = engine.root_bound();
    if engine.best_cost > root {
        engine.dfs(0, 0);
    }

    let elapsed = engine.started.elapsed();
    let found = engine
        .best
        .as_ref()
        .map(|(c, w)| engine.build(c, w))
        .or(seed);
    let (status, lower_bound) = match (&found, engine.aborted) {
        (_, true) => (SolveStatus::LimitExceeded, root.min(engine.best_cost)),
        (Some(s), false) => (SolveStatus::Optimal, s.cost()),
        (None, false) => (SolveStatus::Infeasible, root),
    };
    let solution = found.map(|mut s| {
        s.meta = SolutionMeta {
            optimal: status == SolveStatus::Optimal,
            lower_bound: Some(lower_bound),
            solve_time: Some(elapsed),
        };
        s
    });
    SolveResult {
        solution,
        status,
        lower_bound,
        explored_nodes: engine.explored,
    }
}

/// Lowest free wavelength for each unit in the given order.
pub(crate) fn first_fit(units: &[&[usize]], capacity: u32) -> Option<Vec<Wavelength>> {
    let mut used: HashSet<(usize, Wavelength)> = HashSet::new();
    let mut out = Vec::with_capacity(units.len());
    for links in units {
        let w = (0..capacity).find(|w| links.iter().all(|l| !used.contains(&(*l, *w))))?;
        used.extend(links.iter().map(|&l| (l, w)));
        out.push(w);
    }
    Some(out)
}

/// Colours units (link sets, lightpath count) with at most `capacity`
/// wavelengths so that units sharing a link differ. First fit by decreasing
/// size, then exact backtracking if that overflows. Colour classes carrying
/// more lightpaths get lower indices.
pub(crate) fn assign_wavelengths(
    units: &[(&[usize], usize)],
    capacity: u32,
) -> Option<Vec<Wavelength>> {
    let n = units.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (Reverse(units[i].0.len()), i));
    let ordered: Vec<&[usize]> = order.iter().map(|&i| units[i].0).collect();

    let colors = match first_fit(&ordered, capacity) {
        Some(c) => {
            let mut out = vec![0; n];
            for (k, &i) in order.iter().enumerate() {
                out[i] = c[k];
            }
            out
        }
        None => exact_coloring(units, capacity)?,
    };

    let mut weight: BTreeMap<Wavelength, (usize, usize)> = BTreeMap::new();
    for (k, &i) in order.iter().enumerate() {
        let e = weight.entry(colors[i]).or_insert((0, k));
        e.0 += units[i].1;
    }
    let mut classes: Vec<(Wavelength, usize, usize)> =
        weight.into_iter().map(|(w, (n, k))| (w, n, k)).collect();
    classes.sort_by_key(|&(_, n, k)| (Reverse(n), k));
    let relabel: HashMap<Wavelength, Wavelength> = classes
        .iter()
        .enumerate()
        .map(|(new, &(old, _, _))| (old, new as Wavelength))
        .collect();
    Some(colors.into_iter().map(|c| relabel[&c]).collect())
}

fn exact_coloring(units: &[(&[usize], usize)], capacity: u32) -> Option<Vec<Wavelength>> {
    let n = units.len();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && units[i].0.iter().any(|l| units[j].0.contains(l)))
                .collect()
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (Reverse(adj[i].len()), i));
    let mut colors: Vec<Option<Wavelength>> = vec![None; n];

    fn go(
        k: usize,
        used: u32,
        order: &[usize],
        adj: &[Vec<usize>],
        colors: &mut [Option<Wavelength>],
        capacity: u32,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let i = order[k];
        for w in 0..(used + 1).min(capacity) {
            if adj[i].iter().all(|&j| colors[j] != Some(w)) {
                colors[i] = Some(w);
                if go(k + 1, used.max(w + 1), order, adj, colors, capacity) {
                    return true;
                }
                colors[i] = None;
            }
        }
        false
    }

    if go(0, 0, &order, &adj, &mut colors, capacity) {
        Some(colors.into_iter().map(|c| c.unwrap()).collect())
    } else {
        None
    }
}
