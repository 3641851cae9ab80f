//! Exact solvers against the exhaustive oracle on tiny random instances.

mod common;

use common::*;
use rwca_core::*;

const INSTANCES: u64 = 240;

#[test]
fn exact_solvers_match_the_oracle() {
    let caps = OracleCaps::default();
    let mut grouped = 0;
    let mut infeasible = 0;
    for seed in 0..INSTANCES {
        let inst = random_tiny_instance(seed);
        let bypass = solve_rwa_exact(&inst, SolveLimits::default());
        let rwca = solve_rwca_exact(&inst, SolveLimits::default());
        let ob = brute_force_optimum(&inst, caps, OracleMode::Bypass).unwrap();
        let or = brute_force_optimum(&inst, caps, OracleMode::Rwca).unwrap();

        assert_eq!(bypass.cost(), ob.cost(), "bypass, seed {seed}");
        assert_eq!(rwca.cost(), or.cost(), "rwca, seed {seed}");
        for (r, o) in [(&bypass, &ob), (&rwca, &or)] {
            assert_ne!(r.status, SolveStatus::LimitExceeded, "seed {seed}");
            assert_eq!(
                r.status == SolveStatus::Infeasible,
                o.status == SolveStatus::Infeasible,
                "seed {seed}"
            );
            if let Some(s) = &r.solution {
                assert_eq!(
                    verify_solution(&inst, s),
                    Ok(solution_metrics(s)),
                    "seed {seed}"
                );
                assert_eq!(r.lower_bound, s.cost());
            }
            if let Some(s) = &o.solution {
                assert_eq!(
                    verify_solution(&inst, s),
                    Ok(solution_metrics(s)),
                    "seed {seed}"
                );
            }
        }
        // Bypass solutions are feasible for the aggregation model.
        if let (Some(b), Some(a)) = (ob.cost(), or.cost()) {
            assert!(a <= b, "seed {seed}");
        }
        if ob.cost().is_some() {
            assert!(or.cost().is_some(), "seed {seed}");
        }
        if let Some(a) = rwca.cost() {
            assert!(rwca_lower_bound(&inst) <= a, "seed {seed}");
            if let Ok(h) = solve_rwca_heuristic(&inst) {
                assert!(a <= h.cost(), "seed {seed}");
                assert!(verify_solution(&inst, &h).is_ok(), "seed {seed}");
            }
            grouped += rwca.solution.as_ref().unwrap().group_count().min(1);
        } else {
            infeasible += 1;
        }
    }
    // The generator must exercise both aggregation and infeasibility.
    assert!(grouped > 20, "only {grouped} instances used aggregation");
    assert!(infeasible > 0);
}

#[test]
fn removing_groups_reduces_to_bypass() {
    for seed in 1000..1050 {
        let inst = random_tiny_instance(seed);
        let mut cs = enumerate_aggregation_candidates(&inst);
        cs.groups.clear();
        let reduced = solve_rwca_with_candidates(&inst, &cs, SolveLimits::default());
        let bypass = solve_rwa_exact(&inst, SolveLimits::default());
        assert_eq!(reduced.cost(), bypass.cost(), "seed {seed}");
        assert_eq!(reduced.status, bypass.status, "seed {seed}");
    }
}

#[test]
fn demand_order_does_not_change_the_optimum() {
    for seed in 2000..2060 {
        let inst = random_tiny_instance(seed);
        let mut rev = inst.clone();
        rev.demands.reverse();
        for (a, b) in [
            (
                solve_rwa_exact(&inst, SolveLimits::default()),
                solve_rwa_exact(&rev, SolveLimits::default()),
            ),
            (
                solve_rwca_exact(&inst, SolveLimits::default()),
                solve_rwca_exact(&rev, SolveLimits::default()),
            ),
        ] {
            assert_eq!(a.cost(), b.cost(), "seed {seed}");
        }
    }
}

#[test]
fn exact_never_worse_than_first_fit_and_never_infeasible_with_enough_wavelengths() {
    for seed in 3000..3080 {
        let mut inst = random_tiny_instance(seed);
        inst.wavelength_capacity = inst.demands.len() as u32;
        let exact = solve_rwa_exact(&inst, SolveLimits::default());
        assert_eq!(exact.status, SolveStatus::Optimal, "seed {seed}");
        for order in [FirstFitOrder::ById, FirstFitOrder::ByLongestPath] {
            let ff = solve_rwa_first_fit(&inst, order).unwrap();
            assert!(exact.cost().unwrap() <= ff.cost());
            assert!(verify_solution(&inst, &ff).is_ok());
        }
        let h = solve_rwca_heuristic(&inst).unwrap();
        assert!(verify_solution(&inst, &h).is_ok());
    }
}
