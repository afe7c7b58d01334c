use std::collections::HashMap;

use rayon::prelude::*;

use super::allocation::{decode, slot_alphabet, slot_ranges, Allocation};
use super::pareto::Objectives;
use crate::cost::acquisition_cost;
use crate::error::Result;
use crate::reliability::team_reliability;
use crate::scenario::{RedundancyMap, StorageMode, TeamScenario};

/// Objective values of one allocation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub reliability: f64,
    pub cost: f64,
    /// False when declared storage limits are exceeded.
    pub feasible: bool,
}

impl Evaluation {
    pub fn objectives(&self) -> Objectives {
        Objectives::new(self.reliability, self.cost)
    }
}

/// Team reliability at the horizon as seen by the optimizer: per-robot spares
/// for [`StorageMode::PerRobot`], team-wide spare totals for
/// [`StorageMode::Shared`].
pub fn objective_reliability(scenario: &TeamScenario, redundancy: &RedundancyMap) -> Result<f64> {
    match scenario.storage {
        StorageMode::PerRobot => team_reliability(scenario, redundancy),
        StorageMode::Shared => team_reliability(scenario, &redundancy.pooled(scenario)),
    }
}

pub fn evaluate_redundancy(redundancy: &RedundancyMap, scenario: &TeamScenario) -> Result<Evaluation> {
    let reliability = objective_reliability(scenario, redundancy)?;
    let cost = acquisition_cost(&scenario.catalog, &redundancy.module_totals(scenario))?;
    let feasible = redundancy.check(scenario).is_ok();
    Ok(Evaluation { reliability, cost, feasible })
}

/// (reliability at the scenario horizon, total acquisition cost).
pub fn evaluate(allocation: &Allocation, scenario: &TeamScenario) -> Result<Evaluation> {
    evaluate_redundancy(&decode(allocation, scenario)?, scenario)
}

/// Cost of the most expensive chromosome: every slot filled with the priciest
/// module allowed there.
pub fn max_allocation_cost(scenario: &TeamScenario) -> f64 {
    let base = acquisition_cost(&scenario.catalog, &RedundancyMap::for_scenario(scenario).module_totals(scenario))
        .unwrap_or(0.0);
    slot_ranges(scenario)
        .iter()
        .enumerate()
        .map(|(j, r)| {
            let priciest = slot_alphabet(scenario, j)
                .into_iter()
                .filter(|&g| g != 0)
                .filter_map(|g| scenario.catalog.get(crate::catalog::ModuleId(g)).ok().map(|m| m.cost))
                .fold(0.0, f64::max);
            priciest * r.len() as f64
        })
        .sum::<f64>()
        + base
}

/// Memoized evaluation keyed by decoded spare map, so chromosomes that differ
/// only in slot order share one evaluation.
#[derive(Debug)]
pub struct ObjectiveCache<'a> {
    scenario: &'a TeamScenario,
    memo: HashMap<RedundancyMap, Evaluation>,
}

impl<'a> ObjectiveCache<'a> {
    pub fn new(scenario: &'a TeamScenario) -> Self {
        ObjectiveCache { scenario, memo: HashMap::new() }
    }

    /// Evaluates a batch, computing missing entries in parallel.
    pub fn evaluate_all(&mut self, allocations: &[Allocation]) -> Result<Vec<Evaluation>> {
        let keys = allocations.iter().map(|a| decode(a, self.scenario)).collect::<Result<Vec<_>>>()?;
        let mut missing: Vec<&RedundancyMap> = keys.iter().filter(|k| !self.memo.contains_key(*k)).collect();
        missing.sort();
        missing.dedup();
        let scenario = self.scenario;
        let fresh = missing
            .par_iter()
            .map(|k| evaluate_redundancy(k, scenario).map(|e| ((*k).clone(), e)))
            .collect::<Result<Vec<_>>>()?;
        self.memo.extend(fresh);
        Ok(keys.iter().map(|k| self.memo[k]).collect())
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::ModuleId;
    use crate::fixtures;

    #[test]
    fn empty_allocation_at_time_zero() {
        let s = fixtures::reference_team().with_horizon(0.0).unwrap();
        let e = evaluate(&Allocation::empty(&s), &s).unwrap();
        assert_eq!(e.reliability, 1.0);
        // active modules per robot: 1,4,7,10 | 1,3,8,16 | 1,5,8 | 1,4,7 | 2 | 3,9
        let base =
            2900.0 + (2000.0 + 2400.0 + 420.0 + 800.0) + (2000.0 + 230.0 + 420.0) + 2600.0 + 2300.0 + (2400.0 + 450.0);
        assert_eq!(e.cost, base);
        assert!(e.feasible);
    }

    #[test]
    fn adding_a_spare_is_monotone() {
        let s = fixtures::reference_team().with_horizon(60.0).unwrap();
        let mut a = Allocation::empty(&s);
        let mut prev = evaluate(&a, &s).unwrap();
        for (slot, gene) in [(0usize, 1u32), (1, 10), (4, 16), (9, 2), (15, 9), (6, 13)] {
            a.genes[slot] = gene;
            let e = evaluate(&a, &s).unwrap();
            assert!(e.reliability >= prev.reliability);
            assert!(e.cost > prev.cost);
            prev = e;
        }
    }

    #[test]
    fn cache_agrees_with_direct_evaluation() {
        let s = fixtures::reference_team();
        let mut cache = ObjectiveCache::new(&s);
        let mut a = Allocation::empty(&s);
        a.genes[0] = 4;
        let mut b = a.clone();
        b.genes.swap(0, 1);
        let out = cache.evaluate_all(&[a.clone(), b, Allocation::empty(&s)]).unwrap();
        assert_eq!(cache.len(), 2);
        assert_eq!(out[0], out[1]);
        assert_eq!(out[0], evaluate(&a, &s).unwrap());
    }

    #[test]
    fn limit_violation_is_infeasible_not_error() {
        let mut s = fixtures::reference_team();
        s.type_limits.insert(ModuleId(1), 1);
        let mut a = Allocation::empty(&s);
        a.genes[0] = 1;
        a.genes[1] = 1;
        let e = evaluate(&a, &s).unwrap();
        assert!(!e.feasible);
    }
}
