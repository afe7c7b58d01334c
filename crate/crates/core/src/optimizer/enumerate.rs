//! Exact Pareto fronts by exhaustive enumeration, for small instances.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::allocation::{encode, slot_alphabet};
use super::objective::evaluate_redundancy;
use super::pareto::{ParetoArchive, ParetoPoint};
use crate::catalog::ModuleId;
use crate::error::{Error, Result};
use crate::scenario::{RedundancyMap, TeamScenario};

/// Default refusal threshold on the chromosome count.
pub const DEFAULT_CEILING: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationLimits {
    pub ceiling: u128,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits { ceiling: DEFAULT_CEILING }
    }
}

/// `X = ∏_i m_i^max` over per-type option counts.
pub fn option_product(maxima: &[u128]) -> u128 {
    maxima.iter().fold(1u128, |acc, &m| acc.saturating_mul(m))
}

/// Sizes of the allocation search space under several counting rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSpace {
    /// Gene assignments: `∏ |alphabet|` over all slots.
    pub chromosomes: u128,
    /// Team-wide count per type: `∏_i (m_i^max + 1)`.
    pub per_type: u128,
    /// Per-robot count per type: `∏_i ∏_j (w_ji^max + 1)`.
    pub per_robot: u128,
    /// Distinct per-robot spare maps, i.e. evaluations actually performed.
    pub distinct: u128,
}

fn robot_type_max(scenario: &TeamScenario, robot: usize, id: ModuleId) -> u128 {
    let free = scenario.blueprint_of(robot).free_slots as u128;
    scenario.storage_limit(robot, id).map_or(free, |l| free.min(u128::from(l)))
}

/// Number of multisets of at most `slots` items where item `k` may appear at
/// most `caps[k]` times.
fn bounded_multisets(caps: &[u128], slots: usize) -> u128 {
    let mut ways = vec![0u128; slots + 1];
    ways[0] = 1;
    for &cap in caps {
        let mut next = vec![0u128; slots + 1];
        for (used, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for take in 0..=cap.min((slots - used) as u128) as usize {
                next[used + take] = next[used + take].saturating_add(w);
            }
        }
        ways = next;
    }
    ways.iter().fold(0u128, |a, &b| a.saturating_add(b))
}

pub fn search_space(scenario: &TeamScenario) -> SearchSpace {
    let mut chromosomes = 1u128;
    let mut distinct = 1u128;
    for j in 0..scenario.team_size() {
        let slots = scenario.blueprint_of(j).free_slots;
        let alpha = slot_alphabet(scenario, j);
        for _ in 0..slots {
            chromosomes = chromosomes.saturating_mul(alpha.len() as u128);
        }
        let caps: Vec<u128> = alpha[1..].iter().map(|&g| robot_type_max(scenario, j, ModuleId(g))).collect();
        distinct = distinct.saturating_mul(bounded_multisets(&caps, slots));
    }
    let mut type_opts = Vec::new();
    let mut robot_opts = Vec::new();
    for id in scenario.catalog.ids() {
        let mut total = 0u128;
        for j in 0..scenario.team_size() {
            let w = robot_type_max(scenario, j, id);
            total += w;
            robot_opts.push(w + 1);
        }
        type_opts.push(total + 1);
    }
    SearchSpace { chromosomes, per_type: option_product(&type_opts), per_robot: option_product(&robot_opts), distinct }
}

/// All spare maps of one robot: multisets over its alphabet of size at most
/// its free slots, in lexicographic order of the sorted gene list.
fn robot_options(scenario: &TeamScenario, robot: usize) -> Vec<BTreeMap<ModuleId, u32>> {
    let ids: Vec<ModuleId> = slot_alphabet(scenario, robot).into_iter().skip(1).map(ModuleId).collect();
    let slots = scenario.blueprint_of(robot).free_slots as u32;
    let mut out = Vec::new();
    let mut current = BTreeMap::new();
    fn rec(
        scenario: &TeamScenario,
        robot: usize,
        ids: &[ModuleId],
        left: u32,
        current: &mut BTreeMap<ModuleId, u32>,
        out: &mut Vec<BTreeMap<ModuleId, u32>>,
    ) {
        let Some((&id, rest)) = ids.split_first() else {
            out.push(current.clone());
            return;
        };
        let cap = scenario.storage_limit(robot, id).map_or(left, |l| l.min(left));
        for take in 0..=cap {
            if take > 0 {
                current.insert(id, take);
            }
            rec(scenario, robot, rest, left - take, current, out);
        }
        current.remove(&id);
    }
    rec(scenario, robot, &ids, slots, &mut current, &mut out);
    out
}

/// Exact front over every distinct allocation. Refuses with
/// [`Error::CeilingExceeded`] when the chromosome count exceeds the ceiling.
pub fn exhaustive_enumerate(scenario: &TeamScenario, limits: &EnumerationLimits) -> Result<Vec<ParetoPoint>> {
    let space = search_space(scenario);
    if space.chromosomes > limits.ceiling {
        return Err(Error::CeilingExceeded { count: space.chromosomes, ceiling: limits.ceiling });
    }
    let options: Vec<Vec<BTreeMap<ModuleId, u32>>> =
        (0..scenario.team_size()).map(|j| robot_options(scenario, j)).collect();
    let mut archive = ParetoArchive::new();
    let mut odometer = vec![0usize; options.len()];
    loop {
        let red = RedundancyMap::from_robots(odometer.iter().zip(&options).map(|(&k, o)| o[k].clone()).collect());
        let e = evaluate_redundancy(&red, scenario)?;
        if e.feasible {
            archive.insert(ParetoPoint {
                reliability: e.reliability,
                cost: e.cost,
                allocation: encode(&red, scenario)?,
            });
        }
        let mut pos = options.len();
        loop {
            if pos == 0 {
                return if archive.is_empty() { Err(Error::NoFeasibleSolution) } else { Ok(archive.into_sorted()) };
            }
            pos -= 1;
            odometer[pos] += 1;
            if odometer[pos] < options[pos].len() {
                break;
            }
            odometer[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{Catalog, ModuleTypeSpec, Role};
    use crate::fixtures;
    use crate::optimizer::allocation::{decode, Allocation};
    use crate::optimizer::objective::evaluate;
    use crate::optimizer::pareto::Objectives;
    use crate::scenario::{FunctionalRequirement, RobotBlueprint};

    fn spec(id: u32, lambda: f64, cost: f64) -> ModuleTypeSpec {
        ModuleTypeSpec {
            id: ModuleId(id),
            role: Role::Platform,
            failure_rate: lambda,
            cost,
            detect_switch_self: 0.9,
            detect_switch_other: 0.9,
            maintenance_cost: cost,
        }
    }

    fn tiny() -> TeamScenario {
        let cat = Catalog::new(vec![spec(1, 0.02, 100.0), spec(2, 0.04, 30.0)]).unwrap();
        let a = RobotBlueprint::new(1, vec![ModuleId(1), ModuleId(2)], 2, 4);
        let b = RobotBlueprint::new(2, vec![ModuleId(2)], 1, 2);
        TeamScenario::new(cat, vec![a, b], vec![1, 1], 24.0, FunctionalRequirement::Full).unwrap()
    }

    #[test]
    fn product_count() {
        assert_eq!(option_product(&[2, 3, 4]), 24);
        assert_eq!(option_product(&[]), 1);
    }

    #[test]
    fn zero_slots_enumerates_one_point() {
        let cat = Catalog::new(vec![spec(1, 0.02, 100.0)]).unwrap();
        let bp = RobotBlueprint::new(1, vec![ModuleId(1)], 0, 1);
        let s = TeamScenario::new(cat, vec![bp], vec![2], 10.0, FunctionalRequirement::Full).unwrap();
        let space = search_space(&s);
        assert_eq!((space.chromosomes, space.distinct), (1, 1));
        let front = exhaustive_enumerate(&s, &EnumerationLimits::default()).unwrap();
        assert_eq!(front.len(), 1);
        assert!(front[0].allocation.is_empty());
    }

    #[test]
    fn reference_team_is_refused() {
        let s = fixtures::reference_team();
        let space = search_space(&s);
        assert_eq!(space.chromosomes, 19u128.pow(19));
        let err = exhaustive_enumerate(&s, &EnumerationLimits::default()).unwrap_err();
        assert_eq!(err, Error::CeilingExceeded { count: 19u128.pow(19), ceiling: DEFAULT_CEILING });
    }

    #[test]
    fn distinct_count_matches_options() {
        let s = tiny();
        let space = search_space(&s);
        // robot 0: multisets of size <= 2 over {1,2}: 6; robot 1: size <= 1: 3
        assert_eq!(space.distinct, 18);
        assert_eq!(space.chromosomes, 27);
        assert_eq!(space.per_type, 4 * 4);
        assert_eq!(space.per_robot, 3 * 2 * 3 * 2);
    }

    /// Independent oracle: every raw gene vector, pairwise dominance filter.
    fn brute_front(s: &TeamScenario) -> Vec<Objectives> {
        let n = s.total_free_slots();
        let mut all = Vec::new();
        for code in 0..3u32.pow(n as u32) {
            let mut c = code;
            let genes: Vec<u32> = (0..n)
                .map(|_| {
                    let g = c % 3;
                    c /= 3;
                    g
                })
                .collect();
            all.push(evaluate(&Allocation::new(genes), s).unwrap().objectives());
        }
        let mut front: Vec<Objectives> = all.iter().copied().filter(|p| !all.iter().any(|q| q.dominates(p))).collect();
        front.sort_by(|a, b| b.reliability.total_cmp(&a.reliability).then(a.cost.total_cmp(&b.cost)));
        front.dedup_by(|a, b| a.key() == b.key());
        front
    }

    #[test]
    fn matches_brute_force_over_raw_chromosomes() {
        for s in [tiny(), tiny().with_storage(crate::scenario::StorageMode::Shared)] {
            let front = exhaustive_enumerate(&s, &EnumerationLimits::default()).unwrap();
            let got: Vec<Objectives> = front.iter().map(ParetoPoint::objectives).collect();
            assert_eq!(got, brute_front(&s));
            for p in &front {
                let e = evaluate(&p.allocation, &s).unwrap();
                assert_eq!(e.objectives(), p.objectives());
                assert!(decode(&p.allocation, &s).unwrap().check(&s).is_ok());
            }
        }
    }

    #[test]
    fn limits_prune_enumeration() {
        let s = tiny();
        let mut s2 = s.clone();
        s2.type_limits.insert(ModuleId(1), 0);
        let space = search_space(&s2);
        assert_eq!(space.chromosomes, 8);
        let front = exhaustive_enumerate(&s2, &EnumerationLimits::default()).unwrap();
        assert!(front.iter().all(|p| !p.allocation.genes.contains(&1)));
        assert!(matches!(
            exhaustive_enumerate(&s, &EnumerationLimits { ceiling: 10 }),
            Err(Error::CeilingExceeded { count: 27, ceiling: 10 })
        ));
    }
}
