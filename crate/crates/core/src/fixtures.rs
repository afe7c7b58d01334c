//! Bundled scenarios.

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::catalog::{Catalog, ModuleId, ModuleTypeSpec, Role};
use crate::scenario::{FunctionalRequirement, RedundancyMap, RobotBlueprint, TeamScenario};
use crate::scenario_file::parse_scenario;

/// Raw JSON of the six-robot, eighteen-module-type reference team.
pub const REFERENCE_TEAM_JSON: &str = include_str!("../fixtures/reference_team.json");

/// Six heterogeneous robots with 19 free spare slots between them, one robot
/// per type, shared spare storage and the minimal requirement, 60-month
/// horizon. Switching is perfect and a replacement costs the module price.
pub fn reference_team() -> TeamScenario {
    parse_scenario(REFERENCE_TEAM_JSON).expect("bundled fixture is valid")
}

/// Bounds for [`random_scenario`].
#[derive(Debug, Clone, PartialEq)]
pub struct RandomScenarioLimits {
    pub max_robots: u32,
    pub max_module_types: u32,
    /// Per robot and active module type.
    pub max_spares: u32,
    /// Switching probabilities are drawn from this set.
    pub switch_probabilities: Vec<f64>,
    pub failure_rate: (f64, f64),
    pub horizon: (f64, f64),
}

impl Default for RandomScenarioLimits {
    fn default() -> Self {
        RandomScenarioLimits {
            max_robots: 3,
            max_module_types: 4,
            max_spares: 3,
            switch_probabilities: vec![0.0, 0.5, 1.0],
            failure_rate: (0.005, 0.05),
            horizon: (1.0, 60.0),
        }
    }
}

/// A small random team with per-robot storage and a random spare map. Every
/// robot has room for `max_spares` of each of its active module types.
pub fn random_scenario<R: Rng + ?Sized>(rng: &mut R, limits: &RandomScenarioLimits) -> (TeamScenario, RedundancyMap) {
    let n_modules = rng.random_range(1..=limits.max_module_types.max(1));
    let catalog = Catalog::new(
        (1..=n_modules)
            .map(|id| {
                let p = *limits.switch_probabilities.choose(rng).unwrap_or(&1.0);
                let cost = rng.random_range(10.0..1000.0_f64).round();
                ModuleTypeSpec {
                    id: ModuleId(id),
                    role: *Role::ALL.choose(rng).expect("roles"),
                    failure_rate: rng.random_range(limits.failure_rate.0..=limits.failure_rate.1),
                    cost,
                    detect_switch_self: p,
                    detect_switch_other: p,
                    maintenance_cost: cost,
                }
            })
            .collect(),
    )
    .expect("generated catalog is valid");

    let robots = rng.random_range(1..=limits.max_robots.max(1));
    let n_types = rng.random_range(1..=robots);
    let mut counts = vec![1u32; n_types as usize];
    for _ in n_types..robots {
        counts[rng.random_range(0..n_types as usize)] += 1;
    }
    let blueprints: Vec<RobotBlueprint> = (0..n_types as usize)
        .map(|v| {
            let mut active: Vec<ModuleId> = (1..=n_modules).filter(|_| rng.random_bool(0.6)).map(ModuleId).collect();
            if active.is_empty() {
                active.push(ModuleId(rng.random_range(1..=n_modules)));
            }
            let free = active.len() * limits.max_spares as usize;
            let capacity = active.len() + free;
            let mut bp = RobotBlueprint::new(v + 1, active, free, capacity);
            for id in (1..=n_modules).map(ModuleId) {
                let limit = if bp.has_active(id) { limits.max_spares } else { 0 };
                bp.per_type_limits.insert(id, limit);
            }
            bp
        })
        .collect();
    let requirement = match rng.random_range(0..3) {
        0 => FunctionalRequirement::Full,
        1 => FunctionalRequirement::Minimal,
        _ => FunctionalRequirement::Partial(counts.iter().map(|&c| rng.random_range(1..=c)).collect()),
    };
    let horizon = rng.random_range(limits.horizon.0..=limits.horizon.1);
    let scenario =
        TeamScenario::new(catalog, blueprints, counts, horizon, requirement).expect("generated scenario is valid");

    let mut redundancy = RedundancyMap::for_scenario(&scenario);
    for j in 0..scenario.team_size() {
        for &id in &scenario.blueprint_of(j).active_modules.clone() {
            redundancy.set(j, id, rng.random_range(0..=limits.max_spares));
        }
    }
    (scenario, redundancy)
}
