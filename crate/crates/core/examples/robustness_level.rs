//! How many simultaneous module failures a team can always repair, as spares
//! and switching reliability change.

use smr_core::catalog::{Catalog, ModuleId, ModuleTypeSpec, Role};
use smr_core::sim::{estimate_robustness_level, repair_feasible, RobotState, SimConfig};
use smr_core::{FunctionalRequirement, RedundancyMap, RobotBlueprint, StorageMode, TeamScenario};

fn team(robots: u32, p: f64) -> TeamScenario {
    let catalog = Catalog::new(
        Role::ALL
            .iter()
            .enumerate()
            .map(|(i, &role)| ModuleTypeSpec {
                id: ModuleId(i as u32 + 1),
                role,
                failure_rate: 0.005,
                cost: 500.0,
                detect_switch_self: p,
                detect_switch_other: p,
                maintenance_cost: 500.0,
            })
            .collect(),
    )
    .expect("valid catalog");
    let bp = RobotBlueprint::new(1, (1..=6).map(ModuleId).collect(), 12, 18);
    TeamScenario::new(catalog, vec![bp], vec![robots], 60.0, FunctionalRequirement::Full).expect("valid team")
}

fn main() {
    let arm_down = RobotState::new([Role::Platform, Role::Battery, Role::Processor, Role::Communication]);
    println!("robot without manipulator can repair itself: {}", repair_feasible(None, &arm_down));
    println!("healthy helper can repair it: {}", repair_feasible(Some(&RobotState::fully_functional()), &arm_down));

    for robots in [1, 2, 3] {
        for per_type in [0, 1, 2] {
            let t = team(robots, 1.0);
            let mut spares = RedundancyMap::for_scenario(&t);
            for j in 0..t.team_size() {
                for id in 1..=6 {
                    spares.set(j, ModuleId(id), per_type);
                }
            }
            let own = estimate_robustness_level(&t, &spares, &SimConfig::new(1, 0, 60.0));
            let shared =
                estimate_robustness_level(&t, &spares, &SimConfig::new(1, 0, 60.0).with_storage(StorageMode::Shared));
            println!("{robots} robot(s), {per_type} spare(s) per module: k = {own} own storage, {shared} shared");
        }
    }
    let unreliable = team(2, 0.95);
    let mut spares = RedundancyMap::for_scenario(&unreliable);
    spares.set(0, ModuleId(1), 1);
    println!(
        "switching below threshold: k = {}",
        estimate_robustness_level(&unreliable, &spares, &SimConfig::new(1, 0, 60.0))
    );
}
