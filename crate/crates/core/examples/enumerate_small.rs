//! Search-space sizes and the exact Pareto front of a small team, compared
//! with the front NSGA-II finds.

use smr_core::optimizer::{exhaustive_enumerate, nsga2_optimize, search_space, EnumerationLimits, GaConfig};
use smr_core::{fixtures, parse_scenario};

const TEAM: &str = r#"{
  "catalog": [
    {"id": 1, "role": "platform", "failure_rate": 0.02, "cost": 100,
     "detect_switch_self": 0.9, "detect_switch_other": 0.9, "maintenance_cost": 100},
    {"id": 2, "role": "battery", "failure_rate": 0.04, "cost": 30,
     "detect_switch_self": 0.9, "detect_switch_other": 0.9, "maintenance_cost": 30},
    {"id": 3, "role": "processor", "failure_rate": 0.01, "cost": 60,
     "detect_switch_self": 1.0, "detect_switch_other": 1.0, "maintenance_cost": 60}
  ],
  "robots": [
    {"type_index": 1, "active_modules": [1, 2, 3], "free_slots": 3, "slot_capacity": 6},
    {"type_index": 2, "active_modules": [2, 3], "free_slots": 2, "slot_capacity": 4}
  ],
  "counts": [1, 2],
  "requirement": {"partial": [1, 1]},
  "horizon_months": 36
}"#;

fn main() -> smr_core::Result<()> {
    let big = search_space(&fixtures::reference_team());
    println!("reference team: {} chromosomes, {} per-type combinations", big.chromosomes, big.per_type);

    let team = parse_scenario(TEAM).expect("valid scenario");
    let space = search_space(&team);
    println!(
        "small team: {} chromosomes, {} per-type, {} per-robot, {} distinct spare maps",
        space.chromosomes, space.per_type, space.per_robot, space.distinct
    );
    let exact = exhaustive_enumerate(&team, &EnumerationLimits::default())?;
    let ga = nsga2_optimize(&team, &GaConfig::default())?;
    let found = exact.iter().filter(|p| ga.iter().any(|q| q.objectives() == p.objectives())).count();
    println!("exact front: {} points, NSGA-II recovered {found}", exact.len());
    for p in exact.iter().take(10) {
        println!("  R={:.6} cost={:>5.0} [{}]", p.reliability, p.cost, p.allocation);
    }
    Ok(())
}
