//! One Monte-Carlo mission: exponential module failures, detection and
//! switching to cold spares, team survival at the horizon.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use rand::Rng;
use rand_distr::{Distribution, Exp};
use serde::{Deserialize, Serialize};

use super::{SimConfig, SwitchModel, SwitchSource};
use crate::catalog::ModuleId;
use crate::cost::MaintenanceClass;
use crate::reliability::combine_by_requirement;
use crate::scenario::{RedundancyMap, StorageMode, TeamScenario};

/// One module failure inside a trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailureEvent {
    pub time: f64,
    pub robot: usize,
    pub module: ModuleId,
    pub class: MaintenanceClass,
    /// Whether a spare was switched in.
    pub replaced: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    /// Whether the team meets the scenario requirement at the horizon.
    pub survived: bool,
    /// Robots still functional at the horizon, in instance order.
    pub robots_alive: Vec<bool>,
    pub failures: Vec<FailureEvent>,
    /// Successful switches per module type.
    pub replacements: BTreeMap<ModuleId, u32>,
    /// Time the team first stopped meeting its requirement.
    pub first_system_failure: Option<f64>,
    pub horizon: f64,
}

/// Event-queue key: failure time, then position index for a total order.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Due(f64, usize);

impl Eq for Due {}

impl PartialOrd for Due {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Due {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0).then(self.1.cmp(&other.1))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mechanism {
    Untested,
    Works,
    Broken,
}

struct Position {
    robot: usize,
    module: ModuleId,
    lifetime: Exp<f64>,
    p: f64,
    mechanism: Mechanism,
}

fn team_ok(scenario: &TeamScenario, alive: &[bool]) -> bool {
    let mut per_type = vec![Vec::new(); scenario.blueprints.len()];
    for (inst, &a) in scenario.instances().iter().zip(alive) {
        per_type[inst.blueprint].push(if a { 1.0 } else { 0.0 });
    }
    combine_by_requirement(&per_type, &scenario.requirement).map(|r| r > 0.5).unwrap_or(false)
}

/// Simulates one mission of `sim.horizon` months.
///
/// Every active module position fails after an exponential lifetime. On a
/// failure a spare is taken from the robot's own storage or the shared pool
/// and the switch succeeds with the configured probability; a switched-in
/// spare starts a fresh lifetime. Otherwise the robot is down for the rest of
/// the mission and its modules stop failing.
pub fn simulate_trial<R: Rng + ?Sized>(
    scenario: &TeamScenario,
    redundancy: &RedundancyMap,
    sim: &SimConfig,
    rng: &mut R,
) -> TrialOutcome {
    let mut positions = Vec::new();
    for (j, inst) in scenario.instances().iter().enumerate() {
        for &id in &scenario.blueprints[inst.blueprint].active_modules {
            let Ok(m) = scenario.catalog.get(id) else { continue };
            let Ok(lifetime) = Exp::new(m.failure_rate) else { continue };
            let p = match sim.switching {
                SwitchSource::SelfSwitch => m.detect_switch_self,
                SwitchSource::Assisted => m.detect_switch_other,
            };
            positions.push(Position { robot: j, module: id, lifetime, p, mechanism: Mechanism::Untested });
        }
    }

    let mut own: Vec<BTreeMap<ModuleId, u32>> =
        (0..scenario.team_size()).map(|j| redundancy.robot(j).clone()).collect();
    let mut pool = redundancy.spare_totals();

    let mut queue = BinaryHeap::new();
    for (k, pos) in positions.iter().enumerate() {
        let t = pos.lifetime.sample(rng);
        if t <= sim.horizon {
            queue.push(Reverse(Due(t, k)));
        }
    }

    let mut alive = vec![true; scenario.team_size()];
    let mut failures = Vec::new();
    let mut replacements = BTreeMap::new();
    let mut first_system_failure = None;

    while let Some(Reverse(Due(time, k))) = queue.pop() {
        let robot = positions[k].robot;
        if !alive[robot] {
            continue;
        }
        let module = positions[k].module;
        let stock = match sim.storage_mode {
            StorageMode::PerRobot => own[robot].get_mut(&module),
            StorageMode::Shared => pool.get_mut(&module),
        };
        let replaced = match stock {
            Some(n) if *n > 0 => {
                let pos = &mut positions[k];
                let works = match (sim.switch_model, pos.mechanism) {
                    (SwitchModel::MechanismOnce, Mechanism::Works) => true,
                    (SwitchModel::MechanismOnce, Mechanism::Broken) => false,
                    _ => {
                        let ok = rng.random_bool(pos.p);
                        pos.mechanism = if ok { Mechanism::Works } else { Mechanism::Broken };
                        ok
                    }
                };
                if works {
                    *n -= 1;
                }
                works
            }
            _ => false,
        };
        failures.push(FailureEvent { time, robot, module, class: MaintenanceClass::Corrective, replaced });
        if replaced {
            *replacements.entry(module).or_insert(0) += 1;
            let next = time + positions[k].lifetime.sample(rng);
            if next <= sim.horizon {
                queue.push(Reverse(Due(next, k)));
            }
        } else {
            alive[robot] = false;
            if first_system_failure.is_none() && !team_ok(scenario, &alive) {
                first_system_failure = Some(time);
            }
        }
    }

    TrialOutcome {
        survived: team_ok(scenario, &alive),
        robots_alive: alive,
        failures,
        replacements,
        first_system_failure,
        horizon: sim.horizon,
    }
}
