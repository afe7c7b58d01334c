//! Repair feasibility between robots and the robustness level `k`: the
//! largest number of simultaneous module failures the team can always
//! identify and replace.
//!
//! A failure set is checked as an instantaneous condition on the team after
//! the failures occur. Repairs are applied until no further repair is
//! possible; a repaired module may enable later repairs (a replaced
//! processor lets its robot repair itself again). Failure sets may span
//! robots and may hit the modules that repairs depend on.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{SimConfig, SwitchSource};
use crate::catalog::{ModuleId, Role};
use crate::scenario::{RedundancyMap, StorageMode, TeamScenario};

/// Functioning status of a robot's roles. A role functions when the robot
/// has at least one module of that role and none of them has failed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RobotState {
    functioning: BTreeSet<Role>,
}

impl RobotState {
    pub fn new(functioning: impl IntoIterator<Item = Role>) -> Self {
        RobotState { functioning: functioning.into_iter().collect() }
    }

    /// Every core role working.
    pub fn fully_functional() -> Self {
        Self::new(Role::ALL)
    }

    pub fn has(&self, role: Role) -> bool {
        self.functioning.contains(&role)
    }

    fn has_all(&self, roles: &[Role]) -> bool {
        roles.iter().all(|&r| self.has(r))
    }

    /// Still broadcasting liveliness signals.
    pub fn reports(&self) -> bool {
        self.has_all(&[Role::Communication, Role::Processor])
    }

    /// Can replace its own modules.
    pub fn can_self_repair(&self) -> bool {
        self.has_all(&[Role::Manipulator, Role::Battery, Role::Processor])
    }

    /// Can travel to and work on another robot.
    pub fn can_assist(&self) -> bool {
        self.has_all(&[Role::Platform, Role::Battery, Role::Processor, Role::Manipulator])
    }

    fn of(scenario: &TeamScenario, robot: usize, failed: &BTreeSet<(usize, ModuleId)>) -> Self {
        let bp = scenario.blueprint_of(robot);
        let mut present = BTreeSet::new();
        let mut broken = BTreeSet::new();
        for &id in &bp.active_modules {
            let Ok(m) = scenario.catalog.get(id) else { continue };
            present.insert(m.role);
            if failed.contains(&(robot, id)) {
                broken.insert(m.role);
            }
        }
        RobotState { functioning: present.difference(&broken).copied().collect() }
    }
}

/// Whether `target`'s failure can be noticed: it still reports on its own, or
/// another robot able to listen notices its silence.
pub fn is_detectable(target: &RobotState, observers: &[&RobotState]) -> bool {
    target.reports() || observers.iter().any(|o| o.reports())
}

/// Self repair when `helper` is `None`, otherwise repair of `target` by
/// `helper`, which also acts as the observer for a silent target.
pub fn repair_feasible(helper: Option<&RobotState>, target: &RobotState) -> bool {
    match helper {
        None => target.can_self_repair(),
        Some(h) => h.can_assist() && is_detectable(target, &[h]),
    }
}

/// Whether every module in `failed` can be identified and replaced.
pub fn failure_set_recoverable(
    scenario: &TeamScenario,
    redundancy: &RedundancyMap,
    sim: &SimConfig,
    failed: &[(usize, ModuleId)],
) -> bool {
    let mut down: BTreeSet<(usize, ModuleId)> = failed.iter().copied().collect();
    let mut own: Vec<BTreeMap<ModuleId, u32>> =
        (0..scenario.team_size()).map(|j| redundancy.robot(j).clone()).collect();
    let mut pool = redundancy.spare_totals();
    let able = |p: f64| p >= sim.robustness_threshold;

    loop {
        let states: Vec<RobotState> = (0..scenario.team_size()).map(|j| RobotState::of(scenario, j, &down)).collect();
        let mut repaired = None;
        for &(robot, id) in &down {
            let stock = match sim.storage_mode {
                StorageMode::PerRobot => own[robot].get(&id).copied().unwrap_or(0),
                StorageMode::Shared => pool.get(&id).copied().unwrap_or(0),
            };
            if stock == 0 {
                continue;
            }
            let Ok(m) = scenario.catalog.get(id) else { continue };
            let self_p = match sim.switching {
                SwitchSource::SelfSwitch => m.detect_switch_self,
                SwitchSource::Assisted => m.detect_switch_other,
            };
            let target = &states[robot];
            let by_self = able(self_p) && repair_feasible(None, target);
            let by_other = able(m.detect_switch_other) && {
                let observers: Vec<&RobotState> =
                    states.iter().enumerate().filter(|&(h, _)| h != robot).map(|(_, s)| s).collect();
                is_detectable(target, &observers)
                    && states.iter().enumerate().any(|(h, s)| h != robot && s.can_assist())
            };
            if by_self || by_other {
                repaired = Some((robot, id));
                break;
            }
        }
        let Some((robot, id)) = repaired else {
            return down.is_empty();
        };
        down.remove(&(robot, id));
        let stock = match sim.storage_mode {
            StorageMode::PerRobot => own[robot].get_mut(&id),
            StorageMode::Shared => pool.get_mut(&id),
        };
        if let Some(n) = stock {
            *n -= 1;
        }
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u64::MAX,
        };
    }
    acc
}

/// Calls `f` on every `k`-subset of `0..n` until it returns false.
fn all_subsets(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return false;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Largest `k` such that every set of at most `k` simultaneously failing
/// active modules is recoverable. Sets of one size are enumerated while their
/// number stays below `sim.robustness_ceiling`, and sampled otherwise.
pub fn estimate_robustness_level(scenario: &TeamScenario, redundancy: &RedundancyMap, sim: &SimConfig) -> usize {
    let modules: Vec<(usize, ModuleId)> = (0..scenario.team_size())
        .flat_map(|j| scenario.blueprint_of(j).active_modules.iter().map(move |&id| (j, id)))
        .collect();
    let n = modules.len();
    let mut rng = ChaCha8Rng::seed_from_u64(sim.rng_seed);
    let mut set = Vec::with_capacity(n);
    for k in 1..=n {
        let mut check = |idx: &[usize]| {
            set.clear();
            set.extend(idx.iter().map(|&i| modules[i]));
            failure_set_recoverable(scenario, redundancy, sim, &set)
        };
        let ok = if binomial(n as u64, k as u64) <= sim.robustness_ceiling {
            all_subsets(n, k, check)
        } else {
            (0..sim.robustness_samples).all(|_| {
                let mut idx = sample(&mut rng, n, k).into_vec();
                idx.sort_unstable();
                check(&idx)
            })
        };
        if !ok {
            return k - 1;
        }
    }
    n
}
