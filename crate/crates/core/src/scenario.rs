//! Robot blueprints, team scenarios and per-robot spare allocations.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::catalog::{Catalog, ModuleId, Role};
use crate::error::{check_time, Error, Result};

/// One robot type: its active modules and spare storage.
#[derive(Debug, Clone, PartialEq)]
pub struct RobotBlueprint {
    pub type_index: usize,
    pub active_modules: Vec<ModuleId>,
    pub free_slots: usize,
    pub slot_capacity: usize,
    /// Per-type storage limits `w_ji^limit` for each robot of this type.
    pub per_type_limits: BTreeMap<ModuleId, u32>,
}

impl RobotBlueprint {
    pub fn new(type_index: usize, active_modules: Vec<ModuleId>, free_slots: usize, slot_capacity: usize) -> Self {
        RobotBlueprint { type_index, active_modules, free_slots, slot_capacity, per_type_limits: BTreeMap::new() }
    }

    pub fn with_limit(mut self, id: ModuleId, limit: u32) -> Self {
        self.per_type_limits.insert(id, limit);
        self
    }

    pub fn validate(&self, catalog: &Catalog) -> Result<()> {
        if self.active_modules.len() + self.free_slots > self.slot_capacity {
            return Err(Error::Config(format!(
                "robot type {}: {} active modules + {} free slots exceed capacity {}",
                self.type_index,
                self.active_modules.len(),
                self.free_slots,
                self.slot_capacity
            )));
        }
        let mut seen = BTreeSet::new();
        for &id in &self.active_modules {
            catalog.get(id)?;
            if !seen.insert(id) {
                return Err(Error::Config(format!(
                    "robot type {}: module {id} listed twice as active",
                    self.type_index
                )));
            }
        }
        for &id in self.per_type_limits.keys() {
            catalog.get(id)?;
        }
        Ok(())
    }

    pub fn has_active(&self, id: ModuleId) -> bool {
        self.active_modules.contains(&id)
    }

    /// Active module ids with the given role.
    pub fn modules_with_role<'a>(&'a self, catalog: &'a Catalog, role: Role) -> impl Iterator<Item = ModuleId> + 'a {
        self.active_modules.iter().copied().filter(move |&id| catalog.get(id).map(|m| m.role == role).unwrap_or(false))
    }
}

/// Team-level survival criterion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionalRequirement {
    /// Every robot must survive.
    Full,
    /// At least one robot of every type must survive.
    Minimal,
    /// At least `m_l` robots of type `l` must survive.
    Partial(Vec<u32>),
}

/// Where spare modules are kept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StorageMode {
    /// One pool per module type shared by the whole team.
    Shared,
    /// Each robot may only use the spares in its own storage.
    #[default]
    PerRobot,
}

/// A robot instance inside a team: blueprint index and copy number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RobotInstance {
    pub blueprint: usize,
    pub copy: u32,
}

/// The whole fleet.
#[derive(Debug, Clone, PartialEq)]
pub struct TeamScenario {
    pub catalog: Catalog,
    pub blueprints: Vec<RobotBlueprint>,
    /// `v_l`: number of robots built from each blueprint.
    pub counts: Vec<u32>,
    /// Mission horizon in months.
    pub horizon: f64,
    pub requirement: FunctionalRequirement,
    pub storage: StorageMode,
    /// General per-type storage limit `w_i^limit` applying to every robot.
    pub type_limits: BTreeMap<ModuleId, u32>,
    instances: Vec<RobotInstance>,
}

impl TeamScenario {
    pub fn new(
        catalog: Catalog,
        blueprints: Vec<RobotBlueprint>,
        counts: Vec<u32>,
        horizon: f64,
        requirement: FunctionalRequirement,
    ) -> Result<Self> {
        if counts.len() != blueprints.len() {
            return Err(Error::Config(format!("{} counts given for {} robot types", counts.len(), blueprints.len())));
        }
        check_time(horizon)?;
        for (b, &c) in blueprints.iter().zip(&counts) {
            b.validate(&catalog)?;
            if c == 0 {
                return Err(Error::Config(format!("robot type {} has count 0", b.type_index)));
            }
        }
        if let FunctionalRequirement::Partial(m) = &requirement {
            if m.len() != counts.len() {
                return Err(Error::Config(format!(
                    "partial requirement lists {} thresholds for {} robot types",
                    m.len(),
                    counts.len()
                )));
            }
            for (&ml, &vl) in m.iter().zip(&counts) {
                if ml == 0 || ml > vl {
                    return Err(Error::Domain(format!("partial threshold {ml} outside [1, {vl}]")));
                }
            }
        }
        let instances = blueprints
            .iter()
            .enumerate()
            .zip(&counts)
            .flat_map(|((b, _), &c)| (0..c).map(move |copy| RobotInstance { blueprint: b, copy }))
            .collect();
        Ok(TeamScenario {
            catalog,
            blueprints,
            counts,
            horizon,
            requirement,
            storage: StorageMode::default(),
            type_limits: BTreeMap::new(),
            instances,
        })
    }

    pub fn with_storage(mut self, storage: StorageMode) -> Self {
        self.storage = storage;
        self
    }

    pub fn with_type_limits(mut self, limits: BTreeMap<ModuleId, u32>) -> Result<Self> {
        for &id in limits.keys() {
            self.catalog.get(id)?;
        }
        self.type_limits = limits;
        Ok(self)
    }

    pub fn with_horizon(mut self, horizon: f64) -> Result<Self> {
        check_time(horizon)?;
        self.horizon = horizon;
        Ok(self)
    }

    pub fn with_requirement(self, requirement: FunctionalRequirement) -> Result<Self> {
        let TeamScenario { catalog, blueprints, counts, horizon, storage, type_limits, .. } = self;
        let mut s = TeamScenario::new(catalog, blueprints, counts, horizon, requirement)?;
        s.storage = storage;
        s.type_limits = type_limits;
        Ok(s)
    }

    /// Robot instances in blueprint order.
    pub fn instances(&self) -> &[RobotInstance] {
        &self.instances
    }

    pub fn team_size(&self) -> usize {
        self.instances.len()
    }

    pub fn blueprint_of(&self, robot: usize) -> &RobotBlueprint {
        &self.blueprints[self.instances[robot].blueprint]
    }

    /// Total chromosome length: free slots summed over robot instances.
    pub fn total_free_slots(&self) -> usize {
        self.instances.iter().map(|r| self.blueprints[r.blueprint].free_slots).sum()
    }

    /// Effective storage limit for module `id` on robot instance `robot`.
    pub fn storage_limit(&self, robot: usize, id: ModuleId) -> Option<u32> {
        let local = self.blueprint_of(robot).per_type_limits.get(&id).copied();
        let general = self.type_limits.get(&id).copied();
        match (local, general) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    /// Whether the requirement demands that every robot survives.
    pub fn requires_every_robot(&self) -> bool {
        match &self.requirement {
            FunctionalRequirement::Full => true,
            FunctionalRequirement::Minimal => self.counts.iter().all(|&c| c == 1),
            FunctionalRequirement::Partial(m) => m.iter().zip(&self.counts).all(|(a, b)| a == b),
        }
    }

    /// Distinct active module ids across the whole team.
    pub fn active_types(&self) -> BTreeSet<ModuleId> {
        self.blueprints.iter().flat_map(|b| b.active_modules.iter().copied()).collect()
    }
}

/// Spare counts per robot instance and module type.
///
/// A robot holding `s` spares of an active type has `n = s + 1` modules of
/// that type in total. Types without an entry hold zero spares.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RedundancyMap {
    spares: Vec<BTreeMap<ModuleId, u32>>,
}

impl RedundancyMap {
    /// No spares on any of `robots` instances.
    pub fn empty(robots: usize) -> Self {
        RedundancyMap { spares: vec![BTreeMap::new(); robots] }
    }

    pub fn for_scenario(scenario: &TeamScenario) -> Self {
        Self::empty(scenario.team_size())
    }

    pub fn from_robots(spares: Vec<BTreeMap<ModuleId, u32>>) -> Self {
        let spares = spares.into_iter().map(|m| m.into_iter().filter(|&(_, n)| n > 0).collect()).collect();
        RedundancyMap { spares }
    }

    pub fn robots(&self) -> usize {
        self.spares.len()
    }

    pub fn spares(&self, robot: usize, id: ModuleId) -> u32 {
        self.spares.get(robot).and_then(|m| m.get(&id)).copied().unwrap_or(0)
    }

    pub fn robot(&self, robot: usize) -> &BTreeMap<ModuleId, u32> {
        &self.spares[robot]
    }

    pub fn set(&mut self, robot: usize, id: ModuleId, count: u32) {
        if count == 0 {
            self.spares[robot].remove(&id);
        } else {
            self.spares[robot].insert(id, count);
        }
    }

    pub fn add(&mut self, robot: usize, id: ModuleId, count: u32) {
        let cur = self.spares(robot, id);
        self.set(robot, id, cur + count);
    }

    /// `n_i`: active plus spare modules of `id` on `robot`.
    pub fn module_count(&self, scenario: &TeamScenario, robot: usize, id: ModuleId) -> u32 {
        let active = u32::from(scenario.blueprint_of(robot).has_active(id));
        active + self.spares(robot, id)
    }

    /// `m_i = Σ_j w_ji`: spares of each type across the team.
    pub fn spare_totals(&self) -> BTreeMap<ModuleId, u32> {
        let mut totals = BTreeMap::new();
        for m in &self.spares {
            for (&id, &n) in m {
                *totals.entry(id).or_insert(0) += n;
            }
        }
        totals
    }

    /// Active plus spare module counts per type across the team.
    pub fn module_totals(&self, scenario: &TeamScenario) -> BTreeMap<ModuleId, u32> {
        let mut totals = self.spare_totals();
        for r in scenario.instances() {
            for &id in &scenario.blueprints[r.blueprint].active_modules {
                *totals.entry(id).or_insert(0) += 1;
            }
        }
        totals
    }

    /// Map where every robot sees the whole team's spares of each of its
    /// active types. This is the pooled reading used by the shared-storage
    /// objective.
    pub fn pooled(&self, scenario: &TeamScenario) -> RedundancyMap {
        let totals = self.spare_totals();
        let spares = (0..scenario.team_size())
            .map(|j| {
                scenario
                    .blueprint_of(j)
                    .active_modules
                    .iter()
                    .filter_map(|id| totals.get(id).map(|&n| (*id, n)))
                    .collect()
            })
            .collect();
        RedundancyMap::from_robots(spares)
    }

    /// Union of two maps over the same robots.
    pub fn merged(&self, other: &RedundancyMap) -> Result<RedundancyMap> {
        if self.robots() != other.robots() {
            return Err(Error::Config("redundancy maps cover different robot sets".into()));
        }
        let mut out = self.clone();
        for (j, m) in other.spares.iter().enumerate() {
            for (&id, &n) in m {
                out.add(j, id, n);
            }
        }
        Ok(out)
    }

    /// Checks coverage, slot capacity and storage limits against `scenario`.
    pub fn check(&self, scenario: &TeamScenario) -> Result<()> {
        if self.robots() != scenario.team_size() {
            return Err(Error::Config(format!(
                "redundancy covers {} robots, team has {}",
                self.robots(),
                scenario.team_size()
            )));
        }
        for (j, m) in self.spares.iter().enumerate() {
            let bp = scenario.blueprint_of(j);
            let used: u32 = m.values().sum();
            if used as usize > bp.free_slots {
                return Err(Error::Constraint(format!(
                    "robot {j} stores {used} spares in {} free slots",
                    bp.free_slots
                )));
            }
            for (&id, &n) in m {
                scenario.catalog.get(id)?;
                if let Some(limit) = scenario.storage_limit(j, id) {
                    if n > limit {
                        return Err(Error::Constraint(format!(
                            "robot {j} stores {n} spares of module {id}, limit {limit}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}
