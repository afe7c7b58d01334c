//! Integer chromosome over spare slots.
//!
//! One gene per free slot of every robot instance, in blueprint order. Gene
//! value `0` leaves the slot empty; any other value is the catalog id of the
//! spare module stored there.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::catalog::ModuleId;
use crate::error::{Error, Result};
use crate::scenario::{RedundancyMap, TeamScenario};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Allocation {
    pub genes: Vec<u32>,
}

impl Allocation {
    pub fn new(genes: Vec<u32>) -> Self {
        Allocation { genes }
    }

    /// All slots empty.
    pub fn empty(scenario: &TeamScenario) -> Self {
        Allocation { genes: vec![0; scenario.total_free_slots()] }
    }

    pub fn len(&self) -> usize {
        self.genes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.genes.is_empty()
    }
}

impl fmt::Display for Allocation {
    /// Space-separated gene values.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.genes.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Gene index range of each robot instance.
pub fn slot_ranges(scenario: &TeamScenario) -> Vec<std::ops::Range<usize>> {
    let mut start = 0;
    (0..scenario.team_size())
        .map(|j| {
            let n = scenario.blueprint_of(j).free_slots;
            let r = start..start + n;
            start += n;
            r
        })
        .collect()
}

/// Robot instance owning each gene position.
pub fn slot_owners(scenario: &TeamScenario) -> Vec<usize> {
    slot_ranges(scenario).into_iter().enumerate().flat_map(|(j, r)| std::iter::repeat_n(j, r.len())).collect()
}

/// Gene values allowed in slots of `robot`: empty plus every catalog id whose
/// storage limit on that robot is not zero.
pub fn slot_alphabet(scenario: &TeamScenario, robot: usize) -> Vec<u32> {
    std::iter::once(0)
        .chain(scenario.catalog.ids().filter(|&id| scenario.storage_limit(robot, id) != Some(0)).map(|id| id.0))
        .collect()
}

/// Per-robot, per-type spare counts.
pub fn decode(allocation: &Allocation, scenario: &TeamScenario) -> Result<RedundancyMap> {
    let expected = scenario.total_free_slots();
    if allocation.len() != expected {
        return Err(Error::GeneLength { expected, actual: allocation.len() });
    }
    let mut red = RedundancyMap::for_scenario(scenario);
    for (j, range) in slot_ranges(scenario).into_iter().enumerate() {
        for &g in &allocation.genes[range] {
            if g == 0 {
                continue;
            }
            let id = ModuleId(g);
            if !scenario.catalog.contains(id) {
                return Err(Error::UnknownModule(id));
            }
            red.add(j, id, 1);
        }
    }
    Ok(red)
}

/// Canonical chromosome for a spare map: each robot's spares in ascending id
/// order, followed by empty slots.
pub fn encode(redundancy: &RedundancyMap, scenario: &TeamScenario) -> Result<Allocation> {
    if redundancy.robots() != scenario.team_size() {
        return Err(Error::Config(format!(
            "redundancy covers {} robots, team has {}",
            redundancy.robots(),
            scenario.team_size()
        )));
    }
    let mut genes = Vec::with_capacity(scenario.total_free_slots());
    for j in 0..scenario.team_size() {
        let slots = scenario.blueprint_of(j).free_slots;
        let mut used = 0;
        for (&id, &n) in redundancy.robot(j) {
            for _ in 0..n {
                genes.push(id.0);
            }
            used += n as usize;
        }
        if used > slots {
            return Err(Error::Constraint(format!("robot {j} holds {used} spares in {slots} free slots")));
        }
        genes.extend(std::iter::repeat_n(0, slots - used));
    }
    Ok(Allocation { genes })
}

/// Resets genes that push a robot over a storage limit to empty, scanning
/// left to right. Unknown ids are also cleared.
pub fn repair(allocation: &mut Allocation, scenario: &TeamScenario) {
    for (j, range) in slot_ranges(scenario).into_iter().enumerate() {
        let mut seen: BTreeMap<u32, u32> = BTreeMap::new();
        for g in &mut allocation.genes[range] {
            if *g == 0 {
                continue;
            }
            let id = ModuleId(*g);
            if !scenario.catalog.contains(id) {
                *g = 0;
                continue;
            }
            let count = seen.entry(*g).or_insert(0);
            match scenario.storage_limit(j, id) {
                Some(limit) if *count >= limit => *g = 0,
                _ => *count += 1,
            }
        }
    }
}
