//! Module catalog: failure rates, prices and switching probabilities of every
//! module type a robot may carry.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_probability, check_rate, Error, Result};

/// Catalog index of a module type. Gene value `0` is reserved for an empty slot,
/// so valid ids start at 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ModuleId(pub u32);

impl fmt::Display for ModuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Functional role of a core module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Platform,
    Battery,
    Processor,
    Manipulator,
    Communication,
    ActiveProtection,
}

impl Role {
    pub const ALL: [Role; 6] = [
        Role::Platform,
        Role::Battery,
        Role::Processor,
        Role::Manipulator,
        Role::Communication,
        Role::ActiveProtection,
    ];
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Role::Platform => "platform",
            Role::Battery => "battery",
            Role::Processor => "processor",
            Role::Manipulator => "manipulator",
            Role::Communication => "communication",
            Role::ActiveProtection => "active_protection",
        };
        f.pad(s)
    }
}

/// One catalog entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleTypeSpec {
    pub id: ModuleId,
    pub role: Role,
    /// Failures per month.
    pub failure_rate: f64,
    pub cost: f64,
    /// Probability that a failure is detected and switched by the robot itself.
    pub detect_switch_self: f64,
    /// Probability that a failure is detected and switched with help of another robot.
    pub detect_switch_other: f64,
    /// Cost of one corrective replacement.
    pub maintenance_cost: f64,
}

impl ModuleTypeSpec {
    pub fn validate(&self) -> Result<()> {
        if self.id.0 == 0 {
            return Err(Error::Config("module id 0 is reserved for empty slots".into()));
        }
        check_rate(self.failure_rate)?;
        check_probability("detect_switch_self", self.detect_switch_self)?;
        check_probability("detect_switch_other", self.detect_switch_other)?;
        if !(self.cost >= 0.0 && self.cost.is_finite()) {
            return Err(Error::Domain(format!("module {} cost {} must be >= 0", self.id, self.cost)));
        }
        if !(self.maintenance_cost >= 0.0 && self.maintenance_cost.is_finite()) {
            return Err(Error::Domain(format!(
                "module {} maintenance cost {} must be >= 0",
                self.id, self.maintenance_cost
            )));
        }
        Ok(())
    }
}

/// Validated set of module types, addressable by id.
#[derive(Debug, Clone, PartialEq)]
pub struct Catalog {
    entries: Vec<ModuleTypeSpec>,
    index: BTreeMap<ModuleId, usize>,
}

impl Catalog {
    pub fn new(entries: Vec<ModuleTypeSpec>) -> Result<Self> {
        let mut index = BTreeMap::new();
        for (pos, e) in entries.iter().enumerate() {
            e.validate()?;
            if index.insert(e.id, pos).is_some() {
                return Err(Error::Config(format!("duplicate module id {}", e.id)));
            }
        }
        Ok(Catalog { entries, index })
    }

    pub fn get(&self, id: ModuleId) -> Result<&ModuleTypeSpec> {
        self.index.get(&id).map(|&i| &self.entries[i]).ok_or(Error::UnknownModule(id))
    }

    pub fn contains(&self, id: ModuleId) -> bool {
        self.index.contains_key(&id)
    }

    /// Ids in ascending order.
    pub fn ids(&self) -> impl Iterator<Item = ModuleId> + '_ {
        self.index.keys().copied()
    }

    pub fn entries(&self) -> &[ModuleTypeSpec] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
