//! JSON scenario documents.
//!
//! ```json
//! {
//!   "catalog": [{"id": 1, "role": "platform", "failure_rate": 0.0031, "cost": 2000,
//!                "detect_switch_self": 1, "detect_switch_other": 1, "maintenance_cost": 2000}],
//!   "robots": [{"type_index": 1, "active_modules": [1], "free_slots": 2, "slot_capacity": 6,
//!               "per_type_limits": {"1": 1}}],
//!   "counts": [2],
//!   "requirement": "minimal",
//!   "horizon_months": 60,
//!   "storage": "shared",
//!   "limits": {"1": 2}
//! }
//! ```
//!
//! `requirement` is `"full"`, `"minimal"` or `{"partial": [m_1, ...]}`;
//! `storage` is `"shared"` or `"per_robot"` (the default). `limits` bounds
//! the spares of a type held by any single robot. Unknown keys are rejected.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::{Catalog, ModuleId, ModuleTypeSpec};
use crate::error::Error;
use crate::scenario::{FunctionalRequirement, RobotBlueprint, StorageMode, TeamScenario};

#[derive(Debug, Error)]
pub enum ScenarioFileError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },

    /// Malformed JSON or a schema mismatch, with its 1-based position.
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },

    /// Well-formed document describing an invalid scenario.
    #[error("{field}: {source}")]
    Invalid { field: String, source: Error },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RobotEntry {
    pub type_index: usize,
    pub active_modules: Vec<ModuleId>,
    pub free_slots: usize,
    pub slot_capacity: usize,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub per_type_limits: BTreeMap<ModuleId, u32>,
}

/// Raw document, before validation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub catalog: Vec<ModuleTypeSpec>,
    pub robots: Vec<RobotEntry>,
    pub counts: Vec<u32>,
    pub requirement: FunctionalRequirement,
    pub horizon_months: f64,
    #[serde(default)]
    pub storage: StorageMode,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub limits: BTreeMap<ModuleId, u32>,
}

fn invalid(field: impl Into<String>) -> impl FnOnce(Error) -> ScenarioFileError {
    let field = field.into();
    move |source| ScenarioFileError::Invalid { field, source }
}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<Self, ScenarioFileError> {
        serde_json::from_str(text).map_err(|e| ScenarioFileError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn into_scenario(self) -> Result<TeamScenario, ScenarioFileError> {
        let catalog = Catalog::new(self.catalog).map_err(invalid("catalog"))?;
        let mut blueprints = Vec::with_capacity(self.robots.len());
        for (k, r) in self.robots.into_iter().enumerate() {
            let bp = RobotBlueprint {
                type_index: r.type_index,
                active_modules: r.active_modules,
                free_slots: r.free_slots,
                slot_capacity: r.slot_capacity,
                per_type_limits: r.per_type_limits,
            };
            bp.validate(&catalog).map_err(invalid(format!("robots[{k}]")))?;
            blueprints.push(bp);
        }
        let requirement = self.requirement;
        let scenario =
            TeamScenario::new(catalog, blueprints, self.counts, self.horizon_months, FunctionalRequirement::Full)
                .map_err(invalid("counts/horizon_months"))?
                .with_requirement(requirement)
                .map_err(invalid("requirement"))?
                .with_type_limits(self.limits)
                .map_err(invalid("limits"))?;
        Ok(scenario.with_storage(self.storage))
    }
}

pub fn parse_scenario(text: &str) -> Result<TeamScenario, ScenarioFileError> {
    ScenarioFile::parse(text)?.into_scenario()
}

pub fn load_scenario(path: impl AsRef<Path>) -> Result<TeamScenario, ScenarioFileError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|source| ScenarioFileError::Io { path: path.display().to_string(), source })?;
    parse_scenario(&text)
}
