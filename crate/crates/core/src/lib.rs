//! Reliability and maintenance-cost models for teams of modular robots that
//! repair each other from cold-standby spare modules, plus a two-objective
//! spare-allocation optimizer and a Monte-Carlo simulator to check them.
//!
//! ```
//! use smr_core::{fixtures, team_reliability, RedundancyMap};
//!
//! let team = fixtures::reference_team();
//! let none = RedundancyMap::for_scenario(&team);
//! let r = team_reliability(&team, &none).unwrap();
//! assert!(r > 0.0 && r < 1.0);
//! ```

pub mod catalog;
pub mod cost;
pub mod error;
pub mod fixtures;
pub mod optimizer;
pub mod reliability;
pub mod scenario;
pub mod scenario_file;
pub mod sim;

pub use catalog::{Catalog, ModuleId, ModuleTypeSpec, Role};
pub use cost::{CostBreakdown, MaintenanceClass, RunningCostReading};
pub use error::{Error, Result};
pub use reliability::{
    capability_reliability, module_reliability, perfect_switch_reliability, robot_reliability, shared_pool_reliability,
    team_reliability, team_reliability_own_storage, team_reliability_with, Capability, OwnStorageCombination,
};
pub use scenario::{FunctionalRequirement, RedundancyMap, RobotBlueprint, StorageMode, TeamScenario};
pub use scenario_file::{load_scenario, parse_scenario, ScenarioFile, ScenarioFileError};
