//! Two-objective redundancy allocation: maximize team reliability at the
//! mission horizon, minimize acquisition cost.

pub mod allocation;
pub mod enumerate;
pub mod nsga2;
pub mod objective;
pub mod operators;
pub mod pareto;

pub use allocation::{decode, encode, repair, Allocation};
pub use enumerate::{exhaustive_enumerate, search_space, EnumerationLimits, SearchSpace};
pub use nsga2::{nsga2_optimize, nsga2_optimize_observed, GaConfig};
pub use objective::{evaluate, objective_reliability, Evaluation};
pub use pareto::{crowding_distance, fast_non_dominated_sort, hypervolume, Objectives, ParetoPoint};
