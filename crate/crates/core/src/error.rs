use thiserror::Error;

use crate::catalog::{ModuleId, Role};

/// Errors raised by the reliability, cost, optimizer and simulator APIs.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A numeric argument lies outside the domain of the formula.
    #[error("domain error: {0}")]
    Domain(String),

    /// The scenario or redundancy description is inconsistent.
    #[error("configuration error: {0}")]
    Config(String),

    #[error("unknown module id {0}")]
    UnknownModule(ModuleId),

    #[error("robot {robot} has no active module with role {role}")]
    RoleAbsent { robot: usize, role: Role },

    /// Declared storage limits are exceeded.
    #[error("constraint violated: {0}")]
    Constraint(String),

    #[error("allocation has {actual} genes, scenario has {expected} free slots")]
    GeneLength { expected: usize, actual: usize },

    #[error("no feasible allocation exists for this scenario")]
    NoFeasibleSolution,

    /// Exhaustive enumeration refused; carries the search-space count.
    #[error("search space of {count} allocations exceeds ceiling {ceiling}")]
    CeilingExceeded { count: u128, ceiling: u128 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_probability(name: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} = {p} is not a probability")))
    }
}

pub(crate) fn check_rate(lambda: f64) -> Result<()> {
    if lambda > 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("failure rate {lambda} must be positive and finite")))
    }
}

pub(crate) fn check_time(t: f64) -> Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("time {t} must be non-negative and finite")))
    }
}
