//! Acquisition, corrective-maintenance and running costs.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::catalog::{Catalog, ModuleId};
use crate::error::{check_rate, Error, Result};
use crate::scenario::{RedundancyMap, TeamScenario};

/// Maintenance classes. Only corrective maintenance carries a cost formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MaintenanceClass {
    /// Replacement after a module malfunctions.
    Corrective,
    /// Planned periodic replacement.
    Preventive,
    /// Diagnosis to find the next module to replace.
    FailureFinding,
}

/// Mean time to failure of an exponential lifetime, in months.
pub fn mttf(lambda: f64) -> Result<f64> {
    check_rate(lambda)?;
    Ok(1.0 / lambda)
}

/// Time-averaged corrective-maintenance cost per month: `λ·γ`.
pub fn cm_cost_rate(lambda: f64, maintenance_cost: f64) -> Result<f64> {
    check_rate(lambda)?;
    check_cost(maintenance_cost)?;
    Ok(lambda * maintenance_cost)
}

fn check_cost(c: f64) -> Result<()> {
    if c >= 0.0 && c.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("cost {c} must be non-negative and finite")))
    }
}

/// `Σ c_i·m_i` where `counts` holds active plus spare modules per type.
pub fn acquisition_cost(catalog: &Catalog, counts: &BTreeMap<ModuleId, u32>) -> Result<f64> {
    counts.iter().try_fold(0.0, |acc, (&id, &n)| Ok(acc + catalog.get(id)?.cost * f64::from(n)))
}

/// Which reading of the continuous running cost to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunningCostReading {
    /// `L·Σ c_i/λ_i`: module cost times mean lifetime. Its unit is
    /// currency·months, not currency/month.
    #[default]
    CostTimesLifetime,
    /// `L·Σ c_i·λ_i`: the replacement cost rate per month.
    ReplacementRate,
}

/// Continuous running cost of a team of `team_size` robots over the given
/// active module types.
pub fn continuous_running_cost(
    catalog: &Catalog,
    team_size: usize,
    active_set: &BTreeSet<ModuleId>,
    reading: RunningCostReading,
) -> Result<f64> {
    let per_robot = active_set.iter().try_fold(0.0, |acc, &id| {
        let m = catalog.get(id)?;
        check_rate(m.failure_rate)?;
        Ok::<_, Error>(
            acc + match reading {
                RunningCostReading::CostTimesLifetime => m.cost / m.failure_rate,
                RunningCostReading::ReplacementRate => m.cost * m.failure_rate,
            },
        )
    })?;
    Ok(team_size as f64 * per_robot)
}

/// Cost summary of one team configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostBreakdown {
    pub acquisition: f64,
    /// Corrective-maintenance cost per month over every active module.
    pub cm_rate: f64,
    /// Continuous running cost, [`RunningCostReading::CostTimesLifetime`] reading.
    pub continuous_rate: f64,
    /// Module count and `c_i·count` per type.
    pub per_module: BTreeMap<ModuleId, (u32, f64)>,
}

impl CostBreakdown {
    pub fn compute(scenario: &TeamScenario, redundancy: &RedundancyMap) -> Result<Self> {
        let counts = redundancy.module_totals(scenario);
        let mut per_module = BTreeMap::new();
        for (&id, &n) in &counts {
            per_module.insert(id, (n, scenario.catalog.get(id)?.cost * f64::from(n)));
        }
        let acquisition = acquisition_cost(&scenario.catalog, &counts)?;
        let mut cm_rate = 0.0;
        for inst in scenario.instances() {
            for &id in &scenario.blueprints[inst.blueprint].active_modules {
                let m = scenario.catalog.get(id)?;
                cm_rate += cm_cost_rate(m.failure_rate, m.maintenance_cost)?;
            }
        }
        let continuous_rate = continuous_running_cost(
            &scenario.catalog,
            scenario.team_size(),
            &scenario.active_types(),
            RunningCostReading::CostTimesLifetime,
        )?;
        Ok(CostBreakdown { acquisition, cm_rate, continuous_rate, per_module })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{ModuleTypeSpec, Role};
    use approx::assert_relative_eq;

    fn table(entries: &[(u32, f64, f64)]) -> Catalog {
        Catalog::new(
            entries
                .iter()
                .map(|&(id, cost, lambda)| ModuleTypeSpec {
                    id: ModuleId(id),
                    role: Role::Platform,
                    failure_rate: lambda,
                    cost,
                    detect_switch_self: 1.0,
                    detect_switch_other: 1.0,
                    maintenance_cost: cost,
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn mttf_values() {
        assert_relative_eq!(mttf(0.0031).unwrap(), 322.58064516129, max_relative = 1e-12);
        assert_eq!(mttf(1.0).unwrap(), 1.0);
        assert!(mttf(0.0).is_err());
        assert!(mttf(-2.0).is_err());
    }

    #[test]
    fn cm_rate_values() {
        assert_relative_eq!(cm_cost_rate(0.005, 230.0).unwrap(), 1.15, max_relative = 1e-14);
        assert_eq!(cm_cost_rate(0.3, 0.0).unwrap(), 0.0);
        assert!(cm_cost_rate(0.3, -1.0).is_err());
        assert!(cm_cost_rate(0.0, 1.0).is_err());
        assert_relative_eq!(
            cm_cost_rate(0.004, 2.0 * 77.0).unwrap(),
            2.0 * cm_cost_rate(0.004, 77.0).unwrap(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn acquisition_values() {
        let cat = table(&[
            (1, 2000.0, 0.0031),
            (4, 200.0, 0.005),
            (7, 400.0, 0.0034),
            (10, 300.0, 0.0021),
            (13, 1600.0, 0.0012),
        ]);
        let mut counts: BTreeMap<ModuleId, u32> = [1, 4, 7, 10].iter().map(|&i| (ModuleId(i), 1)).collect();
        assert_eq!(acquisition_cost(&cat, &counts).unwrap(), 2900.0);
        assert_eq!(acquisition_cost(&cat, &BTreeMap::new()).unwrap(), 0.0);
        counts.insert(ModuleId(13), 1);
        assert_eq!(acquisition_cost(&cat, &counts).unwrap(), 4500.0);
        counts.insert(ModuleId(99), 1);
        assert_eq!(acquisition_cost(&cat, &counts), Err(Error::UnknownModule(ModuleId(99))));
    }

    #[test]
    fn running_cost_values() {
        let cat = table(&[(1, 2000.0, 0.0031)]);
        let set = BTreeSet::from([ModuleId(1)]);
        let one = continuous_running_cost(&cat, 1, &set, RunningCostReading::CostTimesLifetime).unwrap();
        assert_relative_eq!(one, 645161.29032258, max_relative = 1e-12);
        assert_eq!(continuous_running_cost(&cat, 0, &set, RunningCostReading::CostTimesLifetime).unwrap(), 0.0);
        let two = continuous_running_cost(&cat, 2, &set, RunningCostReading::CostTimesLifetime).unwrap();
        assert_eq!(two, 2.0 * one);
        let rate = continuous_running_cost(&cat, 1, &set, RunningCostReading::ReplacementRate).unwrap();
        assert_relative_eq!(rate, 6.2, max_relative = 1e-12);
    }
}
