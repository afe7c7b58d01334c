//! Corrective-maintenance cost rates of the reference catalog, and a
//! simulated check of one rate.

use smr_core::cost::{cm_cost_rate, continuous_running_cost, mttf};
use smr_core::optimizer::{decode, Allocation};
use smr_core::sim::{cost_trace, run_trials, SimConfig};
use smr_core::{fixtures, CostBreakdown, RunningCostReading};

fn main() -> smr_core::Result<()> {
    let team = fixtures::reference_team();
    println!("{:>3} {:>16} {:>8} {:>10} {:>10}", "id", "role", "cost", "MTTF", "CM/month");
    for m in team.catalog.entries() {
        println!(
            "{:>3} {:>16} {:>8.0} {:>10.1} {:>10.3}",
            m.id,
            m.role,
            m.cost,
            mttf(m.failure_rate)?,
            cm_cost_rate(m.failure_rate, m.maintenance_cost)?
        );
    }

    let genes = Allocation::new(vec![1, 4, 7, 10, 3, 8, 16, 5, 1, 4, 7, 2, 9, 1, 8, 3, 9, 16, 0]);
    let spares = decode(&genes, &team)?;
    let costs = CostBreakdown::compute(&team, &spares)?;
    println!("acquisition {:.0}, corrective {:.2}/month", costs.acquisition, costs.cm_rate);
    for reading in [RunningCostReading::CostTimesLifetime, RunningCostReading::ReplacementRate] {
        let rate = continuous_running_cost(&team.catalog, team.team_size(), &team.active_types(), reading)?;
        println!("continuous running cost ({reading:?}): {rate:.2}/month");
    }

    let long = team.with_horizon(120.0)?;
    let outcomes = run_trials(&long, &spares, &SimConfig::for_scenario(&long, 20_000, 3))?;
    println!("simulated corrective cost over 120 months: {:.2}/month", cost_trace(&outcomes, &long.catalog)?);
    Ok(())
}
