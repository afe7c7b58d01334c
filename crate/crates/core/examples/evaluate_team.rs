//! Reliability of the reference team with one spare of each active module
//! type held in the shared pool, at several horizons.

use smr_core::reliability::robot_reliabilities;
use smr_core::{fixtures, shared_pool_reliability, team_reliability_with, RedundancyMap, Result};

fn main() -> Result<()> {
    let team = fixtures::reference_team();
    let mut spares = RedundancyMap::for_scenario(&team);
    for id in team.active_types() {
        spares.add(0, id, 1);
    }
    let pooled = spares.pooled(&team);

    println!("{:>6}  {:>10}  {:>10}  robots", "months", "minimal", "exact");
    for t in [0.0, 30.0, 60.0, 90.0, 120.0] {
        let minimal = team_reliability_with(&team, &pooled, t, &team.requirement)?;
        let exact = shared_pool_reliability(&team, &spares, t)?;
        let robots: Vec<String> =
            robot_reliabilities(&team, &pooled, t)?.iter().flatten().map(|r| format!("{r:.3}")).collect();
        println!("{t:>6.0}  {minimal:>10.6}  {exact:>10.6}  {}", robots.join(" "));
    }
    Ok(())
}
