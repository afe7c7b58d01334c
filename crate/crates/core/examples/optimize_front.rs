//! Reliability/cost Pareto fronts of the reference team at three horizons,
//! tracking hypervolume while the search runs.

use smr_core::fixtures;
use smr_core::optimizer::objective::max_allocation_cost;
use smr_core::optimizer::{hypervolume, nsga2_optimize_observed, GaConfig, ParetoPoint};

fn main() -> smr_core::Result<()> {
    let ga = GaConfig { rng_seed: 7, ..GaConfig::default() };
    for t in [60.0, 90.0, 120.0] {
        let team = fixtures::reference_team().with_horizon(t)?;
        let reference = max_allocation_cost(&team);
        let front = nsga2_optimize_observed(&team, &ga, |generation, archive| {
            if generation % 50 == 0 {
                let objs: Vec<_> = archive.iter().map(ParetoPoint::objectives).collect();
                println!(
                    "  t={t} gen {generation:>3}: {} points, hypervolume {:.1}",
                    objs.len(),
                    hypervolume(&objs, reference)
                );
            }
        })?;
        let best = &front[0];
        let cheapest = front.last().expect("front is never empty");
        println!("t={t}: {} points", front.len());
        println!("  most reliable  R={:.6} cost={:.0} genes [{}]", best.reliability, best.cost, best.allocation);
        println!("  cheapest       R={:.6} cost={:.0}", cheapest.reliability, cheapest.cost);
    }
    Ok(())
}
