//! Monte-Carlo estimates next to the closed forms for a few random small
//! teams, and the effect of drawing switching success at every switch.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use smr_core::fixtures::{random_scenario, RandomScenarioLimits};
use smr_core::sim::{estimate_reliability, SimConfig, SwitchModel};
use smr_core::team_reliability;

fn main() -> smr_core::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    println!("{:>3} {:>6} {:>10} {:>10} {:>8} {:>10}", "#", "robots", "analytic", "simulated", "z", "per-switch");
    for k in 0..8 {
        let (team, spares) = random_scenario(&mut rng, &RandomScenarioLimits::default());
        let analytic = team_reliability(&team, &spares)?;
        let sim = SimConfig::for_scenario(&team, 100_000, k);
        let est = estimate_reliability(&team, &spares, &sim)?;
        let per_switch =
            estimate_reliability(&team, &spares, &SimConfig { switch_model: SwitchModel::PerSwitch, ..sim })?;
        println!(
            "{k:>3} {:>6} {analytic:>10.6} {:>10.6} {:>8.2} {:>10.6}",
            team.team_size(),
            est.estimate,
            est.z_score(analytic),
            per_switch.estimate
        );
    }
    Ok(())
}
