//! Monte-Carlo oracle for the closed-form reliability and cost results, and
//! the robustness-level estimator.
//!
//! Trials are independent. Trial `k` draws from its own ChaCha stream `k`
//! under the master seed, so results do not depend on how trials are
//! scheduled across threads.

mod robustness;
mod trial;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::scenario::{RedundancyMap, StorageMode, TeamScenario};

pub use robustness::{estimate_robustness_level, failure_set_recoverable, is_detectable, repair_feasible, RobotState};
pub use trial::{simulate_trial, FailureEvent, TrialOutcome};

/// How switching success is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SwitchModel {
    /// One Bernoulli(p) draw per module position decides whether its
    /// detection/switching works for the whole mission. Matches the
    /// closed-form cold-standby formula exactly.
    #[default]
    MechanismOnce,
    /// An independent Bernoulli(p) draw at every switch.
    PerSwitch,
}

/// Which catalog probability governs a switch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SwitchSource {
    /// `p^s`: the robot switches its own module.
    #[default]
    SelfSwitch,
    /// `p^o`: another robot performs the switch.
    Assisted,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub trials: u64,
    pub rng_seed: u64,
    /// Mission length in months.
    pub horizon: f64,
    pub storage_mode: StorageMode,
    pub switch_model: SwitchModel,
    pub switching: SwitchSource,
    /// Minimum switching probability counted as "able to replace" by the
    /// robustness estimator.
    pub robustness_threshold: f64,
    /// Above this many failure sets of one size, the robustness estimator
    /// samples `robustness_samples` sets instead of enumerating.
    pub robustness_ceiling: u64,
    pub robustness_samples: u64,
}

impl SimConfig {
    pub fn new(trials: u64, rng_seed: u64, horizon: f64) -> Self {
        SimConfig {
            trials,
            rng_seed,
            horizon,
            storage_mode: StorageMode::PerRobot,
            switch_model: SwitchModel::default(),
            switching: SwitchSource::default(),
            robustness_threshold: 1.0,
            robustness_ceiling: 100_000,
            robustness_samples: 10_000,
        }
    }

    /// Trials, seed, horizon and storage taken from a scenario.
    pub fn for_scenario(scenario: &TeamScenario, trials: u64, rng_seed: u64) -> Self {
        SimConfig { storage_mode: scenario.storage, ..SimConfig::new(trials, rng_seed, scenario.horizon) }
    }

    pub fn with_storage(mut self, storage: StorageMode) -> Self {
        self.storage_mode = storage;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("at least one trial is required".into()));
        }
        crate::error::check_time(self.horizon)?;
        crate::error::check_probability("robustness threshold", self.robustness_threshold)
    }

    /// RNG for trial `index`.
    pub fn trial_rng(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.rng_seed);
        rng.set_stream(index);
        rng
    }
}

/// Survival fraction with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub estimate: f64,
    pub std_error: f64,
    pub trials: u64,
}

impl Estimate {
    /// `(estimate − analytic) / σ`, where `σ` is the larger of the observed
    /// standard error and the binomial standard error implied by `analytic`.
    /// Zero when both agree exactly with no sampling spread.
    pub fn z_score(&self, analytic: f64) -> f64 {
        let diff = self.estimate - analytic;
        let null = (analytic * (1.0 - analytic) / self.trials as f64).sqrt();
        let sigma = self.std_error.max(null);
        if sigma > 0.0 {
            diff / sigma
        } else if diff.abs() < 1e-12 {
            0.0
        } else {
            diff.signum() * f64::INFINITY
        }
    }
}

/// Runs every trial and keeps the outcomes.
pub fn run_trials(scenario: &TeamScenario, redundancy: &RedundancyMap, sim: &SimConfig) -> Result<Vec<TrialOutcome>> {
    sim.validate()?;
    check_cover(scenario, redundancy)?;
    Ok((0..sim.trials)
        .into_par_iter()
        .map(|k| simulate_trial(scenario, redundancy, sim, &mut sim.trial_rng(k)))
        .collect())
}

fn check_cover(scenario: &TeamScenario, redundancy: &RedundancyMap) -> Result<()> {
    if redundancy.robots() != scenario.team_size() {
        return Err(Error::Config(format!(
            "redundancy covers {} robots, team has {}",
            redundancy.robots(),
            scenario.team_size()
        )));
    }
    Ok(())
}

/// Fraction of trials in which the team meets its requirement at the horizon.
pub fn estimate_reliability(scenario: &TeamScenario, redundancy: &RedundancyMap, sim: &SimConfig) -> Result<Estimate> {
    sim.validate()?;
    check_cover(scenario, redundancy)?;
    let survived: u64 = (0..sim.trials)
        .into_par_iter()
        .map(|k| u64::from(simulate_trial(scenario, redundancy, sim, &mut sim.trial_rng(k)).survived))
        .sum();
    let n = sim.trials as f64;
    let p = survived as f64 / n;
    Ok(Estimate { estimate: p, std_error: (p * (1.0 - p) / n).sqrt(), trials: sim.trials })
}

/// Observed corrective-maintenance cost per month: replacements times `γ`,
/// averaged over trials and divided by the horizon.
pub fn cost_trace(outcomes: &[TrialOutcome], catalog: &Catalog) -> Result<f64> {
    let first = outcomes.first().ok_or_else(|| Error::Domain("no trial outcomes".into()))?;
    let horizon = first.horizon;
    if horizon <= 0.0 {
        return Err(Error::Domain("cost trace needs a positive horizon".into()));
    }
    let mut total = 0.0;
    for o in outcomes {
        for (&id, &n) in &o.replacements {
            total += f64::from(n) * catalog.get(id)?.maintenance_cost;
        }
    }
    Ok(total / outcomes.len() as f64 / horizon)
}
