//! Elitist non-dominated sorting GA over spare-slot chromosomes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::allocation::{decode, encode, repair, slot_alphabet, slot_owners, Allocation};
use super::objective::{Evaluation, ObjectiveCache};
use super::operators::{crossover, mutate, tournament_select, Fitness};
use super::pareto::{crowding_distance, fast_non_dominated_sort, Objectives, ParetoArchive, ParetoPoint};
use crate::error::{check_probability, Error, Result};
use crate::scenario::TeamScenario;

/// GA hyperparameters. Tournaments are always binary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaConfig {
    pub population_size: usize,
    pub generations: usize,
    pub crossover_rate: f64,
    /// Per-gene reassignment probability.
    pub mutation_rate: f64,
    pub rng_seed: u64,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig { population_size: 100, generations: 200, crossover_rate: 0.9, mutation_rate: 0.05, rng_seed: 0 }
    }
}

impl GaConfig {
    pub const TOURNAMENT_SIZE: usize = 2;

    pub fn validate(&self) -> Result<()> {
        if self.population_size < 4 || !self.population_size.is_multiple_of(2) {
            return Err(Error::Config(format!("population size {} must be even and at least 4", self.population_size)));
        }
        check_probability("crossover rate", self.crossover_rate)?;
        check_probability("mutation rate", self.mutation_rate)
    }
}

/// Feasible individuals sort by their objectives; infeasible ones sit behind
/// every feasible point.
fn sort_key(e: &Evaluation) -> Objectives {
    if e.feasible {
        e.objectives()
    } else {
        Objectives::new(-1.0, f64::MAX)
    }
}

fn fitness_of(evals: &[Evaluation]) -> (Vec<Vec<usize>>, Vec<Fitness>) {
    let objs: Vec<Objectives> = evals.iter().map(sort_key).collect();
    let fronts = fast_non_dominated_sort(&objs);
    let mut fit = vec![Fitness { rank: 0, crowding: 0.0 }; evals.len()];
    for (rank, front) in fronts.iter().enumerate() {
        let members: Vec<Objectives> = front.iter().map(|&i| objs[i]).collect();
        for (&i, d) in front.iter().zip(crowding_distance(&members)) {
            fit[i] = Fitness { rank, crowding: d };
        }
    }
    (fronts, fit)
}

/// Random initial population spanning sparse to full chromosomes: member `k`
/// fills each slot with probability `k / (n - 1)`.
fn initial_population<R: Rng>(n: usize, alphabets: &[Vec<u32>], rng: &mut R) -> Vec<Allocation> {
    (0..n)
        .map(|k| {
            let fill = k as f64 / (n - 1) as f64;
            let genes = alphabets
                .iter()
                .map(|alpha| {
                    let nonzero = &alpha[1..];
                    if !nonzero.is_empty() && rng.random_bool(fill) {
                        nonzero[rng.random_range(0..nonzero.len())]
                    } else {
                        0
                    }
                })
                .collect();
            Allocation::new(genes)
        })
        .collect()
}

/// Adds feasible members to the archive in canonical encoding.
fn archive_batch(
    archive: &mut ParetoArchive,
    pop: &[Allocation],
    evals: &[Evaluation],
    scenario: &TeamScenario,
) -> Result<()> {
    for (a, e) in pop.iter().zip(evals) {
        if e.feasible {
            let allocation = encode(&decode(a, scenario)?, scenario)?;
            archive.insert(ParetoPoint { reliability: e.reliability, cost: e.cost, allocation });
        }
    }
    Ok(())
}

/// Runs the optimizer and returns the non-dominated (reliability, cost)
/// points found, one per objective pair, sorted by descending reliability.
pub fn nsga2_optimize(scenario: &TeamScenario, ga: &GaConfig) -> Result<Vec<ParetoPoint>> {
    nsga2_optimize_observed(scenario, ga, |_, _| {})
}

/// As [`nsga2_optimize`], calling `observer(generation, archive)` after the
/// initial population (generation 0) and after every generation.
pub fn nsga2_optimize_observed<F>(scenario: &TeamScenario, ga: &GaConfig, mut observer: F) -> Result<Vec<ParetoPoint>>
where
    F: FnMut(usize, &[ParetoPoint]),
{
    ga.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(ga.rng_seed);
    let alphabets: Vec<Vec<u32>> = slot_owners(scenario).into_iter().map(|j| slot_alphabet(scenario, j)).collect();
    let n = ga.population_size;
    let mut cache = ObjectiveCache::new(scenario);
    let mut archive = ParetoArchive::new();

    let mut pop = initial_population(n, &alphabets, &mut rng);
    for a in &mut pop {
        repair(a, scenario);
    }
    let mut evals = cache.evaluate_all(&pop)?;
    archive_batch(&mut archive, &pop, &evals, scenario)?;
    observer(0, archive.points());

    for generation in 1..=ga.generations {
        let (_, fit) = fitness_of(&evals);
        let mut offspring = Vec::with_capacity(n);
        while offspring.len() < n {
            let pa = &pop[tournament_select(&fit, &mut rng)];
            let pb = &pop[tournament_select(&fit, &mut rng)];
            let (c, d) = crossover(pa, pb, ga.crossover_rate, &mut rng)?;
            for child in [c, d] {
                let mut child = mutate(&child, ga.mutation_rate, &alphabets, &mut rng);
                repair(&mut child, scenario);
                offspring.push(child);
            }
        }
        let child_evals = cache.evaluate_all(&offspring)?;
        archive_batch(&mut archive, &offspring, &child_evals, scenario)?;

        let mut union = pop;
        union.extend(offspring);
        let mut union_evals = evals;
        union_evals.extend(child_evals);
        let (fronts, fit) = fitness_of(&union_evals);

        let mut survivors = Vec::with_capacity(n);
        for front in fronts {
            if survivors.len() + front.len() <= n {
                survivors.extend(front);
            } else {
                let mut last = front;
                last.sort_by(|&a, &b| fit[b].crowding.total_cmp(&fit[a].crowding).then(a.cmp(&b)));
                survivors.extend(last.into_iter().take(n - survivors.len()));
            }
            if survivors.len() == n {
                break;
            }
        }
        pop = survivors.iter().map(|&i| union[i].clone()).collect();
        evals = survivors.iter().map(|&i| union_evals[i]).collect();
        observer(generation, archive.points());
    }

    if archive.is_empty() {
        return Err(Error::NoFeasibleSolution);
    }
    Ok(archive.into_sorted())
}
