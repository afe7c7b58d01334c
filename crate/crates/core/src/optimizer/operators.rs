//! Selection, crossover and mutation on spare-slot chromosomes.

use rand::Rng;

use super::allocation::Allocation;
use crate::error::{check_probability, Error, Result};

/// Rank (0 = first front) and crowding distance of a population member.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fitness {
    pub rank: usize,
    pub crowding: f64,
}

/// Binary tournament: lower rank wins, then larger crowding distance, then a
/// coin flip. Returns the index of the winner.
pub fn tournament_select<R: Rng + ?Sized>(population: &[Fitness], rng: &mut R) -> usize {
    assert!(!population.is_empty(), "tournament on an empty population");
    let a = rng.random_range(0..population.len());
    let b = rng.random_range(0..population.len());
    let (fa, fb) = (population[a], population[b]);
    if fa.rank != fb.rank {
        return if fa.rank < fb.rank { a } else { b };
    }
    if fa.crowding != fb.crowding {
        return if fa.crowding > fb.crowding { a } else { b };
    }
    if rng.random_bool(0.5) {
        a
    } else {
        b
    }
}

/// Uniform crossover applied with probability `rate`; otherwise the parents
/// are returned unchanged.
pub fn crossover<R: Rng + ?Sized>(
    a: &Allocation,
    b: &Allocation,
    rate: f64,
    rng: &mut R,
) -> Result<(Allocation, Allocation)> {
    if a.len() != b.len() {
        return Err(Error::GeneLength { expected: a.len(), actual: b.len() });
    }
    check_probability("crossover rate", rate)?;
    let mut c = a.clone();
    let mut d = b.clone();
    if rate > 0.0 && rng.random_bool(rate) {
        for i in 0..a.len() {
            if rng.random_bool(0.5) {
                std::mem::swap(&mut c.genes[i], &mut d.genes[i]);
            }
        }
    }
    Ok((c, d))
}

/// Reassigns each gene with probability `rate` to a uniform draw from that
/// slot's alphabet (`alphabets[i]` lists the allowed values of gene `i`).
pub fn mutate<R: Rng + ?Sized>(a: &Allocation, rate: f64, alphabets: &[Vec<u32>], rng: &mut R) -> Allocation {
    let mut out = a.clone();
    if rate <= 0.0 {
        return out;
    }
    for (g, alphabet) in out.genes.iter_mut().zip(alphabets) {
        if !alphabet.is_empty() && rng.random_bool(rate.min(1.0)) {
            *g = alphabet[rng.random_range(0..alphabet.len())];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fit(rank: usize, crowding: f64) -> Fitness {
        Fitness { rank, crowding }
    }

    #[test]
    fn lower_rank_wins() {
        let pop = [fit(0, 0.1), fit(1, f64::INFINITY)];
        let mut wins = [0; 2];
        for s in 0..500 {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            wins[tournament_select(&pop, &mut rng)] += 1;
        }
        // index 1 wins only when drawn twice (prob 1/4)
        assert!(wins[0] > wins[1] * 2);
    }

    #[test]
    fn infinite_crowding_wins_tie() {
        let pop = [fit(2, f64::INFINITY), fit(2, 1.0)];
        let mut wins = [0; 2];
        for s in 0..500 {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            wins[tournament_select(&pop, &mut rng)] += 1;
        }
        assert!(wins[0] > wins[1] * 2);
    }

    #[test]
    fn dominating_individual_selected_majority() {
        // against a single rival the dominating member wins 3/4 of tournaments
        let pop = [fit(0, 1.0), fit(1, 1.0)];
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let wins = (0..10_000).filter(|_| tournament_select(&pop, &mut rng) == 0).count();
        assert!(wins > 5_000);
        assert!((wins as f64 / 10_000.0 - 0.75).abs() < 0.02);
    }

    #[test]
    fn crossover_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = Allocation::new(vec![1, 2, 3, 4, 5, 6]);
        let b = Allocation::new(vec![0, 0, 0, 0, 0, 0]);
        let (c, d) = crossover(&a, &a, 1.0, &mut rng).unwrap();
        assert_eq!((c, d), (a.clone(), a.clone()));
        for _ in 0..50 {
            let (c, d) = crossover(&a, &b, 1.0, &mut rng).unwrap();
            for i in 0..6 {
                assert!(c.genes[i] == a.genes[i] || c.genes[i] == b.genes[i]);
                assert_eq!(c.genes[i] + d.genes[i], a.genes[i] + b.genes[i]);
            }
        }
        let (c, d) = crossover(&a, &b, 0.0, &mut rng).unwrap();
        assert_eq!((c, d), (a.clone(), b));
        assert!(crossover(&a, &Allocation::new(vec![1]), 0.5, &mut rng).is_err());
    }

    #[test]
    fn mutation_rates() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = Allocation::new(vec![1; 20]);
        let alpha = vec![vec![0, 1, 2, 3]; 20];
        assert_eq!(mutate(&a, 0.0, &alpha, &mut rng), a);
        let m = mutate(&a, 1.0, &alpha, &mut rng);
        assert!(m.genes.iter().all(|g| *g <= 3));
        // a reassigned gene keeps its value with probability 1/4
        let rate = 0.2;
        let runs = 5000;
        let changed: usize =
            (0..runs).map(|_| mutate(&a, rate, &alpha, &mut rng).genes.iter().filter(|&&g| g != 1).count()).sum();
        let expected = rate * 20.0 * 0.75;
        let mean = changed as f64 / runs as f64;
        assert!((mean - expected).abs() < 0.05 * expected, "mean {mean} vs {expected}");
    }
}
