//! Dominance, non-dominated sorting, crowding distance and hypervolume for the
//! (maximize reliability, minimize cost) objective pair.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::allocation::Allocation;

/// Objective pair of one allocation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Objectives {
    pub reliability: f64,
    pub cost: f64,
}

impl Objectives {
    pub fn new(reliability: f64, cost: f64) -> Self {
        Objectives { reliability, cost }
    }

    /// At least as reliable and as cheap, strictly better in one.
    pub fn dominates(&self, other: &Objectives) -> bool {
        self.reliability >= other.reliability
            && self.cost <= other.cost
            && (self.reliability > other.reliability || self.cost < other.cost)
    }

    pub(crate) fn key(&self) -> (u64, u64) {
        (self.reliability.to_bits(), self.cost.to_bits())
    }
}

/// A point of a Pareto front with the allocation that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParetoPoint {
    pub reliability: f64,
    pub cost: f64,
    pub allocation: Allocation,
}

impl ParetoPoint {
    pub fn objectives(&self) -> Objectives {
        Objectives::new(self.reliability, self.cost)
    }
}

/// Descending reliability, then ascending cost.
pub fn sort_front(front: &mut [ParetoPoint]) {
    front.sort_by(|a, b| {
        b.reliability
            .partial_cmp(&a.reliability)
            .unwrap_or(Ordering::Equal)
            .then(a.cost.partial_cmp(&b.cost).unwrap_or(Ordering::Equal))
            .then_with(|| a.allocation.cmp(&b.allocation))
    });
}

/// Fronts as lists of indices into `points`; front 0 is non-dominated.
pub fn fast_non_dominated_sort(points: &[Objectives]) -> Vec<Vec<usize>> {
    let n = points.len();
    let mut dominated_by: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut domination_count = vec![0usize; n];
    let mut fronts = vec![Vec::new()];
    for p in 0..n {
        for q in (p + 1)..n {
            if points[p].dominates(&points[q]) {
                dominated_by[p].push(q);
                domination_count[q] += 1;
            } else if points[q].dominates(&points[p]) {
                dominated_by[q].push(p);
                domination_count[p] += 1;
            }
        }
    }
    fronts[0].extend((0..n).filter(|&p| domination_count[p] == 0));
    let mut i = 0;
    while !fronts[i].is_empty() {
        let mut next = Vec::new();
        for &p in &fronts[i] {
            for &q in &dominated_by[p] {
                domination_count[q] -= 1;
                if domination_count[q] == 0 {
                    next.push(q);
                }
            }
        }
        next.sort_unstable();
        i += 1;
        fronts.push(next);
    }
    fronts.pop();
    fronts
}

/// Crowding distance of each member of one front. Boundary points of either
/// objective get `f64::INFINITY`; interior points sum neighbour gaps
/// normalized by the objective's range.
pub fn crowding_distance(front: &[Objectives]) -> Vec<f64> {
    let n = front.len();
    let mut dist = vec![0.0; n];
    if n <= 2 {
        return vec![f64::INFINITY; n];
    }
    let getters: [fn(&Objectives) -> f64; 2] = [|o| o.reliability, |o| o.cost];
    for get in getters {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| get(&front[a]).partial_cmp(&get(&front[b])).unwrap_or(Ordering::Equal).then(a.cmp(&b)));
        let lo = get(&front[order[0]]);
        let hi = get(&front[order[n - 1]]);
        dist[order[0]] = f64::INFINITY;
        dist[order[n - 1]] = f64::INFINITY;
        let range = hi - lo;
        if range <= 0.0 {
            continue;
        }
        for w in 1..n - 1 {
            let i = order[w];
            if dist[i].is_finite() {
                dist[i] += (get(&front[order[w + 1]]) - get(&front[order[w - 1]])) / range;
            }
        }
    }
    dist
}

/// Indices of the non-dominated members of `points`.
pub fn non_dominated(points: &[Objectives]) -> Vec<usize> {
    (0..points.len()).filter(|&i| !points.iter().any(|q| q.dominates(&points[i]))).collect()
}

/// Area dominated by `points` inside `[0, 1] × [cost, reference_cost]`,
/// with reliability maximized and cost minimized.
pub fn hypervolume(points: &[Objectives], reference_cost: f64) -> f64 {
    let mut front: Vec<Objectives> = non_dominated(points)
        .into_iter()
        .map(|i| points[i])
        .filter(|o| o.reliability > 0.0 && o.cost < reference_cost)
        .collect();
    front.sort_by(|a, b| a.reliability.partial_cmp(&b.reliability).unwrap_or(Ordering::Equal));
    front.dedup_by(|a, b| a.key() == b.key());
    let mut area = 0.0;
    let mut prev = 0.0;
    for o in front {
        area += (o.reliability - prev) * (reference_cost - o.cost);
        prev = o.reliability;
    }
    area
}

/// Keeps a set of mutually non-dominated points with distinct objective
/// pairs. Among allocations with the same objective pair the smallest one is
/// retained, so the contents do not depend on insertion order.
#[derive(Debug, Clone, Default)]
pub struct ParetoArchive {
    points: Vec<ParetoPoint>,
}

impl ParetoArchive {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns true if the point entered the archive.
    pub fn insert(&mut self, point: ParetoPoint) -> bool {
        let o = point.objectives();
        if let Some(same) = self.points.iter_mut().find(|p| p.objectives().key() == o.key()) {
            if point.allocation < same.allocation {
                same.allocation = point.allocation;
                return true;
            }
            return false;
        }
        if self.points.iter().any(|p| p.objectives().dominates(&o)) {
            return false;
        }
        self.points.retain(|p| !o.dominates(&p.objectives()));
        self.points.push(point);
        true
    }

    pub fn points(&self) -> &[ParetoPoint] {
        &self.points
    }

    pub fn objectives(&self) -> Vec<Objectives> {
        self.points.iter().map(ParetoPoint::objectives).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Sorted copy of the front.
    pub fn into_sorted(self) -> Vec<ParetoPoint> {
        let mut v = self.points;
        sort_front(&mut v);
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn o(r: f64, c: f64) -> Objectives {
        Objectives::new(r, c)
    }

    #[test]
    fn strict_domination() {
        assert_eq!(fast_non_dominated_sort(&[o(0.9, 100.0), o(0.8, 200.0)]), vec![vec![0], vec![1]]);
    }

    #[test]
    fn trade_off_pair() {
        assert_eq!(fast_non_dominated_sort(&[o(0.9, 100.0), o(0.95, 150.0)]), vec![vec![0, 1]]);
        assert!(fast_non_dominated_sort(&[]).is_empty());
    }

    #[test]
    fn equal_points_share_a_front() {
        assert_eq!(fast_non_dominated_sort(&[o(0.5, 1.0), o(0.5, 1.0)]), vec![vec![0, 1]]);
    }

    /// Peels fronts by repeated O(n²) pairwise checks.
    fn brute_fronts(points: &[Objectives]) -> Vec<Vec<usize>> {
        let mut left: Vec<usize> = (0..points.len()).collect();
        let mut fronts = Vec::new();
        while !left.is_empty() {
            let front: Vec<usize> =
                left.iter().copied().filter(|&i| !left.iter().any(|&j| points[j].dominates(&points[i]))).collect();
            left.retain(|i| !front.contains(i));
            fronts.push(front);
        }
        fronts
    }

    #[test]
    fn random_clouds_match_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let pts: Vec<Objectives> =
                (0..50).map(|_| o((rng.random_range(0..20) as f64) / 20.0, rng.random_range(0..30) as f64)).collect();
            assert_eq!(fast_non_dominated_sort(&pts), brute_fronts(&pts));
        }
    }

    #[test]
    fn crowding_small_fronts() {
        assert_eq!(crowding_distance(&[o(0.9, 1.0), o(0.8, 0.5)]), vec![f64::INFINITY; 2]);
        assert_eq!(crowding_distance(&[o(0.9, 1.0)]), vec![f64::INFINITY]);
    }

    #[test]
    fn crowding_even_line() {
        // Per objective the middle point's normalized neighbour gap is (1 - 0) / 1 = 1.
        let d = crowding_distance(&[o(0.2, 10.0), o(0.4, 20.0), o(0.6, 30.0)]);
        assert!(d[0].is_infinite() && d[2].is_infinite());
        assert!((d[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn hypervolume_hand_values() {
        // two boxes: [0,0.5]x[10,100] and [0.5,0.9]x[50,100]
        let hv = hypervolume(&[o(0.5, 10.0), o(0.9, 50.0), o(0.4, 60.0)], 100.0);
        assert!((hv - (0.5 * 90.0 + 0.4 * 50.0)).abs() < 1e-9);
        assert_eq!(hypervolume(&[], 10.0), 0.0);
    }

    #[test]
    fn archive_keeps_only_non_dominated() {
        let mut a = ParetoArchive::new();
        let p = |r, c| ParetoPoint { reliability: r, cost: c, allocation: Allocation::new(vec![]) };
        assert!(a.insert(p(0.5, 10.0)));
        assert!(!a.insert(p(0.5, 10.0)));
        assert!(a.insert(p(0.7, 20.0)));
        assert!(!a.insert(p(0.6, 25.0)));
        assert!(a.insert(p(0.8, 10.0)));
        assert_eq!(a.points().len(), 1);
    }

    proptest! {
        #[test]
        fn crowding_is_order_equivariant(
            pts in proptest::collection::vec((0.0f64..1.0, 0.0f64..100.0), 1..12),
            seed in any::<u64>(),
        ) {
            let pts: Vec<Objectives> = pts.into_iter().map(|(r, c)| o(r, c)).collect();
            let mut perm: Vec<usize> = (0..pts.len()).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for i in (1..perm.len()).rev() {
                perm.swap(i, rng.random_range(0..=i));
            }
            let shuffled: Vec<Objectives> = perm.iter().map(|&i| pts[i]).collect();
            let d = crowding_distance(&pts);
            let ds = crowding_distance(&shuffled);
            for (k, &i) in perm.iter().enumerate() {
                // ties in one objective may swap which duplicate is a boundary
                let unique = pts.iter().filter(|q| q.reliability == pts[i].reliability || q.cost == pts[i].cost).count() == 1;
                if unique {
                    prop_assert!((ds[k] - d[i]).abs() < 1e-9 || (ds[k].is_infinite() && d[i].is_infinite()));
                }
            }
        }

        #[test]
        fn first_front_is_non_dominated(pts in proptest::collection::vec((0.0f64..1.0, 0.0f64..100.0), 0..40)) {
            let pts: Vec<Objectives> = pts.into_iter().map(|(r, c)| o(r, c)).collect();
            let fronts = fast_non_dominated_sort(&pts);
            let mut first = fronts.first().cloned().unwrap_or_default();
            first.sort_unstable();
            prop_assert_eq!(first, non_dominated(&pts));
            prop_assert_eq!(fronts.iter().map(Vec::len).sum::<usize>(), pts.len());
        }
    }
}
