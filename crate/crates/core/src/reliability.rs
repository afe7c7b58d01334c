//! Closed-form reliability of modules, robots, capability subsets and teams
//! under cold-standby redundancy with imperfect detection and switching.
//!
//! Module lifetimes are exponential with rate `λ` (failures per month). A
//! module with `s` cold spares survives to `t` with probability
//!
//! ```text
//! R = e^{-λt} + p · Σ_{k=1..s} e^{-λt} (λt)^k / k!
//! ```
//!
//! where `p` is the combined detection and switching probability. Spares are
//! counted directly, so a robot holding `s` spares has `n = s + 1` modules of
//! that type.

use serde::{Deserialize, Serialize};

use crate::catalog::{Catalog, ModuleId, Role};
use crate::error::{check_probability, check_rate, check_time, Error, Result};
use crate::scenario::{FunctionalRequirement, RedundancyMap, RobotBlueprint, TeamScenario};

/// Survival probability of one module position holding `spares` cold spares.
pub fn module_reliability(lambda: f64, t: f64, spares: u32, p: f64) -> Result<f64> {
    check_rate(lambda)?;
    check_time(t)?;
    check_probability("switching probability", p)?;
    let x = lambda * t;
    let base = (-x).exp();
    // Poisson terms accumulated recursively: term_k = term_{k-1} * x / k.
    let mut term = base;
    let mut tail = 0.0;
    for k in 1..=spares {
        term *= x / f64::from(k);
        tail += term;
        if term == 0.0 || term < tail * f64::EPSILON * 1e-3 && f64::from(k) > x {
            break;
        }
    }
    Ok((base + p * tail).min(1.0))
}

/// Cold-standby reliability with perfect switching: the Poisson CDF with mean
/// `λt` evaluated at `spares`.
pub fn perfect_switch_reliability(lambda: f64, t: f64, spares: u32) -> Result<f64> {
    module_reliability(lambda, t, spares, 1.0)
}

/// `∏_i R_ji(t)` over the robot's active modules, using `p^s`.
pub fn robot_reliability(
    blueprint: &RobotBlueprint,
    spares: &std::collections::BTreeMap<ModuleId, u32>,
    catalog: &Catalog,
    t: f64,
) -> Result<f64> {
    blueprint.active_modules.iter().try_fold(1.0, |acc, &id| {
        let m = catalog.get(id)?;
        let s = spares.get(&id).copied().unwrap_or(0);
        Ok(acc * module_reliability(m.failure_rate, t, s, m.detect_switch_self)?)
    })
}

/// Functional subsets of a robot whose reliability can be queried.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Capability {
    /// All six core roles.
    Primary,
    /// Reporting its own condition: communication and processor.
    Report,
    /// Moving and manipulating: platform, battery and processor.
    MoveManipulate,
    /// Manipulation: battery and manipulator.
    Manipulate,
}

impl Capability {
    pub const ALL: [Capability; 4] =
        [Capability::Primary, Capability::Report, Capability::MoveManipulate, Capability::Manipulate];

    pub fn roles(self) -> &'static [Role] {
        match self {
            Capability::Primary => &Role::ALL,
            Capability::Report => &[Role::Communication, Role::Processor],
            Capability::MoveManipulate => &[Role::Platform, Role::Battery, Role::Processor],
            Capability::Manipulate => &[Role::Battery, Role::Manipulator],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Capability::Primary => "primary",
            Capability::Report => "report",
            Capability::MoveManipulate => "move_manipulate",
            Capability::Manipulate => "manipulate",
        }
    }
}

/// Product of the reliabilities of every active module whose role the
/// capability needs. Fails with [`Error::RoleAbsent`] if a role is missing.
pub fn capability_reliability(
    blueprint: &RobotBlueprint,
    spares: &std::collections::BTreeMap<ModuleId, u32>,
    catalog: &Catalog,
    t: f64,
    capability: Capability,
) -> Result<f64> {
    let mut r = 1.0;
    for &role in capability.roles() {
        let mut any = false;
        for id in blueprint.modules_with_role(catalog, role) {
            any = true;
            let m = catalog.get(id)?;
            let s = spares.get(&id).copied().unwrap_or(0);
            r *= module_reliability(m.failure_rate, t, s, m.detect_switch_self)?;
        }
        if !any {
            return Err(Error::RoleAbsent { robot: blueprint.type_index, role });
        }
    }
    Ok(r)
}

/// `dist[k]`: probability that exactly `k` of the independent robots survive.
/// Uses the binomial form when every robot has the same reliability.
fn survivor_distribution(rs: &[f64]) -> Vec<f64> {
    let n = rs.len();
    if rs.windows(2).all(|w| w[0] == w[1]) && n > 0 {
        let r = rs[0];
        let mut coeff = 1.0;
        let mut dist = Vec::with_capacity(n + 1);
        for k in 0..=n {
            dist.push(coeff * r.powi(k as i32) * (1.0 - r).powi((n - k) as i32));
            coeff = coeff * (n - k) as f64 / (k + 1) as f64;
        }
        return dist;
    }
    let mut dist = vec![0.0; n + 1];
    dist[0] = 1.0;
    for (seen, &r) in rs.iter().enumerate() {
        for k in (0..=seen + 1).rev() {
            let stay = dist[k] * (1.0 - r);
            let up = if k > 0 { dist[k - 1] * r } else { 0.0 };
            dist[k] = stay + up;
        }
    }
    dist
}

/// Probability that at least `m` robots survive. Tails are summed from the
/// top, so the result is non-increasing in `m` in floating point too.
fn at_least(rs: &[f64], m: usize) -> f64 {
    if m == 0 {
        return 1.0;
    }
    if m > rs.len() {
        return 0.0;
    }
    survivor_distribution(rs)[m..].iter().rev().sum::<f64>().clamp(0.0, 1.0)
}

/// Combines per-robot reliabilities grouped by robot type according to a
/// functional requirement.
pub fn combine_by_requirement(per_type: &[Vec<f64>], requirement: &FunctionalRequirement) -> Result<f64> {
    let mut total = 1.0;
    for (v, rs) in per_type.iter().enumerate() {
        let m = match requirement {
            FunctionalRequirement::Full => rs.len(),
            FunctionalRequirement::Minimal => 1,
            FunctionalRequirement::Partial(m) => {
                let ml = *m.get(v).ok_or_else(|| Error::Config(format!("no partial threshold for robot type {v}")))?;
                if ml == 0 || ml as usize > rs.len() {
                    return Err(Error::Domain(format!(
                        "partial threshold {ml} outside [1, {}] for robot type {v}",
                        rs.len()
                    )));
                }
                ml as usize
            }
        };
        total *= at_least(rs, m);
    }
    Ok(total.clamp(0.0, 1.0))
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

/// Reliability of every robot instance at `t`, grouped by robot type.
pub fn robot_reliabilities(scenario: &TeamScenario, redundancy: &RedundancyMap, t: f64) -> Result<Vec<Vec<f64>>> {
    check_cover(scenario, redundancy)?;
    let mut per_type = vec![Vec::new(); scenario.blueprints.len()];
    for (j, inst) in scenario.instances().iter().enumerate() {
        let bp = &scenario.blueprints[inst.blueprint];
        per_type[inst.blueprint].push(robot_reliability(bp, redundancy.robot(j), &scenario.catalog, t)?);
    }
    Ok(per_type)
}

/// Team reliability at the scenario horizon under the scenario's requirement.
pub fn team_reliability(scenario: &TeamScenario, redundancy: &RedundancyMap) -> Result<f64> {
    team_reliability_with(scenario, redundancy, scenario.horizon, &scenario.requirement)
}

/// Team reliability at `t` under an explicit requirement.
pub fn team_reliability_with(
    scenario: &TeamScenario,
    redundancy: &RedundancyMap,
    t: f64,
    requirement: &FunctionalRequirement,
) -> Result<f64> {
    let per_type = robot_reliabilities(scenario, redundancy, t)?;
    combine_by_requirement(&per_type, requirement)
}

/// How own-storage module reliabilities are combined into a team value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OwnStorageCombination {
    /// Modules in series per robot, robots combined by the scenario requirement.
    #[default]
    Series,
    /// `∏_j [1 − ∏_i (1 − R_ji)]`: modules of a robot in parallel, robots in series.
    ParallelModules,
}

/// Team reliability when every robot may only use its own stored spares,
/// switched with the assisted probability `p^o`.
pub fn team_reliability_own_storage(
    scenario: &TeamScenario,
    storage: &RedundancyMap,
    combination: OwnStorageCombination,
) -> Result<f64> {
    storage.check(scenario)?;
    let t = scenario.horizon;
    let mut per_type: Vec<Vec<f64>> = vec![Vec::new(); scenario.blueprints.len()];
    let mut literal = 1.0;
    for (j, inst) in scenario.instances().iter().enumerate() {
        let bp = &scenario.blueprints[inst.blueprint];
        let mut series = 1.0;
        let mut all_fail = 1.0;
        for &id in &bp.active_modules {
            let m = scenario.catalog.get(id)?;
            let r = module_reliability(m.failure_rate, t, storage.spares(j, id), m.detect_switch_other)?;
            series *= r;
            all_fail *= 1.0 - r;
        }
        per_type[inst.blueprint].push(series);
        literal *= 1.0 - all_fail;
    }
    match combination {
        OwnStorageCombination::Series => combine_by_requirement(&per_type, &scenario.requirement),
        OwnStorageCombination::ParallelModules => Ok(literal),
    }
}

/// Exact survival probability when spares sit in one shared pool per type
/// and every robot must survive.
///
/// Each (robot, type) position has a switching mechanism that works with
/// probability `p^s` for the whole mission. A position with a working
/// mechanism renews on every failure while the pool lasts; the type survives
/// iff positions without a working mechanism never fail and the total number
/// of failures among the others does not exceed the pool.
pub fn shared_pool_reliability(scenario: &TeamScenario, redundancy: &RedundancyMap, t: f64) -> Result<f64> {
    check_cover(scenario, redundancy)?;
    check_time(t)?;
    if !scenario.requires_every_robot() {
        return Err(Error::Config(
            "exact shared-pool reliability needs a requirement where every robot must survive".into(),
        ));
    }
    let pool = redundancy.spare_totals();
    let mut positions: std::collections::BTreeMap<ModuleId, u32> = std::collections::BTreeMap::new();
    for inst in scenario.instances() {
        for &id in &scenario.blueprints[inst.blueprint].active_modules {
            *positions.entry(id).or_insert(0) += 1;
        }
    }
    let mut total = 1.0;
    for (&id, &n) in &positions {
        let m = scenario.catalog.get(id)?;
        let p = m.detect_switch_self;
        let x = m.failure_rate * t;
        let spares = pool.get(&id).copied().unwrap_or(0);
        let mut type_r = 0.0;
        let mut binom = 1.0;
        for g in 0..=n {
            let weight = binom * p.powi(g as i32) * (1.0 - p).powi((n - g) as i32);
            if weight > 0.0 {
                // P(Poisson(g·x) <= spares) times P(no failure at the other positions)
                let cdf =
                    if g == 0 { 1.0 } else { perfect_switch_reliability(m.failure_rate * f64::from(g), t, spares)? };
                type_r += weight * cdf * (-f64::from(n - g) * x).exp();
            }
            binom = binom * f64::from(n - g) / f64::from(g + 1);
        }
        total *= type_r;
    }
    Ok(total.clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::ModuleTypeSpec;
    use approx::assert_relative_eq;
    use std::collections::BTreeMap;

    /// Poisson CDF by explicit factorials, independent of the recursive form.
    fn poisson_cdf(mean: f64, k: u32) -> f64 {
        (0..=k)
            .map(|i| {
                let fact: f64 = (1..=i).map(f64::from).product();
                (-mean).exp() * mean.powi(i as i32) / fact
            })
            .sum()
    }

    fn spec(id: u32, role: Role, lambda: f64, p: f64) -> ModuleTypeSpec {
        ModuleTypeSpec {
            id: ModuleId(id),
            role,
            failure_rate: lambda,
            cost: 100.0,
            detect_switch_self: p,
            detect_switch_other: p,
            maintenance_cost: 10.0,
        }
    }

    fn one_type_team(count: u32, lambda: f64, t: f64, req: FunctionalRequirement) -> TeamScenario {
        let cat = Catalog::new(vec![spec(1, Role::Platform, lambda, 1.0)]).unwrap();
        let bp = RobotBlueprint::new(1, vec![ModuleId(1)], 0, 1);
        TeamScenario::new(cat, vec![bp], vec![count], t, req).unwrap()
    }

    #[test]
    fn single_module_without_spares() {
        let r = module_reliability(0.0031, 60.0, 0, 0.3).unwrap();
        assert_relative_eq!(r, (-0.186f64).exp(), max_relative = 1e-14);
        assert_relative_eq!(r, 0.83028, epsilon = 1e-5);
    }

    #[test]
    fn zero_time_is_certain() {
        assert_eq!(module_reliability(5.0, 0.0, 0, 1.0).unwrap(), 1.0);
        assert_eq!(module_reliability(5.0, 0.0, 3, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn two_spares_perfect_switching() {
        let r = module_reliability(0.01, 10.0, 2, 1.0).unwrap();
        assert_relative_eq!(r, (-0.1f64).exp() * (1.0 + 0.1 + 0.005), max_relative = 1e-14);
        assert_relative_eq!(r, poisson_cdf(0.1, 2), max_relative = 1e-14);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(module_reliability(0.0, 1.0, 0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(module_reliability(-1.0, 1.0, 0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(module_reliability(1.0, -1.0, 0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(module_reliability(1.0, 1.0, 0, 1.5), Err(Error::Domain(_))));
        assert!(matches!(module_reliability(1.0, f64::NAN, 0, 0.5), Err(Error::Domain(_))));
    }

    #[test]
    fn perfect_switch_matches_poisson_cdf() {
        for &(l, t, s) in &[(0.1, 3.0, 0u32), (0.02, 60.0, 4), (1.0, 7.5, 10)] {
            let a = perfect_switch_reliability(l, t, s).unwrap();
            assert_relative_eq!(a, poisson_cdf(l * t, s), max_relative = 1e-12);
            assert_eq!(a, module_reliability(l, t, s, 1.0).unwrap());
        }
        assert_eq!(perfect_switch_reliability(0.2, 4.0, 0).unwrap(), (-0.8f64).exp());
    }

    #[test]
    fn large_spare_counts_do_not_overflow() {
        let r = module_reliability(1.0, 50.0, 500, 1.0).unwrap();
        assert!((r - 1.0).abs() < 1e-12);
        let r = module_reliability(10.0, 100.0, 170, 1.0).unwrap();
        assert!(r.is_finite() && (0.0..=1.0).contains(&r));
    }

    #[test]
    fn robot_from_table_rates() {
        let cat = Catalog::new(vec![
            spec(1, Role::Platform, 0.0031, 1.0),
            spec(4, Role::Battery, 0.0050, 1.0),
            spec(7, Role::Processor, 0.0034, 1.0),
            spec(10, Role::Manipulator, 0.0021, 1.0),
        ])
        .unwrap();
        let bp = RobotBlueprint::new(1, vec![ModuleId(1), ModuleId(4), ModuleId(7), ModuleId(10)], 2, 6);
        let r = robot_reliability(&bp, &BTreeMap::new(), &cat, 60.0).unwrap();
        assert_relative_eq!(r, (-0.816f64).exp(), max_relative = 1e-12);
        assert_relative_eq!(r.ln(), -0.816, epsilon = 1e-12);
        assert_eq!(robot_reliability(&bp, &BTreeMap::new(), &cat, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn one_module_robot_reduces_to_module() {
        let cat = Catalog::new(vec![spec(3, Role::Battery, 0.02, 0.7)]).unwrap();
        let bp = RobotBlueprint::new(1, vec![ModuleId(3)], 2, 3);
        let spares = BTreeMap::from([(ModuleId(3), 2)]);
        assert_eq!(
            robot_reliability(&bp, &spares, &cat, 40.0).unwrap(),
            module_reliability(0.02, 40.0, 2, 0.7).unwrap()
        );
    }

    fn six_role_catalog() -> Catalog {
        let roles = Role::ALL;
        Catalog::new(
            roles.iter().enumerate().map(|(i, &r)| spec(i as u32 + 1, r, 0.001 * (i + 1) as f64, 1.0)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn capabilities() {
        let cat = six_role_catalog();
        let bp = RobotBlueprint::new(1, (1..=6).map(ModuleId).collect(), 0, 6);
        let none = BTreeMap::new();
        let t = 30.0;
        let r = |id: u32| module_reliability(0.001 * id as f64, t, 0, 1.0).unwrap();
        // roles in Role::ALL order: platform 1, battery 2, processor 3, manipulator 4, communication 5, protection 6
        let report = capability_reliability(&bp, &none, &cat, t, Capability::Report).unwrap();
        assert_relative_eq!(report, r(5) * r(3), max_relative = 1e-14);
        let mm = capability_reliability(&bp, &none, &cat, t, Capability::MoveManipulate).unwrap();
        assert_relative_eq!(mm, r(1) * r(2) * r(3), max_relative = 1e-14);
        let m = capability_reliability(&bp, &none, &cat, t, Capability::Manipulate).unwrap();
        assert_relative_eq!(m, r(2) * r(4), max_relative = 1e-14);
        let primary = capability_reliability(&bp, &none, &cat, t, Capability::Primary).unwrap();
        assert_relative_eq!(primary, (-t * 0.021f64).exp(), max_relative = 1e-12);
        for c in Capability::ALL {
            assert_eq!(capability_reliability(&bp, &none, &cat, 0.0, c).unwrap(), 1.0);
        }
    }

    #[test]
    fn capability_missing_role() {
        let cat = six_role_catalog();
        let bp = RobotBlueprint::new(5, vec![ModuleId(1)], 5, 6);
        let err = capability_reliability(&bp, &BTreeMap::new(), &cat, 1.0, Capability::Report).unwrap_err();
        assert!(matches!(err, Error::RoleAbsent { robot: 5, .. }));
    }

    /// Brute force over all survival patterns of identical robots.
    fn enumerate_at_least(n: u32, r: f64, m: u32) -> f64 {
        (0u32..1 << n)
            .filter(|mask| mask.count_ones() >= m)
            .map(|mask| r.powi(mask.count_ones() as i32) * (1.0 - r).powi((n - mask.count_ones()) as i32))
            .sum()
    }

    #[test]
    fn requirement_examples() {
        let minimal = combine_by_requirement(&[vec![0.5, 0.5]], &FunctionalRequirement::Minimal).unwrap();
        assert_relative_eq!(minimal, enumerate_at_least(2, 0.5, 1), max_relative = 1e-14);
        assert_relative_eq!(minimal, 0.75, max_relative = 1e-14);
        let partial = combine_by_requirement(&[vec![0.9; 3]], &FunctionalRequirement::Partial(vec![2])).unwrap();
        assert_relative_eq!(partial, enumerate_at_least(3, 0.9, 2), max_relative = 1e-12);
        assert_relative_eq!(partial, 0.972, max_relative = 1e-12);
        assert_eq!(combine_by_requirement(&[vec![1.0; 4], vec![1.0]], &FunctionalRequirement::Full).unwrap(), 1.0);
    }

    #[test]
    fn heterogeneous_partial_matches_enumeration() {
        let rs = [0.3, 0.8, 0.55, 0.91];
        for m in 1..=4u32 {
            let brute: f64 = (0u32..16)
                .filter(|mask| mask.count_ones() >= m)
                .map(|mask| {
                    rs.iter().enumerate().map(|(i, &r)| if mask & (1 << i) != 0 { r } else { 1.0 - r }).product::<f64>()
                })
                .sum();
            let got = combine_by_requirement(&[rs.to_vec()], &FunctionalRequirement::Partial(vec![m])).unwrap();
            assert_relative_eq!(got, brute, max_relative = 1e-12);
        }
    }

    #[test]
    fn partial_threshold_out_of_range() {
        let err = combine_by_requirement(&[vec![0.5, 0.5]], &FunctionalRequirement::Partial(vec![3])).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
        let s = one_type_team(2, 0.01, 10.0, FunctionalRequirement::Full);
        assert!(matches!(s.with_requirement(FunctionalRequirement::Partial(vec![3])), Err(Error::Domain(_))));
    }

    #[test]
    fn partial_edges_match_full_and_minimal() {
        let s = one_type_team(3, 0.02, 25.0, FunctionalRequirement::Full);
        let red = RedundancyMap::for_scenario(&s);
        let full = team_reliability_with(&s, &red, 25.0, &FunctionalRequirement::Full).unwrap();
        let minimal = team_reliability_with(&s, &red, 25.0, &FunctionalRequirement::Minimal).unwrap();
        let p3 = team_reliability_with(&s, &red, 25.0, &FunctionalRequirement::Partial(vec![3])).unwrap();
        let p1 = team_reliability_with(&s, &red, 25.0, &FunctionalRequirement::Partial(vec![1])).unwrap();
        assert_relative_eq!(full, p3, max_relative = 1e-12);
        assert_relative_eq!(minimal, p1, max_relative = 1e-12);
    }

    #[test]
    fn missing_robot_is_config_error() {
        let s = one_type_team(2, 0.02, 25.0, FunctionalRequirement::Full);
        let red = RedundancyMap::empty(1);
        assert!(matches!(team_reliability(&s, &red), Err(Error::Config(_))));
    }

    #[test]
    fn own_storage_examples() {
        let s = one_type_team(1, 0.02, 30.0, FunctionalRequirement::Full);
        let bp = RobotBlueprint::new(1, vec![ModuleId(1)], 1, 2);
        let s = TeamScenario::new(s.catalog.clone(), vec![bp], vec![1], 30.0, FunctionalRequirement::Full).unwrap();
        let none = RedundancyMap::for_scenario(&s);
        let zero = team_reliability_own_storage(&s, &none, OwnStorageCombination::Series).unwrap();
        assert_eq!(zero, robot_reliability(&s.blueprints[0], &BTreeMap::new(), &s.catalog, 30.0).unwrap());
        let mut one = none.clone();
        one.set(0, ModuleId(1), 1);
        let r = team_reliability_own_storage(&s, &one, OwnStorageCombination::Series).unwrap();
        assert_relative_eq!(r, (-0.6f64).exp() * 1.6, max_relative = 1e-14);
        assert_relative_eq!(r, poisson_cdf(0.6, 1), max_relative = 1e-14);
        let mut two = none;
        two.set(0, ModuleId(1), 2);
        assert!(matches!(
            team_reliability_own_storage(&s, &two, OwnStorageCombination::Series),
            Err(Error::Constraint(_))
        ));
    }

    #[test]
    fn own_storage_parallel_modules_combination() {
        let cat = Catalog::new(vec![spec(1, Role::Platform, 0.01, 1.0), spec(2, Role::Battery, 0.02, 1.0)]).unwrap();
        let bp = RobotBlueprint::new(1, vec![ModuleId(1), ModuleId(2)], 0, 2);
        let s = TeamScenario::new(cat, vec![bp], vec![2], 10.0, FunctionalRequirement::Full).unwrap();
        let red = RedundancyMap::for_scenario(&s);
        let lit = team_reliability_own_storage(&s, &red, OwnStorageCombination::ParallelModules).unwrap();
        let (a, b) = ((-0.1f64).exp(), (-0.2f64).exp());
        let per_robot = 1.0 - (1.0 - a) * (1.0 - b);
        assert_relative_eq!(lit, per_robot * per_robot, max_relative = 1e-14);
    }

    #[test]
    fn shared_pool_single_position_matches_module_formula() {
        let cat = Catalog::new(vec![spec(1, Role::Platform, 0.03, 0.6)]).unwrap();
        let bp = RobotBlueprint::new(1, vec![ModuleId(1)], 3, 4);
        let s = TeamScenario::new(cat, vec![bp], vec![1], 20.0, FunctionalRequirement::Full).unwrap();
        let mut red = RedundancyMap::for_scenario(&s);
        red.set(0, ModuleId(1), 3);
        let shared = shared_pool_reliability(&s, &red, 20.0).unwrap();
        assert_relative_eq!(shared, module_reliability(0.03, 20.0, 3, 0.6).unwrap(), max_relative = 1e-13);
    }

    #[test]
    fn shared_pool_two_positions_perfect_switching() {
        // two robots, pool of 1 spare: survive iff combined Poisson(2x) <= 1
        let s = one_type_team(2, 0.05, 10.0, FunctionalRequirement::Full);
        let mut red = RedundancyMap::for_scenario(&s);
        red.set(1, ModuleId(1), 1);
        let got = shared_pool_reliability(&s, &red, 10.0).unwrap();
        assert_relative_eq!(got, poisson_cdf(1.0, 1), max_relative = 1e-13);
        let s = s.with_requirement(FunctionalRequirement::Minimal).unwrap();
        assert!(shared_pool_reliability(&s, &red, 10.0).is_err());
    }
}
