//! Command handlers behind the `smr` binary. Every handler renders its whole
//! output into memory first, so a failing command prints nothing on stdout.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use smr_core::optimizer::enumerate::{search_space, DEFAULT_CEILING};
use smr_core::optimizer::{
    decode, evaluate, exhaustive_enumerate, nsga2_optimize, Allocation, EnumerationLimits, GaConfig, ParetoPoint,
};
use smr_core::reliability::robot_reliabilities;
use smr_core::sim::{estimate_reliability, estimate_robustness_level, SimConfig, SwitchModel};
use smr_core::{
    capability_reliability, load_scenario, shared_pool_reliability, team_reliability_with, Capability, CostBreakdown,
    Error, FunctionalRequirement, RedundancyMap, ScenarioFileError, StorageMode, TeamScenario,
};

pub const CSV_HEADER: &str = "reliability,cost,genes";

/// Environment variable overriding the default enumeration ceiling.
pub const CEILING_ENV: &str = "SMR_ENUM_CEILING";

/// |z| above which `simulate` reports a disagreement.
pub const Z_LIMIT: f64 = 5.0;

#[derive(Debug, Parser)]
#[command(name = "smr", version, about = "Reliability, cost and spare allocation for self-maintaining robot teams")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reliability, capability and cost report for one allocation.
    Evaluate(EvaluateArgs),
    /// Pareto front of reliability against cost with NSGA-II.
    Optimize(OptimizeArgs),
    /// Monte-Carlo estimate checked against the closed form.
    Simulate(SimulateArgs),
    /// Search-space size and, when small enough, the exact front.
    Enumerate(EnumerateArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    /// Scenario JSON file.
    pub scenario: PathBuf,
    /// Mission horizon in months; defaults to the scenario's.
    #[arg(long = "time", short = 't')]
    pub time: Option<f64>,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[command(flatten)]
    pub common: Common,
    /// Gene vector, inline ("1 0 4" or "1,0,4") or a file holding one.
    /// Defaults to every slot empty.
    #[arg(long)]
    pub allocation: Option<String>,
    /// Also report the robustness level.
    #[arg(long)]
    pub robustness: bool,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 100)]
    pub pop: usize,
    #[arg(long, default_value_t = 200)]
    pub gens: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.9)]
    pub crossover: f64,
    #[arg(long, default_value_t = 0.05)]
    pub mutation: f64,
    /// Output CSV path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub allocation: Option<String>,
    /// Draw switching success at every switch instead of once per position.
    #[arg(long)]
    pub per_switch: bool,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub common: Common,
    /// Refuse when the chromosome count exceeds this.
    #[arg(long, env = CEILING_ENV, default_value_t = DEFAULT_CEILING)]
    pub ceiling: u128,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Failure of a command. [`CliError::exit_code`] gives the process status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Scenario(#[from] ScenarioFileError),
    #[error("input error: {0}")]
    Input(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    /// Enumeration refused; the count has already been reported.
    #[error("search space of {count} chromosomes exceeds ceiling {ceiling}")]
    Refused { count: u128, ceiling: u128 },
    /// Simulation disagrees with an exact closed form. Carries the report.
    #[error("|z| = {z:.3} exceeds {Z_LIMIT}")]
    Disagreement { z: f64, report: String },
    #[error("cannot write {path}: {source}")]
    Output { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Scenario(_) | CliError::Input(_) => 2,
            CliError::Infeasible(_) => 3,
            CliError::Refused { .. } => 4,
            CliError::Disagreement { .. } => 5,
            CliError::Output { .. } => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Constraint(_) | Error::NoFeasibleSolution => CliError::Infeasible(e.to_string()),
            Error::CeilingExceeded { count, ceiling } => CliError::Refused { count, ceiling },
            _ => CliError::Input(e.to_string()),
        }
    }
}

/// What a successful command prints.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
}

pub fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Evaluate(a) => cmd_evaluate(&a),
        Command::Optimize(a) => cmd_optimize(&a),
        Command::Simulate(a) => cmd_simulate(&a),
        Command::Enumerate(a) => cmd_enumerate(&a),
    }
}

fn load(common: &Common) -> Result<TeamScenario, CliError> {
    let scenario = load_scenario(&common.scenario)?;
    Ok(match common.time {
        Some(t) => scenario.with_horizon(t)?,
        None => scenario,
    })
}

/// Parses genes separated by whitespace and/or commas, optionally wrapped in
/// brackets.
pub fn parse_genes(text: &str) -> Result<Allocation, CliError> {
    let inner = text.trim().trim_start_matches('[').trim_end_matches(']');
    inner
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<u32>().map_err(|_| CliError::Input(format!("gene {s:?} is not a module id"))))
        .collect::<Result<Vec<_>, _>>()
        .map(Allocation::new)
}

fn allocation_arg(arg: Option<&str>, scenario: &TeamScenario) -> Result<Allocation, CliError> {
    let Some(arg) = arg else {
        return Ok(Allocation::empty(scenario));
    };
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {arg}: {e}")))?;
        parse_genes(&text)
    } else {
        parse_genes(arg)
    }
}

/// Allocation decoded and checked against storage limits.
fn redundancy_of(allocation: &Allocation, scenario: &TeamScenario) -> Result<RedundancyMap, CliError> {
    let red = decode(allocation, scenario).map_err(|e| match e {
        Error::UnknownModule(_) => CliError::Infeasible(e.to_string()),
        other => other.into(),
    })?;
    red.check(scenario)?;
    Ok(red)
}

fn num(x: f64) -> String {
    format!("{x:.9}")
}

/// The redundancy used for closed-form reliability: the pooled view in shared
/// storage mode, the per-robot spares otherwise.
fn analytic_view(scenario: &TeamScenario, red: &RedundancyMap) -> RedundancyMap {
    match scenario.storage {
        StorageMode::Shared => red.pooled(scenario),
        StorageMode::PerRobot => red.clone(),
    }
}

fn requirement_name(req: &FunctionalRequirement) -> String {
    match req {
        FunctionalRequirement::Full => "full".into(),
        FunctionalRequirement::Minimal => "minimal".into(),
        FunctionalRequirement::Partial(m) => {
            let m: Vec<String> = m.iter().map(u32::to_string).collect();
            format!("partial[{}]", m.join(","))
        }
    }
}

pub fn cmd_evaluate(args: &EvaluateArgs) -> Result<Output, CliError> {
    let scenario = load(&args.common)?;
    let allocation = allocation_arg(args.allocation.as_deref(), &scenario)?;
    let red = redundancy_of(&allocation, &scenario)?;
    let view = analytic_view(&scenario, &red);
    let t = scenario.horizon;
    let mut out = String::new();

    let _ = writeln!(out, "time_months: {}", num(t));
    let _ = writeln!(out, "storage: {}", if scenario.storage == StorageMode::Shared { "shared" } else { "per_robot" });
    let _ = writeln!(out, "requirement: {}", requirement_name(&scenario.requirement));
    let _ = writeln!(out, "allocation: {allocation}");
    let mut reqs = vec![FunctionalRequirement::Full, FunctionalRequirement::Minimal];
    if let FunctionalRequirement::Partial(_) = scenario.requirement {
        reqs.push(scenario.requirement.clone());
    }
    for req in &reqs {
        let r = team_reliability_with(&scenario, &view, t, req)?;
        let _ = writeln!(out, "team_reliability {}: {}", requirement_name(req), num(r));
    }
    if scenario.storage == StorageMode::Shared && scenario.requires_every_robot() {
        let _ =
            writeln!(out, "team_reliability shared_pool_exact: {}", num(shared_pool_reliability(&scenario, &red, t)?));
    }

    let per_robot = robot_reliabilities(&scenario, &view, t)?;
    let mut next = vec![0usize; per_robot.len()];
    for (j, inst) in scenario.instances().iter().enumerate() {
        let bp = &scenario.blueprints[inst.blueprint];
        let r = per_robot[inst.blueprint][next[inst.blueprint]];
        next[inst.blueprint] += 1;
        let _ = writeln!(out, "robot {} (type {}): {}", j + 1, bp.type_index, num(r));
        for cap in Capability::ALL {
            let value = match capability_reliability(bp, view.robot(j), &scenario.catalog, t, cap) {
                Ok(v) => num(v),
                Err(Error::RoleAbsent { role, .. }) => format!("role absent ({role})"),
                Err(e) => return Err(e.into()),
            };
            let _ = writeln!(out, "  capability {}: {value}", cap.name());
        }
    }

    let costs = CostBreakdown::compute(&scenario, &red)?;
    let _ = writeln!(out, "cost acquisition: {}", num(costs.acquisition));
    let _ = writeln!(out, "cost corrective_rate_per_month: {}", num(costs.cm_rate));
    let _ = writeln!(out, "cost continuous_rate_per_month: {}", num(costs.continuous_rate));
    for (id, (n, total)) in &costs.per_module {
        let _ = writeln!(out, "  module {id}: count {n}, cost {}", num(*total));
    }
    if args.robustness {
        let sim = SimConfig::for_scenario(&scenario, 1, 0);
        let _ = writeln!(out, "robustness_level: {}", estimate_robustness_level(&scenario, &red, &sim));
    }
    Ok(Output { stdout: out, stderr: String::new() })
}

/// Front as CSV with fixed header and 9 fractional digits.
pub fn front_csv(front: &[ParetoPoint]) -> String {
    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    for p in front {
        let _ = writeln!(csv, "{},{},{}", num(p.reliability), num(p.cost), p.allocation);
    }
    csv
}

/// Parses a front written by [`front_csv`] into (reliability, cost, genes).
pub fn parse_front_csv(text: &str) -> Result<Vec<(f64, f64, Allocation)>, CliError> {
    let mut lines = text.lines();
    if lines.next() != Some(CSV_HEADER) {
        return Err(CliError::Input("missing front header".into()));
    }
    lines
        .filter(|l| !l.is_empty())
        .map(|line| {
            let mut cols = line.splitn(3, ',');
            let bad = || CliError::Input(format!("malformed front row {line:?}"));
            let r = cols.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
            let c = cols.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
            let g = parse_genes(cols.next().ok_or_else(bad)?)?;
            Ok((r, c, g))
        })
        .collect()
}

fn emit_csv(csv: String, out: Option<&Path>, note: String) -> Result<Output, CliError> {
    match out {
        Some(path) => {
            std::fs::write(path, &csv)
                .map_err(|source| CliError::Output { path: path.display().to_string(), source })?;
            Ok(Output { stdout: note, stderr: String::new() })
        }
        None => Ok(Output { stdout: csv, stderr: note }),
    }
}

pub fn cmd_optimize(args: &OptimizeArgs) -> Result<Output, CliError> {
    let scenario = load(&args.common)?;
    let ga = GaConfig {
        population_size: args.pop,
        generations: args.gens,
        crossover_rate: args.crossover,
        mutation_rate: args.mutation,
        rng_seed: args.seed,
    };
    let front = nsga2_optimize(&scenario, &ga)?;
    let note = format!("{} non-dominated allocations at t = {}\n", front.len(), num(scenario.horizon));
    emit_csv(front_csv(&front), args.out.as_deref(), note)
}

pub fn cmd_simulate(args: &SimulateArgs) -> Result<Output, CliError> {
    let scenario = load(&args.common)?;
    let allocation = allocation_arg(args.allocation.as_deref(), &scenario)?;
    let red = redundancy_of(&allocation, &scenario)?;
    let mut sim = SimConfig::for_scenario(&scenario, args.trials, args.seed);
    if args.per_switch {
        sim.switch_model = SwitchModel::PerSwitch;
    }
    let est = estimate_reliability(&scenario, &red, &sim)?;
    let t = scenario.horizon;
    let (analytic, exact) = match scenario.storage {
        StorageMode::PerRobot => (team_reliability_with(&scenario, &red, t, &scenario.requirement)?, true),
        StorageMode::Shared if scenario.requires_every_robot() => (shared_pool_reliability(&scenario, &red, t)?, true),
        StorageMode::Shared => {
            (team_reliability_with(&scenario, &red.pooled(&scenario), t, &scenario.requirement)?, false)
        }
    };
    let exact = exact && sim.switch_model == SwitchModel::MechanismOnce;
    let z = est.z_score(analytic);
    let mut out = String::new();
    let _ = writeln!(out, "time_months: {}", num(t));
    let _ = writeln!(out, "trials: {}", est.trials);
    let _ = writeln!(out, "estimate: {} +/- {}", num(est.estimate), num(est.std_error));
    let _ = writeln!(out, "analytic: {}{}", num(analytic), if exact { "" } else { " (approximate)" });
    let _ = writeln!(out, "z_score: {}", num(z));
    if exact && z.abs() > Z_LIMIT {
        return Err(CliError::Disagreement { z, report: out });
    }
    Ok(Output { stdout: out, stderr: String::new() })
}

/// Counts saturate at `u128::MAX`.
fn count(n: u128) -> String {
    if n == u128::MAX {
        "over 2^128".into()
    } else {
        n.to_string()
    }
}

pub fn cmd_enumerate(args: &EnumerateArgs) -> Result<Output, CliError> {
    let scenario = load(&args.common)?;
    let space = search_space(&scenario);
    let counts = format!(
        "search space: chromosomes {}, per_type {}, per_robot {}, distinct {}\n",
        count(space.chromosomes),
        count(space.per_type),
        count(space.per_robot),
        count(space.distinct)
    );
    let front = match exhaustive_enumerate(&scenario, &EnumerationLimits { ceiling: args.ceiling }) {
        Ok(front) => front,
        Err(Error::CeilingExceeded { count, ceiling }) => {
            eprint!("{counts}");
            return Err(CliError::Refused { count, ceiling });
        }
        Err(e) => return Err(e.into()),
    };
    emit_csv(front_csv(&front), args.out.as_deref(), counts)
}

/// Re-evaluates every row of a front, returning the largest deviation in
/// either objective.
pub fn front_round_trip_error(front: &[(f64, f64, Allocation)], scenario: &TeamScenario) -> Result<f64, CliError> {
    let mut worst: f64 = 0.0;
    for (r, c, a) in front {
        let e = evaluate(a, scenario)?;
        worst = worst.max((e.reliability - r).abs()).max((e.cost - c).abs());
    }
    Ok(worst)
}
