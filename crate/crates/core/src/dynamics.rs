//! Best-response dynamics and the cycle potential function.
//!
//! A *round* offers one player a best response; a *pass* offers it to every
//! player in the schedule once. A run has converged after a pass in which
//! nobody changed strategy.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{Evaluator, GameInstance, InstanceSummary, Model, Strategy, StrategyProfile};
use crate::graph::attack_components;
use crate::rational::{format_exact, int, Rational};
use num_traits::Zero;

/// Order in which players are offered best responses.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Schedule {
    #[default]
    /// `0, 1, …, n-1` every pass.
    RoundRobin,
    /// A fresh uniformly random permutation every pass.
    RandomPermutation { seed: u64 },
    /// The given node sequence every pass.
    Fixed(Vec<usize>),
}

impl Schedule {
    fn validate(&self, n: usize) -> Result<()> {
        if let Schedule::Fixed(seq) = self {
            if seq.is_empty() {
                return Err(Error::Config("fixed schedule is empty".into()));
            }
            if let Some(&node) = seq.iter().find(|&&v| v >= n) {
                return Err(Error::NodeOutOfRange { node, n });
            }
        }
        Ok(())
    }

    fn covers_all(&self, n: usize) -> bool {
        match self {
            Schedule::Fixed(seq) => {
                let mut seen = vec![false; n];
                seq.iter().for_each(|&v| seen[v] = true);
                seen.into_iter().all(|b| b)
            }
            _ => true,
        }
    }
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Schedule::RoundRobin => f.write_str("round-robin"),
            Schedule::RandomPermutation { seed } => write!(f, "random:{seed}"),
            Schedule::Fixed(seq) => {
                let ids: Vec<String> = seq.iter().map(ToString::to_string).collect();
                write!(f, "fixed:{}", ids.join(","))
            }
        }
    }
}

impl TryFrom<String> for Schedule {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Schedule> for String {
    fn from(s: Schedule) -> String {
        s.to_string()
    }
}

impl FromStr for Schedule {
    type Err = Error;

    /// Accepts `round-robin`, `random`, `random:<seed>` and `fixed:<id>,<id>,…`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::parse("schedule (round-robin|random[:seed]|fixed:<ids>)", s);
        match s {
            "round-robin" => return Ok(Schedule::RoundRobin),
            "random" => return Ok(Schedule::RandomPermutation { seed: 0 }),
            _ => {}
        }
        if let Some(seed) = s.strip_prefix("random:") {
            let seed = seed.parse().map_err(|_| bad())?;
            return Ok(Schedule::RandomPermutation { seed });
        }
        if let Some(ids) = s.strip_prefix("fixed:") {
            let seq = ids
                .split(',')
                .map(|id| id.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Schedule::Fixed(seq));
        }
        Err(bad())
    }
}

/// One strategy change during a run.
#[derive(Debug, Clone, PartialEq)]
pub struct ChangeEvent {
    /// 1-based pass in which the change happened.
    pub pass: usize,
    /// 1-based index of the round (best-response offer) over the whole run.
    pub round: usize,
    pub node: usize,
    pub from: Strategy,
    pub to: Strategy,
    pub cost_before: Rational,
    pub cost_after: Rational,
    /// Potential after the change, when the run tracks one.
    pub potential: Option<i64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DynamicsTrace {
    pub schedule: Schedule,
    pub initial: StrategyProfile,
    pub events: Vec<ChangeEvent>,
    pub final_profile: StrategyProfile,
    pub converged: bool,
    pub passes: usize,
    pub rounds: usize,
    pub changes: usize,
    pub initial_potential: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConvergenceStats {
    /// Passes executed, including the final clean pass of a converged run.
    pub passes: usize,
    pub changes: usize,
    pub converged: bool,
}

pub fn convergence_stats(trace: &DynamicsTrace) -> ConvergenceStats {
    ConvergenceStats {
        passes: trace.passes,
        changes: trace.changes,
        converged: trace.converged,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DynamicsOptions {
    pub max_passes: usize,
    pub potential: Option<PotentialConfig>,
}

impl DynamicsOptions {
    /// `100·n` passes, no potential tracking.
    pub fn for_instance(inst: &GameInstance) -> Self {
        DynamicsOptions {
            max_passes: default_max_passes(inst.node_count()),
            potential: None,
        }
    }
}

pub fn default_max_passes(n: usize) -> usize {
    100 * n.max(1)
}

/// Runs best-response dynamics from `initial` until a clean pass or until
/// `max_passes` passes have been executed.
pub fn run_dynamics(
    inst: &GameInstance,
    initial: &StrategyProfile,
    schedule: &Schedule,
    max_passes: usize,
) -> Result<DynamicsTrace> {
    run_dynamics_with(
        inst,
        initial,
        schedule,
        &DynamicsOptions {
            max_passes,
            potential: None,
        },
    )
}

pub fn run_dynamics_with(
    inst: &GameInstance,
    initial: &StrategyProfile,
    schedule: &Schedule,
    options: &DynamicsOptions,
) -> Result<DynamicsTrace> {
    inst.check_profile(initial)?;
    let n = inst.node_count();
    schedule.validate(n)?;
    if options.max_passes == 0 {
        return Err(Error::Config("max_passes must be at least 1".into()));
    }
    let potential_of = |profile: &StrategyProfile| -> Result<Option<i64>> {
        options
            .potential
            .as_ref()
            .map(|cfg| cycle_potential(inst, profile, cfg))
            .transpose()
    };

    let mut eval = Evaluator::new(inst);
    let mut profile = initial.clone();
    let mut rng = match schedule {
        Schedule::RandomPermutation { seed } => Some(ChaCha8Rng::seed_from_u64(*seed)),
        _ => None,
    };
    let mut order: Vec<usize> = match schedule {
        Schedule::Fixed(seq) => seq.clone(),
        _ => (0..n).collect(),
    };

    let mut trace = DynamicsTrace {
        schedule: schedule.clone(),
        initial: initial.clone(),
        events: Vec::new(),
        final_profile: initial.clone(),
        converged: false,
        passes: 0,
        rounds: 0,
        changes: 0,
        initial_potential: potential_of(initial)?,
    };

    for pass in 1..=options.max_passes {
        if let Some(rng) = rng.as_mut() {
            order.shuffle(rng);
        }
        let mut changed = false;
        for &node in &order {
            trace.rounds += 1;
            let (current, flipped) = eval.flip_costs(&mut profile, node);
            if flipped < current {
                let from = profile.strategy(node);
                profile.flip(node);
                changed = true;
                trace.events.push(ChangeEvent {
                    pass,
                    round: trace.rounds,
                    node,
                    from,
                    to: from.flipped(),
                    cost_before: current,
                    cost_after: flipped,
                    potential: potential_of(&profile)?,
                });
            }
        }
        trace.passes = pass;
        if !changed {
            // A clean pass only certifies scheduled players.
            trace.converged = schedule.covers_all(n)
                || (0..n).all(|v| !eval.improves_by_flipping(&mut profile, v));
            break;
        }
    }
    trace.changes = trace.events.len();
    trace.final_profile = profile;
    Ok(trace)
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceEventDocument {
    pub pass: usize,
    pub node: usize,
    pub from: Strategy,
    pub to: Strategy,
}

/// JSON shape of a trace: `{instance, schedule, events, final, converged,
/// passes, changes}`.
#[derive(Debug, Clone, Serialize)]
pub struct TraceDocument {
    pub instance: InstanceSummary,
    pub schedule: String,
    pub events: Vec<TraceEventDocument>,
    #[serde(rename = "final")]
    pub final_profile: StrategyProfile,
    pub converged: bool,
    pub passes: usize,
    pub changes: usize,
}

impl DynamicsTrace {
    pub fn document(&self, inst: &GameInstance) -> TraceDocument {
        TraceDocument {
            instance: InstanceSummary::from(inst),
            schedule: self.schedule.to_string(),
            events: self
                .events
                .iter()
                .map(|e| TraceEventDocument {
                    pass: e.pass,
                    node: e.node,
                    from: e.from,
                    to: e.to,
                })
                .collect(),
            final_profile: self.final_profile.clone(),
            converged: self.converged,
            passes: self.passes,
            changes: self.changes,
        }
    }
}

/// Which formula fixes the big/small component threshold `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdVariant {
    /// `t = nC/(FL) - L/F + 1`.
    LiteralAbsolute,
    /// `t = 2Cn/(FL) - 2L/F + 1`.
    LiteralRelative,
    /// The size at which a player with two insecure neighbours is indifferent:
    /// `(Cn/L - F)/(1 + F)` (absolute), `(2Cn/L - F)/(2 + F)` (relative).
    Rederived,
}

impl FromStr for ThresholdVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "literal_absolute" | "literal-absolute" => Ok(ThresholdVariant::LiteralAbsolute),
            "literal_relative" | "literal-relative" => Ok(ThresholdVariant::LiteralRelative),
            "rederived" => Ok(ThresholdVariant::Rederived),
            _ => Err(Error::parse("threshold variant", s)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialConfig {
    pub variant: ThresholdVariant,
    /// Components larger than `threshold` are big, the rest small.
    pub threshold: Rational,
}

impl PotentialConfig {
    pub fn new(inst: &GameInstance, variant: ThresholdVariant) -> Result<Self> {
        let f = inst.effective_friendship();
        if f.is_zero() {
            return Err(Error::ZeroFriendship);
        }
        let (c, l) = (inst.inoculation_cost(), inst.loss());
        let n = int(inst.node_count() as i128);
        let one = int(1);
        let two = int(2);
        let threshold = match variant {
            ThresholdVariant::LiteralAbsolute => n * c / (f * l) - l / f + one,
            ThresholdVariant::LiteralRelative => two * c * n / (f * l) - two * l / f + one,
            ThresholdVariant::Rederived => {
                let x = inst.selfish_threshold();
                match inst.model() {
                    Model::Relative => (two * x - f) / (two + f),
                    _ => (x - f) / (one + f),
                }
            }
        };
        Ok(PotentialConfig { variant, threshold })
    }

    /// The default variant, [`ThresholdVariant::Rederived`].
    pub fn rederived(inst: &GameInstance) -> Result<Self> {
        Self::new(inst, ThresholdVariant::Rederived)
    }
}

/// `Φ = Σ_big |A| − Σ_small |A|` over the attack components of a cycle.
pub fn cycle_potential(
    inst: &GameInstance,
    profile: &StrategyProfile,
    cfg: &PotentialConfig,
) -> Result<i64> {
    if !inst.graph().is_cycle() {
        return Err(Error::NotACycle);
    }
    inst.check_profile(profile)?;
    let view = attack_components(inst.graph(), profile);
    Ok(view
        .sizes()
        .iter()
        .map(|&k| {
            if int(k as i128) > cfg.threshold {
                k as i64
            } else {
                -(k as i64)
            }
        })
        .sum())
}

/// Shape of a change on a cycle, by the changing player's neighbourhood.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ChangeCase {
    /// Secure player between two insecure neighbours becomes insecure.
    A,
    /// Secure player with exactly one secure neighbour becomes insecure.
    B,
    /// Insecure player between two insecure neighbours becomes secure.
    C,
    /// Anything else; not expected once two passes are over.
    Other,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditViolation {
    pub pass: usize,
    pub node: usize,
    pub case: ChangeCase,
    pub delta: i64,
}

/// Result of checking the potential argument on one round-robin run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PotentialAudit {
    pub variant: ThresholdVariant,
    #[serde(serialize_with = "crate::rational::serde_text::serialize")]
    pub threshold: Rational,
    pub converged: bool,
    pub changes: usize,
    pub case_a: usize,
    pub case_b: usize,
    pub case_c: usize,
    pub violations: Vec<AuditViolation>,
}

impl PotentialAudit {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Passes after which the structural invariants of cycle dynamics hold.
pub const AUDIT_WARMUP_PASSES: usize = 2;

/// Runs round-robin dynamics on a cycle and checks every change after the
/// warm-up passes: cases A and C must lower `Φ` by at least one, case B may
/// raise it by at most one, and no other kind of change may occur.
pub fn potential_audit(
    inst: &GameInstance,
    initial: &StrategyProfile,
    cfg: &PotentialConfig,
    max_passes: usize,
) -> Result<PotentialAudit> {
    let options = DynamicsOptions {
        max_passes,
        potential: Some(*cfg),
    };
    let trace = run_dynamics_with(inst, initial, &Schedule::RoundRobin, &options)?;
    let g = inst.graph();
    let mut audit = PotentialAudit {
        variant: cfg.variant,
        threshold: cfg.threshold,
        converged: trace.converged,
        changes: trace.changes,
        case_a: 0,
        case_b: 0,
        case_c: 0,
        violations: Vec::new(),
    };
    let mut profile = trace.initial.clone();
    let mut before = trace.initial_potential.unwrap_or_default();
    for event in &trace.events {
        let after = event.potential.unwrap_or_default();
        if event.pass > AUDIT_WARMUP_PASSES {
            let secure_neighbors = g
                .neighbors(event.node)
                .iter()
                .filter(|&&v| profile.is_secure(v))
                .count();
            let case = match (event.from, secure_neighbors) {
                (Strategy::Secure, 0) => ChangeCase::A,
                (Strategy::Secure, 1) => ChangeCase::B,
                (Strategy::Insecure, 0) => ChangeCase::C,
                _ => ChangeCase::Other,
            };
            let delta = after - before;
            let ok = match case {
                ChangeCase::A => {
                    audit.case_a += 1;
                    delta <= -1
                }
                ChangeCase::B => {
                    audit.case_b += 1;
                    delta <= 1
                }
                ChangeCase::C => {
                    audit.case_c += 1;
                    delta <= -1
                }
                ChangeCase::Other => false,
            };
            if !ok {
                audit.violations.push(AuditViolation {
                    pass: event.pass,
                    node: event.node,
                    case,
                    delta,
                });
            }
        }
        profile.flip(event.node);
        before = after;
    }
    Ok(audit)
}

impl fmt::Display for PotentialConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} (t = {})", self.variant, format_exact(&self.threshold))
    }
}
