//! Equilibrium verification, exhaustive enumeration, closed forms for
//! complete graphs and stars, and the Windfall of Friendship.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::{
    check_admissible, social_cost, Evaluator, GameInstance, InstanceSummary, Model, Strategy,
    StrategyProfile,
};
use crate::graph::Graph;
use crate::rational::{int, serde_exact, serde_text, Rational};

/// Largest graph enumerated unless the caller raises the cap.
pub const DEFAULT_CAP: usize = 20;

/// Hard limit imposed by the 64-bit profile index.
const INDEX_LIMIT: usize = 62;

/// Rejected profiles kept as examples in a report.
pub const WITNESS_SAMPLE: usize = 8;

const CHUNK: u64 = 1 << 12;

/// A player that gains by deviating.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Deviation {
    pub node: usize,
    /// The strictly better strategy.
    pub to: Strategy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub stable: bool,
    pub witness: Option<Deviation>,
}

/// Whether no player can strictly lower its perceived cost by flipping.
/// Players are checked in index order; the first improving one is returned.
pub fn is_equilibrium(inst: &GameInstance, profile: &StrategyProfile) -> Result<Verdict> {
    inst.check_profile(profile)?;
    let mut eval = Evaluator::new(inst);
    let mut scratch = profile.clone();
    Ok(verdict(&mut eval, &mut scratch))
}

fn first_deviation(eval: &mut Evaluator<'_>, profile: &mut StrategyProfile) -> Option<usize> {
    (0..profile.len()).find(|&v| eval.improves_by_flipping(profile, v))
}

fn verdict(eval: &mut Evaluator<'_>, profile: &mut StrategyProfile) -> Verdict {
    match first_deviation(eval, profile) {
        None => Verdict {
            stable: true,
            witness: None,
        },
        Some(node) => Verdict {
            stable: false,
            witness: Some(Deviation {
                node,
                to: profile.strategy(node).flipped(),
            }),
        },
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertifiedProfile {
    pub profile: StrategyProfile,
    #[serde(with = "serde_exact")]
    pub social_cost: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RejectedProfile {
    pub profile: StrategyProfile,
    pub witness: Deviation,
}

/// Equilibria of one instance with the derived ratios. Fields that were not
/// requested, or are undefined because a set is empty, are `None`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquilibriumReport {
    pub instance: InstanceSummary,
    pub model: Model,
    pub profiles_checked: u64,
    /// In profile index order (node 0 is the most significant bit).
    pub equilibria: Vec<CertifiedProfile>,
    #[serde(with = "serde_exact::option")]
    pub best_cost: Option<Rational>,
    #[serde(with = "serde_exact::option")]
    pub worst_cost: Option<Rational>,
    /// Worst cost among the equilibria of the selfish game (`F = 0`).
    #[serde(with = "serde_exact::option")]
    pub worst_nash_cost: Option<Rational>,
    pub optimum: Option<CertifiedProfile>,
    #[serde(with = "serde_exact::option")]
    pub wof: Option<Rational>,
    #[serde(with = "serde_exact::option")]
    pub poa: Option<Rational>,
    pub rejected: u64,
    pub witnesses: Vec<RejectedProfile>,
}

impl EquilibriumReport {
    /// Distinct equilibrium costs.
    pub fn cost_set(&self) -> BTreeSet<Rational> {
        self.equilibria.iter().map(|e| e.social_cost).collect()
    }
}

pub type ProgressFn = Arc<dyn Fn(u64, u64) + Send + Sync>;

/// Knobs for exhaustive search.
#[derive(Clone)]
pub struct EnumerationOptions {
    pub cap: usize,
    /// Called with `(profiles done, total)` as chunks finish.
    pub progress: Option<ProgressFn>,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            cap: DEFAULT_CAP,
            progress: None,
        }
    }
}

impl EnumerationOptions {
    pub fn with_cap(cap: usize) -> Self {
        EnumerationOptions {
            cap,
            progress: None,
        }
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap.min(INDEX_LIMIT) {
        return Err(Error::CapExceeded {
            n,
            cap: cap.min(INDEX_LIMIT),
        });
    }
    Ok(())
}

#[derive(Default)]
struct Sweep {
    equilibria: Vec<(u64, Rational)>,
    nash: Vec<(u64, Rational)>,
    optimum: Option<(u64, Rational)>,
    rejected: u64,
    witnesses: Vec<(u64, usize)>,
}

impl Sweep {
    /// Appends a later chunk; keeps index order and the earliest optimum.
    fn merge(mut self, later: Sweep) -> Sweep {
        self.equilibria.extend(later.equilibria);
        self.nash.extend(later.nash);
        self.rejected += later.rejected;
        self.witnesses.extend(later.witnesses);
        self.witnesses.truncate(WITNESS_SAMPLE);
        self.optimum = match (self.optimum, later.optimum) {
            (Some(a), Some(b)) => Some(if b.1 < a.1 { b } else { a }),
            (a, b) => a.or(b),
        };
        self
    }
}

struct SweepPlan {
    nash: bool,
    optimum: bool,
}

fn sweep(inst: &GameInstance, plan: SweepPlan, options: &EnumerationOptions) -> Result<Sweep> {
    let n = inst.node_count();
    check_cap(n, options.cap)?;
    let total = 1u64 << n;
    let selfish = inst.selfish();
    // The selfish game is the instance's own game when nobody cares about friends.
    let nash_separate = plan.nash && !inst.effective_friendship().is_zero();
    let done = AtomicU64::new(0);

    let chunks = total.div_ceil(CHUNK);
    let parts: Vec<Sweep> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut eval = Evaluator::new(inst);
            let mut nash_eval = Evaluator::new(&selfish);
            let mut out = Sweep::default();
            let end = ((chunk + 1) * CHUNK).min(total);
            for index in chunk * CHUNK..end {
                let mut profile = StrategyProfile::from_index(n, index);
                let mut cost = None;
                let mut cost_of = |p: &StrategyProfile| *cost.get_or_insert_with(|| social_cost(inst, p));
                match first_deviation(&mut eval, &mut profile) {
                    None => {
                        let c = cost_of(&profile);
                        out.equilibria.push((index, c));
                        if plan.nash && !nash_separate {
                            out.nash.push((index, c));
                        }
                    }
                    Some(node) => {
                        out.rejected += 1;
                        if out.witnesses.len() < WITNESS_SAMPLE {
                            out.witnesses.push((index, node));
                        }
                    }
                }
                if nash_separate && first_deviation(&mut nash_eval, &mut profile).is_none() {
                    out.nash.push((index, cost_of(&profile)));
                }
                if plan.optimum {
                    let c = cost_of(&profile);
                    if out.optimum.is_none_or(|(_, best)| c < best) {
                        out.optimum = Some((index, c));
                    }
                }
            }
            if let Some(progress) = &options.progress {
                let finished = done.fetch_add(end - chunk * CHUNK, Ordering::Relaxed) + end - chunk * CHUNK;
                progress(finished, total);
            }
            out
        })
        .collect();
    Ok(parts.into_iter().fold(Sweep::default(), Sweep::merge))
}

fn worst(costs: &[(u64, Rational)]) -> Option<Rational> {
    costs.iter().map(|&(_, c)| c).max()
}

fn build_report(inst: &GameInstance, s: Sweep) -> EquilibriumReport {
    let n = inst.node_count();
    let certified = |&(index, social_cost): &(u64, Rational)| CertifiedProfile {
        profile: StrategyProfile::from_index(n, index),
        social_cost,
    };
    let equilibria: Vec<CertifiedProfile> = s.equilibria.iter().map(certified).collect();
    let worst_cost = worst(&s.equilibria);
    let worst_nash_cost = worst(&s.nash);
    let optimum = s.optimum.as_ref().map(certified);
    let wof = match (worst_nash_cost, worst_cost) {
        (Some(ne), Some(fne)) => Some(ne / fne),
        _ => None,
    };
    let poa = match (worst_nash_cost, &optimum) {
        (Some(ne), Some(opt)) => Some(ne / opt.social_cost),
        _ => None,
    };
    EquilibriumReport {
        instance: InstanceSummary::from(inst),
        model: inst.model(),
        profiles_checked: 1u64 << n,
        best_cost: s.equilibria.iter().map(|&(_, c)| c).min(),
        worst_cost,
        worst_nash_cost,
        optimum,
        wof,
        poa,
        rejected: s.rejected,
        witnesses: s
            .witnesses
            .iter()
            .map(|&(index, node)| {
                let profile = StrategyProfile::from_index(n, index);
                let to = profile.strategy(node).flipped();
                RejectedProfile {
                    profile,
                    witness: Deviation { node, to },
                }
            })
            .collect(),
        equilibria,
    }
}

/// All pure equilibria of `inst` played under `model`.
pub fn enumerate_equilibria(
    inst: &GameInstance,
    model: Model,
    cap: usize,
) -> Result<EquilibriumReport> {
    enumerate_equilibria_with(inst, model, &EnumerationOptions::with_cap(cap))
}

pub fn enumerate_equilibria_with(
    inst: &GameInstance,
    model: Model,
    options: &EnumerationOptions,
) -> Result<EquilibriumReport> {
    let inst = inst.with_model(model)?;
    let plan = SweepPlan {
        nash: false,
        optimum: false,
    };
    Ok(build_report(&inst, sweep(&inst, plan, options)?))
}

/// Equilibria of the instance's model together with the selfish equilibria,
/// the social optimum, WoF and PoA, from a single pass over all profiles.
pub fn full_report(inst: &GameInstance, cap: usize) -> Result<EquilibriumReport> {
    full_report_with(inst, &EnumerationOptions::with_cap(cap))
}

pub fn full_report_with(inst: &GameInstance, options: &EnumerationOptions) -> Result<EquilibriumReport> {
    let plan = SweepPlan {
        nash: true,
        optimum: true,
    };
    Ok(build_report(inst, sweep(inst, plan, options)?))
}

/// Minimum social cost over all profiles; ties go to the smallest index,
/// which is the lexicographically smallest 0/1 string.
pub fn social_optimum(inst: &GameInstance, cap: usize) -> Result<(StrategyProfile, Rational)> {
    let n = inst.node_count();
    check_cap(n, cap)?;
    let best = (0..1u64 << n)
        .into_par_iter()
        .map(|index| (social_cost(inst, &StrategyProfile::from_index(n, index)), index))
        .min()
        .expect("at least one profile");
    Ok((StrategyProfile::from_index(n, best.1), best.0))
}

/// Worst selfish-equilibrium cost over worst equilibrium cost under the
/// instance's model. `None` when either set is empty.
pub fn wof(inst: &GameInstance, cap: usize) -> Result<Option<Rational>> {
    let plan = SweepPlan {
        nash: true,
        optimum: false,
    };
    let report = build_report(inst, sweep(inst, plan, &EnumerationOptions::with_cap(cap))?);
    Ok(report.wof)
}

/// Worst selfish-equilibrium cost over the optimum. Independent of `F`.
pub fn poa(inst: &GameInstance, cap: usize) -> Result<Option<Rational>> {
    let selfish = inst.selfish();
    let plan = SweepPlan {
        nash: true,
        optimum: true,
    };
    let report = build_report(&selfish, sweep(&selfish, plan, &EnumerationOptions::with_cap(cap))?);
    Ok(report.poa)
}

// ---------------------------------------------------------------------------
// Closed forms

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Complete,
    Star,
}

/// One equilibrium class: how many players are insecure and what it costs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosedFormEntry {
    pub insecure: usize,
    /// Stars only: whether the center is inoculated.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center_secure: Option<bool>,
    #[serde(with = "serde_exact")]
    pub cost: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosedFormResult {
    pub family: Family,
    pub n: usize,
    #[serde(rename = "C", with = "serde_text")]
    pub inoculation_cost: Rational,
    #[serde(rename = "L", with = "serde_text")]
    pub loss: Rational,
    #[serde(rename = "F", with = "serde_text")]
    pub friendship: Rational,
    pub model: Model,
    /// Equilibria of the selfish game.
    pub nash: Vec<ClosedFormEntry>,
    /// Equilibria under `model` at `F`.
    pub friendship_equilibria: Vec<ClosedFormEntry>,
    /// Cheapest profiles.
    pub optimum: Vec<ClosedFormEntry>,
    /// Exactly one equilibrium class under `model` at `F`.
    pub unique_fne: bool,
    /// Stars under the absolute model: least `n0` with `F·n0² + n0 + 1 > Cn/L`.
    pub n0_min: Option<usize>,
    /// The uniqueness criterion `n0_min <= ⌊Cn/L - 1 - F⌋` taken literally.
    pub criterion_unique_fne: Option<bool>,
    /// Places where the textbook inequalities and the exact conditions disagree.
    pub findings: Vec<String>,
}

impl ClosedFormResult {
    pub fn nash_costs(&self) -> BTreeSet<Rational> {
        self.nash.iter().map(|e| e.cost).collect()
    }

    pub fn friendship_costs(&self) -> BTreeSet<Rational> {
        self.friendship_equilibria.iter().map(|e| e.cost).collect()
    }

    pub fn optimum_cost(&self) -> Rational {
        self.optimum[0].cost
    }

    pub fn worst_friendship_cost(&self) -> Rational {
        *self.friendship_costs().last().expect("stars and cliques always have an equilibrium")
    }

    pub fn worst_nash_cost(&self) -> Rational {
        *self.nash_costs().last().expect("stars and cliques always have an equilibrium")
    }

    /// Exact WoF implied by the closed forms.
    pub fn wof(&self) -> Rational {
        self.worst_nash_cost() / self.worst_friendship_cost()
    }
}

fn floor_int(x: Rational) -> i128 {
    x.floor().to_integer()
}

fn ceil_int(x: Rational) -> i128 {
    x.ceil().to_integer()
}

/// Social cost with `k` insecure players forming one component.
fn single_component_cost(n: usize, k: usize, c: Rational, l: Rational) -> Rational {
    let (n, k) = (n as i128, k as i128);
    c * int(n - k) + l * Rational::new(k * k, n)
}

fn complete_entries(n: usize, x: Rational, w: Rational, c: Rational, l: Rational) -> Vec<ClosedFormEntry> {
    let one = int(1);
    let lo = ceil_int((x - one) / (one + w)).max(0);
    let hi = floor_int((x + w) / (one + w)).min(n as i128);
    (lo..=hi)
        .map(|k| ClosedFormEntry {
            insecure: k as usize,
            center_secure: None,
            cost: single_component_cost(n, k as usize, c, l),
        })
        .collect()
}

fn optimum_entries(
    n: usize,
    candidates: impl IntoIterator<Item = (usize, Option<bool>, Rational)>,
) -> Vec<ClosedFormEntry> {
    let all: Vec<ClosedFormEntry> = candidates
        .into_iter()
        .filter(|&(k, _, _)| k <= n)
        .map(|(insecure, center_secure, cost)| ClosedFormEntry {
            insecure,
            center_secure,
            cost,
        })
        .collect();
    let best = all.iter().map(|e| e.cost).min().expect("nonempty");
    let mut out: Vec<ClosedFormEntry> = all.into_iter().filter(|e| e.cost == best).collect();
    out.dedup();
    out
}

/// Weight a node of degree `degree` puts on each neighbour.
fn weight(model: Model, friendship: Rational, degree: usize) -> Rational {
    match model {
        Model::Selfish => Rational::zero(),
        Model::Absolute => friendship,
        Model::Relative => friendship / int(degree as i128),
    }
}

/// Equilibria of the complete graph `K_n`. With `w` the weight on each
/// neighbour, the insecure count `k` ranges over
/// `⌈(Cn/L − 1)/(1 + w)⌉ ..= ⌊(Cn/L + w)/(1 + w)⌋`.
pub fn closed_form_complete(
    n: usize,
    inoculation_cost: Rational,
    loss: Rational,
    friendship: Rational,
    model: Model,
) -> Result<ClosedFormResult> {
    check_admissible(n, inoculation_cost, loss, friendship)?;
    if n < 2 {
        return Err(Error::InvalidGraph("complete graph needs n >= 2".into()));
    }
    let (c, l) = (inoculation_cost, loss);
    let x = c * int(n as i128) / l;
    let nash = complete_entries(n, x, Rational::zero(), c, l);
    let friendship_equilibria = complete_entries(n, x, weight(model, friendship, n - 1), c, l);
    let half = x / int(2);
    let optimum = optimum_entries(
        n,
        [floor_int(half), ceil_int(half)]
            .into_iter()
            .map(|k| (k as usize, None, single_component_cost(n, k as usize, c, l))),
    );
    Ok(ClosedFormResult {
        family: Family::Complete,
        n,
        inoculation_cost,
        loss,
        friendship,
        model,
        unique_fne: friendship_equilibria.len() == 1,
        nash,
        friendship_equilibria,
        optimum,
        n0_min: None,
        criterion_unique_fne: None,
        findings: Vec::new(),
    })
}

struct StarWeights {
    leaf: Rational,
    center: Rational,
}

/// Center-insecure star equilibria with `k` insecure players (the center and
/// `k − 1` leaves) under the exact stability conditions:
/// insecure leaves need `k + w_leaf <= Cn/L`, secure leaves need
/// `Cn/L <= k + 1 + w_leaf`, the center needs `k + w_center·(k − 1)² <= Cn/L`.
fn star_center_insecure_ok(n: usize, k: usize, x: Rational, w: &StarWeights) -> bool {
    let kk = int(k as i128);
    let insecure_leaves = k - 1;
    let secure_leaves = n - k;
    let leaves_insecure_ok = insecure_leaves == 0 || kk + w.leaf <= x;
    let leaves_secure_ok = secure_leaves == 0 || x <= kk + int(1) + w.leaf;
    let center_ok = kk + w.center * int((insecure_leaves * insecure_leaves) as i128) <= x;
    leaves_insecure_ok && leaves_secure_ok && center_ok
}

fn star_entries(n: usize, x: Rational, w: &StarWeights, c: Rational, l: Rational) -> Vec<ClosedFormEntry> {
    let nn = int(n as i128);
    let mut out = vec![ClosedFormEntry {
        insecure: n - 1,
        center_secure: Some(true),
        cost: c + l * int(n as i128 - 1) / nn,
    }];
    out.extend((1..=n).filter(|&k| star_center_insecure_ok(n, k, x, w)).map(|k| ClosedFormEntry {
        insecure: k,
        center_secure: Some(false),
        cost: single_component_cost(n, k, c, l),
    }));
    out
}

fn star_weights(model: Model, friendship: Rational, n: usize) -> StarWeights {
    StarWeights {
        leaf: weight(model, friendship, 1),
        center: weight(model, friendship, n - 1),
    }
}

/// Least integer `n0 >= 0` with `F·n0² + n0 + 1 − Cn/L > 0`.
pub fn minimal_stable_n0(selfish_threshold: Rational, friendship: Rational) -> usize {
    let mut n0 = 0usize;
    loop {
        let v = int(n0 as i128);
        if friendship * v * v + v + int(1) - selfish_threshold > Rational::zero() {
            return n0;
        }
        n0 += 1;
    }
}

/// Equilibria of the star `S_n` (node 0 is the center).
///
/// The center-secure profile always is an equilibrium. Center-insecure ones
/// are decided by exact stability conditions for the leaves and the center.
/// Under the absolute model the result also carries the uniqueness criterion
/// in its textbook form and lists every case where the textbook leaf-count
/// range admits a profile whose center would deviate.
pub fn closed_form_star(
    n: usize,
    inoculation_cost: Rational,
    loss: Rational,
    friendship: Rational,
    model: Model,
) -> Result<ClosedFormResult> {
    check_admissible(n, inoculation_cost, loss, friendship)?;
    if n < 2 {
        return Err(Error::InvalidGraph("star needs n >= 2".into()));
    }
    let (c, l) = (inoculation_cost, loss);
    let x = c * int(n as i128) / l;
    let nash = star_entries(n, x, &star_weights(Model::Selfish, friendship, n), c, l);
    let weights = star_weights(model, friendship, n);
    let friendship_equilibria = star_entries(n, x, &weights, c, l);
    let nn = int(n as i128);
    let optimum = optimum_entries(
        n,
        [(n - 1, Some(true), c + l * int(n as i128 - 1) / nn)]
            .into_iter()
            .chain((1..=n).map(|k| (k, Some(false), single_component_cost(n, k, c, l))))
            .chain([(0, Some(true), c * nn)]),
    );
    let unique_fne = friendship_equilibria.len() == 1;

    let mut findings = Vec::new();
    let (mut n0_min, mut criterion_unique_fne) = (None, None);
    if model == Model::Absolute && !friendship.is_zero() {
        let n0 = minimal_stable_n0(x, friendship);
        let criterion = (n0 as i128) <= floor_int(x - int(1) - friendship);
        if criterion != unique_fne {
            findings.push(format!(
                "uniqueness criterion says {} but the exact count is {} equilibrium classes",
                if criterion { "unique" } else { "not unique" },
                friendship_equilibria.len()
            ));
        }
        let lo = (ceil_int(x - friendship) - 1).max(1);
        let hi = floor_int(x - friendship).min(n as i128);
        for k in lo..=hi {
            let k = k as usize;
            let kk = int(k as i128);
            let center_ok = kk + friendship * int(((k - 1) * (k - 1)) as i128) <= x;
            if !center_ok {
                findings.push(format!(
                    "leaf conditions admit {k} insecure players around an insecure center, \
                     but the center prefers to inoculate"
                ));
            }
        }
        n0_min = Some(n0);
        criterion_unique_fne = Some(criterion);
    }

    Ok(ClosedFormResult {
        family: Family::Star,
        n,
        inoculation_cost,
        loss,
        friendship,
        model,
        nash,
        friendship_equilibria,
        optimum,
        unique_fne,
        n0_min,
        criterion_unique_fne,
        findings,
    })
}

/// The lower bound on the star WoF that holds when its equilibrium is
/// unique: `((n − 2)C + L/n) / (C + (n − 1)L/n)`.
pub fn star_wof_lower_bound(n: usize, inoculation_cost: Rational, loss: Rational) -> Rational {
    let nn = int(n as i128);
    (inoculation_cost * int(n as i128 - 2) + loss / nn)
        / (inoculation_cost + loss * int(n as i128 - 1) / nn)
}

/// The upper bound `(n + 1)/(n − 3)` on the star WoF when the equilibrium is
/// not unique (`n >= 4`).
pub fn star_wof_upper_bound(n: usize) -> Rational {
    Rational::new(n as i128 + 1, n as i128 - 3)
}

// ---------------------------------------------------------------------------
// Characterization at C = 1, L = n/1.5

/// `(a)` every neighbour of an insecure player is secure and `(b)` every
/// secure player has an insecure neighbour.
pub fn characterization_check(g: &Graph, profile: &StrategyProfile) -> Result<bool> {
    if profile.len() != g.node_count() {
        return Err(Error::ProfileLength {
            expected: g.node_count(),
            got: profile.len(),
        });
    }
    Ok((0..g.node_count()).all(|v| {
        let secure_neighbours = g.neighbors(v).iter().filter(|&&u| profile.is_secure(u)).count();
        if profile.is_secure(v) {
            secure_neighbours < g.degree(v)
        } else {
            secure_neighbours == g.degree(v)
        }
    }))
}

fn masks(g: &Graph, cap: usize) -> Result<(usize, Vec<u64>)> {
    let n = g.node_count();
    check_cap(n, cap)?;
    let adjacency = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u))
        .collect();
    Ok((n, adjacency))
}

fn members(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

/// Inclusion-minimal vertex covers, by brute force over subsets.
pub fn minimal_vertex_covers(g: &Graph, cap: usize) -> Result<Vec<Vec<usize>>> {
    let (n, adjacency) = masks(g, cap)?;
    let covers = |s: u64| (0..n).all(|v| s >> v & 1 == 1 || adjacency[v] & !s == 0);
    let mut out: Vec<Vec<usize>> = (0..1u64 << n)
        .into_par_iter()
        .filter(|&s| covers(s) && (0..n).all(|v| s >> v & 1 == 0 || !covers(s & !(1 << v))))
        .map(|s| members(s, n))
        .collect();
    out.sort();
    Ok(out)
}

/// Independent sets that dominate every vertex, by brute force.
pub fn independent_dominating_sets(g: &Graph, cap: usize) -> Result<Vec<Vec<usize>>> {
    let (n, adjacency) = masks(g, cap)?;
    let mut out: Vec<Vec<usize>> = (0..1u64 << n)
        .into_par_iter()
        .filter(|&s| {
            (0..n).all(|v| {
                if s >> v & 1 == 1 {
                    adjacency[v] & s == 0
                } else {
                    adjacency[v] & s != 0
                }
            })
        })
        .map(|s| members(s, n))
        .collect();
    out.sort();
    Ok(out)
}

/// Parameters of the hardness regime on `n` nodes: `C = 1`, `L = n/1.5`.
pub fn hardness_regime(n: usize) -> (Rational, Rational) {
    (int(1), Rational::new(2 * n as i128, 3))
}
