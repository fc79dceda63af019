//! Seeded batch experiments and their CSV/JSON output.
//!
//! An experiment runs best-response dynamics for every combination of a
//! friendship factor from the grid, a cost model and a trial index. Each
//! trial draws one graph, shared by all `(F, model)` cells so that cells can
//! be compared pairwise. Rows come back in `(F index, model index, trial)`
//! order no matter how many threads did the work.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::{default_max_passes, run_dynamics, DynamicsTrace, Schedule};
use crate::equilibria::{full_report, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::game::{check_admissible, social_cost, GameInstance, Model, StrategyProfile};
use crate::graph::{make_complete, make_cycle, make_gnp, make_kleinberg, make_star, Graph, KleinbergParams};
use crate::rational::{
    format_decimal, int, ratio, recover_from_decimal, serde_exact, serde_text, to_f64, ExactValue,
    Rational,
};

/// Fixed CSV header.
pub const CSV_HEADER: [&str; 18] = [
    "experiment", "trial", "seed", "side", "q", "alpha", "n", "C", "L", "F", "model", "converged",
    "passes", "changes", "social_cost", "num_secure", "wof", "poa",
];

/// What a batch measures. All kinds run the same dynamics; `wof_exact` also
/// enumerates every profile to attach WoF and PoA to each row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExperimentKind {
    #[serde(rename = "sweep_F")]
    SweepF,
    #[serde(rename = "convergence")]
    Convergence,
    #[serde(rename = "wof_exact")]
    WofExact,
    #[serde(rename = "numsec")]
    NumSecure,
}

impl ExperimentKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ExperimentKind::SweepF => "sweep_F",
            ExperimentKind::Convergence => "convergence",
            ExperimentKind::WofExact => "wof_exact",
            ExperimentKind::NumSecure => "numsec",
        }
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            ExperimentKind::SweepF,
            ExperimentKind::Convergence,
            ExperimentKind::WofExact,
            ExperimentKind::NumSecure,
        ]
        .into_iter()
        .find(|k| k.as_str() == s)
        .ok_or_else(|| Error::parse("experiment kind", s))
    }
}

/// Which graph each trial plays on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "generator", rename_all = "snake_case", deny_unknown_fields)]
pub enum GraphSpec {
    Complete { n: usize },
    Star { n: usize },
    Cycle { n: usize },
    /// Erdős–Rényi `G(n, p)`, resampled until no node is isolated.
    Gnp { n: usize, p: f64 },
    Kleinberg {
        side: usize,
        #[serde(default = "one")]
        q: usize,
        #[serde(default = "two")]
        alpha: f64,
    },
    /// Edge-list file; every trial uses the same graph.
    File { path: PathBuf },
}

fn one() -> usize {
    1
}

fn two() -> f64 {
    2.0
}

impl GraphSpec {
    /// `SIDE,Q,ALPHA`, e.g. `10,1,2`.
    pub fn parse_kleinberg(text: &str) -> Result<GraphSpec> {
        let bad = || Error::parse("Kleinberg spec SIDE,Q,ALPHA", text);
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        let [side, q, alpha] = parts.as_slice() else {
            return Err(bad());
        };
        Ok(GraphSpec::Kleinberg {
            side: side.parse().map_err(|_| bad())?,
            q: q.parse().map_err(|_| bad())?,
            alpha: alpha.parse().map_err(|_| bad())?,
        })
    }

    /// Whether different seeds give different graphs.
    pub fn is_random(&self) -> bool {
        matches!(self, GraphSpec::Gnp { .. } | GraphSpec::Kleinberg { .. })
    }

    pub fn build(&self, seed: u64) -> Result<Graph> {
        match self {
            GraphSpec::Complete { n } => make_complete(*n),
            GraphSpec::Star { n } => make_star(*n),
            GraphSpec::Cycle { n } => make_cycle(*n),
            GraphSpec::Gnp { n, p } => make_gnp(*n, *p, seed),
            GraphSpec::Kleinberg { side, q, alpha } => make_kleinberg(&KleinbergParams {
                side: *side,
                long_range_per_node: *q,
                clustering_exponent: *alpha,
                seed,
            }),
            GraphSpec::File { path } => Graph::read_edge_list(path),
        }
    }

    /// Node count without building a random graph.
    pub fn node_count(&self) -> Result<usize> {
        Ok(match self {
            GraphSpec::Complete { n } | GraphSpec::Star { n } | GraphSpec::Cycle { n } | GraphSpec::Gnp { n, .. } => *n,
            GraphSpec::Kleinberg { side, .. } => side * side,
            GraphSpec::File { path } => Graph::read_edge_list(path)?.node_count(),
        })
    }

    fn kleinberg_columns(&self) -> (Option<usize>, Option<usize>, Option<f64>) {
        match self {
            GraphSpec::Kleinberg { side, q, alpha } => (Some(*side), Some(*q), Some(*alpha)),
            _ => (None, None, None),
        }
    }
}

/// Starting profile of every run.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum InitRule {
    #[default]
    AllInsecure,
    AllSecure,
    Bits(StrategyProfile),
    /// Each player secure with probability 1/2, drawn from the trial seed.
    Random,
}

impl InitRule {
    pub fn profile(&self, n: usize, seed: u64) -> Result<StrategyProfile> {
        match self {
            InitRule::AllInsecure => Ok(StrategyProfile::all_insecure(n)),
            InitRule::AllSecure => Ok(StrategyProfile::all_secure(n)),
            InitRule::Bits(p) if p.len() == n => Ok(p.clone()),
            InitRule::Bits(p) => Err(Error::ProfileLength {
                expected: n,
                got: p.len(),
            }),
            InitRule::Random => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                Ok(StrategyProfile::from_bits((0..n).map(|_| rng.gen_bool(0.5)).collect()))
            }
        }
    }
}

impl FromStr for InitRule {
    type Err = Error;

    /// `all-insecure`, `all-secure`, `random` or `bits:<01-string>`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all-insecure" => Ok(InitRule::AllInsecure),
            "all-secure" => Ok(InitRule::AllSecure),
            "random" => Ok(InitRule::Random),
            _ => match s.strip_prefix("bits:") {
                Some(bits) => Ok(InitRule::Bits(bits.parse()?)),
                None => Err(Error::parse("initial profile (all-insecure|all-secure|random|bits:<01>)", s)),
            },
        }
    }
}

impl std::fmt::Display for InitRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InitRule::AllInsecure => f.write_str("all-insecure"),
            InitRule::AllSecure => f.write_str("all-secure"),
            InitRule::Random => f.write_str("random"),
            InitRule::Bits(p) => write!(f, "bits:{p}"),
        }
    }
}

impl TryFrom<String> for InitRule {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<InitRule> for String {
    fn from(r: InitRule) -> String {
        r.to_string()
    }
}

/// A batch experiment, read from a JSON document with these field names.
/// Unknown fields are rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub graph: GraphSpec,
    #[serde(rename = "C", with = "serde_text")]
    pub inoculation_cost: Rational,
    #[serde(rename = "L", with = "serde_text")]
    pub loss: Rational,
    #[serde(rename = "F_grid", with = "serde_text::list", default = "default_f_grid")]
    pub f_grid: Vec<Rational>,
    #[serde(default = "default_models")]
    pub models: Vec<Model>,
    #[serde(default = "one")]
    pub trials: usize,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default)]
    pub schedule: Schedule,
    #[serde(default)]
    pub init: InitRule,
    /// `None` means `100·n` passes.
    #[serde(default)]
    pub max_passes: Option<usize>,
    /// Enumeration cap for `wof_exact`.
    #[serde(default)]
    pub cap: Option<usize>,
    #[serde(default)]
    pub output_csv: Option<PathBuf>,
    #[serde(default)]
    pub output_json: Option<PathBuf>,
    /// Validate and emit headers only.
    #[serde(default)]
    pub dry_run: bool,
}

/// `0, 1/10, …, 1`.
pub fn default_f_grid() -> Vec<Rational> {
    (0..=10).map(|i| ratio(i, 10)).collect()
}

pub fn default_models() -> Vec<Model> {
    vec![Model::Absolute, Model::Relative]
}

impl ExperimentConfig {
    /// A config with every optional field at its default.
    pub fn new(kind: ExperimentKind, graph: GraphSpec, inoculation_cost: Rational, loss: Rational) -> Self {
        ExperimentConfig {
            kind,
            graph,
            inoculation_cost,
            loss,
            f_grid: default_f_grid(),
            models: default_models(),
            trials: 1,
            master_seed: 0,
            schedule: Schedule::RoundRobin,
            init: InitRule::AllInsecure,
            max_passes: None,
            cap: None,
            output_csv: None,
            output_json: None,
            dry_run: false,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.f_grid.is_empty() || self.models.is_empty() {
            return Err(Error::Config("F_grid and models must be nonempty".into()));
        }
        if self.max_passes == Some(0) {
            return Err(Error::Config("max_passes must be at least 1".into()));
        }
        let n = self.graph.node_count()?;
        for f in &self.f_grid {
            check_admissible(n, self.inoculation_cost, self.loss, *f)?;
        }
        if self.kind == ExperimentKind::WofExact {
            let cap = self.cap.unwrap_or(DEFAULT_CAP);
            if n > cap {
                return Err(Error::CapExceeded { n, cap });
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Seeds

/// One step of the SplitMix64 generator, used as a 64-bit mixing function.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `h = splitmix64(master)`, then `h = splitmix64(h ^ i)` for each index.
pub fn derive_seed(master: u64, path: &[u64]) -> u64 {
    path.iter().fold(splitmix64(master), |h, &i| splitmix64(h ^ i))
}

/// Tag separating graph seeds from run seeds.
const GRAPH_STREAM: u64 = u64::MAX;

/// Seed of the graph used by `trial`, shared across the grid.
pub fn graph_seed(master: u64, trial: usize) -> u64 {
    derive_seed(master, &[GRAPH_STREAM, trial as u64])
}

/// Seed of one run; drives random schedules and random initial profiles.
pub fn trial_seed(master: u64, f_index: usize, model_index: usize, trial: usize) -> u64 {
    derive_seed(master, &[f_index as u64, model_index as u64, trial as u64])
}

// ---------------------------------------------------------------------------
// Rows

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub experiment: ExperimentKind,
    pub trial: usize,
    /// The run seed from [`trial_seed`].
    pub seed: u64,
    pub side: Option<usize>,
    pub q: Option<usize>,
    pub alpha: Option<f64>,
    pub n: usize,
    pub inoculation_cost: Rational,
    pub loss: Rational,
    pub friendship: Rational,
    pub model: Model,
    pub converged: bool,
    pub passes: usize,
    pub changes: usize,
    pub social_cost: Rational,
    pub num_secure: usize,
    pub wof: Option<Rational>,
    pub poa: Option<Rational>,
}

struct Cell {
    f_index: usize,
    model_index: usize,
    trial: usize,
}

fn cells(cfg: &ExperimentConfig) -> Vec<Cell> {
    let mut out = Vec::with_capacity(cfg.f_grid.len() * cfg.models.len() * cfg.trials);
    for f_index in 0..cfg.f_grid.len() {
        for model_index in 0..cfg.models.len() {
            for trial in 0..cfg.trials {
                out.push(Cell {
                    f_index,
                    model_index,
                    trial,
                });
            }
        }
    }
    out
}

fn trial_graphs(cfg: &ExperimentConfig) -> Result<Vec<Arc<Graph>>> {
    if cfg.graph.is_random() {
        (0..cfg.trials)
            .into_par_iter()
            .map(|t| cfg.graph.build(graph_seed(cfg.master_seed, t)).map(Arc::new))
            .collect()
    } else {
        let g = Arc::new(cfg.graph.build(0)?);
        Ok(vec![g; cfg.trials])
    }
}

struct Setup {
    inst: GameInstance,
    initial: StrategyProfile,
    schedule: Schedule,
    max_passes: usize,
    seed: u64,
}

fn setup(cfg: &ExperimentConfig, cell: &Cell, graph: Arc<Graph>) -> Result<Setup> {
    let seed = trial_seed(cfg.master_seed, cell.f_index, cell.model_index, cell.trial);
    let n = graph.node_count();
    let inst = GameInstance::new(
        graph,
        cfg.inoculation_cost,
        cfg.loss,
        cfg.f_grid[cell.f_index],
        cfg.models[cell.model_index],
    )?;
    let schedule = match &cfg.schedule {
        Schedule::RandomPermutation { seed: base } => Schedule::RandomPermutation {
            seed: derive_seed(seed, &[1, *base]),
        },
        other => other.clone(),
    };
    Ok(Setup {
        initial: cfg.init.profile(n, derive_seed(seed, &[0]))?,
        inst,
        schedule,
        max_passes: cfg.max_passes.unwrap_or_else(|| default_max_passes(n)),
        seed,
    })
}

fn run_cell(cfg: &ExperimentConfig, cell: &Cell, graph: Arc<Graph>) -> Result<ResultRow> {
    let s = setup(cfg, cell, graph)?;
    let trace = run_dynamics(&s.inst, &s.initial, &s.schedule, s.max_passes)?;
    let (wof, poa) = if cfg.kind == ExperimentKind::WofExact {
        let report = full_report(&s.inst, cfg.cap.unwrap_or(DEFAULT_CAP))?;
        (report.wof, report.poa)
    } else {
        (None, None)
    };
    let (side, q, alpha) = cfg.graph.kleinberg_columns();
    Ok(ResultRow {
        experiment: cfg.kind,
        trial: cell.trial,
        seed: s.seed,
        side,
        q,
        alpha,
        n: s.inst.node_count(),
        inoculation_cost: cfg.inoculation_cost,
        loss: cfg.loss,
        friendship: cfg.f_grid[cell.f_index],
        model: s.inst.model(),
        converged: trace.converged,
        passes: trace.passes,
        changes: trace.changes,
        social_cost: social_cost(&s.inst, &trace.final_profile),
        num_secure: trace.final_profile.secure_count(),
        wof,
        poa,
    })
}

/// Runs every `(F, model, trial)` cell. Non-converged runs are kept.
/// A dry run validates the config and returns no rows.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    cfg.validate()?;
    if cfg.dry_run {
        return Ok(Vec::new());
    }
    let graphs = trial_graphs(cfg)?;
    cells(cfg)
        .par_iter()
        .map(|cell| run_cell(cfg, cell, graphs[cell.trial].clone()))
        .collect()
}

/// Reruns the dynamics behind `row` and returns the full trace.
pub fn replay_row(cfg: &ExperimentConfig, row: &ResultRow) -> Result<DynamicsTrace> {
    let missing = || Error::Config("row does not belong to this config".into());
    let f_index = cfg.f_grid.iter().position(|f| *f == row.friendship).ok_or_else(missing)?;
    let model_index = cfg.models.iter().position(|m| *m == row.model).ok_or_else(missing)?;
    let cell = Cell {
        f_index,
        model_index,
        trial: row.trial,
    };
    let graph = Arc::new(if cfg.graph.is_random() {
        cfg.graph.build(graph_seed(cfg.master_seed, row.trial))?
    } else {
        cfg.graph.build(0)?
    });
    let s = setup(cfg, &cell, graph)?;
    if s.seed != row.seed {
        return Err(missing());
    }
    run_dynamics(&s.inst, &s.initial, &s.schedule, s.max_passes)
}

// ---------------------------------------------------------------------------
// CSV

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

fn opt_decimal(v: &Option<Rational>) -> String {
    v.as_ref().map(format_decimal).unwrap_or_default()
}

impl ResultRow {
    fn csv_record(&self) -> [String; 18] {
        [
            self.experiment.as_str().to_string(),
            self.trial.to_string(),
            self.seed.to_string(),
            opt(&self.side),
            opt(&self.q),
            opt(&self.alpha),
            self.n.to_string(),
            format_decimal(&self.inoculation_cost),
            format_decimal(&self.loss),
            format_decimal(&self.friendship),
            self.model.to_string(),
            self.converged.to_string(),
            self.passes.to_string(),
            self.changes.to_string(),
            format_decimal(&self.social_cost),
            self.num_secure.to_string(),
            opt_decimal(&self.wof),
            opt_decimal(&self.poa),
        ]
    }

    fn from_record(record: &csv::StringRecord, line: usize) -> Result<Self> {
        if record.len() != CSV_HEADER.len() {
            return Err(Error::Config(format!(
                "CSV line {line}: expected {} fields, got {}",
                CSV_HEADER.len(),
                record.len()
            )));
        }
        let field = |i: usize| &record[i];
        fn num<T: FromStr>(text: &str, what: &'static str) -> Result<T> {
            text.parse().map_err(|_| Error::parse(what, text))
        }
        fn maybe<T: FromStr>(text: &str, what: &'static str) -> Result<Option<T>> {
            if text.is_empty() {
                Ok(None)
            } else {
                num(text, what).map(Some)
            }
        }
        let maybe_rational = |text: &str| -> Result<Option<Rational>> {
            if text.is_empty() {
                Ok(None)
            } else {
                recover_from_decimal(text).map(Some)
            }
        };
        Ok(ResultRow {
            experiment: field(0).parse()?,
            trial: num(field(1), "trial")?,
            seed: num(field(2), "seed")?,
            side: maybe(field(3), "side")?,
            q: maybe(field(4), "q")?,
            alpha: maybe(field(5), "alpha")?,
            n: num(field(6), "n")?,
            inoculation_cost: recover_from_decimal(field(7))?,
            loss: recover_from_decimal(field(8))?,
            friendship: recover_from_decimal(field(9))?,
            model: field(10).parse()?,
            converged: num(field(11), "converged")?,
            passes: num(field(12), "passes")?,
            changes: num(field(13), "changes")?,
            social_cost: recover_from_decimal(field(14))?,
            num_secure: num(field(15), "num_secure")?,
            wof: maybe_rational(field(16))?,
            poa: maybe_rational(field(17))?,
        })
    }
}

/// Writes the header and one line per row, `\n`-terminated.
pub fn write_csv<W: Write>(rows: &[ResultRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.write_record(row.csv_record())?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Parses CSV written by [`write_csv`]. Rationals are recovered from their
/// decimal form as the simplest fraction that rounds to it.
pub fn parse_csv<R: Read>(input: R) -> Result<Vec<ResultRow>> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header = reader.headers()?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(Error::Config(format!("unexpected CSV header: {}", header.iter().collect::<Vec<_>>().join(","))));
    }
    reader
        .records()
        .enumerate()
        .map(|(i, record)| ResultRow::from_record(&record?, i + 2))
        .collect()
}

pub fn emit_csv(rows: &[ResultRow], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut buffer = Vec::new();
    write_csv(rows, &mut buffer)?;
    fs::write(path, buffer).map_err(|e| Error::io(path, e))
}

// ---------------------------------------------------------------------------
// JSON

#[derive(Debug, Clone, Serialize)]
pub struct JsonRow {
    pub experiment: ExperimentKind,
    pub trial: usize,
    pub seed: u64,
    pub side: Option<usize>,
    pub q: Option<usize>,
    pub alpha: Option<f64>,
    pub n: usize,
    #[serde(rename = "C")]
    pub inoculation_cost: ExactValue,
    #[serde(rename = "L")]
    pub loss: ExactValue,
    #[serde(rename = "F")]
    pub friendship: ExactValue,
    pub model: Model,
    pub converged: bool,
    pub passes: usize,
    pub changes: usize,
    pub social_cost: ExactValue,
    pub num_secure: usize,
    pub wof: Option<ExactValue>,
    pub poa: Option<ExactValue>,
}

impl From<&ResultRow> for JsonRow {
    fn from(r: &ResultRow) -> Self {
        JsonRow {
            experiment: r.experiment,
            trial: r.trial,
            seed: r.seed,
            side: r.side,
            q: r.q,
            alpha: r.alpha,
            n: r.n,
            inoculation_cost: (&r.inoculation_cost).into(),
            loss: (&r.loss).into(),
            friendship: (&r.friendship).into(),
            model: r.model,
            converged: r.converged,
            passes: r.passes,
            changes: r.changes,
            social_cost: (&r.social_cost).into(),
            num_secure: r.num_secure,
            wof: r.wof.as_ref().map(Into::into),
            poa: r.poa.as_ref().map(Into::into),
        }
    }
}

/// Aggregates over the trials of one `(F, model)` cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellSummary {
    #[serde(rename = "F", with = "serde_exact")]
    pub friendship: Rational,
    pub model: Model,
    pub trials: usize,
    pub converged: usize,
    #[serde(with = "serde_exact")]
    pub mean_social_cost: Rational,
    /// Standard error of the mean social cost.
    pub social_cost_stderr: f64,
    pub mean_num_secure: f64,
    pub mean_passes: f64,
    pub mean_changes: f64,
}

fn mean_and_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// One summary per `(F, model)` pair, in order of first appearance.
pub fn summarize(rows: &[ResultRow]) -> Vec<CellSummary> {
    let mut keys: Vec<(Rational, Model)> = Vec::new();
    for r in rows {
        if !keys.contains(&(r.friendship, r.model)) {
            keys.push((r.friendship, r.model));
        }
    }
    keys.into_iter()
        .map(|(friendship, model)| {
            let group: Vec<&ResultRow> = rows
                .iter()
                .filter(|r| r.friendship == friendship && r.model == model)
                .collect();
            let count = group.len();
            let total: Rational = group.iter().fold(int(0), |acc, r| acc + r.social_cost);
            let costs: Vec<f64> = group.iter().map(|r| to_f64(&r.social_cost)).collect();
            let mean_of = |f: &dyn Fn(&ResultRow) -> usize| {
                group.iter().map(|r| f(r) as f64).sum::<f64>() / count as f64
            };
            CellSummary {
                friendship,
                model,
                trials: count,
                converged: group.iter().filter(|r| r.converged).count(),
                mean_social_cost: total / int(count as i128),
                social_cost_stderr: mean_and_stderr(&costs).1,
                mean_num_secure: mean_of(&|r| r.num_secure),
                mean_passes: mean_of(&|r| r.passes),
                mean_changes: mean_of(&|r| r.changes),
            }
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct Metadata {
    pub generator: String,
    pub config: ExperimentConfig,
    pub columns: Vec<&'static str>,
    pub rows: usize,
    pub seed_derivation: &'static str,
    pub max_passes: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentDocument {
    pub metadata: Metadata,
    pub rows: Vec<JsonRow>,
    pub summary: Vec<CellSummary>,
}

pub fn document(cfg: &ExperimentConfig, rows: &[ResultRow]) -> ExperimentDocument {
    ExperimentDocument {
        metadata: Metadata {
            generator: concat!("inoculation ", env!("CARGO_PKG_VERSION")).to_string(),
            config: cfg.clone(),
            columns: CSV_HEADER.to_vec(),
            rows: rows.len(),
            seed_derivation: "splitmix64 fold; graph seed = derive(master, [2^64-1, trial]), \
                              run seed = derive(master, [F index, model index, trial])",
            max_passes: "null in the config means 100*n passes",
        },
        rows: rows.iter().map(JsonRow::from).collect(),
        summary: summarize(rows),
    }
}

pub fn emit_json(doc: &ExperimentDocument, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut text = serde_json::to_string_pretty(doc)?;
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Runs `cfg` and writes whichever outputs it names.
pub fn execute(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    let rows = run_experiment(cfg)?;
    if let Some(path) = &cfg.output_csv {
        emit_csv(&rows, path)?;
    }
    if let Some(path) = &cfg.output_json {
        emit_json(&document(cfg, &rows), path)?;
    }
    Ok(rows)
}
