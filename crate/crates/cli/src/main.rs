//! `inoc`: command-line front end for the `inoculation` crate.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 usage error, 3 domain error
//! (inadmissible parameters, bad graph or profile), 4 enumeration cap exceeded.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use inoculation::dynamics::Schedule;
use inoculation::equilibria::{characterization_check, closed_form_complete, closed_form_star, full_report, is_equilibrium};
use inoculation::game::{cost_report, InstanceSummary};
use inoculation::harness::{self, ExperimentConfig, GraphSpec, InitRule};
use inoculation::rational::{format_exact, parse_rational, Rational};
use inoculation::{Error, GameInstance, Graph, Model};
use serde_json::json;

#[derive(Parser)]
#[command(name = "inoc", version, about = "Virus inoculation game: costs, dynamics, equilibria and experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph and write it as an edge list.
    Gen {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print actual, perceived and social costs of a profile.
    Cost {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        game: GameArgs,
        #[arg(long, default_value = "all-insecure")]
        init: InitRule,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run best-response dynamics and print the trace.
    Dynamics {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        game: GameArgs,
        #[arg(long, default_value = "round-robin")]
        schedule: String,
        #[arg(long, default_value = "all-insecure")]
        init: InitRule,
        /// Defaults to 100·n passes.
        #[arg(long)]
        max_passes: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate all equilibria, with optimum, WoF and PoA.
    Enum {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        game: GameArgs,
        #[arg(long, default_value_t = inoculation::DEFAULT_CAP)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed-form equilibria of a complete graph or a star.
    ClosedForm {
        #[arg(long, value_name = "N", conflicts_with = "star", required_unless_present = "star")]
        complete: Option<usize>,
        #[arg(long, value_name = "N")]
        star: Option<usize>,
        #[command(flatten)]
        game: GameArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Windfall of Friendship by exhaustive search.
    Wof {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        game: GameArgs,
        #[arg(long, default_value_t = inoculation::DEFAULT_CAP)]
        cap: usize,
    },
    /// Price of Anarchy by exhaustive search.
    Poa {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        game: GameArgs,
        #[arg(long, default_value_t = inoculation::DEFAULT_CAP)]
        cap: usize,
    },
    /// Verify a profile and test the structural characterization.
    Check {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        game: GameArgs,
        #[arg(long)]
        init: InitRule,
    },
    /// Run a batch experiment from a JSON config and write CSV.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        /// CSV destination; overrides the config. Without either, CSV goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphSource {
    /// Edge-list file.
    #[arg(long, value_name = "PATH")]
    graph: Option<PathBuf>,
    #[arg(long, value_name = "N")]
    complete: Option<usize>,
    /// Star with node 0 as the center.
    #[arg(long, value_name = "N")]
    star: Option<usize>,
    #[arg(long, value_name = "N")]
    cycle: Option<usize>,
    /// Small-world torus, e.g. `10,1,2`.
    #[arg(long, value_name = "SIDE,Q,ALPHA")]
    kleinberg: Option<String>,
}

#[derive(Args)]
struct GraphArgs {
    #[command(flatten)]
    source: GraphSource,
    /// Seed for random generators and the `random` schedule.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl GraphArgs {
    fn build(&self) -> Result<Graph, Error> {
        let s = &self.source;
        let spec = if let Some(path) = &s.graph {
            GraphSpec::File { path: path.clone() }
        } else if let Some(n) = s.complete {
            GraphSpec::Complete { n }
        } else if let Some(n) = s.star {
            GraphSpec::Star { n }
        } else if let Some(n) = s.cycle {
            GraphSpec::Cycle { n }
        } else {
            GraphSpec::parse_kleinberg(s.kleinberg.as_deref().unwrap_or_default())?
        };
        spec.build(self.seed)
    }
}

fn rational(text: &str) -> Result<Rational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

#[derive(Args)]
struct GameArgs {
    /// Inoculation cost, e.g. `13/32`.
    #[arg(long = "C", value_name = "p/q", value_parser = rational)]
    inoculation_cost: Rational,
    /// Loss when infected.
    #[arg(long = "L", value_name = "p/q", value_parser = rational)]
    loss: Rational,
    /// Friendship factor in [0, 1].
    #[arg(long = "F", value_name = "p/q", value_parser = rational, default_value = "0")]
    friendship: Rational,
    #[arg(long, default_value = "absolute")]
    model: Model,
}

impl GameArgs {
    fn instance(&self, graph: Graph) -> Result<GameInstance, Error> {
        GameInstance::new(graph, self.inoculation_cost, self.loss, self.friendship, self.model)
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|source| Error::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

fn emit_json(value: &impl serde::Serialize, out: Option<&PathBuf>) -> Result<(), Error> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    emit(&text, out)
}

fn ratio_text(value: Option<Rational>) -> String {
    value.map_or_else(|| "undefined".to_string(), |r| format_exact(&r))
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Gen { graph, out } => emit(&graph.build()?.to_edge_list(), out.as_ref()),
        Command::Cost { graph, game, init, out } => {
            let inst = game.instance(graph.build()?)?;
            let profile = init.profile(inst.node_count(), graph.seed)?;
            emit_json(
                &json!({
                    "instance": InstanceSummary::from(&inst),
                    "profile": profile,
                    "costs": cost_report(&inst, &profile),
                }),
                out.as_ref(),
            )
        }
        Command::Dynamics {
            graph,
            game,
            schedule,
            init,
            max_passes,
            out,
        } => {
            let inst = game.instance(graph.build()?)?;
            let schedule = if schedule == "random" {
                Schedule::RandomPermutation { seed: graph.seed }
            } else {
                schedule.parse()?
            };
            let profile = init.profile(inst.node_count(), graph.seed)?;
            let passes = max_passes.unwrap_or_else(|| inoculation::dynamics::default_max_passes(inst.node_count()));
            let trace = inoculation::run_dynamics(&inst, &profile, &schedule, passes)?;
            emit_json(&trace.document(&inst), out.as_ref())
        }
        Command::Enum { graph, game, cap, out } => {
            let inst = game.instance(graph.build()?)?;
            emit_json(&full_report(&inst, cap)?, out.as_ref())
        }
        Command::ClosedForm {
            complete,
            star,
            game,
            out,
        } => {
            let result = match (complete, star) {
                (Some(n), _) => closed_form_complete(n, game.inoculation_cost, game.loss, game.friendship, game.model)?,
                (None, Some(n)) => closed_form_star(n, game.inoculation_cost, game.loss, game.friendship, game.model)?,
                (None, None) => unreachable!("clap requires one of --complete/--star"),
            };
            emit_json(&result, out.as_ref())
        }
        Command::Wof { graph, game, cap } => {
            let inst = game.instance(graph.build()?)?;
            emit(&(ratio_text(inoculation::wof(&inst, cap)?) + "\n"), None)
        }
        Command::Poa { graph, game, cap } => {
            let inst = game.instance(graph.build()?)?;
            emit(&(ratio_text(inoculation::poa(&inst, cap)?) + "\n"), None)
        }
        Command::Check { graph, game, init } => {
            let inst = game.instance(graph.build()?)?;
            let profile = init.profile(inst.node_count(), graph.seed)?;
            let verdict = is_equilibrium(&inst, &profile)?;
            emit_json(
                &json!({
                    "profile": profile,
                    "equilibrium": verdict,
                    "characterization": characterization_check(inst.graph(), &profile)?,
                }),
                None,
            )
        }
        Command::Experiment { config, out } => {
            let mut cfg = ExperimentConfig::read(&config)?;
            if out.is_some() {
                cfg.output_csv = out;
            }
            let rows = harness::execute(&cfg)?;
            if cfg.output_csv.is_none() {
                let mut buffer = Vec::new();
                harness::write_csv(&rows, &mut buffer)?;
                emit(&String::from_utf8_lossy(&buffer), None)?;
            }
            Ok(())
        }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::CapExceeded { .. } => 4,
        Error::Io { .. } | Error::Csv(_) => 1,
        _ => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
