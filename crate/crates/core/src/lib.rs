//! The virus inoculation game on networks.
//!
//! Every node of a graph is a player that either inoculates at cost `C` or
//! stays insecure. A virus then hits one node uniformly at random and spreads
//! through the insecure part of the graph, so an insecure player in an
//! insecure component of size `k` expects a loss of `L·k/n`. Players may also
//! care about their neighbours with a friendship factor `F`, either summed
//! ([`Model::Absolute`]) or averaged ([`Model::Relative`]).
//!
//! The crate computes costs with exact rationals, runs best-response
//! dynamics, enumerates equilibria of small graphs, evaluates closed forms for
//! complete graphs and stars, and runs seeded batch experiments.
//!
//! ```
//! use inoculation::{closed_form_complete, int, make_complete, wof, GameInstance, Model, ratio};
//!
//! let k4 = GameInstance::new(make_complete(4)?, int(1), int(1), int(1), Model::Absolute)?;
//! assert_eq!(wof(&k4, 20)?, Some(ratio(4, 3)));
//! assert_eq!(closed_form_complete(4, int(1), int(1), int(1), Model::Absolute)?.wof(), ratio(4, 3));
//! # Ok::<(), inoculation::Error>(())
//! ```

pub mod dynamics;
pub mod equilibria;
pub mod error;
pub mod game;
pub mod graph;
pub mod harness;
pub mod rational;

pub use dynamics::{
    convergence_stats, cycle_potential, potential_audit, run_dynamics, run_dynamics_with, DynamicsOptions,
    DynamicsTrace, PotentialConfig, Schedule, ThresholdVariant,
};
pub use equilibria::{
    characterization_check, closed_form_complete, closed_form_star, enumerate_equilibria, full_report,
    independent_dominating_sets, is_equilibrium, minimal_vertex_covers, poa, social_optimum, wof,
    ClosedFormResult, EquilibriumReport, DEFAULT_CAP,
};
pub use error::{Error, Result};
pub use game::{
    actual_cost, best_response, cost_report, inoculation_threshold, perceived_cost, social_cost, GameInstance,
    Model, Strategy, StrategyProfile,
};
pub use graph::{attack_components, make_complete, make_cycle, make_gnp, make_kleinberg, make_star, Graph, KleinbergParams};
pub use harness::{run_experiment, ExperimentConfig, ResultRow};
pub use rational::{int, parse_rational, ratio, Rational};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/model.md")]
    mod model {}
    #[doc = include_str!("../../../book/src/equilibria.md")]
    mod equilibria {}
    #[doc = include_str!("../../../book/src/closed-forms.md")]
    mod closed_forms {}
    #[doc = include_str!("../../../book/src/dynamics.md")]
    mod dynamics {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
