//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::collections::BTreeSet;
use std::fs;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{connected_classes, random_cost};
use inoculation::dynamics::{default_max_passes, potential_audit, PotentialConfig};
use inoculation::equilibria::hardness_regime;
use inoculation::harness::{execute, summarize, CellSummary, ExperimentConfig, ExperimentKind, GraphSpec, InitRule};
use inoculation::rational::{format_exact, int, ratio, to_f64, Rational};
use inoculation::{
    characterization_check, closed_form_complete, closed_form_star, enumerate_equilibria, full_report,
    independent_dominating_sets, make_complete, make_cycle, make_gnp, make_kleinberg, make_star,
    minimal_vertex_covers, run_dynamics, run_experiment, wof, GameInstance, Graph, KleinbergParams, Model,
    Schedule, StrategyProfile, DEFAULT_CAP,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let spent = start.elapsed();
    check(spent < limit, || format!("took {spent:.1?}, limit {limit:?}"))
}

/// 1. WoF on even cliques with `C = L = F = 1` is exactly 4/3.
fn clique_windfall() -> Outcome {
    let start = Instant::now();
    for n in (4..=16).step_by(2) {
        let inst = GameInstance::new(make_complete(n).unwrap(), int(1), int(1), int(1), Model::Absolute).unwrap();
        let w = wof(&inst, DEFAULT_CAP).map_err(|e| e.to_string())?;
        check(w == Some(ratio(4, 3)), || format!("n={n}: wof {w:?}"))?;
    }
    within(Duration::from_secs(60), start)?;
    Ok(format!("n = 4..16 even, all 4/3 ({:.1?})", start.elapsed()))
}

/// 2. On `S_8` with `C = 13/32` the WoF drops from 101/41 to 101/94 as `F`
/// grows from 1/8 to 3/4.
fn star_non_monotone() -> Outcome {
    let report = |f| {
        let inst = GameInstance::new(make_star(8).unwrap(), ratio(13, 32), int(1), f, Model::Absolute).unwrap();
        full_report(&inst, DEFAULT_CAP).unwrap()
    };
    let (small, large) = (report(ratio(1, 8)), report(ratio(3, 4)));
    check(small.worst_cost == Some(ratio(41, 32)), || format!("worst FNE at 1/8: {:?}", small.worst_cost))?;
    check(large.worst_cost == Some(ratio(94, 32)), || format!("worst FNE at 3/4: {:?}", large.worst_cost))?;
    check(small.wof == Some(ratio(101, 41)), || format!("wof at 1/8: {:?}", small.wof))?;
    check(large.wof == Some(ratio(101, 94)), || format!("wof at 3/4: {:?}", large.wof))?;
    check(small.wof > large.wof, || "wof did not drop".into())?;
    for (f, r) in [(ratio(1, 8), &small), (ratio(3, 4), &large)] {
        let cf = closed_form_star(8, ratio(13, 32), int(1), f, Model::Absolute).unwrap();
        check(Some(cf.wof()) == r.wof, || format!("closed form disagrees at F={f}"))?;
    }
    Ok("wof(1/8) = 101/41 > wof(3/4) = 101/94".into())
}

/// 3. `1 <= wof <= poa <= n` on 500 random instances.
fn sandwich() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5A17);
    let mut undefined = 0;
    let mut kinds = [0usize; 2];
    for i in 0..500 {
        let kleinberg = i % 4 == 3;
        let g: Graph = if kleinberg {
            let side = rng.gen_range(2..=3);
            make_kleinberg(&KleinbergParams { side, long_range_per_node: rng.gen_range(1..=2), clustering_exponent: 2.0, seed: rng.gen() })
                .unwrap()
        } else {
            make_gnp(rng.gen_range(2..=12), rng.gen_range(0.15..0.8), rng.gen()).unwrap()
        };
        kinds[kleinberg as usize] += 1;
        let n = g.node_count();
        let l = int(rng.gen_range(1..=6));
        let c = random_cost(&mut rng, n, l, 24);
        let f = Rational::new(rng.gen_range(0..=12), 12);
        let model = if i % 2 == 0 { Model::Absolute } else { Model::Relative };
        let inst = GameInstance::new(g, c, l, f, model).unwrap();
        let r = full_report(&inst, DEFAULT_CAP).unwrap();
        let (Some(w), Some(p)) = (r.wof, r.poa) else {
            undefined += 1;
            continue;
        };
        check(int(1) <= w && w <= p && p <= int(n as i128), || {
            format!("instance {i}: n={n} wof={} poa={}", format_exact(&w), format_exact(&p))
        })?;
    }
    check(undefined == 0, || format!("{undefined} instances without an equilibrium"))?;
    Ok(format!("500 instances ({} G(n,p), {} Kleinberg), none undefined", kinds[0], kinds[1]))
}

/// 4. Closed-form cost sets equal enumerated ones for `n <= 14`.
fn closed_forms() -> Outcome {
    let ratios = [ratio(1, 4), ratio(1, 3), ratio(1, 2), ratio(3, 4), int(1)];
    let fs = [int(0), ratio(1, 8), ratio(1, 2), int(1)];
    let mut cases = 0;
    let mut findings = 0;
    for n in 2..=14usize {
        for r in ratios {
            let c = if r > ratio(1, n as i128) { r } else { ratio(3, 2 * n as i128) };
            for f in fs {
                for model in [Model::Absolute, Model::Relative] {
                    for star in [false, true] {
                        let (g, cf) = if star {
                            (make_star(n).unwrap(), closed_form_star(n, c, int(1), f, model).unwrap())
                        } else {
                            (make_complete(n).unwrap(), closed_form_complete(n, c, int(1), f, model).unwrap())
                        };
                        let inst = GameInstance::new(g, c, int(1), f, model).unwrap();
                        let ne = enumerate_equilibria(&inst, Model::Selfish, DEFAULT_CAP).unwrap().cost_set();
                        let fne = enumerate_equilibria(&inst, model, DEFAULT_CAP).unwrap().cost_set();
                        let family = if star { "S" } else { "K" };
                        check(ne == cf.nash_costs(), || format!("{family}_{n} C={c} NE mismatch"))?;
                        check(fne == cf.friendship_costs(), || format!("{family}_{n} C={c} F={f} {model} mismatch"))?;
                        findings += cf.findings.len();
                        cases += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{cases} cases agree; {findings} star findings where the textbook leaf range ignores the center"))
}

fn sets_of(profiles: &[StrategyProfile], secure: bool) -> BTreeSet<Vec<usize>> {
    profiles
        .iter()
        .map(|p| (0..p.len()).filter(|&v| p.is_secure(v) == secure).collect())
        .collect()
}

/// 5. At `C = 1, L = n/1.5` equilibria are exactly the profiles meeting the
/// structural conditions, i.e. minimal vertex covers / independent dominating sets.
fn characterization() -> Outcome {
    let mut graphs = 0;
    for n in 2..=7usize {
        let (c, l) = hardness_regime(n);
        for g in connected_classes(n) {
            graphs += 1;
            let structural: Vec<StrategyProfile> = (0..1u64 << n)
                .map(|i| StrategyProfile::from_index(n, i))
                .filter(|p| characterization_check(&g, p).unwrap())
                .collect();
            let covers: BTreeSet<Vec<usize>> = minimal_vertex_covers(&g, DEFAULT_CAP).unwrap().into_iter().collect();
            let ids: BTreeSet<Vec<usize>> = independent_dominating_sets(&g, DEFAULT_CAP).unwrap().into_iter().collect();
            for f in [ratio(1, 4), int(1)] {
                for model in [Model::Absolute, Model::Relative] {
                    let inst = GameInstance::new(g.clone(), c, l, f, model).unwrap();
                    let eq: Vec<StrategyProfile> =
                        enumerate_equilibria(&inst, model, DEFAULT_CAP).unwrap().equilibria.into_iter().map(|e| e.profile).collect();
                    let edges: Vec<_> = g.edges().collect();
                    check(eq == structural, || format!("n={n} {edges:?} F={f} {model}: equilibria differ from the structural conditions"))?;
                    check(sets_of(&eq, true) == covers, || format!("n={n} {edges:?}: secure sets are not the minimal covers"))?;
                    check(sets_of(&eq, false) == ids, || format!("n={n} {edges:?}: insecure sets are not the IDS"))?;
                }
            }
        }
    }
    check(graphs == 1 + 2 + 6 + 21 + 112 + 853, || format!("expected 995 connected graphs, built {graphs}"))?;
    Ok(format!("{graphs} connected graphs on 2..7 nodes, F in {{1/4, 1}}, both models"))
}

/// 6. Round-robin dynamics on cycles converge within `4n` changes and the
/// potential audit passes.
fn cycles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC1C1E);
    let mut worst_ratio = 0.0f64;
    for run in 0..200 {
        let n = rng.gen_range(3..=200);
        let l = int(rng.gen_range(1..=8));
        let c = random_cost(&mut rng, n, l, 64);
        let f = Rational::new(rng.gen_range(1..=16), 16);
        let model = if run % 2 == 0 { Model::Absolute } else { Model::Relative };
        let inst = GameInstance::new(make_cycle(n).unwrap(), c, l, f, model).unwrap();
        let start = StrategyProfile::from_bits((0..n).map(|_| rng.gen_bool(0.5)).collect());
        let trace = run_dynamics(&inst, &start, &Schedule::RoundRobin, default_max_passes(n)).unwrap();
        check(trace.converged, || format!("run {run}: n={n} did not converge"))?;
        check(trace.changes <= 4 * n, || format!("run {run}: {} changes on {n} nodes", trace.changes))?;
        worst_ratio = worst_ratio.max(trace.changes as f64 / n as f64);
        let audit = potential_audit(&inst, &start, &PotentialConfig::rederived(&inst).unwrap(), default_max_passes(n)).unwrap();
        check(audit.passed(), || format!("run {run}: audit violations {:?}", audit.violations))?;
    }
    Ok(format!("200 runs converged, max changes/n = {worst_ratio:.2}, audit clean"))
}

fn cell<'a>(s: &'a [CellSummary], f: Rational, m: Model) -> &'a CellSummary {
    s.iter().find(|c| c.friendship == f && c.model == m).unwrap()
}

/// 7. Kleinberg batch: cost falls with `F`, absolute <= relative <= selfish at
/// `F = 1`, and friendship slows convergence.
fn kleinberg_batch() -> Outcome {
    let start = Instant::now();
    let mut cfg = ExperimentConfig::new(
        ExperimentKind::SweepF,
        GraphSpec::Kleinberg { side: 10, q: 1, alpha: 2.0 },
        int(1),
        int(4),
    );
    let grid = vec![int(0), ratio(1, 4), ratio(1, 2), ratio(3, 4), int(1)];
    cfg.f_grid = grid.clone();
    cfg.models = vec![Model::Selfish, Model::Absolute, Model::Relative];
    cfg.trials = 100;
    cfg.master_seed = 8;
    let rows = run_experiment(&cfg).map_err(|e| e.to_string())?;
    check(rows.len() == 1500, || format!("{} rows", rows.len()))?;
    check(rows.iter().all(|r| r.converged), || "a run did not converge".into())?;
    let s = summarize(&rows);
    for model in [Model::Absolute, Model::Relative] {
        for pair in grid.windows(2) {
            let (a, b) = (cell(&s, pair[0], model), cell(&s, pair[1], model));
            let pooled = (a.social_cost_stderr.powi(2) + b.social_cost_stderr.powi(2)).sqrt();
            let (ma, mb) = (to_f64(&a.mean_social_cost), to_f64(&b.mean_social_cost));
            check(mb <= ma + pooled, || format!("{model}: mean cost {ma:.3} at F={} rises to {mb:.3} at F={}", pair[0], pair[1]))?;
        }
    }
    let at_one = |m| to_f64(&cell(&s, int(1), m).mean_social_cost);
    let (abs, rel, selfish) = (at_one(Model::Absolute), at_one(Model::Relative), at_one(Model::Selfish));
    check(abs <= rel && rel <= selfish, || format!("F=1 ordering: absolute {abs:.3}, relative {rel:.3}, selfish {selfish:.3}"))?;
    let mut slowdowns = Vec::new();
    for model in [Model::Absolute, Model::Relative] {
        let ratio = cell(&s, int(1), model).mean_changes / cell(&s, int(0), model).mean_changes;
        check(ratio > 1.0, || format!("{model}: change ratio {ratio:.3}"))?;
        slowdowns.push(ratio);
    }
    within(Duration::from_secs(300), start)?;
    Ok(format!(
        "costs at F=1: absolute {abs:.3} <= relative {rel:.3} <= selfish {selfish:.3}; change ratio F=1/F=0: {:.2} (abs), {:.2} (rel)",
        slowdowns[0], slowdowns[1]
    ))
}

/// 8. The same config run twice writes identical bytes.
fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut configs = Vec::new();
    let mut sweep = ExperimentConfig::new(ExperimentKind::SweepF, GraphSpec::Kleinberg { side: 8, q: 1, alpha: 2.0 }, int(1), int(4));
    sweep.trials = 10;
    sweep.models = vec![Model::Selfish, Model::Absolute, Model::Relative];
    sweep.schedule = Schedule::RandomPermutation { seed: 5 };
    sweep.init = InitRule::Random;
    configs.push(sweep);
    let mut exact = ExperimentConfig::new(ExperimentKind::WofExact, GraphSpec::Gnp { n: 10, p: 0.3 }, int(1), int(4));
    exact.trials = 3;
    configs.push(exact);
    for (i, mut cfg) in configs.into_iter().enumerate() {
        let mut outputs = Vec::new();
        cfg.output_csv = Some(dir.path().join(format!("{i}.csv")));
        cfg.output_json = Some(dir.path().join(format!("{i}.json")));
        for _ in 0..2 {
            execute(&cfg).map_err(|e| e.to_string())?;
            let read = |p: &Option<std::path::PathBuf>| fs::read(p.as_ref().unwrap()).unwrap();
            outputs.push((read(&cfg.output_csv), read(&cfg.output_json)));
        }
        check(outputs[0] == outputs[1], || format!("config {i}: outputs differ between runs"))?;
    }
    Ok("sweep_F and wof_exact configs reproduce byte for byte".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("K_n windfall is 4/3", clique_windfall),
        ("S_8 non-monotonicity", star_non_monotone),
        ("WoF sandwich", sandwich),
        ("closed forms vs enumeration", closed_forms),
        ("hardness-regime characterization", characterization),
        ("cycle convergence and potential", cycles),
        ("Kleinberg qualitative reproduction", kleinberg_batch),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {}. {name}: {detail} [{:.1?}]", i + 1, started.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name}: {why} [{:.1?}]", i + 1, started.elapsed());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
