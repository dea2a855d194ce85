//! The CLI subcommands as plain functions returning their output and exit code.

use std::fmt::Write as _;
use std::path::Path;

use feedgame_core::solvers::best_response_iteration;
use feedgame_core::{gossip, ActionProfile, GameInstance, NeReport, Trajectory};

use crate::checks;
use crate::edgelist;
use crate::exit;
use crate::reconstruct::ReconstructionSpec;
use crate::scenario::{load_scenario, Scenario, ScenarioError};
use crate::trajectory;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: exit::OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: u8, stderr: impl Into<String>) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: stderr.into(),
        }
    }
}

fn load_failure(e: ScenarioError) -> Outcome {
    let code = if e.is_io() { exit::IO } else { exit::VALIDATION };
    Outcome::fail(code, format!("load error: {e}\n"))
}

/// Best-response iteration from all-ones with the scenario's solver settings.
pub fn solve(scenario: &Scenario, game: &GameInstance) -> NeReport {
    let x0 = ActionProfile::constant(game, 1.0f64.min(game.x_max())).expect("inside the box");
    best_response_iteration(game, &x0, &scenario.solver_config())
}

pub fn cmd_solve(arg: &str) -> Outcome {
    let (scenario, game) = match load_scenario(arg) {
        Ok(v) => v,
        Err(e) => return load_failure(e),
    };
    let report = solve(&scenario, &game);
    let mut out = String::from("player  x\n");
    for (i, v) in report.profile.iter().enumerate() {
        writeln!(out, "{:<7} {v:.6}", i + 1).unwrap();
    }
    writeln!(out, "residual    {:.3e}", report.residual).unwrap();
    writeln!(out, "br_gap      {:.3e}", report.br_gap).unwrap();
    writeln!(out, "iterations  {}", report.iterations).unwrap();
    writeln!(out, "converged   {}", if report.converged { "yes" } else { "no" }).unwrap();
    Outcome {
        code: if report.converged { exit::OK } else { exit::NOT_CONVERGED },
        stdout: out,
        stderr: String::new(),
    }
}

#[derive(Debug, Clone, Default)]
pub struct SimulateOptions {
    pub seed: Option<u64>,
    pub iters: Option<u64>,
    pub synchronous: bool,
}

/// Runs the gossip scheme from all-ones. Distances are measured against the
/// scenario's `reference`, or the oracle equilibrium when none is given.
pub fn simulate(scenario: &Scenario, game: &GameInstance, opts: &SimulateOptions) -> Result<Trajectory, ScenarioError> {
    let mut config = scenario.gossip_config()?;
    if let Some(seed) = opts.seed {
        config.seed = seed;
    }
    if let Some(iters) = opts.iters {
        config.max_iterations = iters;
    }
    if opts.synchronous {
        config.mode = feedgame_core::Mode::Synchronous;
    }
    if config.reference.is_none() {
        config.reference = Some(solve(scenario, game).profile.into_inner());
    }
    let x0 = ActionProfile::constant(game, 1.0f64.min(game.x_max())).expect("inside the box");
    Ok(gossip::run(game, &x0, &config)?)
}

/// Writes the CSV to `out`, or to stdout when `out` is `None` or `-`.
pub fn cmd_simulate(arg: &str, opts: &SimulateOptions, out: Option<&Path>) -> Outcome {
    let (scenario, game) = match load_scenario(arg) {
        Ok(v) => v,
        Err(e) => return load_failure(e),
    };
    let t = match simulate(&scenario, &game, opts) {
        Ok(t) => t,
        Err(e) => return load_failure(e),
    };
    let csv = trajectory::to_csv_string(game.player_count(), &t);
    let last = t.last().expect("trajectory has its initial record");
    let summary = format!(
        "iterations {}  dist_to_ref {:.3e}  consensus_error {:.3e}  residual {:.3e}\n",
        last.iteration,
        last.dist_to_reference.unwrap_or(f64::NAN),
        last.consensus_error,
        last.residual
    );
    match out {
        Some(path) if path != Path::new("-") => match std::fs::write(path, csv) {
            Ok(()) => Outcome::ok(summary),
            Err(e) => Outcome::fail(exit::IO, format!("cannot write {}: {e}\n", path.display())),
        },
        _ => Outcome {
            code: exit::OK,
            stdout: csv,
            stderr: summary,
        },
    }
}

pub fn cmd_interference(arg: &str, check: bool) -> Outcome {
    let (_, game) = match load_scenario(arg) {
        Ok(v) => v,
        Err(e) => return load_failure(e),
    };
    let gi = game.interference_graph();
    let mut out = edgelist::format(gi);
    let subset = game.follow_graph().is_subgraph_of(gi);
    writeln!(out, "# G_C ⊆ G_I: {}", if subset { "yes" } else { "no" }).unwrap();
    let mut code = exit::OK;
    if check {
        let mismatch = checks::interference_mismatch(&game, 0);
        if mismatch.is_empty() {
            writeln!(out, "# finite-difference dependence: match").unwrap();
        } else {
            code = exit::INTERFERENCE_MISMATCH;
            for (j, i) in &mismatch {
                let side = if gi.contains(*j, *i) { "only in G_I" } else { "only in FD" };
                writeln!(out, "# mismatch {} {} ({side})", j + 1, i + 1).unwrap();
            }
        }
    }
    Outcome {
        code,
        stdout: out,
        stderr: String::new(),
    }
}

fn edges_1based<'a>(edges: impl IntoIterator<Item = &'a (usize, usize)>) -> String {
    edges
        .into_iter()
        .map(|(u, v)| format!("{}->{}", u + 1, v + 1))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn cmd_reconstruct(arg: &str) -> Outcome {
    let spec = match ReconstructionSpec::resolve(arg) {
        Ok(s) => s,
        Err(e) => return load_failure(e),
    };
    let r = spec.run();
    let mut out = String::new();
    writeln!(
        out,
        "completions {}  strongly connected {}  survivors {}",
        r.completions,
        r.strongly_connected,
        r.survivors.len()
    )
    .unwrap();
    for (k, s) in r.survivors.iter().enumerate() {
        let x: Vec<String> = s.equilibrium.iter().map(|v| format!("{v:.4}")).collect();
        writeln!(out, "survivor {}: {}  x = [{}]", k + 1, edges_1based(&s.edges), x.join(", ")).unwrap();
    }
    if r.survivors.is_empty() {
        return Outcome {
            code: exit::UNSATISFIABLE,
            stdout: out,
            stderr: "no completion reproduces the target profile\n".into(),
        };
    }
    writeln!(out, "forced: {}", edges_1based(&r.forced)).unwrap();
    Outcome::ok(out)
}

pub fn cmd_validate(arg: &str) -> Outcome {
    let scenario = match Scenario::resolve(arg) {
        Ok(s) => s,
        Err(e) => return load_failure(e),
    };
    let results = checks::validate(&scenario);
    let mut out = String::new();
    for c in &results {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        if c.detail.is_empty() {
            writeln!(out, "{tag}  {}", c.name).unwrap();
        } else {
            writeln!(out, "{tag}  {} ({})", c.name, c.detail).unwrap();
        }
    }
    Outcome {
        code: if results.iter().all(|c| c.passed) { exit::OK } else { exit::VALIDATION },
        stdout: out,
        stderr: String::new(),
    }
}
