use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use feedgame_harness::commands::{self, Outcome, SimulateOptions};

/// Equilibria of the information-production game on follower networks.
///
/// SCENARIO is a JSON file or the name of a bundled scenario (`fig2`, `two_cycle`).
#[derive(Parser)]
#[command(name = "feedgame", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Best-response iteration to the Nash equilibrium.
    Solve { scenario: String },
    /// Gossip-based equilibrium seeking; writes the trajectory as CSV.
    Simulate {
        scenario: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        iters: Option<u64>,
        /// Output path, `-` for stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Use synchronous Metropolis rounds instead of random edge activation.
        #[arg(long)]
        synchronous: bool,
    },
    /// Print the interference graph as an edge list.
    Interference {
        scenario: String,
        /// Compare against finite-difference dependence of the costs.
        #[arg(long)]
        check: bool,
    },
    /// Enumerate follower graphs consistent with a reconstruction spec (file or `fig2`).
    Reconstruct { spec: String },
    /// Run all structural and numerical checks on a scenario.
    Validate { scenario: String },
}

fn main() -> ExitCode {
    // clap would exit with 2 on usage errors, which means non-convergence here.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { feedgame_harness::exit::VALIDATION } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome: Outcome = match &cli.command {
        Command::Solve { scenario } => commands::cmd_solve(scenario),
        Command::Simulate {
            scenario,
            seed,
            iters,
            out,
            synchronous,
        } => {
            let opts = SimulateOptions {
                seed: *seed,
                iters: *iters,
                synchronous: *synchronous,
            };
            commands::cmd_simulate(scenario, &opts, out.as_deref())
        }
        Command::Interference { scenario, check } => commands::cmd_interference(scenario, *check),
        Command::Reconstruct { spec } => commands::cmd_reconstruct(spec),
        Command::Validate { scenario } => commands::cmd_validate(scenario),
    };
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    ExitCode::from(outcome.code)
}
