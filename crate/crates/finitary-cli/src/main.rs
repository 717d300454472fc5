mod commands;

use clap::{Args, Parser, Subcommand};
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "finitary", version, about = "Finitary and bounded games on finite and pushdown arenas")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve a condition and report both regions.
    Solve(SolveArgs),
    /// Check a strategy against a condition from given vertices.
    Verify(VerifyArgs),
    /// Play both strategies against each other.
    Simulate(SimulateArgs),
    /// Unfold a pushdown process up to a stack height.
    Unfold(UnfoldArgs),
    /// List or write the named fixtures.
    Examples {
        #[command(subcommand)]
        action: ExamplesCmd,
    },
    /// Run one of the experiments and write its table.
    Experiment {
        #[command(subcommand)]
        which: ExperimentCmd,
    },
}

#[derive(Args, Debug)]
struct ConditionArgs {
    /// Condition name, e.g. buchi or bnd-uniform-buchi.
    #[arg(long)]
    condition: String,
    /// The bound, for the conditions that take one.
    #[arg(long = "N")]
    n: Option<usize>,
    /// Vertices of F, comma separated. Defaults to the color-0 vertices.
    #[arg(long)]
    set: Option<String>,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(long)]
    input: String,
    #[command(flatten)]
    cond: ConditionArgs,
    #[arg(long)]
    start: usize,
    /// Write the strategy of the player winning from the start here.
    #[arg(long)]
    emit_strategy: Option<String>,
    #[arg(long)]
    json: bool,
    /// Print the arena in Graphviz format, winning region in bold.
    #[arg(long)]
    dot: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    input: String,
    #[arg(long)]
    strategy: String,
    #[command(flatten)]
    cond: ConditionArgs,
    /// Start vertices, comma separated.
    #[arg(long)]
    from: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(long)]
    input: String,
    #[arg(long)]
    eve: String,
    #[arg(long)]
    adam: String,
    #[arg(long)]
    start: usize,
    #[arg(long)]
    horizon: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct UnfoldArgs {
    #[arg(long)]
    pushdown: String,
    #[arg(long)]
    height: usize,
    /// Start configuration, `q:u⊥` with the top symbol first.
    #[arg(long)]
    start: String,
    #[arg(long, default_value = "lose-eve")]
    policy: String,
    /// Where to write the arena; standard output if absent.
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    dot: bool,
}

#[derive(Subcommand, Debug)]
enum ExamplesCmd {
    List {
        #[arg(long)]
        json: bool,
    },
    Dump {
        name: String,
        /// Parameter as k=v; repeatable.
        #[arg(long = "param")]
        params: Vec<String>,
        /// arena, pushdown or dot. Defaults to the fixture's own format.
        #[arg(long)]
        format: Option<String>,
        /// Height used when a pushdown fixture is written as an arena.
        #[arg(long)]
        height: Option<usize>,
    },
    /// Check the claims recorded with a fixture.
    Check {
        name: String,
        #[arg(long = "param")]
        params: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
enum ExperimentCmd {
    /// Sup F-gap of a deterministic counter against the collapse bound.
    CollapseGrowth {
        #[arg(long, default_value = "bincounter")]
        example: String,
        #[arg(long, default_value = "2..8")]
        n_range: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        csv: Option<String>,
    },
    /// Least uniform bound over a range of unfolding heights.
    MinBound {
        #[arg(long)]
        pushdown: String,
        #[arg(long)]
        start: String,
        #[arg(long)]
        height_range: String,
        #[arg(long, default_value = "lose-eve")]
        policy: String,
        #[arg(long, default_value_t = 3)]
        window: usize,
        #[arg(long, default_value_t = 4096)]
        cap: usize,
        #[arg(long)]
        csv: Option<String>,
    },
    /// Least memory of a winning strategy, by exhaustive search.
    MemoryBound {
        #[arg(long)]
        example: String,
        #[arg(long = "param")]
        params: Vec<String>,
        #[arg(long)]
        player: String,
        #[arg(long)]
        cap: usize,
        /// Condition and start default to the fixture's memory claim.
        #[arg(long)]
        condition: Option<String>,
        #[arg(long = "N")]
        n: Option<usize>,
        #[arg(long)]
        start: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
