use std::path::PathBuf;
use std::process::ExitCode;

use amplearn_cli::config::{load, parse_assignment, Diagnostics};
use amplearn_cli::{run, write_outputs};
use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{Map, Value};

/// Default output directory when neither `--out` nor the config names one.
const OUT_ENV: &str = "AMPLEARN_OUT";

#[derive(Parser)]
#[command(name = "amplearn", version, about = "Seeded amplify-learn search experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Standard amplitude amplification, success per round
    Grover(RunArgs),
    /// Cubic (previous-output reflection) search, angle per round
    Cubic(RunArgs),
    /// Amplify-learn protocol with resource ledger
    AmplifyLearn(RunArgs),
    /// Bipartite signaling test for local programs
    Signal(RunArgs),
    /// Covering, sample and universal-lock bounds
    Bounds(RunArgs),
    /// Greedy packings of Haar-random states
    Pack(RunArgs),
    /// Multi-hypothesis discrimination with the Fano/Holevo sandwich
    Discriminate(RunArgs),
    /// Query, gate and sample floors per register size
    Triangle(RunArgs),
    /// Check a config file without running it
    Validate {
        path: PathBuf,
    },
}

#[derive(Args)]
struct RunArgs {
    /// JSON config file
    #[arg(long)]
    config: Option<PathBuf>,
    /// Overrides the config seed
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory (falls back to the config, then $AMPLEARN_OUT, then ./results)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for independent rows
    #[arg(long)]
    threads: Option<usize>,
    /// Exact probabilities instead of sampling where supported
    #[arg(long)]
    exact: bool,
    /// Inline parameter, `key=value` with a JSON value
    #[arg(long = "set", value_name = "KEY=VALUE", value_parser = parse_assignment)]
    set: Vec<(String, Value)>,
}

fn report(diags: &Diagnostics) {
    for d in &diags.0 {
        eprintln!("{d}");
    }
}

fn read_json(path: &PathBuf) -> Result<Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn run_experiment(name: &str, args: RunArgs) -> Result<ExitCode> {
    let mut value = match &args.config {
        Some(p) => read_json(p)?,
        None => Value::Object(Map::new()),
    };
    let Value::Object(obj) = &mut value else {
        eprintln!("error: config must be a JSON object");
        return Ok(ExitCode::from(2));
    };
    for (k, v) in args.set {
        obj.insert(k, v);
    }
    if let Some(seed) = args.seed {
        obj.insert("seed".into(), Value::from(seed));
    }
    let (cfg, diags) = load(value, Some(name), args.exact);
    report(&diags);
    let Some(cfg) = cfg else {
        return Ok(ExitCode::from(2));
    };

    let out = args
        .out
        .or_else(|| cfg.out.clone())
        .or_else(|| std::env::var_os(OUT_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("results"));
    let table = run(&cfg, args.threads)?;
    let written = write_outputs(&out, name, cfg.seed, &cfg.echo(), &table)?;
    let flagged = table.flagged_rows();
    if flagged > 0 {
        eprintln!("note: {flagged} row(s) flagged (failed check or non-converged learner)");
    }
    println!("{}", written.csv.display());
    Ok(ExitCode::SUCCESS)
}

fn validate(path: &PathBuf) -> Result<ExitCode> {
    let value = read_json(path)?;
    let (_, diags) = load(value, None, false);
    for d in &diags.0 {
        println!("{d}");
    }
    Ok(if diags.has_errors() { ExitCode::from(2) } else { ExitCode::SUCCESS })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Grover(a) => run_experiment("grover", a),
        Command::Cubic(a) => run_experiment("cubic", a),
        Command::AmplifyLearn(a) => run_experiment("amplify-learn", a),
        Command::Signal(a) => run_experiment("signal", a),
        Command::Bounds(a) => run_experiment("bounds", a),
        Command::Pack(a) => run_experiment("pack", a),
        Command::Discriminate(a) => run_experiment("discriminate", a),
        Command::Triangle(a) => run_experiment("triangle", a),
        Command::Validate { path } => validate(&path),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
