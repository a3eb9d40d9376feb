use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qudstab::circuit::{
    emit_json, parse, run, CircuitProgram, JsonOptions, RunMode, RunOptions, DEFAULT_BRANCH_CAP,
};
use qudstab::Error;

#[derive(Parser)]
#[command(
    name = "qudstab",
    version,
    about = "Stabilizer circuit simulator for qudits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate a circuit file and print its trajectories as JSON.
    Run(RunArgs),
    /// Parse a circuit file and report diagnostics.
    Check { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Enumerate,
    Sample,
    Fixed,
}

#[derive(clap::Args)]
struct RunArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value = "enumerate")]
    mode: Mode,
    #[arg(long, default_value_t = 1000)]
    shots: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Outcomes for fixed mode, as `name=k,...`.
    #[arg(long, value_parser = parse_fix)]
    fix: Option<BTreeMap<String, i64>>,
    /// Compare every trajectory against the dense simulator.
    #[arg(long)]
    oracle: bool,
    #[arg(long)]
    emit_tableau: bool,
    #[arg(long, default_value_t = DEFAULT_BRANCH_CAP)]
    branch_cap: usize,
    /// Write JSON here instead of stdout.
    #[arg(long)]
    json: Option<PathBuf>,
}

fn parse_fix(s: &str) -> Result<BTreeMap<String, i64>, String> {
    let mut out = BTreeMap::new();
    for item in s.split(',').filter(|x| !x.trim().is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| format!("expected name=k, got `{item}`"))?;
        let v: i64 = v
            .trim()
            .parse()
            .map_err(|_| format!("`{v}` is not an integer"))?;
        if out.insert(k.trim().to_string(), v).is_some() {
            return Err(format!("`{k}` given twice"));
        }
    }
    Ok(out)
}

fn load(path: &Path) -> Result<CircuitProgram, ExitCode> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        eprintln!("{}: {e}", path.display());
        ExitCode::from(1)
    })?;
    parse(&text).map_err(|diags| {
        for d in diags {
            eprintln!("{}:{d}", path.display());
        }
        ExitCode::from(1)
    })
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidOutcome { .. } => 2,
        Error::TooLarge(_) | Error::BranchCap { .. } => 3,
        _ => 1,
    }
}

fn run_cmd(args: RunArgs) -> Result<(), ExitCode> {
    let program = load(&args.file)?;
    let mode = match args.mode {
        Mode::Enumerate => RunMode::Enumerate,
        Mode::Sample => RunMode::Sample {
            shots: args.shots,
            seed: args.seed,
        },
        Mode::Fixed => RunMode::Fixed(args.fix.unwrap_or_default()),
    };
    let options = RunOptions {
        mode,
        branch_cap: args.branch_cap,
        oracle: args.oracle,
    };
    let results = run(&program, &options).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(exit_code(&e))
    })?;
    let text = emit_json(
        Some(&program),
        &results,
        JsonOptions {
            emit_tableau: args.emit_tableau,
        },
    );
    match args.json {
        Some(path) => std::fs::write(&path, text + "\n").map_err(|e| {
            eprintln!("{}: {e}", path.display());
            ExitCode::from(1)
        }),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(args) => run_cmd(args),
        Command::Check { file } => load(&file).map(|p| {
            println!(
                "ok: d={} n={} instructions={} measurements={}",
                p.d(),
                p.n(),
                p.instructions().len(),
                p.measurement_count()
            );
        }),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => code,
    }
}
