use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use flagheight_cli::config::{JobConfig, RatIn, ResolvedJob};
use flagheight_cli::run::{run, Command, RunOutput};
use flagheight_cli::{invalid, selftest, CliError};

/// Exact heights, minima, and cone tests for flag bundles over curves.
#[derive(Parser)]
#[command(name = "flagheight", version, arg_required_else_help = true)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Source {
    /// Path to the JSON job configuration.
    #[arg(long, value_name = "PATH", conflicts_with = "stdin")]
    config: Option<PathBuf>,
    /// Read the JSON job configuration from standard input.
    #[arg(long)]
    stdin: bool,
    /// Emit only the JSON report (no table on standard error).
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Successive minima, one row per double coset
    Minima {
        #[command(flatten)]
        source: Source,
    },
    /// Height filtration and augmented base locus at a threshold
    Filtration {
        #[command(flatten)]
        source: Source,
        /// Threshold, as p or p/q (overrides the config's t)
        #[arg(long, value_name = "RAT", allow_hyphen_values = true)]
        t: Option<String>,
    },
    /// Zhang minima e_1 .. e_{d+1} and the essential minimum
    Zhang {
        #[command(flatten)]
        source: Source,
    },
    /// Variety height, optionally cross-checked against the polytope oracle
    Height {
        #[command(flatten)]
        source: Source,
        /// Also compute the pattern-polytope integral and compare (GL only)
        #[arg(long)]
        oracle: bool,
    },
    /// Movable-cone membership at one level, or the full nested scan
    Cones {
        #[command(flatten)]
        source: Source,
        /// Cone level to test, 1..=dim+1 (overrides the config's k)
        #[arg(long, value_name = "INT", conflicts_with = "scan", allow_hyphen_values = true)]
        k: Option<i64>,
        /// Scan every level and report the movable index
        #[arg(long)]
        scan: bool,
        /// Twist of the class, as p or p/q (overrides the config's t)
        #[arg(long, value_name = "RAT", allow_hyphen_values = true)]
        t: Option<String>,
    },
    /// Extremal rays of the big cone of a Grassmann bundle
    GrassmannRays {
        #[command(flatten)]
        source: Source,
    },
    /// Run the built-in example suite
    Selftest {
        /// Emit only the JSON report (no list on standard error)
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Cmd::Minima { source } => execute(Command::Minima, &source, None, None),
        Cmd::Filtration { source, t } => {
            execute(Command::Filtration, &source, t.as_deref(), None)
        }
        Cmd::Zhang { source } => execute(Command::Zhang, &source, None, None),
        Cmd::Height { source, oracle } => {
            execute(Command::Height { oracle }, &source, None, None)
        }
        Cmd::Cones { source, k, scan, t } => {
            let command = if scan {
                Command::ConesScan
            } else {
                Command::ConesMember
            };
            execute(command, &source, t.as_deref(), k)
        }
        Cmd::GrassmannRays { source } => execute(Command::GrassmannRays, &source, None, None),
        Cmd::Selftest { json } => {
            let out = selftest::selftest()?;
            emit(&out, json);
            Ok(())
        }
    }
}

fn execute(
    command: Command,
    source: &Source,
    t: Option<&str>,
    k: Option<i64>,
) -> Result<(), CliError> {
    let text = read_config(source)?;
    let mut cfg = JobConfig::from_json(&text)?;
    if let Some(t) = t {
        cfg.t = Some(RatIn::Text(t.to_string()));
    }
    if let Some(k) = k {
        cfg.k = Some(k);
    }
    if command == Command::ConesMember && cfg.k.is_none() {
        return Err(invalid("cones: give --k LEVEL or --scan"));
    }
    let job = ResolvedJob::resolve(&cfg)?;
    let out = run(command, &job)?;
    emit(&out, source.json);
    Ok(())
}

fn read_config(source: &Source) -> Result<String, CliError> {
    match (&source.config, source.stdin) {
        (Some(path), false) => std::fs::read_to_string(path)
            .map_err(|e| invalid(format!("cannot read {}: {e}", path.display()))),
        (None, true) => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| invalid(format!("cannot read standard input: {e}")))?;
            Ok(text)
        }
        _ => Err(invalid("provide --config PATH or --stdin")),
    }
}

fn emit(out: &RunOutput, json_only: bool) {
    println!("{}", serde_json::to_string_pretty(&out.report).unwrap());
    if !json_only {
        eprint!("{}", out.human);
    }
}
