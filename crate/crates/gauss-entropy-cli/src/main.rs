use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gauss_entropy_cli::output::write_output;
use gauss_entropy_cli::presets::{preset, PRESET_NAMES};
use gauss_entropy_cli::run::run;
use gauss_entropy_cli::scenario::{apply_sweep, parse_scenario, Scenario};
use gauss_entropy_cli::CliError;

#[derive(Parser)]
#[command(name = "gauss-entropy", version, about = "Entropy-production ledgers and transport statistics for Gaussian open systems")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a preset or a JSON scenario file
    Run(RunArgs),
    /// List built-in presets
    Presets,
    /// Print a preset as a JSON scenario (a starting point for --config)
    Show { name: String },
}

#[derive(clap::Args)]
struct RunArgs {
    #[arg(long, conflicts_with = "config", required_unless_present = "config")]
    preset: Option<String>,
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory
    #[arg(long, env = "GAUSS_ENTROPY_OUT", default_value = "out")]
    out: PathBuf,
    /// Override a parameter: key=a..b[:step] or key=v1,v2,...
    #[arg(long)]
    sweep: Vec<String>,
    /// Cross-check the Gaussian ledger against the Fock-space evolution
    #[arg(long)]
    oracle_check: bool,
    #[arg(long)]
    threads: Option<usize>,
}

fn load(args: &RunArgs) -> Result<Vec<Scenario>, CliError> {
    let mut base = match (&args.preset, &args.config) {
        (Some(p), _) => preset(p).ok_or_else(|| {
            CliError::Config(format!("unknown preset `{p}` (available: {})", PRESET_NAMES.join(", ")))
        })?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
            parse_scenario(&text).map_err(|e| match e {
                CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
                other => other,
            })?
        }
        (None, None) => unreachable!("clap requires one of --preset/--config"),
    };
    base.oracle_check |= args.oracle_check;
    let mut runs = vec![base];
    for s in &args.sweep {
        runs = runs.iter().map(|r| apply_sweep(r, s)).collect::<Result<Vec<_>, _>>()?.concat();
    }
    Ok(runs)
}

fn execute(args: &RunArgs) -> Result<(), CliError> {
    let scenarios = load(args)?;
    // compute everything before touching the output directory
    let mut outputs = vec![];
    for s in &scenarios {
        let out = run(s)?;
        if let Some(rep) = &out.oracle {
            if !rep.pass {
                write_output(&out, &args.out)?;
                return Err(CliError::OracleMismatch(rep.failures().join("; ")));
            }
        }
        outputs.push(out);
    }
    for out in &outputs {
        for p in write_output(out, &args.out)? {
            println!("{}", p.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Presets => {
            for n in PRESET_NAMES {
                println!("{n}\t{}", preset(n).expect("listed preset").provenance);
            }
            Ok(())
        }
        Cmd::Show { name } => match preset(&name) {
            Some(s) => {
                println!("{}", serde_json::to_string_pretty(&s).expect("scenario serializes"));
                Ok(())
            }
            None => Err(CliError::Config(format!("unknown preset `{name}`"))),
        },
        Cmd::Run(args) => match args.threads {
            Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
                Ok(pool) => pool.install(|| execute(&args)),
                Err(e) => Err(CliError::Config(format!("--threads {n}: {e}"))),
            },
            None => execute(&args),
        },
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
