use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use icsde_core::cli::{cmd_bench, cmd_report, cmd_run, list_problems, ExperimentConfig};

#[derive(Parser)]
#[command(name = "icsde", version, about = "Constrained multi-objective optimization experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute every (problem, variant, seed) run in a config, skipping finished ones.
    Run {
        config: PathBuf,
    },
    /// Build comparison tables from a runs file.
    Report {
        runs: PathBuf,
        /// Variant the others are compared against.
        #[arg(long, default_value = "icsde")]
        reference: String,
        /// Output directory (defaults to the runs file's directory).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time a single run.
    Bench {
        problem: String,
        #[arg(default_value = "icsde")]
        variant: String,
        #[arg(default_value_t = 0)]
        seed: u64,
        /// Scale the default FE budget.
        #[arg(long)]
        scale: Option<f64>,
    },
    /// List the available problem instances.
    ListProblems,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { config } => ExperimentConfig::load(&config).and_then(|cfg| {
            let s = cmd_run(&cfg)?;
            println!(
                "{} runs executed, {} skipped, {} failed -> {}",
                s.executed,
                s.skipped,
                s.failed,
                cfg.effective_output_dir().join("runs.jsonl").display()
            );
            Ok(())
        }),
        Command::Report { runs, reference, out } => {
            let out = out.unwrap_or_else(|| {
                runs.parent().map(PathBuf::from).unwrap_or_else(|| PathBuf::from("."))
            });
            cmd_report(&runs, &reference, &out).map(|s| {
                println!(
                    "{} instances x {} variants -> {}",
                    s.instances.len(),
                    s.variants.len(),
                    out.display()
                );
            })
        }
        Command::Bench { problem, variant, seed, scale } => {
            cmd_bench(&problem, &variant, seed, scale).map(|b| {
                println!(
                    "{problem} {variant} seed {seed}: {:.1} ms, {} FEs, {:.0} FE/s, final HV {:.4e}",
                    b.wall_time_ms,
                    b.fes,
                    b.fes_per_second(),
                    b.final_hv
                );
            })
        }
        Command::ListProblems => {
            for line in list_problems() {
                println!("{line}");
            }
            Ok(())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
