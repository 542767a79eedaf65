use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use hmmdiv_cli::{check, config, run_all, selftest, table, write_outputs, Config, Methods};

#[derive(Parser)]
#[command(name = "hmmdiv", version, about = "Rényi and KL divergence rates between hidden Markov models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every case and order in a JSON config.
    Run {
        config: PathBuf,
        /// Comma-separated subset of `mc,fredholm`.
        #[arg(long, default_value = "mc,fredholm")]
        methods: Methods,
        /// Exit nonzero if any acceptance band fails.
        #[arg(long)]
        check: bool,
        #[arg(long, default_value = "hmmdiv-out")]
        out: PathBuf,
    },
    /// Run the built-in oracle and identity checks.
    Selftest,
    /// Print the default orders, simulation and grid settings.
    PrintDefaults,
}

fn init_threads() -> Result<()> {
    let Ok(raw) = std::env::var("HMMDIV_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().with_context(|| format!("HMMDIV_THREADS must be a count, got `{raw}`"))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    match real_main() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn real_main() -> Result<ExitCode> {
    let cli = Cli::parse();
    init_threads()?;
    match cli.command {
        Command::Run { config, methods, check, out } => {
            let cfg = Config::load(&config)?;
            let rows = run_all(&cfg.cases, methods)?;
            print!("{}", table::render_text(&rows));
            write_outputs(&out, &rows)?;
            eprintln!("wrote table.txt, table.csv, diagnostics.json to {}", out.display());
            if check {
                let report = check::check_rows(&rows);
                if !report.passed() {
                    for f in &report.failures {
                        eprintln!("FAIL {f}");
                    }
                    eprintln!("{} of {} checks failed", report.failures.len(), report.checked);
                    return Ok(ExitCode::from(2));
                }
                eprintln!("all {} checks passed", report.checked);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Selftest => {
            let lines = selftest::run_selftest();
            for l in &lines {
                println!("{} {}: {}", if l.passed { "PASS" } else { "FAIL" }, l.name, l.detail);
            }
            Ok(if lines.iter().all(|l| l.passed) { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::PrintDefaults => {
            println!("{}", config::defaults_json());
            Ok(ExitCode::SUCCESS)
        }
    }
}
