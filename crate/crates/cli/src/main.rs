use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use ghzshare_cli::verify::{self, VerifyOptions};
use ghzshare_cli::{bounds_report, exit_code, run_scan, scan_summary, windows_report, ScanConfig};
use ghzshare_core::ScenarioKind;

/// Sequential sharing of tripartite nonlocality on generalized GHZ states.
#[derive(Parser)]
#[command(name = "ghzshare", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the numerical self-checks.
    Verify {
        /// Tolerance for simulated against closed-form values.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Grid resolution used by the scan checks.
        #[arg(long, default_value_t = 500)]
        grid: usize,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Scan (phi, p) for double violations of the Mermin inequality.
    ScanStandard(GridArgs),
    /// Scan (phi, p) for double violations of the Svetlichny inequality.
    ScanGenuine {
        /// Probability that the first Charlie takes the identity input.
        #[arg(long)]
        v: f64,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Print the thresholds and double-violation windows.
    Windows {
        /// Bias values to report; may be repeated.
        #[arg(long = "v", default_values_t = [0.8, 0.9])]
        v: Vec<f64>,
    },
    /// Print the classical bounds and the quantum witnesses.
    Bounds,
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, default_value_t = 500)]
    grid_phi: usize,
    #[arg(long, default_value_t = 500)]
    grid_p: usize,
    /// CSV output file; standard output if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write an SVG plot of the flagged region.
    #[arg(long)]
    svg: Option<PathBuf>,
}

impl GridArgs {
    fn config(self, kind: ScenarioKind, v: Option<f64>) -> ScanConfig {
        ScanConfig {
            kind,
            grid_phi: self.grid_phi,
            grid_p: self.grid_p,
            v,
            out: self.out,
            svg: self.svg,
        }
    }
}

fn scan(cfg: ScanConfig) -> Result<ExitCode> {
    let out = run_scan(&cfg)?;
    if cfg.out.is_none() {
        std::io::stdout().lock().write_all(out.csv.as_bytes())?;
    }
    eprintln!("{}", scan_summary(&cfg, &out.grid));
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Verify {
            tol,
            grid,
            inject_fault,
        } => {
            if tol.is_nan() || tol <= 0.0 || grid < 2 {
                return Err(ghzshare_cli::UsageError("--tol must be positive and --grid at least 2".into()).into());
            }
            let opts = VerifyOptions {
                tol,
                grid,
                inject_fault,
                ..Default::default()
            };
            let outcomes = verify::run_all(&opts);
            for o in &outcomes {
                println!("{o}");
            }
            let failed: Vec<_> = outcomes.iter().filter(|o| !o.passed).map(|o| o.name).collect();
            if failed.is_empty() {
                println!("all {} checks passed", outcomes.len());
                Ok(ExitCode::SUCCESS)
            } else {
                println!(
                    "{} of {} checks failed: {}",
                    failed.len(),
                    outcomes.len(),
                    failed.join(", ")
                );
                Ok(ExitCode::from(1))
            }
        }
        Command::ScanStandard(grid) => scan(grid.config(ScenarioKind::Standard, None)),
        Command::ScanGenuine { v, grid } => scan(grid.config(ScenarioKind::Genuine, Some(v))),
        Command::Windows { v } => {
            print!("{}", windows_report(&v)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Bounds => {
            print!("{}", bounds_report()?);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
