use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use drivenq::{parse_config, run, write_outputs, Mode, RunOptions};

const EXIT_NUMERICAL: u8 = 1;
const EXIT_CONFIG: u8 = 2;

#[derive(Debug, Parser)]
#[command(version, about = "Driven dissipative qubit simulations")]
struct Cli {
    /// dynamics, scan, rwa-scan, bs-shift or reduce-check
    mode: Mode,
    #[arg(long)]
    config: PathBuf,
    /// Output CSV (default: `[output] path`, else `<config stem>.<mode>.csv`)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Scan parallelism (default: `[run] workers`, else all cores)
    #[arg(long)]
    workers: Option<usize>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let text = match std::fs::read_to_string(&cli.config) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", cli.config.display());
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    let mut config = match parse_config(&text, Some(cli.mode)) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}: {e}", cli.config.display());
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    if let Some(w) = cli.workers {
        if w == 0 {
            eprintln!("error: --workers must be at least 1");
            return ExitCode::from(EXIT_CONFIG);
        }
        config.workers = Some(w);
    }
    let out = cli
        .out
        .or_else(|| config.output.clone())
        .unwrap_or_else(|| {
            let stem = cli
                .config
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "drivenq".into());
            PathBuf::from(format!("{stem}.{}.csv", config.mode))
        });
    config.output = Some(out.clone());

    let report = match run(&config, RunOptions::from_env()) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_NUMERICAL);
        }
    };
    if let Err(e) = write_outputs(&config, &report, &out) {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_NUMERICAL);
    }
    for (k, v) in &report.summary {
        println!("{k} = {v}");
    }
    println!("wrote {}", out.display());
    if report.failed_points > 0 {
        eprintln!(
            "error: {} grid points failed; see the `error` column",
            report.failed_points
        );
        return ExitCode::from(EXIT_NUMERICAL);
    }
    ExitCode::SUCCESS
}
