use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use qcoinv_cli::{run, BidegreeRange, QMode, RunConfig, SuiteKind, UsageError};

/// Verify coinvariant theorems for O_q(GL_t) and O_q(SL_t) on graded components.
#[derive(Debug, Parser)]
#[command(name = "qcoinv", version)]
struct Args {
    #[arg(long)]
    m: u8,
    #[arg(long)]
    t: u8,
    #[arg(long)]
    n: u8,
    #[arg(long, default_value_t = 2)]
    max_degree: usize,
    /// Inclusive ranges `i0:i1,j0:j1` for the coinvariant suites.
    #[arg(long)]
    bidegree_range: Option<String>,
    /// sft, fft, slfft, preimage, structure or all; repeatable or comma separated.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    suite: Vec<String>,
    /// `symbolic`, or a rational p/r to specialize coefficients (advisory).
    #[arg(long, default_value = "symbolic")]
    q: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// JSON report path; the table goes next to it with extension `.txt`.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Allow q = 1 or q = -1 (results are marked advisory).
    #[arg(long)]
    force_classical_q: bool,
    /// Leave timing fields out of the JSON report.
    #[arg(long)]
    omit_timing: bool,
}

fn config(args: &Args) -> Result<RunConfig, UsageError> {
    let mut suites = Vec::new();
    for s in &args.suite {
        suites.extend(SuiteKind::parse(s.trim())?);
    }
    Ok(RunConfig {
        m: args.m,
        t: args.t,
        n: args.n,
        max_degree: args.max_degree,
        bidegrees: args.bidegree_range.as_deref().map(BidegreeRange::parse).transpose()?,
        suites,
        q: QMode::parse(&args.q)?,
        seed: args.seed,
        out: args.out.clone(),
        cache: args.cache.clone(),
        force_classical_q: args.force_classical_q,
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    let cfg = match config(&args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = match run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let table = report.table();
    print!("{table}");
    if let Some(path) = &cfg.out {
        let json = report.to_json(!args.omit_timing);
        if let Err(e) = std::fs::write(path, json).and_then(|_| std::fs::write(path.with_extension("txt"), &table)) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(3);
        }
    }
    ExitCode::from(report.exit_code() as u8)
}
