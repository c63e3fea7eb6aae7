use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qecmerit::sweep::{self, ConfigOverrides, Format, Mode, StrategySet, SweepConfig};
use qecmerit::Error;

/// Sweeps of mutual information and fidelity for repetition and five-qubit
/// error correction under bit-flip noise.
#[derive(Parser, Debug)]
#[command(name = "qecmerit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// 4-bit repetition code: information and success probability versus q.
    Classical(SweepArgs),
    /// Five-qubit code: information and fidelity over an (alpha, q) grid.
    Quantum(SweepArgs),
    /// Equivocation, similarity and erasure figures for an uncoded stream.
    Shannon(SweepArgs),
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    q_min: Option<f64>,
    #[arg(long)]
    q_max: Option<f64>,
    #[arg(long)]
    q_steps: Option<usize>,
    #[arg(long)]
    alpha_steps: Option<usize>,
    /// Relative phase of the sent logical states, radians.
    #[arg(long, allow_negative_numbers = true)]
    phi: Option<f64>,
    /// I, II or both.
    #[arg(long, value_parser = parse_strategies)]
    strategy: Option<StrategySet>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json.
    #[arg(long, value_parser = parse_format)]
    format: Option<Format>,
    /// Worker threads (default: $QECMERIT_JOBS, else 1).
    #[arg(long)]
    jobs: Option<usize>,
    /// key=value file with the same keys as the flags; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Shannon mode: extra bit rate to report.
    #[arg(long)]
    bits: Option<f64>,
    /// Shannon mode: extra error rate to report.
    #[arg(long)]
    err_rate: Option<f64>,
}

fn parse_strategies(s: &str) -> Result<StrategySet, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl SweepArgs {
    fn overrides(&self) -> ConfigOverrides {
        ConfigOverrides {
            q_min: self.q_min,
            q_max: self.q_max,
            q_steps: self.q_steps,
            alpha_steps: self.alpha_steps,
            phi: self.phi,
            strategies: self.strategy,
            output_path: self.out.clone(),
            format: self.format,
            jobs: self.jobs,
            bits: self.bits,
            err_rate: self.err_rate,
        }
    }
}

fn build_config(mode: Mode, args: &SweepArgs) -> qecmerit::Result<SweepConfig> {
    let mut cfg = SweepConfig::new(mode);
    if let Some(jobs) = sweep::jobs_from_env()? {
        cfg.jobs = jobs;
    }
    let file = match &args.config {
        Some(path) => ConfigOverrides::from_file(path)?,
        None => ConfigOverrides::default(),
    };
    args.overrides().or(file).apply(&mut cfg)?;
    cfg.validate()?;
    Ok(cfg)
}

fn exit_code(err: &Error) -> ExitCode {
    match err {
        Error::Io(_) => ExitCode::from(2),
        _ => ExitCode::from(1),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let (mode, args) = match &cli.command {
        Command::Classical(a) => (Mode::Classical, a),
        Command::Quantum(a) => (Mode::Quantum, a),
        Command::Shannon(a) => (Mode::Shannon, a),
    };
    let cfg = match build_config(mode, args) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("qecmerit: {e}");
            return ExitCode::from(1);
        }
    };
    let result = sweep::run(&cfg).and_then(|table| {
        sweep::emit(&table, &cfg)?;
        if mode == Mode::Shannon && cfg.output_path.is_some() {
            eprint!("{}", sweep::shannon_summary(&table));
        }
        Ok(())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qecmerit: {e}");
            exit_code(&e)
        }
    }
}
