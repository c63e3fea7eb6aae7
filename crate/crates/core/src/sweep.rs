//! Parameter sweeps behind the command-line front end.
//!
//! Each sweep produces a [`Table`] whose rows follow grid order no matter
//! how many workers computed them. CSV output uses 12 significant digits,
//! `,` separators and LF line endings.

use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::classical::{
    mutual_info_strategy1, mutual_info_strategy2, repetition4_channel, shannon_example,
};
use crate::error::{Error, Result};
use crate::fivequbit::{LogicalState, Strategy, SyndromeBasis};
use crate::fom::evaluate;

/// Environment variable consulted for the worker count when neither a flag
/// nor the config file sets one.
pub const JOBS_ENV: &str = "QECMERIT_JOBS";

pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Classical,
    Quantum,
    Shannon,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::Config(format!("unknown format `{other}`"))),
        }
    }
}

/// Which recovery strategies to report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StrategySet {
    pub one: bool,
    pub two: bool,
}

impl StrategySet {
    pub const BOTH: StrategySet = StrategySet {
        one: true,
        two: true,
    };

    pub fn contains(self, s: Strategy) -> bool {
        match s {
            Strategy::I => self.one,
            Strategy::II => self.two,
        }
    }

    pub fn both(self) -> bool {
        self.one && self.two
    }
}

impl FromStr for StrategySet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "both" | "all" => Ok(Self::BOTH),
            other => {
                let s: Strategy = other.parse()?;
                Ok(StrategySet {
                    one: s == Strategy::I,
                    two: s == Strategy::II,
                })
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub mode: Mode,
    pub q_min: f64,
    pub q_max: f64,
    pub q_steps: usize,
    pub alpha_steps: usize,
    pub phi: f64,
    pub strategies: StrategySet,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub jobs: usize,
    /// Extra `(bits per second, error rate)` case for the Shannon report.
    pub shannon_case: Option<(f64, f64)>,
}

impl SweepConfig {
    pub fn new(mode: Mode) -> Self {
        let (q_steps, alpha_steps) = match mode {
            Mode::Classical => (201, 1),
            _ => (51, 51),
        };
        Self {
            mode,
            q_min: 0.0,
            q_max: 1.0,
            q_steps,
            alpha_steps,
            phi: 0.0,
            strategies: StrategySet::BOTH,
            output_path: None,
            format: Format::Csv,
            jobs: 1,
            shannon_case: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let prob = |name: &str, v: f64| {
            if (0.0..=1.0).contains(&v) {
                Ok(())
            } else {
                Err(Error::Config(format!("{name} = {v} is not in [0, 1]")))
            }
        };
        prob("q-min", self.q_min)?;
        prob("q-max", self.q_max)?;
        if self.q_min > self.q_max {
            return Err(Error::Config(format!(
                "q-min {} exceeds q-max {}",
                self.q_min, self.q_max
            )));
        }
        if self.q_steps < 2 {
            return Err(Error::Config("q-steps must be at least 2".into()));
        }
        if self.mode == Mode::Quantum && self.alpha_steps < 2 {
            return Err(Error::Config("alpha-steps must be at least 2".into()));
        }
        if !self.phi.is_finite() {
            return Err(Error::Config(format!("phi = {} is not finite", self.phi)));
        }
        if !self.strategies.one && !self.strategies.two {
            return Err(Error::Config("no strategy selected".into()));
        }
        if self.jobs == 0 {
            return Err(Error::Config("jobs must be at least 1".into()));
        }
        if let Some((n, rate)) = self.shannon_case {
            if !(n >= 0.0 && n.is_finite()) {
                return Err(Error::Config(format!("bits = {n} must be non-negative")));
            }
            if !(0.0..=0.5).contains(&rate) {
                return Err(Error::Config(format!(
                    "err-rate = {rate} is not in [0, 1/2]"
                )));
            }
        }
        Ok(())
    }

    pub fn q_grid(&self) -> Vec<f64> {
        linspace(self.q_min, self.q_max, self.q_steps)
    }

    pub fn alpha_grid(&self) -> Vec<f64> {
        linspace(0.0, FRAC_PI_2, self.alpha_steps)
    }
}

/// Settings from flags or a config file; unset fields leave the config alone.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConfigOverrides {
    pub q_min: Option<f64>,
    pub q_max: Option<f64>,
    pub q_steps: Option<usize>,
    pub alpha_steps: Option<usize>,
    pub phi: Option<f64>,
    pub strategies: Option<StrategySet>,
    pub output_path: Option<PathBuf>,
    pub format: Option<Format>,
    pub jobs: Option<usize>,
    pub bits: Option<f64>,
    pub err_rate: Option<f64>,
}

impl ConfigOverrides {
    /// Parses `key = value` lines. `#` starts a comment; keys may use `-` or `_`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key=value", lineno + 1)))?;
            let key = key.trim().replace('_', "-");
            let value = value.trim();
            let bad = |what: &str| {
                Error::Config(format!("line {}: invalid {what} `{value}`", lineno + 1))
            };
            match key.as_str() {
                "q-min" => out.q_min = Some(value.parse().map_err(|_| bad("q-min"))?),
                "q-max" => out.q_max = Some(value.parse().map_err(|_| bad("q-max"))?),
                "q-steps" => out.q_steps = Some(value.parse().map_err(|_| bad("q-steps"))?),
                "alpha-steps" => {
                    out.alpha_steps = Some(value.parse().map_err(|_| bad("alpha-steps"))?)
                }
                "phi" => out.phi = Some(value.parse().map_err(|_| bad("phi"))?),
                "strategy" => out.strategies = Some(value.parse()?),
                "out" | "output" | "output-path" => out.output_path = Some(PathBuf::from(value)),
                "format" => out.format = Some(value.parse()?),
                "jobs" => out.jobs = Some(value.parse().map_err(|_| bad("jobs"))?),
                "bits" => out.bits = Some(value.parse().map_err(|_| bad("bits"))?),
                "err-rate" => out.err_rate = Some(value.parse().map_err(|_| bad("err-rate"))?),
                other => {
                    return Err(Error::Config(format!(
                        "line {}: unknown key `{other}`",
                        lineno + 1
                    )))
                }
            }
        }
        Ok(out)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Fields set in `self` win over those in `fallback`.
    pub fn or(self, fallback: ConfigOverrides) -> ConfigOverrides {
        ConfigOverrides {
            q_min: self.q_min.or(fallback.q_min),
            q_max: self.q_max.or(fallback.q_max),
            q_steps: self.q_steps.or(fallback.q_steps),
            alpha_steps: self.alpha_steps.or(fallback.alpha_steps),
            phi: self.phi.or(fallback.phi),
            strategies: self.strategies.or(fallback.strategies),
            output_path: self.output_path.or(fallback.output_path),
            format: self.format.or(fallback.format),
            jobs: self.jobs.or(fallback.jobs),
            bits: self.bits.or(fallback.bits),
            err_rate: self.err_rate.or(fallback.err_rate),
        }
    }

    pub fn apply(&self, cfg: &mut SweepConfig) -> Result<()> {
        if let Some(v) = self.q_min {
            cfg.q_min = v;
        }
        if let Some(v) = self.q_max {
            cfg.q_max = v;
        }
        if let Some(v) = self.q_steps {
            cfg.q_steps = v;
        }
        if let Some(v) = self.alpha_steps {
            cfg.alpha_steps = v;
        }
        if let Some(v) = self.phi {
            cfg.phi = v;
        }
        if let Some(v) = self.strategies {
            cfg.strategies = v;
        }
        if let Some(v) = &self.output_path {
            cfg.output_path = Some(v.clone());
        }
        if let Some(v) = self.format {
            cfg.format = v;
        }
        if let Some(v) = self.jobs {
            cfg.jobs = v;
        }
        match (self.bits, self.err_rate) {
            (None, None) => {}
            (Some(n), Some(r)) => cfg.shannon_case = Some((n, r)),
            (Some(n), None) => cfg.shannon_case = Some((n, 0.01)),
            (None, Some(r)) => cfg.shannon_case = Some((1000.0, r)),
        }
        Ok(())
    }
}

/// Worker count from [`JOBS_ENV`], if set and valid.
pub fn jobs_from_env() -> Result<Option<usize>> {
    match std::env::var(JOBS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| Error::Config(format!("{JOBS_ENV}={v} is not a worker count"))),
        Err(_) => Ok(None),
    }
}

/// `steps` evenly spaced values from `min` to `max` inclusive; endpoints exact.
pub fn linspace(min: f64, max: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![min],
        _ => (0..steps)
            .map(|i| {
                if i == steps - 1 {
                    max
                } else {
                    min + (max - min) * i as f64 / (steps - 1) as f64
                }
            })
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&v| format_value(v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Config("empty CSV".into()))?;
        let columns: Vec<String> = header.split(',').map(str::to_string).collect();
        let mut rows = Vec::new();
        for (i, line) in lines.enumerate() {
            let row = line
                .split(',')
                .map(|cell| {
                    cell.parse::<f64>()
                        .map_err(|_| Error::Config(format!("row {}: bad number `{cell}`", i + 1)))
                })
                .collect::<Result<Vec<_>>>()?;
            if row.len() != columns.len() {
                return Err(Error::Config(format!(
                    "row {} has {} cells",
                    i + 1,
                    row.len()
                )));
            }
            rows.push(row);
        }
        Ok(Self { columns, rows })
    }

    pub fn to_json(&self) -> String {
        let rounded = Table {
            columns: self.columns.clone(),
            rows: self
                .rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|&v| format_value(v).parse().unwrap_or(v))
                        .collect()
                })
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&rounded).expect("table serialises");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

/// Shortest decimal with at most 12 significant digits, `%g`-style.
pub fn format_value(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "NaN".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    if exp < -5 || exp >= SIGNIFICANT_DIGITS as i32 {
        let mantissa = trim_zeros(mantissa);
        return format!("{mantissa}e{exp}");
    }
    let rounded: f64 = sci.parse().expect("round trip");
    let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{rounded:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn thread_pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Config(format!("cannot start {jobs} workers: {e}")))
}

/// Rows `(q, I_I, I_II, P_success_I, P_success_II)`, restricted to the
/// selected strategies.
pub fn run_classical_sweep(cfg: &SweepConfig) -> Result<Table> {
    cfg.validate()?;
    let s = cfg.strategies;
    let mut columns = vec!["q"];
    if s.one {
        columns.push("I_I");
    }
    if s.two {
        columns.push("I_II");
    }
    if s.one {
        columns.push("P_success_I");
    }
    if s.two {
        columns.push("P_success_II");
    }
    let mut table = Table::new(&columns);
    let grid = cfg.q_grid();
    table.rows = thread_pool(cfg.jobs)?.install(|| {
        grid.par_iter()
            .map(|&q| {
                let m = repetition4_channel(q)?;
                let mut row = vec![q];
                if s.one {
                    row.push(mutual_info_strategy1(&m));
                }
                if s.two {
                    row.push(mutual_info_strategy2(&m)?.i_avg);
                }
                if s.one {
                    row.push(m.success_strategy1());
                }
                if s.two {
                    row.push(m.success_strategy2());
                }
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(table)
}

/// Rows `(q, alpha, phi, I_I, I_II, F_I, F_II, N)` over an (α, q) grid with
/// α varying slowest. When both strategies run, the difference surfaces
/// `I_II - I_I` and `F_I - F_II` are appended.
pub fn run_quantum_sweep(cfg: &SweepConfig) -> Result<Table> {
    cfg.validate()?;
    let s = cfg.strategies;
    let mut columns = vec!["q", "alpha", "phi"];
    if s.one {
        columns.push("I_I");
    }
    if s.two {
        columns.push("I_II");
    }
    if s.one {
        columns.push("F_I");
    }
    if s.two {
        columns.extend(["F_II", "N"]);
    }
    if s.both() {
        columns.extend(["I_II_minus_I_I", "F_I_minus_F_II"]);
    }
    let mut table = Table::new(&columns);

    let basis = SyndromeBasis::new()?;
    let points: Vec<(f64, f64)> = cfg
        .alpha_grid()
        .into_iter()
        .flat_map(|a| cfg.q_grid().into_iter().map(move |q| (a, q)))
        .collect();
    let phi = cfg.phi;
    table.rows = thread_pool(cfg.jobs)?.install(|| {
        points
            .par_iter()
            .map(|&(alpha, q)| {
                let g = LogicalState::new(alpha, phi);
                let one = if s.one {
                    Some(evaluate(&basis, &g, q, Strategy::I)?)
                } else {
                    None
                };
                let two = if s.two {
                    Some(evaluate(&basis, &g, q, Strategy::II)?)
                } else {
                    None
                };
                let mut row = vec![q, alpha, phi];
                row.extend(one.map(|r| r.mutual_info));
                row.extend(two.map(|r| r.mutual_info));
                row.extend(one.map(|r| r.fidelity));
                if let Some(r) = two {
                    row.extend([r.fidelity, r.kept_fraction]);
                }
                if let (Some(a), Some(b)) = (one, two) {
                    row.extend([b.mutual_info - a.mutual_info, a.fidelity - b.fidelity]);
                }
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(table)
}

/// The 1000-bit/s, 1 % example, followed by the configured extra case.
pub fn run_shannon_example(cfg: &SweepConfig) -> Result<Table> {
    cfg.validate()?;
    let mut table = Table::new(&[
        "bits_per_second",
        "err_rate",
        "equivocation_rate",
        "equivocation_fraction",
        "similarity_matches",
        "erasure_loss",
    ]);
    let mut cases = vec![(1000.0, 0.01)];
    cases.extend(cfg.shannon_case);
    for (n, rate) in cases {
        let r = shannon_example(n, rate)?;
        table.rows.push(vec![
            r.bits_per_second,
            r.err_rate,
            r.equivocation_rate,
            r.equivocation_fraction(),
            r.similarity_matches,
            r.erasure_loss,
        ]);
    }
    Ok(table)
}

pub fn run(cfg: &SweepConfig) -> Result<Table> {
    match cfg.mode {
        Mode::Classical => run_classical_sweep(cfg),
        Mode::Quantum => run_quantum_sweep(cfg),
        Mode::Shannon => run_shannon_example(cfg),
    }
}

/// Writes the rendered table to `cfg.output_path`, or stdout when unset.
pub fn emit(table: &Table, cfg: &SweepConfig) -> Result<()> {
    let text = table.render(cfg.format);
    match &cfg.output_path {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes())?;
            lock.flush()?;
        }
    }
    Ok(())
}

/// Human-readable summary of a Shannon table.
pub fn shannon_summary(table: &Table) -> String {
    let mut out = String::new();
    for row in &table.rows {
        let _ = writeln!(
            out,
            "{} bits/s at {}% error: equivocation {} bits/s ({}%), similarity matches {}/s, erasure loss {} bits/s",
            format_value(row[0]),
            format_value(row[1] * 100.0),
            format_value((row[2] * 10.0).round() / 10.0),
            format_value((row[3] * 1000.0).round() / 10.0),
            format_value(row[4]),
            format_value(row[5]),
        );
    }
    out
}
