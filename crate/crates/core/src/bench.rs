//! Seeded random workloads run through ripple-carry adders of every style.
//!
//! Each configuration simulates the same vector sequence, preceded by an
//! all-zero operating point that is not counted. Delay is averaged over
//! operations that move at least one output; energy over all operations.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::library::{gen_ripple_carry, Cascade, LibraryError, Style};
use crate::netlist::device_count;
use crate::signal::Level;
use crate::sim::{InputVector, SimError, Simulator, TimingEnergyParams};
use crate::stimulus::complete_inputs;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BenchError {
    #[error("workload needs at least one input")]
    NoInputs,
    #[error("workload needs at least one vector")]
    EmptyWorkload,
    #[error(transparent)]
    Library(#[from] LibraryError),
    #[error("{config}: {source}")]
    Simulation { config: Config, source: SimError },
    #[error("configuration {0} is not in the report")]
    MissingConfig(Config),
    #[error("unknown configuration `{0}`")]
    BadConfig(String),
}

/// Random input vectors over named inputs.
///
/// Bits come from ChaCha8 seeded with `seed`, drawn vector by vector in
/// input order, so a workload is fully determined by its seed, input list
/// and length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Workload {
    pub seed: u64,
    pub inputs: Vec<String>,
    pub vectors: Vec<InputVector>,
}

impl Workload {
    pub fn generate(seed: u64, inputs: &[String], length: usize) -> Result<Workload, BenchError> {
        if inputs.is_empty() {
            return Err(BenchError::NoInputs);
        }
        if length == 0 {
            return Err(BenchError::EmptyWorkload);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vectors = (0..length)
            .map(|_| {
                inputs
                    .iter()
                    .map(|name| (name.clone(), Level::from_bool(rng.gen::<bool>())))
                    .collect()
            })
            .collect();
        Ok(Workload {
            seed,
            inputs: inputs.to_vec(),
            vectors,
        })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

pub fn gen_workload(seed: u64, inputs: &[String], length: usize) -> Result<Workload, BenchError> {
    Workload::generate(seed, inputs, length)
}

/// Primary inputs of a `bits`-wide ripple-carry adder.
pub fn adder_inputs(bits: usize) -> Vec<String> {
    let mut names: Vec<String> = (0..bits)
        .flat_map(|i| [format!("a{i}"), format!("b{i}")])
        .collect();
    names.push("cin".into());
    names
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Config {
    pub style: Style,
    pub cascade: Cascade,
}

impl Config {
    pub const fn new(style: Style, cascade: Cascade) -> Config {
        Config { style, cascade }
    }

    pub const BASELINE: Config = Config::new(Style::Baseline, Cascade::Cg);
}

impl fmt::Display for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.style, self.cascade)
    }
}

impl FromStr for Config {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || BenchError::BadConfig(s.to_string());
        let (style, cascade) = s.split_once('-').ok_or_else(bad)?;
        Ok(Config {
            style: style.parse().map_err(|_| bad())?,
            cascade: cascade.parse().map_err(|_| bad())?,
        })
    }
}

/// The baseline followed by every hybrid style in both cascades.
pub fn default_configs() -> Vec<Config> {
    let mut configs = vec![Config::BASELINE];
    for style in Style::HYBRID {
        for cascade in Cascade::ALL {
            configs.push(Config::new(style, cascade));
        }
    }
    configs
}

/// Every combination of the given styles and cascades, each once.
/// The baseline is only built with CG inverters.
pub fn configs_for(styles: &[Style], cascades: &[Cascade]) -> Vec<Config> {
    let mut configs = Vec::new();
    for &style in styles {
        let cs: &[Cascade] = if style == Style::Baseline { &[Cascade::Cg] } else { cascades };
        for &cascade in cs {
            let cfg = Config::new(style, cascade);
            if !configs.contains(&cfg) {
                configs.push(cfg);
            }
        }
    }
    configs
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ratios {
    pub delay: f64,
    pub energy: f64,
    pub edp: f64,
    pub aedp: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub style: Style,
    pub cascade: Cascade,
    pub device_count: usize,
    pub avg_delay: f64,
    pub avg_energy: f64,
    pub edp: f64,
    pub aedp: f64,
    pub vs_baseline: Option<Ratios>,
}

impl BenchRow {
    pub fn config(&self) -> Config {
        Config::new(self.style, self.cascade)
    }

    pub fn ratios_to(&self, other: &BenchRow) -> Ratios {
        Ratios {
            delay: self.avg_delay / other.avg_delay,
            energy: self.avg_energy / other.avg_energy,
            edp: self.edp / other.edp,
            aedp: self.aedp / other.aedp,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub bits: usize,
    pub seed: u64,
    pub params: TimingEnergyParams,
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn row(&self, config: Config) -> Option<&BenchRow> {
        self.rows.iter().find(|r| r.config() == config)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "style,cascade,device_count,avg_delay,avg_energy,edp,aedp,\
             delay_vs_baseline,energy_vs_baseline,edp_vs_baseline,aedp_vs_baseline\n",
        );
        for r in &self.rows {
            let _ = write!(
                out,
                "{},{},{},{},{},{},{}",
                r.style, r.cascade, r.device_count, r.avg_delay, r.avg_energy, r.edp, r.aedp
            );
            match r.vs_baseline {
                Some(q) => {
                    let _ = writeln!(out, ",{},{},{},{}", q.delay, q.energy, q.edp, q.aedp);
                }
                None => out.push_str(",,,,\n"),
            }
        }
        out
    }
}

/// Simulates one configuration. The returned row has no baseline ratios.
pub fn run_config(
    config: Config,
    bits: usize,
    workload: &Workload,
    params: &TimingEnergyParams,
) -> Result<BenchRow, BenchError> {
    if workload.is_empty() {
        return Err(BenchError::EmptyWorkload);
    }
    let circuit = gen_ripple_carry(config.style, config.cascade, bits)?;
    let tag = |source| BenchError::Simulation { config, source };
    let sim = Simulator::new(&circuit, *params).map_err(tag)?;

    let zero: InputVector = workload.inputs.iter().map(|n| (n.clone(), Level::L0)).collect();
    let vectors: Vec<InputVector> = std::iter::once(&zero)
        .chain(&workload.vectors)
        .map(|v| complete_inputs(&circuit, v))
        .collect();
    let trace = sim.run_waveform(&vectors).map_err(tag)?;

    let ops = &trace.vectors[1..];
    let switching: Vec<f64> = ops.iter().filter(|v| v.output_changed).map(|v| v.delay).collect();
    let avg_delay = if switching.is_empty() {
        0.0
    } else {
        switching.iter().sum::<f64>() / switching.len() as f64
    };
    let avg_energy = ops.iter().map(|v| v.energy).sum::<f64>() / ops.len() as f64;
    let count = device_count(&circuit);
    let edp = avg_delay * avg_energy;
    Ok(BenchRow {
        style: config.style,
        cascade: config.cascade,
        device_count: count,
        avg_delay,
        avg_energy,
        edp,
        aedp: count as f64 * edp,
        vs_baseline: None,
    })
}

/// Runs every configuration (in parallel) and fills in baseline ratios when
/// the baseline is among them. Rows keep the order of `configs`.
pub fn run_bench(
    configs: &[Config],
    bits: usize,
    workload: &Workload,
    params: &TimingEnergyParams,
) -> Result<BenchReport, BenchError> {
    let mut rows = configs
        .par_iter()
        .map(|&cfg| run_config(cfg, bits, workload, params))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(base) = rows.iter().find(|r| r.config() == Config::BASELINE).cloned() {
        for r in &mut rows {
            r.vs_baseline = Some(r.ratios_to(&base));
        }
    }
    Ok(BenchReport {
        bits,
        seed: workload.seed,
        params: *params,
        rows,
    })
}

/// Metric ratios `a / b`.
pub fn compare(report: &BenchReport, a: Config, b: Config) -> Result<Ratios, BenchError> {
    let ra = report.row(a).ok_or(BenchError::MissingConfig(a))?;
    let rb = report.row(b).ok_or(BenchError::MissingConfig(b))?;
    Ok(ra.ratios_to(rb))
}
