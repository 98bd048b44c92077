//! The `aptl` command line.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 simulation error
//! (oscillation), 3 truth-table mismatch.

use std::ffi::OsString;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{adder_inputs, configs_for, run_bench, BenchError, Workload};
use crate::calibrate::{Calibration, CalibrationTargets, MIN_BUDGET};
use crate::library::{gen_full_adder, gen_ripple_carry, Cascade, Style};
use crate::netlist::{parse_netlist, Circuit};
use crate::signal::Level;
use crate::sim::{InputVector, SimError, Simulator, TimingEnergyParams};
use crate::stimulus::{complete_inputs, AdderPorts};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_SIMULATION: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

/// Widest adder `truth` will enumerate.
const MAX_TRUTH_BITS: usize = 10;

#[derive(Debug, Parser)]
#[command(name = "aptl", version, about = "Ambipolar pass-transistor logic simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a full adder, or a ripple-carry adder with --bits
    Gen(GenArgs),
    /// Run a vector file through a netlist and write the event trace
    Sim(SimArgs),
    /// Check a netlist exhaustively against an arithmetic oracle
    Truth(TruthArgs),
    /// Compare adder styles over a random workload
    Bench(BenchArgs),
    /// Fit timing/energy parameters to target ratios
    Calibrate(CalibrateArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StyleArg {
    Baseline,
    Type1,
    Type2,
    Type3,
}

impl From<StyleArg> for Style {
    fn from(s: StyleArg) -> Style {
        match s {
            StyleArg::Baseline => Style::Baseline,
            StyleArg::Type1 => Style::TypeI,
            StyleArg::Type2 => Style::TypeII,
            StyleArg::Type3 => Style::TypeIII,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CascadeArg {
    Cg,
    Pg,
}

impl From<CascadeArg> for Cascade {
    fn from(c: CascadeArg) -> Cascade {
        match c {
            CascadeArg::Cg => Cascade::Cg,
            CascadeArg::Pg => Cascade::Pg,
        }
    }
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    style: StyleArg,
    #[arg(long, value_enum, default_value = "cg")]
    cascade: CascadeArg,
    #[arg(long)]
    bits: Option<usize>,
    /// Defaults to stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SimArgs {
    netlist: PathBuf,
    /// CSV with input names as header and one 0/1 row per vector
    #[arg(long)]
    vectors: PathBuf,
    #[arg(long)]
    params: Option<PathBuf>,
    #[arg(long)]
    trace: PathBuf,
    /// Per-vector delay/energy CSV; printed to stdout when omitted
    #[arg(long)]
    summary: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Oracle {
    Adder,
}

#[derive(Debug, Args)]
struct TruthArgs {
    netlist: PathBuf,
    #[arg(long, value_enum)]
    oracle: Oracle,
    #[arg(long)]
    bits: usize,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, value_enum, value_delimiter = ',')]
    styles: Option<Vec<StyleArg>>,
    #[arg(long, value_enum, value_delimiter = ',')]
    cascades: Option<Vec<CascadeArg>>,
    #[arg(long, default_value_t = 4)]
    bits: usize,
    #[arg(long, default_value_t = 1000)]
    ops: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    params: Option<PathBuf>,
    /// JSON report; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CalibrateArgs {
    /// Defaults to the standard reduction targets
    #[arg(long)]
    targets: Option<PathBuf>,
    #[arg(long, default_value_t = 500)]
    budget: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 4)]
    bits: usize,
    #[arg(long, default_value_t = 1000)]
    ops: usize,
    /// Starting parameters; defaults otherwise
    #[arg(long)]
    start: Option<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<SimError> for Failure {
    fn from(e: SimError) -> Failure {
        let code = match e {
            SimError::Oscillation { .. } => EXIT_SIMULATION,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<BenchError> for Failure {
    fn from(e: BenchError) -> Failure {
        match e {
            BenchError::Simulation {
                source: SimError::Oscillation { .. },
                ..
            } => Failure {
                code: EXIT_SIMULATION,
                message: e.to_string(),
            },
            _ => Failure::usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Sim(a) => sim(a),
        Command::Truth(a) => truth(a),
        Command::Bench(a) => bench(a),
        Command::Calibrate(a) => calibrate(a),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn write_or_print(path: Option<&Path>, text: &str) -> Outcome {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::usage(format!("{}: {e}", p.display()))),
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn load_netlist(path: &Path) -> Result<Circuit, Failure> {
    parse_netlist(&read(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn load_params(path: Option<&Path>) -> Result<TimingEnergyParams, Failure> {
    let Some(path) = path else {
        return Ok(TimingEnergyParams::default());
    };
    let params: TimingEnergyParams =
        serde_json::from_str(&read(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    params.validate()?;
    Ok(params)
}

fn gen(a: GenArgs) -> Outcome {
    let (style, cascade) = (a.style.into(), a.cascade.into());
    let circuit = match a.bits {
        None => gen_full_adder(style, cascade),
        Some(bits) => gen_ripple_carry(style, cascade, bits).map_err(|e| Failure::usage(e.to_string()))?,
    };
    write_or_print(a.out.as_deref(), &circuit.to_netlist())
}

/// Reads a vector CSV: header of input names, rows of 0/1.
pub fn parse_vectors(text: &str) -> Result<Vec<InputVector>, String> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (_, header) = lines.next().ok_or("vector file is empty")?;
    let names: Vec<String> = header.split(',').map(|s| s.trim().to_ascii_lowercase()).collect();
    let mut vectors = Vec::new();
    for (line, row) in lines {
        let cells: Vec<&str> = row.split(',').map(str::trim).collect();
        if cells.len() != names.len() {
            return Err(format!("line {line}: expected {} values, found {}", names.len(), cells.len()));
        }
        let mut v = InputVector::new();
        for (name, cell) in names.iter().zip(cells) {
            let level = match cell {
                "0" => Level::L0,
                "1" => Level::L1,
                other => return Err(format!("line {line}: `{other}` is not 0 or 1")),
            };
            v.insert(name.clone(), level);
        }
        vectors.push(v);
    }
    Ok(vectors)
}

fn sim(a: SimArgs) -> Outcome {
    let circuit = load_netlist(&a.netlist)?;
    let params = load_params(a.params.as_deref())?;
    let vectors = parse_vectors(&read(&a.vectors)?)
        .map_err(|e| Failure::usage(format!("{}: {e}", a.vectors.display())))?;
    let vectors: Vec<InputVector> = vectors.iter().map(|v| complete_inputs(&circuit, v)).collect();
    let trace = Simulator::new(&circuit, params)?.run_waveform(&vectors)?;
    fs::write(&a.trace, trace.to_csv(&circuit))
        .map_err(|e| Failure::usage(format!("{}: {e}", a.trace.display())))?;
    write_or_print(a.summary.as_deref(), &trace.summary_csv())
}

fn truth(a: TruthArgs) -> Outcome {
    let Oracle::Adder = a.oracle;
    let circuit = load_netlist(&a.netlist)?;
    let ports = AdderPorts::detect(&circuit)
        .ok_or_else(|| Failure::usage("netlist does not expose adder ports"))?;
    if ports.bits() != a.bits {
        return Err(Failure::usage(format!("netlist is {} bits wide, not {}", ports.bits(), a.bits)));
    }
    if a.bits > MAX_TRUTH_BITS {
        return Err(Failure::usage(format!("at most {MAX_TRUTH_BITS} bits can be enumerated")));
    }
    let sim = Simulator::new(&circuit, TimingEnergyParams::default())?;
    let mask = (1u64 << a.bits) - 1;
    let total = 1u64 << (2 * a.bits + 1);
    let mut state = None;
    let mut mismatches = 0u64;
    for v in 0..total {
        let (x, y, cin) = (v & mask, v >> a.bits & mask, v >> (2 * a.bits) & 1);
        let inputs = complete_inputs(&circuit, &ports.vector(x, y, cin == 1));
        let next = sim.settle(&inputs, state.as_ref())?;
        let expect = x + y + cin;
        match ports.read(&circuit, &next) {
            Some(got) if got == expect => {}
            got => {
                mismatches += 1;
                if mismatches <= 10 {
                    let shown = got.map_or("X".to_string(), |g| g.to_string());
                    eprintln!("mismatch: {x} + {y} + {cin} = {expect}, circuit gives {shown}");
                }
            }
        }
        state = Some(next);
    }
    if mismatches > 0 {
        return Err(Failure {
            code: EXIT_MISMATCH,
            message: format!("{mismatches} of {total} vectors mismatch"),
        });
    }
    println!("{total} vectors ok");
    Ok(())
}

fn bench(a: BenchArgs) -> Outcome {
    let params = load_params(a.params.as_deref())?;
    let styles: Vec<Style> = match a.styles {
        Some(s) => s.into_iter().map(Style::from).collect(),
        None => Style::ALL.to_vec(),
    };
    let cascades: Vec<Cascade> = match a.cascades {
        Some(c) => c.into_iter().map(Cascade::from).collect(),
        None => Cascade::ALL.to_vec(),
    };
    let configs = configs_for(&styles, &cascades);
    if configs.is_empty() {
        return Err(Failure::usage("no configurations selected"));
    }
    let workload = Workload::generate(a.seed, &adder_inputs(a.bits), a.ops)?;
    let report = run_bench(&configs, a.bits, &workload, &params)?;
    if let Some(path) = &a.csv {
        fs::write(path, report.to_csv()).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    }
    write_or_print(a.out.as_deref(), &(report.to_json() + "\n"))
}

fn calibrate(a: CalibrateArgs) -> Outcome {
    let targets = match &a.targets {
        Some(path) => serde_json::from_str(&read(path)?)
            .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?,
        None => CalibrationTargets::default(),
    };
    if a.budget < MIN_BUDGET {
        return Err(Failure::usage(format!("--budget must be at least {MIN_BUDGET}")));
    }
    let start = load_params(a.start.as_deref())?;
    let cal = Calibration::new(targets, a.bits, a.seed, a.ops).map_err(|e| Failure::usage(e.to_string()))?;
    let fit = cal.fit(&start, a.budget).map_err(|e| Failure::usage(e.to_string()))?;
    let text = serde_json::to_string_pretty(&fit.params).expect("params serialize") + "\n";
    fs::write(&a.out, text).map_err(|e| Failure::usage(format!("{}: {e}", a.out.display())))?;

    eprintln!(
        "objective {:.6} after {} evaluations{}",
        fit.objective,
        fit.evaluations,
        if fit.exhausted { " (budget exhausted)" } else { "" }
    );
    if let Some(r) = fit.achieved {
        eprintln!(
            "ratios: delay {:.4} energy {:.4} edp {:.4} aedp {:.4}",
            r.delay, r.energy, r.edp, r.aedp
        );
    }
    Ok(())
}
