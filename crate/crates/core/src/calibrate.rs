//! Fitting the timing/energy model to target Type III-PG / baseline ratios.
//!
//! Only ratios enter the objective, so absolute time and energy units are
//! unidentifiable. The fit pins `tau_cg = e_cg = 1` and searches the other
//! five parameters with Nelder-Mead in log space, clamped to a box.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bench::{adder_inputs, compare, run_bench, BenchError, Config, Ratios, Workload};
use crate::library::{Cascade, Style};
use crate::sim::TimingEnergyParams;

pub const PARAM_MIN: f64 = 1e-3;
pub const PARAM_MAX: f64 = 1e3;
/// Operations per objective evaluation.
pub const DEFAULT_OPS: usize = 1000;
pub const MIN_BUDGET: usize = 50;

pub const HYBRID: Config = Config::new(Style::TypeIII, Cascade::Pg);

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CalibrationError {
    #[error("target {name} = {value} is outside (0, 1)")]
    BadTarget { name: &'static str, value: f64 },
    #[error("budget {0} is below the minimum of {MIN_BUDGET} evaluations")]
    BudgetTooSmall(usize),
    #[error(transparent)]
    Bench(#[from] BenchError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CalibrationTargets {
    pub delay_ratio: f64,
    pub energy_ratio: f64,
    pub edp_ratio: f64,
    pub aedp_ratio: f64,
}

impl Default for CalibrationTargets {
    fn default() -> Self {
        CalibrationTargets {
            delay_ratio: 0.53,
            energy_ratio: 0.12,
            edp_ratio: 0.1111,
            aedp_ratio: 0.05,
        }
    }
}

impl CalibrationTargets {
    pub fn validate(&self) -> Result<(), CalibrationError> {
        for (name, value) in self.named() {
            if !(value > 0.0 && value < 1.0) {
                return Err(CalibrationError::BadTarget { name, value });
            }
        }
        Ok(())
    }

    pub fn named(&self) -> [(&'static str, f64); 4] {
        [
            ("delay", self.delay_ratio),
            ("energy", self.energy_ratio),
            ("edp", self.edp_ratio),
            ("aedp", self.aedp_ratio),
        ]
    }

    /// Sum of squared log errors of `achieved` against the targets.
    pub fn error(&self, achieved: &Ratios) -> f64 {
        let got = [achieved.delay, achieved.energy, achieved.edp, achieved.aedp];
        let err: f64 = self
            .named()
            .iter()
            .zip(got)
            .map(|(&(_, target), a)| (a / target).ln().powi(2))
            .sum();
        if err.is_finite() {
            err
        } else {
            f64::INFINITY
        }
    }

    /// Per-metric check that `achieved` lies within `rel` of the target.
    pub fn within(&self, achieved: &Ratios, rel: f64) -> [bool; 4] {
        let got = [achieved.delay, achieved.energy, achieved.edp, achieved.aedp];
        let t = self.named();
        std::array::from_fn(|i| ((got[i] - t[i].1) / t[i].1).abs() <= rel)
    }
}

/// A fixed benchmark setup to evaluate parameter sets against.
#[derive(Debug, Clone)]
pub struct Calibration {
    pub targets: CalibrationTargets,
    pub bits: usize,
    workload: Workload,
}

impl Calibration {
    pub fn new(
        targets: CalibrationTargets,
        bits: usize,
        seed: u64,
        ops: usize,
    ) -> Result<Calibration, CalibrationError> {
        targets.validate()?;
        Ok(Calibration {
            targets,
            bits,
            workload: Workload::generate(seed, &adder_inputs(bits), ops)?,
        })
    }

    pub fn seed(&self) -> u64 {
        self.workload.seed
    }

    /// Type III-PG / baseline ratios under `params`.
    pub fn ratios(&self, params: &TimingEnergyParams) -> Result<Ratios, BenchError> {
        let report = run_bench(&[Config::BASELINE, HYBRID], self.bits, &self.workload, params)?;
        compare(&report, HYBRID, Config::BASELINE)
    }

    /// Infinite when the simulation fails (e.g. oscillates).
    pub fn objective(&self, params: &TimingEnergyParams) -> f64 {
        match self.ratios(params) {
            Ok(r) => self.targets.error(&r),
            Err(_) => f64::INFINITY,
        }
    }

    pub fn fit(&self, start: &TimingEnergyParams, budget: usize) -> Result<FitResult, CalibrationError> {
        if budget < MIN_BUDGET {
            return Err(CalibrationError::BudgetTooSmall(budget));
        }
        let x0 = encode(&gauge(start));
        let mut evals = 0usize;
        let mut f = |x: &[f64; DIM]| {
            evals += 1;
            self.objective(&decode(x))
        };
        let out = nelder_mead(&mut f, x0, budget);
        let params = decode(&out.best);
        let achieved = self.ratios(&params).ok();
        Ok(FitResult {
            params,
            objective: out.value,
            achieved,
            iterations: out.iterations,
            evaluations: evals,
            exhausted: out.exhausted,
            history: out.history,
        })
    }
}

/// Objective over the standard workload size.
pub fn objective(
    params: &TimingEnergyParams,
    targets: &CalibrationTargets,
    bits: usize,
    seed: u64,
) -> Result<f64, CalibrationError> {
    Ok(Calibration::new(*targets, bits, seed, DEFAULT_OPS)?.objective(params))
}

pub fn fit(
    targets: &CalibrationTargets,
    bits: usize,
    seed: u64,
    start: &TimingEnergyParams,
    budget: usize,
) -> Result<FitResult, CalibrationError> {
    Calibration::new(*targets, bits, seed, DEFAULT_OPS)?.fit(start, budget)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub params: TimingEnergyParams,
    pub objective: f64,
    /// Ratios at `params`; `None` if they could not be simulated.
    pub achieved: Option<Ratios>,
    pub iterations: usize,
    pub evaluations: usize,
    /// The evaluation budget ran out before the simplex converged.
    pub exhausted: bool,
    /// Best objective seen after each iteration.
    pub history: Vec<f64>,
}

const DIM: usize = 5;

/// Rescales times by `tau_cg` and energies by `e_cg`.
pub fn gauge(p: &TimingEnergyParams) -> TimingEnergyParams {
    TimingEnergyParams {
        tau_cg: 1.0,
        tau_pg: p.tau_pg / p.tau_cg,
        tau_pass: p.tau_pass / p.tau_cg,
        k_weak: p.k_weak,
        e_cg: 1.0,
        e_pg: p.e_pg / p.e_cg,
        e_node: p.e_node / p.e_cg,
    }
}

fn bounds(i: usize) -> (f64, f64) {
    // k_weak < 1 would make degraded signals faster
    let lo = if i == 2 { 1.0 } else { PARAM_MIN };
    (lo.ln(), PARAM_MAX.ln())
}

fn clamp(mut x: [f64; DIM]) -> [f64; DIM] {
    for (i, v) in x.iter_mut().enumerate() {
        let (lo, hi) = bounds(i);
        *v = v.clamp(lo, hi);
    }
    x
}

fn encode(p: &TimingEnergyParams) -> [f64; DIM] {
    let raw = [p.tau_pg, p.tau_pass, p.k_weak, p.e_pg, p.e_node];
    clamp(raw.map(|v| v.max(PARAM_MIN).ln()))
}

fn decode(x: &[f64; DIM]) -> TimingEnergyParams {
    let [tau_pg, tau_pass, k_weak, e_pg, e_node] = clamp(*x).map(f64::exp);
    TimingEnergyParams {
        tau_cg: 1.0,
        tau_pg,
        tau_pass,
        k_weak: k_weak.max(1.0),
        e_cg: 1.0,
        e_pg,
        e_node,
    }
}

struct Minimum {
    best: [f64; DIM],
    value: f64,
    iterations: usize,
    exhausted: bool,
    history: Vec<f64>,
}

const ALPHA: f64 = 1.0;
const GAMMA: f64 = 2.0;
const RHO: f64 = 0.5;
const SIGMA: f64 = 0.5;
const INITIAL_STEP: f64 = 0.5;
const F_TOL: f64 = 1e-10;
const X_TOL: f64 = 1e-8;
const ZERO: f64 = 1e-12;

fn nelder_mead<F>(f: &mut F, x0: [f64; DIM], budget: usize) -> Minimum
where
    F: FnMut(&[f64; DIM]) -> f64,
{
    let mut used = 0usize;
    let mut eval = |x: &[f64; DIM], used: &mut usize| {
        *used += 1;
        f(x)
    };

    let f0 = eval(&x0, &mut used);
    if f0 < ZERO {
        return Minimum {
            best: x0,
            value: f0,
            iterations: 0,
            exhausted: false,
            history: vec![f0],
        };
    }

    let mut simplex: Vec<([f64; DIM], f64)> = vec![(x0, f0)];
    for i in 0..DIM {
        let mut x = x0;
        let (_, hi) = bounds(i);
        x[i] += if x[i] + INITIAL_STEP <= hi { INITIAL_STEP } else { -INITIAL_STEP };
        let x = clamp(x);
        let fx = eval(&x, &mut used);
        simplex.push((x, fx));
    }

    let mut history = Vec::new();
    let mut iterations = 0;
    let mut exhausted = false;
    let by_value = |a: &([f64; DIM], f64), b: &([f64; DIM], f64)| a.1.total_cmp(&b.1);

    loop {
        simplex.sort_by(by_value);
        history.push(simplex[0].1);
        if simplex[0].1 < ZERO || converged(&simplex) {
            break;
        }
        if used >= budget {
            exhausted = true;
            break;
        }
        iterations += 1;

        let worst = simplex[DIM];
        let mut centroid = [0.0; DIM];
        for (x, _) in &simplex[..DIM] {
            for i in 0..DIM {
                centroid[i] += x[i] / DIM as f64;
            }
        }
        let toward = |coef: f64| clamp(std::array::from_fn(|i| centroid[i] + coef * (worst.0[i] - centroid[i])));

        let xr = toward(-ALPHA);
        let fr = eval(&xr, &mut used);
        if fr < simplex[0].1 {
            if used >= budget {
                simplex[DIM] = (xr, fr);
                continue;
            }
            let xe = toward(-ALPHA * GAMMA);
            let fe = eval(&xe, &mut used);
            simplex[DIM] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[DIM - 1].1 {
            simplex[DIM] = (xr, fr);
            continue;
        }
        if used >= budget {
            if fr < worst.1 {
                simplex[DIM] = (xr, fr);
            }
            continue;
        }
        let (xc, fc) = if fr < worst.1 {
            let xc = toward(-ALPHA * RHO);
            (xc, eval(&xc, &mut used))
        } else {
            let xc = toward(RHO);
            (xc, eval(&xc, &mut used))
        };
        if fc < worst.1.min(fr) {
            simplex[DIM] = (xc, fc);
            continue;
        }
        let best = simplex[0].0;
        for vertex in simplex.iter_mut().skip(1) {
            if used >= budget {
                break;
            }
            let x = clamp(std::array::from_fn(|i| best[i] + SIGMA * (vertex.0[i] - best[i])));
            *vertex = (x, eval(&x, &mut used));
        }
    }

    let (best, value) = simplex[0];
    Minimum {
        best,
        value,
        iterations,
        exhausted,
        history,
    }
}

fn converged(simplex: &[([f64; DIM], f64)]) -> bool {
    let spread = simplex[DIM].1 - simplex[0].1;
    let size = simplex
        .iter()
        .skip(1)
        .flat_map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()))
        .fold(0.0, f64::max);
    spread.is_finite() && spread <= F_TOL && size <= X_TOL
}
