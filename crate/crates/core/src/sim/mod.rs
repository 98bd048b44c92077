//! Zero-delay settling and event-driven timing/energy simulation.
//!
//! Nodes are grouped into channel-connected components (CCCs). A component
//! is always resolved as a whole from the gate levels its devices currently
//! see, the supply/input levels on its boundary, and the charge retained on
//! its own nodes.
//!
//! In the timed model a node transition reaches a device's control gate after
//! `tau_cg`, its polarity gate after `tau_pg` (both scaled by `k_weak` when
//! the new value is `Weak`), and a channel terminal fed by an input after
//! `tau_pass`. Each arrival re-resolves the device's component at that time.

mod engine;
mod eval;
mod topology;
mod trace;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::netlist::Circuit;
use crate::signal::Level;

pub use engine::{SimState, Simulator};
pub use trace::{accumulate_energy, Trace, TraceEvent, TraceFragment, VectorSummary};

/// Input assignment by node name.
pub type InputVector = BTreeMap<String, Level>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("input `{0}` has no assigned level")]
    MissingInput(String),
    #[error("`{0}` is not an input of the circuit")]
    UnknownInput(String),
    #[error("input `{0}` must be driven to 0 or 1")]
    UndefinedInput(String),
    #[error("circuit needs at least one input and one output")]
    NotSimulatable,
    #[error("no stable state reached{}", match .vector { Some(i) => format!(" (vector {i})"), None => String::new() })]
    Oscillation { vector: Option<usize> },
    #[error("invalid timing/energy parameter: {0}")]
    InvalidParams(String),
    #[error("waveform needs at least one vector")]
    EmptyWaveform,
}

/// Parametric delay and energy model, in arbitrary time and energy units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TimingEnergyParams {
    pub tau_cg: f64,
    pub tau_pg: f64,
    pub tau_pass: f64,
    pub k_weak: f64,
    pub e_cg: f64,
    pub e_pg: f64,
    pub e_node: f64,
}

impl Default for TimingEnergyParams {
    fn default() -> Self {
        TimingEnergyParams {
            tau_cg: 1.0,
            tau_pg: 1.6,
            tau_pass: 0.5,
            k_weak: 1.5,
            e_cg: 1.0,
            e_pg: 0.6,
            e_node: 0.5,
        }
    }
}

impl TimingEnergyParams {
    pub fn validate(&self) -> Result<(), SimError> {
        let checks = [
            ("tau_cg", self.tau_cg, self.tau_cg > 0.0),
            ("tau_pg", self.tau_pg, self.tau_pg > 0.0),
            ("tau_pass", self.tau_pass, self.tau_pass >= 0.0),
            ("k_weak", self.k_weak, self.k_weak >= 1.0),
            ("e_cg", self.e_cg, self.e_cg >= 0.0),
            ("e_pg", self.e_pg, self.e_pg >= 0.0),
            ("e_node", self.e_node, self.e_node >= 0.0),
        ];
        for (name, value, ok) in checks {
            if !ok || !value.is_finite() {
                return Err(SimError::InvalidParams(format!("{name} = {value}")));
            }
        }
        Ok(())
    }
}

/// Zero-delay evaluation of `c` under `inputs`, starting from `prior` (or
/// from an all-unknown state).
pub fn settle(
    c: &Circuit,
    inputs: &InputVector,
    prior: Option<&SimState>,
) -> Result<SimState, SimError> {
    Simulator::new(c, TimingEnergyParams::default())?.settle(inputs, prior)
}

/// Applies `inputs` at time `t0` to a settled state and propagates events
/// until the queue drains.
pub fn step_vector(
    c: &Circuit,
    state: &SimState,
    t0: f64,
    inputs: &InputVector,
    params: &TimingEnergyParams,
) -> Result<(SimState, TraceFragment), SimError> {
    Simulator::new(c, *params)?.step_vector(state, t0, inputs)
}

/// Runs a sequence of vectors. The first vector sets the operating point.
pub fn run_waveform(
    c: &Circuit,
    vectors: &[InputVector],
    params: &TimingEnergyParams,
) -> Result<Trace, SimError> {
    Simulator::new(c, *params)?.run_waveform(vectors)
}
