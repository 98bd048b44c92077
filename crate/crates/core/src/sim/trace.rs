use std::fmt::Write as _;

use crate::netlist::{Circuit, NodeId, NodeKind};
use crate::signal::Signal;

use super::topology::Topology;
use super::TimingEnergyParams;

/// One committed level change.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceEvent {
    pub time: f64,
    pub node: NodeId,
    pub signal: Signal,
}

/// Result of a single vector step.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceFragment {
    pub events: Vec<TraceEvent>,
    /// Last output event time minus the step's start, 0 without output activity.
    pub delay: f64,
    pub energy: f64,
    pub output_changed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VectorSummary {
    pub index: usize,
    pub t0: f64,
    pub delay: f64,
    pub energy: f64,
    pub output_changed: bool,
    /// Final output signals, in the circuit's output declaration order.
    pub outputs: Vec<Signal>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trace {
    pub events: Vec<TraceEvent>,
    pub vectors: Vec<VectorSummary>,
    pub spacing: f64,
}

impl Trace {
    /// `time,node,level,strength` rows in commit order.
    pub fn to_csv(&self, c: &Circuit) -> String {
        let mut out = String::from("time,node,level,strength\n");
        for ev in &self.events {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                ev.time,
                c.node_name(ev.node),
                ev.signal.level().as_char(),
                ev.signal.strength().name()
            );
        }
        out
    }

    /// `vector_index,delay,energy` rows.
    pub fn summary_csv(&self) -> String {
        let mut out = String::from("vector_index,delay,energy\n");
        for v in &self.vectors {
            let _ = writeln!(out, "{},{},{}", v.index, v.delay, v.energy);
        }
        out
    }
}

pub(crate) fn node_energy(topo: &Topology, p: &TimingEnergyParams, node: usize) -> f64 {
    if topo.kinds[node] == NodeKind::Input {
        return 0.0;
    }
    p.e_node + p.e_cg * topo.cg_fanout[node].len() as f64 + p.e_pg * topo.pg_fanout[node].len() as f64
}

/// Energy of a list of committed level changes: each transition of a
/// non-input node costs `e_node` plus `e_cg`/`e_pg` per gate it drives.
/// Input transitions are paid by the external driver.
pub fn accumulate_energy(c: &Circuit, events: &[TraceEvent], params: &TimingEnergyParams) -> f64 {
    let topo = Topology::new(c);
    events
        .iter()
        .map(|ev| node_energy(&topo, params, ev.node.index()))
        .sum()
}
