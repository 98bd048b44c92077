use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeSet, BinaryHeap};

use crate::netlist::{Circuit, NodeId, NodeKind};
use crate::signal::{Level, Signal, Strength};

use super::eval::{evaluate_ccc, DeviceView};
use super::topology::Topology;
use super::trace::{node_energy, Trace, TraceEvent, TraceFragment, VectorSummary};
use super::{InputVector, SimError, TimingEnergyParams};

/// Events closer than this are processed as one batch.
const TIME_EPS: f64 = 1e-9;
const INITIAL_SPACING: f64 = 10.0;

/// Node values plus the per-device view of gate and boundary terminals.
#[derive(Debug, Clone, PartialEq)]
pub struct SimState {
    signals: Vec<Signal>,
    last_change: Vec<f64>,
    energy: f64,
    views: Vec<DeviceView>,
}

impl SimState {
    pub fn signal(&self, id: NodeId) -> Signal {
        self.signals[id.index()]
    }

    pub fn signals(&self) -> &[Signal] {
        &self.signals
    }

    /// Time of the last committed level change, `-inf` if never.
    pub fn last_change(&self, id: NodeId) -> f64 {
        self.last_change[id.index()]
    }

    /// Energy accumulated over every step applied to this state.
    pub fn energy(&self) -> f64 {
        self.energy
    }

    /// Signal by node name; `None` for unknown names.
    pub fn get(&self, c: &Circuit, name: &str) -> Option<Signal> {
        c.node_id(name).map(|id| self.signal(id))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Terminal {
    Src = 0,
    Drn = 1,
    Cg = 2,
    Pg = 3,
}

#[derive(Debug, Clone, Copy)]
struct Event {
    time: f64,
    node: usize,
    seq: u64,
    device: usize,
    terminal: Terminal,
    signal: Signal,
}

impl PartialEq for Event {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Event {}

impl PartialOrd for Event {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Event {
    fn cmp(&self, other: &Self) -> Ordering {
        self.time
            .total_cmp(&other.time)
            .then(self.node.cmp(&other.node))
            .then(self.seq.cmp(&other.seq))
    }
}

/// A circuit prepared for repeated simulation under one parameter set.
#[derive(Debug, Clone)]
pub struct Simulator<'c> {
    circuit: &'c Circuit,
    topo: Topology,
    params: TimingEnergyParams,
    inputs: Vec<usize>,
    is_output: Vec<bool>,
    max_sweeps: usize,
    max_evals: usize,
}

impl<'c> Simulator<'c> {
    pub fn new(circuit: &'c Circuit, params: TimingEnergyParams) -> Result<Self, SimError> {
        params.validate()?;
        if !circuit.is_simulatable() {
            return Err(SimError::NotSimulatable);
        }
        let topo = Topology::new(circuit);
        let devices = topo.device_count();
        let max_sweeps = 2 + 4 * devices;
        Ok(Simulator {
            circuit,
            inputs: circuit.inputs().iter().map(|id| id.index()).collect(),
            is_output: topo.kinds.iter().map(|&k| k == NodeKind::Output).collect(),
            max_sweeps,
            max_evals: max_sweeps * devices.max(1),
            topo,
            params,
        })
    }

    pub fn circuit(&self) -> &'c Circuit {
        self.circuit
    }

    pub fn params(&self) -> &TimingEnergyParams {
        &self.params
    }

    /// All non-supply nodes floating; supplies strong.
    pub fn initial_state(&self) -> SimState {
        let signals: Vec<Signal> = self
            .topo
            .kinds
            .iter()
            .map(|k| match k {
                NodeKind::Supply(level) => Signal::strong(*level),
                _ => Signal::FLOATING,
            })
            .collect();
        let mut state = SimState {
            last_change: vec![f64::NEG_INFINITY; signals.len()],
            signals,
            energy: 0.0,
            views: vec![DeviceView::default(); self.topo.device_count()],
        };
        self.sync_views(&mut state);
        state
    }

    fn sync_views(&self, state: &mut SimState) {
        for (view, t) in state.views.iter_mut().zip(&self.topo.terminals) {
            view.src = state.signals[t[0]];
            view.drn = state.signals[t[1]];
            view.cg = state.signals[t[2]].level();
            view.pg = state.signals[t[3]].level();
        }
    }

    /// Checks an assignment against the circuit's inputs.
    pub fn resolve_inputs(&self, v: &InputVector) -> Result<Vec<(usize, Level)>, SimError> {
        for (name, level) in v {
            match self.circuit.node_id(name) {
                Some(id) if self.circuit.node(id).kind == NodeKind::Input => {}
                _ => return Err(SimError::UnknownInput(name.clone())),
            }
            if !level.is_defined() {
                return Err(SimError::UndefinedInput(name.clone()));
            }
        }
        self.inputs
            .iter()
            .map(|&n| {
                let name = &self.circuit.nodes()[n].name;
                v.get(name)
                    .map(|&l| (n, l))
                    .ok_or_else(|| SimError::MissingInput(name.clone()))
            })
            .collect()
    }

    pub fn settle(&self, inputs: &InputVector, prior: Option<&SimState>) -> Result<SimState, SimError> {
        let levels = self.resolve_inputs(inputs)?;
        self.settle_levels(&levels, prior)
    }

    /// Jacobi relaxation: every component is re-resolved from the same
    /// snapshot each sweep, so the result does not depend on processing order.
    pub(crate) fn settle_levels(
        &self,
        levels: &[(usize, Level)],
        prior: Option<&SimState>,
    ) -> Result<SimState, SimError> {
        let mut state = prior.cloned().unwrap_or_else(|| self.initial_state());
        for &(n, l) in levels {
            state.signals[n] = Signal::strong(l);
        }
        let mut scratch = Vec::new();
        let mut next = state.signals.clone();
        for _ in 0..self.max_sweeps {
            self.sync_views(&mut state);
            let mut changed = false;
            for ccc in &self.topo.cccs {
                evaluate_ccc(&self.topo, ccc, &state.views, &state.signals, &mut scratch);
                for (&node, &sig) in ccc.nodes.iter().zip(&scratch) {
                    if next[node] != sig {
                        next[node] = sig;
                        changed = true;
                    }
                }
            }
            if !changed {
                return Ok(state);
            }
            state.signals.copy_from_slice(&next);
        }
        Err(SimError::Oscillation { vector: None })
    }

    pub fn step_vector(
        &self,
        state: &SimState,
        t0: f64,
        inputs: &InputVector,
    ) -> Result<(SimState, TraceFragment), SimError> {
        let levels = self.resolve_inputs(inputs)?;
        self.step_levels(state, t0, &levels)
    }

    fn schedule(&self, queue: &mut BinaryHeap<Reverse<Event>>, seq: &mut u64, node: usize, sig: Signal, t: f64) {
        let p = &self.params;
        let weak = if sig.strength() == Strength::Weak { p.k_weak } else { 1.0 };
        let mut push = |device: usize, terminal: Terminal, delay: f64| {
            *seq += 1;
            queue.push(Reverse(Event {
                time: t + delay,
                node,
                seq: *seq,
                device,
                terminal,
                signal: sig,
            }));
        };
        for &d in &self.topo.cg_fanout[node] {
            push(d, Terminal::Cg, p.tau_cg * weak);
        }
        for &d in &self.topo.pg_fanout[node] {
            push(d, Terminal::Pg, p.tau_pg * weak);
        }
        // channel terminals of component nodes are read live
        if self.topo.kinds[node].is_source() {
            for &d in &self.topo.channel_fanout[node] {
                let t = &self.topo.terminals[d];
                if t[0] == node {
                    push(d, Terminal::Src, p.tau_pass);
                }
                if t[1] == node {
                    push(d, Terminal::Drn, p.tau_pass);
                }
            }
        }
    }

    pub(crate) fn step_levels(
        &self,
        state: &SimState,
        t0: f64,
        levels: &[(usize, Level)],
    ) -> Result<(SimState, TraceFragment), SimError> {
        let mut st = state.clone();
        let mut queue: BinaryHeap<Reverse<Event>> = BinaryHeap::new();
        let mut seq = 0u64;
        let mut events = Vec::new();
        let mut energy = 0.0;
        // newest scheduled arrival wins when gate delays reorder events
        let mut stamps = vec![[0u64; 4]; self.topo.device_count()];

        let mut sorted = levels.to_vec();
        sorted.sort_by_key(|&(n, _)| n);
        for (n, l) in sorted {
            let sig = Signal::strong(l);
            let old = st.signals[n];
            if old == sig {
                continue;
            }
            st.signals[n] = sig;
            if old.level() != l {
                st.last_change[n] = t0;
                events.push(TraceEvent {
                    time: t0,
                    node: NodeId::from_index(n),
                    signal: sig,
                });
            }
            self.schedule(&mut queue, &mut seq, n, sig, t0);
        }

        let mut evals = 0usize;
        let mut dirty = BTreeSet::new();
        let mut updates: Vec<(usize, Signal)> = Vec::new();
        let mut scratch = Vec::new();
        while let Some(Reverse(head)) = queue.pop() {
            let t = head.time;
            let mut batch = vec![head];
            while let Some(Reverse(next)) = queue.peek() {
                if next.time > t + TIME_EPS {
                    break;
                }
                batch.push(queue.pop().expect("peeked").0);
            }

            dirty.clear();
            for ev in &batch {
                let stamp = &mut stamps[ev.device][ev.terminal as usize];
                if ev.seq < *stamp {
                    continue;
                }
                *stamp = ev.seq;
                let view = &mut st.views[ev.device];
                match ev.terminal {
                    Terminal::Cg => view.cg = ev.signal.level(),
                    Terminal::Pg => view.pg = ev.signal.level(),
                    Terminal::Src => view.src = ev.signal,
                    Terminal::Drn => view.drn = ev.signal,
                }
                if let Some(c) = self.topo.ccc_of_device[ev.device] {
                    dirty.insert(c);
                }
            }

            evals += dirty.len();
            if evals > self.max_evals {
                return Err(SimError::Oscillation { vector: None });
            }

            updates.clear();
            for &c in &dirty {
                let ccc = &self.topo.cccs[c];
                evaluate_ccc(&self.topo, ccc, &st.views, &st.signals, &mut scratch);
                updates.extend(ccc.nodes.iter().copied().zip(scratch.iter().copied()));
            }
            updates.sort_by_key(|&(n, _)| n);
            for &(n, sig) in &updates {
                let old = st.signals[n];
                if old == sig {
                    continue;
                }
                st.signals[n] = sig;
                if old.level() != sig.level() {
                    st.last_change[n] = t;
                    events.push(TraceEvent {
                        time: t,
                        node: NodeId::from_index(n),
                        signal: sig,
                    });
                    energy += node_energy(&self.topo, &self.params, n);
                    self.schedule(&mut queue, &mut seq, n, sig, t);
                }
            }
        }

        st.energy += energy;
        let mut delay: f64 = 0.0;
        let mut output_changed = false;
        for ev in &events {
            if self.is_output[ev.node.index()] {
                output_changed = true;
                delay = delay.max(ev.time - t0);
            }
        }
        Ok((
            st,
            TraceFragment {
                events,
                delay,
                energy,
                output_changed,
            },
        ))
    }

    /// Applies `vectors` in order. Vector 0 is settled as the operating point
    /// (zero delay and energy); every later vector is a timed step.
    ///
    /// Vectors are spaced uniformly, starting at 10 time units and doubling
    /// until the spacing is at least twice the longest observed activity.
    /// The queue drains after each vector, so a wider spacing only shifts
    /// timestamps and the steps are simulated once.
    pub fn run_waveform(&self, vectors: &[InputVector]) -> Result<Trace, SimError> {
        let resolved = vectors
            .iter()
            .map(|v| self.resolve_inputs(v))
            .collect::<Result<Vec<_>, _>>()?;
        self.run_levels(&resolved)
    }

    pub(crate) fn run_levels(&self, vectors: &[Vec<(usize, Level)>]) -> Result<Trace, SimError> {
        let Some(first) = vectors.first() else {
            return Err(SimError::EmptyWaveform);
        };
        let outputs: Vec<usize> = (0..self.is_output.len()).filter(|&n| self.is_output[n]).collect();
        let snapshot = |st: &SimState| outputs.iter().map(|&n| st.signals[n]).collect::<Vec<_>>();

        let mut state = self
            .settle_levels(first, None)
            .map_err(|_| SimError::Oscillation { vector: Some(0) })?;
        let mut summaries = vec![VectorSummary {
            index: 0,
            t0: 0.0,
            delay: 0.0,
            energy: 0.0,
            output_changed: false,
            outputs: snapshot(&state),
        }];
        let mut events: Vec<TraceEvent> = Vec::new();
        let mut event_vector: Vec<usize> = Vec::new();
        let mut worst: f64 = 0.0;

        for (k, levels) in vectors.iter().enumerate().skip(1) {
            let t0 = k as f64 * INITIAL_SPACING;
            let (next, frag) = self
                .step_levels(&state, t0, levels)
                .map_err(|_| SimError::Oscillation { vector: Some(k) })?;
            state = next;
            for ev in &frag.events {
                worst = worst.max(ev.time - t0);
            }
            event_vector.extend(std::iter::repeat_n(k, frag.events.len()));
            events.extend(frag.events);
            summaries.push(VectorSummary {
                index: k,
                t0,
                delay: frag.delay,
                energy: frag.energy,
                output_changed: frag.output_changed,
                outputs: snapshot(&state),
            });
        }

        let mut spacing = INITIAL_SPACING;
        while spacing < 2.0 * worst {
            spacing *= 2.0;
        }
        if spacing != INITIAL_SPACING {
            let shift = spacing - INITIAL_SPACING;
            for (ev, &k) in events.iter_mut().zip(&event_vector) {
                ev.time += k as f64 * shift;
            }
            for s in &mut summaries {
                s.t0 = s.index as f64 * spacing;
            }
        }

        Ok(Trace {
            events,
            vectors: summaries,
            spacing,
        })
    }
}
