use crate::signal::{channel_polarity, device_conduction, transmit, Conduction, Level, Signal, Strength};

use super::topology::{Ccc, Topology};

/// What a device currently "sees" on its terminals. Gate levels lag the
/// driving nodes by the gate delay; `src`/`drn` are only consulted when the
/// terminal is an input or supply node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct DeviceView {
    pub cg: Level,
    pub pg: Level,
    pub src: Signal,
    pub drn: Signal,
}

impl Default for DeviceView {
    fn default() -> Self {
        DeviceView {
            cg: Level::LX,
            pg: Level::LX,
            src: Signal::FLOATING,
            drn: Signal::FLOATING,
        }
    }
}

fn color(level: Level) -> usize {
    match level {
        Level::L0 => 0,
        Level::L1 => 1,
        Level::LX => 2,
    }
}

const COLORS: [Level; 3] = [Level::L0, Level::L1, Level::LX];

/// Resolves every node of one component.
///
/// For each of the three levels, computes the widest (max-min strength) path
/// from any driver: input and supply terminals at full strength, and each
/// node's own retained charge at `Charged`. A node takes the strongest
/// arriving strength; levels arriving at that strength are merged.
pub(crate) fn evaluate_ccc(
    topo: &Topology,
    ccc: &Ccc,
    views: &[DeviceView],
    signals: &[Signal],
    out: &mut Vec<Signal>,
) {
    let n = ccc.nodes.len();
    let mut best = vec![[Strength::Floating; 3]; n];

    for (i, &node) in ccc.nodes.iter().enumerate() {
        let prev = signals[node];
        if prev.strength() > Strength::Floating {
            best[i][color(prev.level())] = Strength::Charged;
        }
    }

    let mut edges: Vec<(usize, usize, crate::signal::Polarity, Conduction)> = Vec::new();
    for &d in &ccc.devices {
        let view = views[d];
        let cond = device_conduction(view.cg, view.pg);
        if cond == Conduction::Off {
            continue;
        }
        let pol = channel_polarity(view.pg);
        let [s, t, _, _] = topo.terminals[d];
        let (s_src, t_src) = (topo.kinds[s].is_source(), topo.kinds[t].is_source());
        match (s_src, t_src) {
            (false, false) => {
                edges.push((topo.local_index[s], topo.local_index[t], pol, cond));
            }
            (true, false) | (false, true) => {
                let (drive, far) = if s_src { (view.src, t) } else { (view.drn, s) };
                if let Some(sig) = transmit(pol, cond, drive) {
                    let slot = &mut best[topo.local_index[far]][color(sig.level())];
                    *slot = (*slot).max(sig.strength());
                }
            }
            (true, true) => {}
        }
    }

    let mut changed = true;
    while changed {
        changed = false;
        for &(a, b, pol, cond) in &edges {
            for (from, to) in [(a, b), (b, a)] {
                for (c, &level) in COLORS.iter().enumerate() {
                    let s = best[from][c];
                    if s == Strength::Floating {
                        continue;
                    }
                    let Some(sig) = transmit(pol, cond, Signal::new(level, s)) else {
                        continue;
                    };
                    let slot = &mut best[to][color(sig.level())];
                    if sig.strength() > *slot {
                        *slot = sig.strength();
                        changed = true;
                    }
                }
            }
        }
    }

    out.clear();
    out.extend(best.iter().map(|arrivals| {
        let top = *arrivals.iter().max().expect("three colors");
        if top == Strength::Floating {
            return Signal::FLOATING;
        }
        let level = COLORS
            .iter()
            .zip(arrivals)
            .filter(|(_, &s)| s == top)
            .map(|(&l, _)| l)
            .reduce(Level::merge)
            .expect("at least one color at top strength");
        Signal::new(level, top)
    }));
}
