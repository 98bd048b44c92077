use crate::netlist::{Circuit, NodeKind};

/// One channel-connected component: the non-source nodes joined through
/// device channels, plus every device with a channel terminal among them.
#[derive(Debug, Clone)]
pub(crate) struct Ccc {
    pub nodes: Vec<usize>,
    pub devices: Vec<usize>,
}

/// Static connectivity derived once per circuit.
#[derive(Debug, Clone)]
pub(crate) struct Topology {
    pub kinds: Vec<NodeKind>,
    pub cccs: Vec<Ccc>,
    #[cfg_attr(not(test), allow(dead_code))]
    pub ccc_of_node: Vec<Option<usize>>,
    /// Position of a node inside its component's `nodes` list.
    pub local_index: Vec<usize>,
    pub ccc_of_device: Vec<Option<usize>>,
    pub cg_fanout: Vec<Vec<usize>>,
    pub pg_fanout: Vec<Vec<usize>>,
    pub channel_fanout: Vec<Vec<usize>>,
    /// Device terminals as `[src, drn, cg, pg]` node indices.
    pub terminals: Vec<[usize; 4]>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl Topology {
    pub fn new(c: &Circuit) -> Self {
        let n = c.nodes().len();
        let kinds: Vec<NodeKind> = c.nodes().iter().map(|d| d.kind).collect();
        let terminals: Vec<[usize; 4]> = c
            .devices()
            .iter()
            .map(|d| [d.src.index(), d.drn.index(), d.cg.index(), d.pg.index()])
            .collect();

        let mut parent: Vec<usize> = (0..n).collect();
        for t in &terminals {
            let (a, b) = (t[0], t[1]);
            if !kinds[a].is_source() && !kinds[b].is_source() {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    // smaller root wins so numbering follows declaration order
                    let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
                    parent[hi] = lo;
                }
            }
        }

        let mut ccc_of_node = vec![None; n];
        let mut local_index = vec![0; n];
        let mut cccs: Vec<Ccc> = Vec::new();
        let mut root_to_ccc = vec![usize::MAX; n];
        for node in 0..n {
            if kinds[node].is_source() {
                continue;
            }
            let root = find(&mut parent, node);
            if root_to_ccc[root] == usize::MAX {
                root_to_ccc[root] = cccs.len();
                cccs.push(Ccc {
                    nodes: Vec::new(),
                    devices: Vec::new(),
                });
            }
            let id = root_to_ccc[root];
            local_index[node] = cccs[id].nodes.len();
            cccs[id].nodes.push(node);
            ccc_of_node[node] = Some(id);
        }

        let mut ccc_of_device = vec![None; terminals.len()];
        let mut cg_fanout = vec![Vec::new(); n];
        let mut pg_fanout = vec![Vec::new(); n];
        let mut channel_fanout = vec![Vec::new(); n];
        for (d, t) in terminals.iter().enumerate() {
            let owner = ccc_of_node[t[0]].or(ccc_of_node[t[1]]);
            if let Some(id) = owner {
                cccs[id].devices.push(d);
            }
            ccc_of_device[d] = owner;
            channel_fanout[t[0]].push(d);
            channel_fanout[t[1]].push(d);
            cg_fanout[t[2]].push(d);
            pg_fanout[t[3]].push(d);
        }

        Topology {
            kinds,
            cccs,
            ccc_of_node,
            local_index,
            ccc_of_device,
            cg_fanout,
            pg_fanout,
            channel_fanout,
            terminals,
        }
    }

    pub fn device_count(&self) -> usize {
        self.terminals.len()
    }
}
