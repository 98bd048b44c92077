//! Flat structural netlists of dual-gate ambipolar FETs.
//!
//! A [`Circuit`] is an immutable list of node declarations (ports, wires and
//! supply rails) plus a list of four-terminal devices. Circuits are built
//! through [`CircuitBuilder`], which performs all validation, or read from
//! the line-oriented `.net` text format with [`parse_netlist`].

mod parse;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::signal::Level;

pub use parse::parse_netlist;

/// A 1-based line/column position in netlist text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

struct At(Option<Location>);

impl fmt::Display for At {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(loc) => write!(f, " at {loc}"),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NetlistError {
    #[error("syntax error at {at}: {message}")]
    Syntax { at: Location, message: String },
    #[error("invalid identifier `{name}`{}", At(*.at))]
    InvalidIdentifier { name: String, at: Option<Location> },
    #[error("duplicate name `{name}`{}", At(*.at))]
    DuplicateName { name: String, at: Option<Location> },
    #[error("device `{device}` references undeclared node `{node}`{}", At(*.at))]
    DanglingReference {
        device: String,
        node: String,
        at: Option<Location>,
    },
    #[error("device `{device}` has identical source and drain `{node}`{}", At(*.at))]
    SourceEqualsDrain {
        device: String,
        node: String,
        at: Option<Location>,
    },
    #[error("baseline circuit has no devices")]
    EmptyBaseline,
}

impl NetlistError {
    pub fn location(&self) -> Option<Location> {
        match self {
            NetlistError::Syntax { at, .. } => Some(*at),
            NetlistError::InvalidIdentifier { at, .. }
            | NetlistError::DuplicateName { at, .. }
            | NetlistError::DanglingReference { at, .. }
            | NetlistError::SourceEqualsDrain { at, .. } => *at,
            NetlistError::EmptyBaseline => None,
        }
    }
}

/// Index of a node within its circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(u32);

impl NodeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn from_index(i: usize) -> Self {
        NodeId(i as u32)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Input,
    Output,
    Internal,
    /// A rail held at a fixed level with strong drive. Only `L0`/`L1`.
    Supply(Level),
}

impl NodeKind {
    pub fn is_source(self) -> bool {
        matches!(self, NodeKind::Input | NodeKind::Supply(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeDecl {
    pub name: String,
    pub kind: NodeKind,
}

/// One dual-gate ambipolar FET. Source and drain are interchangeable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DgaFet {
    pub id: String,
    pub src: NodeId,
    pub drn: NodeId,
    pub cg: NodeId,
    pub pg: NodeId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    name: String,
    nodes: Vec<NodeDecl>,
    devices: Vec<DgaFet>,
    by_name: HashMap<String, NodeId>,
}

impl Circuit {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn nodes(&self) -> &[NodeDecl] {
        &self.nodes
    }

    pub fn devices(&self) -> &[DgaFet] {
        &self.devices
    }

    pub fn node(&self, id: NodeId) -> &NodeDecl {
        &self.nodes[id.index()]
    }

    pub fn node_name(&self, id: NodeId) -> &str {
        &self.nodes[id.index()].name
    }

    /// Case-insensitive lookup.
    pub fn node_id(&self, name: &str) -> Option<NodeId> {
        self.by_name
            .get(name)
            .or_else(|| self.by_name.get(&name.to_ascii_lowercase()))
            .copied()
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len() as u32).map(NodeId)
    }

    fn ids_of_kind(&self, pred: impl Fn(NodeKind) -> bool) -> Vec<NodeId> {
        self.node_ids().filter(|&id| pred(self.node(id).kind)).collect()
    }

    pub fn inputs(&self) -> Vec<NodeId> {
        self.ids_of_kind(|k| k == NodeKind::Input)
    }

    pub fn outputs(&self) -> Vec<NodeId> {
        self.ids_of_kind(|k| k == NodeKind::Output)
    }

    /// A circuit can be simulated only with at least one input and output.
    pub fn is_simulatable(&self) -> bool {
        !self.inputs().is_empty() && !self.outputs().is_empty()
    }

    /// Canonical `.net` text.
    pub fn to_netlist(&self) -> String {
        serialize_netlist(self)
    }
}

/// Number of devices. Doubles as the area proxy.
pub fn device_count(c: &Circuit) -> usize {
    c.devices.len()
}

/// `1 - count(c) / count(baseline)`.
pub fn area_reduction(c: &Circuit, baseline: &Circuit) -> Result<f64, NetlistError> {
    let base = device_count(baseline);
    if base == 0 {
        return Err(NetlistError::EmptyBaseline);
    }
    Ok(1.0 - device_count(c) as f64 / base as f64)
}

pub fn serialize_netlist(c: &Circuit) -> String {
    let mut out = format!("circuit {}\n", c.name);
    for node in &c.nodes {
        let line = match node.kind {
            NodeKind::Input => format!("node {} in\n", node.name),
            NodeKind::Output => format!("node {} out\n", node.name),
            NodeKind::Internal => format!("node {} wire\n", node.name),
            NodeKind::Supply(level) => format!("supply {} {}\n", node.name, level.as_char()),
        };
        out.push_str(&line);
    }
    for d in &c.devices {
        out.push_str(&format!(
            "fet {} src={} drn={} cg={} pg={}\n",
            d.id,
            c.node_name(d.src),
            c.node_name(d.drn),
            c.node_name(d.cg),
            c.node_name(d.pg)
        ));
    }
    out
}

pub(crate) fn is_identifier(s: &str) -> bool {
    !s.is_empty()
        && s.bytes()
            .all(|b| b.is_ascii_lowercase() || b.is_ascii_digit() || b == b'_')
}

struct PendingFet {
    id: String,
    terminals: [String; 4],
    at: Option<Location>,
}

/// Accumulates declarations and validates them in [`CircuitBuilder::build`].
///
/// Names are case-insensitive and stored lowercase. Devices may reference
/// nodes declared after them.
pub struct CircuitBuilder {
    name: String,
    name_at: Option<Location>,
    nodes: Vec<(NodeDecl, Option<Location>)>,
    fets: Vec<PendingFet>,
}

impl CircuitBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        CircuitBuilder {
            name: name.into().to_ascii_lowercase(),
            name_at: None,
            nodes: Vec::new(),
            fets: Vec::new(),
        }
    }

    pub(crate) fn set_name(&mut self, name: &str, at: Option<Location>) {
        self.name = name.to_ascii_lowercase();
        self.name_at = at;
    }

    pub(crate) fn node_at(&mut self, name: &str, kind: NodeKind, at: Option<Location>) -> &mut Self {
        self.nodes.push((
            NodeDecl {
                name: name.to_ascii_lowercase(),
                kind,
            },
            at,
        ));
        self
    }

    pub fn node(&mut self, name: &str, kind: NodeKind) -> &mut Self {
        self.node_at(name, kind, None)
    }

    pub fn input(&mut self, name: &str) -> &mut Self {
        self.node(name, NodeKind::Input)
    }

    pub fn output(&mut self, name: &str) -> &mut Self {
        self.node(name, NodeKind::Output)
    }

    pub fn wire(&mut self, name: &str) -> &mut Self {
        self.node(name, NodeKind::Internal)
    }

    pub fn supply(&mut self, name: &str, level: Level) -> &mut Self {
        self.node(name, NodeKind::Supply(level))
    }

    pub(crate) fn fet_at(
        &mut self,
        id: &str,
        terminals: [&str; 4],
        at: Option<Location>,
    ) -> &mut Self {
        self.fets.push(PendingFet {
            id: id.to_ascii_lowercase(),
            terminals: terminals.map(|t| t.to_ascii_lowercase()),
            at,
        });
        self
    }

    /// Adds a device with terminals given by node name.
    pub fn fet(&mut self, id: &str, src: &str, drn: &str, cg: &str, pg: &str) -> &mut Self {
        self.fet_at(id, [src, drn, cg, pg], None)
    }

    pub fn has_node(&self, name: &str) -> bool {
        let name = name.to_ascii_lowercase();
        self.nodes.iter().any(|(n, _)| n.name == name)
    }

    pub fn device_count(&self) -> usize {
        self.fets.len()
    }

    pub fn build(&self) -> Result<Circuit, NetlistError> {
        if !is_identifier(&self.name) {
            return Err(NetlistError::InvalidIdentifier {
                name: self.name.clone(),
                at: self.name_at,
            });
        }

        let mut by_name = HashMap::with_capacity(self.nodes.len());
        for (i, (decl, at)) in self.nodes.iter().enumerate() {
            if !is_identifier(&decl.name) {
                return Err(NetlistError::InvalidIdentifier {
                    name: decl.name.clone(),
                    at: *at,
                });
            }
            if let NodeKind::Supply(Level::LX) = decl.kind {
                return Err(NetlistError::InvalidIdentifier {
                    name: decl.name.clone(),
                    at: *at,
                });
            }
            if by_name.insert(decl.name.clone(), NodeId(i as u32)).is_some() {
                return Err(NetlistError::DuplicateName {
                    name: decl.name.clone(),
                    at: *at,
                });
            }
        }

        let mut device_ids = HashMap::with_capacity(self.fets.len());
        let mut devices = Vec::with_capacity(self.fets.len());
        for fet in &self.fets {
            if !is_identifier(&fet.id) {
                return Err(NetlistError::InvalidIdentifier {
                    name: fet.id.clone(),
                    at: fet.at,
                });
            }
            if device_ids.insert(fet.id.clone(), ()).is_some() {
                return Err(NetlistError::DuplicateName {
                    name: fet.id.clone(),
                    at: fet.at,
                });
            }
            if fet.terminals[0] == fet.terminals[1] {
                return Err(NetlistError::SourceEqualsDrain {
                    device: fet.id.clone(),
                    node: fet.terminals[0].clone(),
                    at: fet.at,
                });
            }
            let mut ids = [NodeId(0); 4];
            for (slot, name) in ids.iter_mut().zip(&fet.terminals) {
                *slot = *by_name
                    .get(name)
                    .ok_or_else(|| NetlistError::DanglingReference {
                        device: fet.id.clone(),
                        node: name.clone(),
                        at: fet.at,
                    })?;
            }
            devices.push(DgaFet {
                id: fet.id.clone(),
                src: ids[0],
                drn: ids[1],
                cg: ids[2],
                pg: ids[3],
            });
        }

        Ok(Circuit {
            name: self.name.clone(),
            nodes: self.nodes.iter().map(|(d, _)| d.clone()).collect(),
            devices,
            by_name,
        })
    }
}

impl From<&Circuit> for CircuitBuilder {
    fn from(c: &Circuit) -> Self {
        let mut b = CircuitBuilder::new(c.name());
        for n in c.nodes() {
            b.node(&n.name, n.kind);
        }
        for d in c.devices() {
            b.fet(
                &d.id,
                c.node_name(d.src),
                c.node_name(d.drn),
                c.node_name(d.cg),
                c.node_name(d.pg),
            );
        }
        b
    }
}
