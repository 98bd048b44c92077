//! Input conventions shared by the harnesses.
//!
//! An input named `xb` is the complement of input `x` when both exist.
//! Harnesses drive only primary inputs and fill complements in ideally,
//! i.e. with no delay and no energy of their own.

use crate::netlist::{Circuit, NodeKind};
use crate::signal::Level;
use crate::sim::{InputVector, SimState};

/// The primary input an input complements, if any.
pub fn complement_base<'c>(c: &'c Circuit, input: &str) -> Option<&'c str> {
    let base = input.strip_suffix('b')?;
    let id = c.node_id(base)?;
    (c.node(id).kind == NodeKind::Input).then(|| c.node_name(id))
}

pub fn primary_inputs(c: &Circuit) -> Vec<String> {
    c.inputs()
        .iter()
        .map(|&id| c.node_name(id))
        .filter(|name| complement_base(c, name).is_none())
        .map(str::to_string)
        .collect()
}

pub fn complement_inputs(c: &Circuit) -> Vec<String> {
    c.inputs()
        .iter()
        .map(|&id| c.node_name(id))
        .filter(|name| complement_base(c, name).is_some())
        .map(str::to_string)
        .collect()
}

/// Adds every complement missing from `primary`. Complements already given
/// are kept as they are.
pub fn complete_inputs(c: &Circuit, primary: &InputVector) -> InputVector {
    let mut full = primary.clone();
    for name in complement_inputs(c) {
        if full.contains_key(&name) {
            continue;
        }
        let base = complement_base(c, &name).expect("complement has a base");
        if let Some(level) = primary.get(base) {
            full.insert(name, level.invert());
        }
    }
    full
}

/// Ports of a generated adder (standalone or ripple-carry).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdderPorts {
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub cin: String,
    pub sum: Vec<String>,
    pub cout: String,
}

impl AdderPorts {
    pub fn bits(&self) -> usize {
        self.a.len()
    }

    /// Locates adder ports by naming convention: `a0.., b0.., s0..` for a
    /// ripple-carry adder, `a, b, sum` for a single full adder.
    pub fn detect(c: &Circuit) -> Option<AdderPorts> {
        let has = |n: &str| c.node_id(n).is_some();
        if !has("cin") || !has("cout") {
            return None;
        }
        let mut bits = 0;
        while has(&format!("a{bits}")) && has(&format!("b{bits}")) && has(&format!("s{bits}")) {
            bits += 1;
        }
        if bits > 0 {
            return Some(AdderPorts {
                a: (0..bits).map(|i| format!("a{i}")).collect(),
                b: (0..bits).map(|i| format!("b{i}")).collect(),
                cin: "cin".into(),
                sum: (0..bits).map(|i| format!("s{i}")).collect(),
                cout: "cout".into(),
            });
        }
        (has("a") && has("b") && has("sum")).then(|| AdderPorts {
            a: vec!["a".into()],
            b: vec!["b".into()],
            cin: "cin".into(),
            sum: vec!["sum".into()],
            cout: "cout".into(),
        })
    }

    /// Primary-input assignment for operands `a`, `b` and carry-in.
    pub fn vector(&self, a: u64, b: u64, cin: bool) -> InputVector {
        let mut v = InputVector::new();
        for (i, name) in self.a.iter().enumerate() {
            v.insert(name.clone(), Level::from_bool(a >> i & 1 == 1));
        }
        for (i, name) in self.b.iter().enumerate() {
            v.insert(name.clone(), Level::from_bool(b >> i & 1 == 1));
        }
        v.insert(self.cin.clone(), Level::from_bool(cin));
        v
    }

    /// `sum + (cout << bits)`, or `None` when any output is not 0/1.
    pub fn read(&self, c: &Circuit, state: &SimState) -> Option<u64> {
        let mut value = 0u64;
        for (i, name) in self.sum.iter().chain(std::iter::once(&self.cout)).enumerate() {
            let level = state.get(c, name)?.level();
            if level.to_bool()? {
                value |= 1 << i;
            }
        }
        Some(value)
    }
}
