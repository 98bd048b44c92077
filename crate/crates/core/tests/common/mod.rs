//! Random circuit and netlist generators shared by the property suites.
#![allow(dead_code)]

use std::collections::BTreeMap;

use aptl::library::{
    gen_full_adder, gen_inverter, gen_inverter_chain, gen_ripple_carry, gen_xnor, Cascade, Style,
    XnorVariant,
};
use aptl::netlist::{Circuit, CircuitBuilder};
use aptl::signal::{Level, Signal};
use aptl::sim::{InputVector, SimError, SimState};
use aptl::stimulus::{complete_inputs, primary_inputs};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_circuit(rng: &mut ChaCha8Rng, tag: usize) -> Circuit {
    let n_in = rng.gen_range(1..=4);
    let n_out = rng.gen_range(1..=3);
    let n_wire = rng.gen_range(0..=5);
    let mut b = CircuitBuilder::new(format!("rand{tag}"));
    let mut names = vec!["vdd".to_string(), "gnd".to_string()];
    b.supply("vdd", Level::L1).supply("gnd", Level::L0);
    for i in 0..n_in {
        b.input(&format!("i{i}"));
        names.push(format!("i{i}"));
    }
    for i in 0..n_out {
        b.output(&format!("o{i}"));
        names.push(format!("o{i}"));
    }
    for i in 0..n_wire {
        b.wire(&format!("w{i}"));
        names.push(format!("w{i}"));
    }
    for d in 0..rng.gen_range(2..=12) {
        let src = names.choose(rng).unwrap().clone();
        let drn = loop {
            let n = names.choose(rng).unwrap();
            if *n != src {
                break n.clone();
            }
        };
        let cg = names.choose(rng).unwrap();
        let pg = names.choose(rng).unwrap();
        b.fet(&format!("m{d}"), &src, &drn, cg, pg);
    }
    b.build().unwrap()
}

/// Same circuit with node declarations and devices in another order.
pub fn shuffled(c: &Circuit, rng: &mut ChaCha8Rng) -> Circuit {
    let mut nodes: Vec<_> = c.nodes().to_vec();
    let mut devices: Vec<_> = c.devices().to_vec();
    nodes.shuffle(rng);
    devices.shuffle(rng);
    let mut b = CircuitBuilder::new(c.name());
    for n in &nodes {
        b.node(&n.name, n.kind);
    }
    for d in &devices {
        let name = |id| c.node_name(id);
        b.fet(&d.id, name(d.src), name(d.drn), name(d.cg), name(d.pg));
    }
    b.build().unwrap()
}

pub fn random_vector(c: &Circuit, rng: &mut ChaCha8Rng) -> InputVector {
    c.inputs()
        .iter()
        .map(|&id| (c.node_name(id).to_string(), Level::from_bool(rng.gen())))
        .collect()
}

pub fn by_name(c: &Circuit, r: Result<SimState, SimError>) -> Result<BTreeMap<String, Signal>, SimError> {
    r.map(|st| c.node_ids().map(|id| (c.node_name(id).to_string(), st.signal(id))).collect())
}

pub fn generator_circuits() -> Vec<Circuit> {
    let mut cs = vec![
        gen_inverter(Cascade::Cg),
        gen_inverter(Cascade::Pg),
        gen_inverter_chain(Cascade::Pg, 4),
        gen_xnor(XnorVariant::Single),
        gen_xnor(XnorVariant::Quad),
    ];
    for style in Style::ALL {
        for cascade in Cascade::ALL {
            cs.push(gen_full_adder(style, cascade));
            cs.push(gen_ripple_carry(style, cascade, 4).unwrap());
        }
    }
    cs
}

pub fn exhaustive(c: &Circuit) -> Vec<InputVector> {
    let primary = primary_inputs(c);
    (0..1u64 << primary.len())
        .map(|v| {
            let assign = primary
                .iter()
                .enumerate()
                .map(|(i, n)| (n.clone(), Level::from_bool(v >> i & 1 == 1)))
                .collect();
            complete_inputs(c, &assign)
        })
        .collect()
}

/// Three inverters in a ring that `en` closes; `ld` preloads the ring from `d`.
pub fn ring(cascade: Cascade) -> Circuit {
    let mut b = CircuitBuilder::new("ring");
    b.input("d").input("ld").input("en").output("x1").wire("x2").wire("x3").wire("x4");
    b.supply("vdd", Level::L1).supply("gnd", Level::L0);
    for (i, (a, y)) in [("x1", "x2"), ("x2", "x3"), ("x3", "x4")].into_iter().enumerate() {
        match cascade {
            Cascade::Cg => b.fet(&format!("u{i}"), "vdd", y, a, "gnd").fet(&format!("d{i}"), "gnd", y, a, "vdd"),
            Cascade::Pg => b.fet(&format!("u{i}"), "vdd", y, "gnd", a).fet(&format!("d{i}"), "gnd", y, "vdd", a),
        };
    }
    b.fet("load", "d", "x1", "ld", "vdd").fet("close", "x4", "x1", "en", "vdd");
    b.build().unwrap()
}

pub fn vector(pairs: &[(&str, u8)]) -> InputVector {
    pairs.iter().map(|&(n, v)| (n.to_string(), Level::from_bool(v == 1))).collect()
}

pub const ALNUM: &[u8] = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_";

pub fn name(rng: &mut ChaCha8Rng, taken: &mut Vec<String>) -> String {
    loop {
        let len = rng.gen_range(1..=6);
        let s: String = (0..len).map(|_| *ALNUM.choose(rng).unwrap() as char).collect();
        if !taken.iter().any(|t| t.eq_ignore_ascii_case(&s)) {
            taken.push(s.clone());
            return s;
        }
    }
}

pub fn pad(rng: &mut ChaCha8Rng) -> &'static str {
    ["", " ", "  ", "\t"].choose(rng).unwrap()
}

pub fn case(rng: &mut ChaCha8Rng, s: &str) -> String {
    if rng.gen_bool(0.3) {
        s.to_ascii_uppercase()
    } else {
        s.to_string()
    }
}

/// Random valid netlist text with mixed case, comments and blank lines.
pub fn random_text(rng: &mut ChaCha8Rng) -> String {
    let mut taken = Vec::new();
    let mut out = String::new();
    if rng.gen_bool(0.8) {
        let n = name(rng, &mut taken);
        out += &format!("{}circuit {n}\n", pad(rng));
        taken.clear();
    }
    let mut nodes = Vec::new();
    for _ in 0..rng.gen_range(2..=10) {
        let n = name(rng, &mut taken);
        let line = if rng.gen_bool(0.2) {
            format!("{} {n} {}", case(rng, "supply"), rng.gen_range(0..2))
        } else {
            let kind = ["in", "out", "wire"].choose(rng).unwrap();
            format!("{} {n}{} {}", case(rng, "node"), pad(rng), case(rng, kind))
        };
        out += &line;
        if rng.gen_bool(0.2) {
            out += " # note";
        }
        out += "\n";
        if rng.gen_bool(0.1) {
            out += "\n# comment line\n";
        }
        nodes.push(n);
    }
    for _ in 0..rng.gen_range(0..=12) {
        let id = name(rng, &mut taken);
        let src = nodes.choose(rng).unwrap().clone();
        let drn = loop {
            let d = nodes.choose(rng).unwrap();
            if !d.eq_ignore_ascii_case(&src) {
                break d.clone();
            }
        };
        let cg = nodes.choose(rng).unwrap();
        let pg = nodes.choose(rng).unwrap();
        out += &format!(
            "{}{} {id} {}={src} {}={drn} cg={cg} pg={pg}\n",
            pad(rng),
            case(rng, "fet"),
            case(rng, "src"),
            case(rng, "drn"),
        );
    }
    out
}

#[derive(Debug, Clone, Copy)]
pub enum Mutation {
    Junk,
    Delete,
    Duplicate,
    UnknownRef,
    RepeatName,
    ShortChannel,
}

/// Applies one token-level corruption to a canonical netlist. Returns the
/// corrupted text and the line that was touched, or `None` when the
/// mutation does not apply to the chosen line.
pub fn corrupt(text: &str, rng: &mut ChaCha8Rng, m: Mutation) -> Option<(String, usize)> {
    let mut lines: Vec<Vec<String>> = text
        .lines()
        .map(|l| l.split(' ').map(str::to_string).collect())
        .collect();
    let li = rng.gen_range(0..lines.len());
    let line = &mut lines[li];
    let ti = rng.gen_range(0..line.len());
    match m {
        Mutation::Junk => {
            let junk = ["x-y", "@", "é", "src==a", "1.5", "node"].choose(rng).unwrap();
            if line[ti] == *junk {
                return None;
            }
            // a bare keyword in a name slot is a legal identifier
            if *junk == "node" && ti > 0 {
                return None;
            }
            line[ti] = junk.to_string();
        }
        Mutation::Delete => {
            line.remove(ti);
            if line.is_empty() {
                return None;
            }
        }
        Mutation::Duplicate => {
            let t = line[ti].clone();
            line.insert(ti, t);
        }
        Mutation::UnknownRef => {
            if line[0] != "fet" {
                return None;
            }
            let fi = rng.gen_range(2..6);
            let key = line[fi].split('=').next().unwrap().to_string();
            line[fi] = format!("{key}=zz_undeclared");
        }
        Mutation::RepeatName => {
            if li == 0 || line[0] == "circuit" {
                return None;
            }
            let kw = line[0].clone();
            let earlier: Vec<String> = lines[..li]
                .iter()
                .filter(|l| l[0] != "circuit" && (l[0] == "fet") == (kw == "fet"))
                .map(|l| l[1].clone())
                .collect();
            let other = earlier.choose(rng)?.clone();
            lines[li][1] = other;
        }
        Mutation::ShortChannel => {
            if line[0] != "fet" {
                return None;
            }
            let src = line[2].trim_start_matches("src=").to_string();
            line[3] = format!("drn={src}");
        }
    }
    let mut out: String = lines.iter().map(|l| l.join(" ") + "\n").collect();
    if out.is_empty() {
        out.push('\n');
    }
    Some((out, li + 1))
}

pub const MUTATIONS: [Mutation; 6] = [
    Mutation::Junk,
    Mutation::Delete,
    Mutation::Duplicate,
    Mutation::UnknownRef,
    Mutation::RepeatName,
    Mutation::ShortChannel,
];
