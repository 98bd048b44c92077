//! Generators for the hybrid ambipolar pass-transistor circuits and the
//! CMOS-like baseline.
//!
//! Hybrid full adders share one 8-device mux core. With `ab`, `bb`, `cinb`
//! the complemented inputs:
//!
//! ```text
//! sum  <- cin   via TG_X  {(cg=a,pg=b), (cg=ab,pg=bb)}   conducts iff a XNOR b
//! sum  <- cinb  via TG_Y  {(cg=a,pg=bb), (cg=ab,pg=b)}   conducts iff a XOR b
//! cout <- a     via TG_X
//! cout <- cin   via TG_Y
//! ```
//!
//! Type I follows each core output with two inverters, Type II keeps only
//! the first device of every pair, and Type III drives `sum`/`cout` straight
//! from the core with a single inverter producing the complement.
//!
//! Complemented primary inputs are ports named `<input>b` (see
//! [`crate::stimulus`]); the inverters that would produce them are not part
//! of the generated circuits.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::netlist::{Circuit, CircuitBuilder};
use crate::signal::Level;

pub const VDD: &str = "vdd";
pub const GND: &str = "gnd";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LibraryError {
    #[error("a ripple-carry adder needs at least one bit")]
    ZeroBits,
    #[error("unknown {what} `{value}`")]
    UnknownName { what: &'static str, value: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Style {
    #[serde(rename = "baseline")]
    Baseline,
    #[serde(rename = "type1")]
    TypeI,
    #[serde(rename = "type2")]
    TypeII,
    #[serde(rename = "type3")]
    TypeIII,
}

impl Style {
    pub const ALL: [Style; 4] = [Style::Baseline, Style::TypeI, Style::TypeII, Style::TypeIII];
    pub const HYBRID: [Style; 3] = [Style::TypeI, Style::TypeII, Style::TypeIII];

    pub fn name(self) -> &'static str {
        match self {
            Style::Baseline => "baseline",
            Style::TypeI => "type1",
            Style::TypeII => "type2",
            Style::TypeIII => "type3",
        }
    }

    /// Devices in one full adder of this style.
    pub fn full_adder_devices(self) -> usize {
        match self {
            Style::Baseline => 28,
            Style::TypeI => 16,
            Style::TypeII | Style::TypeIII => 12,
        }
    }
}

impl fmt::Display for Style {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Style {
    type Err = LibraryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "baseline" => Ok(Style::Baseline),
            "type1" => Ok(Style::TypeI),
            "type2" => Ok(Style::TypeII),
            "type3" => Ok(Style::TypeIII),
            _ => Err(LibraryError::UnknownName {
                what: "style",
                value: s.to_string(),
            }),
        }
    }
}

/// Which inverter gate the inter-stage signal drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Cascade {
    #[serde(rename = "cg")]
    Cg,
    #[serde(rename = "pg")]
    Pg,
}

impl Cascade {
    pub const ALL: [Cascade; 2] = [Cascade::Cg, Cascade::Pg];

    pub fn name(self) -> &'static str {
        match self {
            Cascade::Cg => "cg",
            Cascade::Pg => "pg",
        }
    }
}

impl fmt::Display for Cascade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Cascade {
    type Err = LibraryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "cg" => Ok(Cascade::Cg),
            "pg" => Ok(Cascade::Pg),
            _ => Err(LibraryError::UnknownName {
                what: "cascade",
                value: s.to_string(),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XnorVariant {
    Single,
    Quad,
}

/// Port names of a standalone full adder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullAdderPorts {
    pub a: String,
    pub b: String,
    pub cin: String,
    pub sum: String,
    pub cout: String,
    pub sumb: Option<String>,
    pub coutb: Option<String>,
}

pub fn full_adder_ports(style: Style) -> FullAdderPorts {
    let complements = style != Style::Baseline;
    FullAdderPorts {
        a: "a".into(),
        b: "b".into(),
        cin: "cin".into(),
        sum: "sum".into(),
        cout: "cout".into(),
        sumb: complements.then(|| "sumb".into()),
        coutb: complements.then(|| "coutb".into()),
    }
}

/// Names of the nodes driven directly by the pass core of a standalone
/// full adder, `(sum, cout)`. `None` for the baseline.
pub fn core_nodes(style: Style) -> Option<(&'static str, &'static str)> {
    match style {
        Style::Baseline => None,
        Style::TypeI | Style::TypeII => Some(("sumc", "coutc")),
        Style::TypeIII => Some(("sum", "cout")),
    }
}

struct Emitter<'b> {
    b: &'b mut CircuitBuilder,
    prefix: String,
    next: usize,
}

impl<'b> Emitter<'b> {
    fn new(b: &'b mut CircuitBuilder, prefix: &str) -> Self {
        Emitter {
            b,
            prefix: prefix.to_string(),
            next: 0,
        }
    }

    fn fet(&mut self, src: &str, drn: &str, cg: &str, pg: &str) {
        let id = format!("{}m{}", self.prefix, self.next);
        self.next += 1;
        self.b.fet(&id, src, drn, cg, pg);
    }

    fn wire(&mut self, name: &str) -> String {
        let full = format!("{}{}", self.prefix, name);
        self.b.wire(&full);
        full
    }

    fn nfet(&mut self, src: &str, drn: &str, gate: &str) {
        self.fet(src, drn, gate, VDD);
    }

    fn pfet(&mut self, src: &str, drn: &str, gate: &str) {
        self.fet(src, drn, gate, GND);
    }

    fn inverter(&mut self, cascade: Cascade, input: &str, output: &str) {
        match cascade {
            Cascade::Cg => {
                self.fet(VDD, output, input, GND);
                self.fet(GND, output, input, VDD);
            }
            // pull-up is p-type (and conducts) when input = 0, pull-down
            // n-type when input = 1
            Cascade::Pg => {
                self.fet(VDD, output, GND, input);
                self.fet(GND, output, VDD, input);
            }
        }
    }
}

fn supplies(b: &mut CircuitBuilder) {
    b.supply(VDD, Level::L1).supply(GND, Level::L0);
}

pub fn gen_inverter(cascade: Cascade) -> Circuit {
    let mut b = CircuitBuilder::new(format!("inv_{}", cascade.name()));
    b.input("in").output("out");
    supplies(&mut b);
    Emitter::new(&mut b, "").inverter(cascade, "in", "out");
    b.build().expect("generated inverter is valid")
}

/// `stages` inverters in series from `in` to `out`.
pub fn gen_inverter_chain(cascade: Cascade, stages: usize) -> Circuit {
    let stages = stages.max(1);
    let mut b = CircuitBuilder::new(format!("chain{}_{}", stages, cascade.name()));
    b.input("in").output("out");
    supplies(&mut b);
    let mut e = Emitter::new(&mut b, "");
    let mut prev = "in".to_string();
    for i in 0..stages {
        let next = if i + 1 == stages {
            "out".to_string()
        } else {
            e.wire(&format!("n{}", i + 1))
        };
        e.inverter(cascade, &prev, &next);
        prev = next;
    }
    b.build().expect("generated chain is valid")
}

pub fn gen_xnor(variant: XnorVariant) -> Circuit {
    let mut b = CircuitBuilder::new(match variant {
        XnorVariant::Single => "xnor1",
        XnorVariant::Quad => "xnor4",
    });
    b.input("a").input("b");
    match variant {
        XnorVariant::Single => {
            b.output("out").supply(VDD, Level::L1);
            b.fet("m0", VDD, "out", "a", "b");
        }
        XnorVariant::Quad => {
            b.input("ab").input("bb").output("out");
            supplies(&mut b);
            b.fet("m0", VDD, "out", "a", "b")
                .fet("m1", VDD, "out", "ab", "bb")
                .fet("m2", GND, "out", "a", "bb")
                .fet("m3", GND, "out", "ab", "b");
        }
    }
    b.build().expect("generated xnor is valid")
}

/// Node names one full-adder instance connects to.
struct Pins {
    a: String,
    ab: String,
    b: String,
    bb: String,
    cin: String,
    cinb: String,
    sum: String,
    sumb: String,
    cout: String,
    coutb: String,
}

/// Emits one adder instance. Internal wires and device ids get `prefix`;
/// the caller declares every pin.
fn emit_full_adder(b: &mut CircuitBuilder, style: Style, cascade: Cascade, prefix: &str, p: &Pins) {
    let mut e = Emitter::new(b, prefix);
    if style == Style::Baseline {
        emit_baseline(&mut e, cascade, p);
        return;
    }

    let (sum_core, cout_core) = match style {
        Style::TypeIII => (p.sum.clone(), p.cout.clone()),
        _ => (e.wire("sumc"), e.wire("coutc")),
    };
    let single = style == Style::TypeII;

    // (passed value, output, gating of the pair)
    let xnor_gate = [(&p.a, &p.b), (&p.ab, &p.bb)];
    let xor_gate = [(&p.a, &p.bb), (&p.ab, &p.b)];
    let pairs = [
        (&p.cin, &sum_core, xnor_gate),
        (&p.cinb, &sum_core, xor_gate),
        (&p.a, &cout_core, xnor_gate),
        (&p.cin, &cout_core, xor_gate),
    ];
    for (value, out, gating) in pairs {
        let used = if single { &gating[..1] } else { &gating[..] };
        for (cg, pg) in used {
            e.fet(value, out, cg, pg);
        }
    }

    match style {
        Style::TypeIII => {
            e.inverter(cascade, &sum_core, &p.sumb);
            e.inverter(cascade, &cout_core, &p.coutb);
        }
        _ => {
            e.inverter(cascade, &sum_core, &p.sumb);
            e.inverter(cascade, &p.sumb, &p.sum);
            e.inverter(cascade, &cout_core, &p.coutb);
            e.inverter(cascade, &p.coutb, &p.cout);
        }
    }
}

/// Static mirror full adder: 10-device carry gate, 14-device sum gate, and
/// an output inverter on each. Fixed-polarity devices (PG tied to a rail).
fn emit_baseline(e: &mut Emitter<'_>, cascade: Cascade, p: &Pins) {
    let (a, b, c) = (p.a.as_str(), p.b.as_str(), p.cin.as_str());
    let (coutb, sumb) = (p.coutb.as_str(), p.sumb.as_str());
    let [x1, x2, y1, y2] = ["x1", "x2", "y1", "y2"].map(|n| e.wire(n));
    let [z1, z2, z3, w1, w2, w3] = ["z1", "z2", "z3", "w1", "w2", "w3"].map(|n| e.wire(n));

    // coutb = !(ab + c(a + b))
    e.nfet(coutb, &x1, a);
    e.nfet(&x1, GND, b);
    e.nfet(coutb, &x2, c);
    e.nfet(&x2, GND, a);
    e.nfet(&x2, GND, b);
    e.pfet(VDD, &y1, a);
    e.pfet(&y1, coutb, b);
    e.pfet(VDD, &y2, a);
    e.pfet(VDD, &y2, b);
    e.pfet(&y2, coutb, c);

    // sumb = !(abc + cout(a + b + c))
    e.nfet(sumb, &z1, a);
    e.nfet(&z1, &z2, b);
    e.nfet(&z2, GND, c);
    e.nfet(sumb, &z3, coutb);
    e.nfet(&z3, GND, a);
    e.nfet(&z3, GND, b);
    e.nfet(&z3, GND, c);
    e.pfet(VDD, &w1, a);
    e.pfet(&w1, &w2, b);
    e.pfet(&w2, sumb, c);
    e.pfet(VDD, &w3, a);
    e.pfet(VDD, &w3, b);
    e.pfet(VDD, &w3, c);
    e.pfet(&w3, sumb, coutb);

    e.inverter(cascade, coutb, &p.cout);
    e.inverter(cascade, sumb, &p.sum);
}

/// Complemented primary inputs a style's core reads.
fn complemented_inputs(style: Style) -> &'static [&'static str] {
    match style {
        Style::Baseline => &[],
        Style::TypeII => &["b", "cin"],
        Style::TypeI | Style::TypeIII => &["a", "b", "cin"],
    }
}

pub fn gen_full_adder(style: Style, cascade: Cascade) -> Circuit {
    let mut b = CircuitBuilder::new(format!("fa_{}_{}", style.name(), cascade.name()));
    b.input("a").input("b").input("cin");
    for base in complemented_inputs(style) {
        b.input(&format!("{base}b"));
    }
    b.output("sum").output("cout");
    if style == Style::Baseline {
        b.wire("sumb").wire("coutb");
    } else {
        b.output("sumb").output("coutb");
    }
    supplies(&mut b);
    let pins = Pins {
        a: "a".into(),
        ab: "ab".into(),
        b: "b".into(),
        bb: "bb".into(),
        cin: "cin".into(),
        cinb: "cinb".into(),
        sum: "sum".into(),
        sumb: "sumb".into(),
        cout: "cout".into(),
        coutb: "coutb".into(),
    };
    emit_full_adder(&mut b, style, cascade, "", &pins);
    b.build().expect("generated full adder is valid")
}

/// `bits` full adders chained through their carries.
///
/// Ports: inputs `a0..`, `b0..`, `cin` (plus complements `a0b`, `b0b`,
/// `cinb` as the style requires), outputs `s0..` and `cout`. Each stage's
/// carry and its complement feed the next stage; for Type III the carry is
/// the unbuffered core output.
pub fn gen_ripple_carry(style: Style, cascade: Cascade, bits: usize) -> Result<Circuit, LibraryError> {
    if bits == 0 {
        return Err(LibraryError::ZeroBits);
    }
    let mut b = CircuitBuilder::new(format!("rca{}_{}_{}", bits, style.name(), cascade.name()));
    let comps = complemented_inputs(style);
    for i in 0..bits {
        b.input(&format!("a{i}")).input(&format!("b{i}"));
    }
    b.input("cin");
    for i in 0..bits {
        for base in ["a", "b"] {
            if comps.contains(&base) {
                b.input(&format!("{base}{i}b"));
            }
        }
    }
    if comps.contains(&"cin") {
        b.input("cinb");
    }
    for i in 0..bits {
        b.output(&format!("s{i}"));
    }
    b.output("cout");
    supplies(&mut b);

    for i in 0..bits {
        let prefix = format!("f{i}_");
        let last = i + 1 == bits;
        let (cin, cinb) = if i == 0 {
            ("cin".to_string(), "cinb".to_string())
        } else {
            (format!("f{}_cout", i - 1), format!("f{}_coutb", i - 1))
        };
        let cout = if last { "cout".to_string() } else { format!("{prefix}cout") };
        if !last {
            b.wire(&cout);
        }
        let sumb = format!("{prefix}sumb");
        let coutb = format!("{prefix}coutb");
        b.wire(&sumb).wire(&coutb);
        let pins = Pins {
            a: format!("a{i}"),
            ab: format!("a{i}b"),
            b: format!("b{i}"),
            bb: format!("b{i}b"),
            cin,
            cinb,
            sum: format!("s{i}"),
            sumb,
            cout,
            coutb,
        };
        emit_full_adder(&mut b, style, cascade, &prefix, &pins);
    }
    Ok(b.build().expect("generated ripple-carry adder is valid"))
}
