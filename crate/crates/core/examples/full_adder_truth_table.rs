//! Truth table of a full adder, with the strength of every output.
//!
//! `cargo run --example full_adder_truth_table -- type2 pg`

use aptl::library::{core_nodes, gen_full_adder, Cascade, Style};
use aptl::netlist::device_count;
use aptl::sim::{settle, InputVector};
use aptl::signal::Level;
use aptl::stimulus::complete_inputs;

fn main() {
    let mut args = std::env::args().skip(1);
    let style: Style = args.next().as_deref().unwrap_or("type2").parse().unwrap();
    let cascade: Cascade = args.next().as_deref().unwrap_or("cg").parse().unwrap();
    let c = gen_full_adder(style, cascade);
    println!("{} ({} devices)", c.name(), device_count(&c));

    let mut probes = vec!["sum", "cout"];
    if let Some((s, co)) = core_nodes(style) {
        if s != "sum" {
            probes.extend([s, co]);
        }
    }
    println!("a b cin | {}", probes.join(" "));
    for v in 0..8u8 {
        let mut iv = InputVector::new();
        for (i, n) in ["a", "b", "cin"].into_iter().enumerate() {
            iv.insert(n.into(), Level::from_bool(v >> i & 1 == 1));
        }
        let st = settle(&c, &complete_inputs(&c, &iv), None).unwrap();
        let cells: Vec<String> = probes
            .iter()
            .map(|p| {
                let s = st.get(&c, p).unwrap();
                format!("{}/{}", s.level().as_char(), s.strength().name())
            })
            .collect();
        println!("{} {} {}   | {}", v & 1, v >> 1 & 1, v >> 2 & 1, cells.join(" "));
    }
}
