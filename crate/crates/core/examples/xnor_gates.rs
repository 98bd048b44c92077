//! The one-device XNOR against the four-device complementary version.

use aptl::library::{gen_xnor, XnorVariant};
use aptl::netlist::device_count;
use aptl::sim::{settle, InputVector, SimState};
use aptl::signal::Level;
use aptl::stimulus::complete_inputs;

fn main() {
    for variant in [XnorVariant::Single, XnorVariant::Quad] {
        let c = gen_xnor(variant);
        println!("{} ({} devices)", c.name(), device_count(&c));
        let mut prior: Option<SimState> = None;
        // 11 -> 01 shows the single device holding its last value once off
        for (a, b) in [(0, 0), (1, 1), (0, 1), (1, 0)] {
            let mut v = InputVector::new();
            v.insert("a".into(), Level::from_bool(a == 1));
            v.insert("b".into(), Level::from_bool(b == 1));
            let st = settle(&c, &complete_inputs(&c, &v), prior.as_ref()).unwrap();
            let out = st.get(&c, "out").unwrap();
            println!("  a={a} b={b} -> {} {}", out.level().as_char(), out.strength().name());
            prior = Some(st);
        }
    }
}
