//! Parses a hand-written netlist, prints its canonical form, and shows the
//! located errors for a few broken variants.

use aptl::netlist::{device_count, parse_netlist};

const INVERTER: &str = "\
# PG-driven inverter
Circuit Inv_PG
node IN in
node out out
supply vdd 1
supply gnd 0
fet up   src=vdd drn=out cg=gnd pg=in
fet down src=gnd drn=out cg=vdd pg=in
";

fn main() {
    let c = parse_netlist(INVERTER).unwrap();
    println!("{} devices, canonical form:\n{}", device_count(&c), c.to_netlist());
    assert_eq!(parse_netlist(&c.to_netlist()).unwrap(), c);

    let broken = [
        INVERTER.replace("node out out", "node out sideways"),
        INVERTER.replace("drn=out cg=vdd", "drn=outt cg=vdd"),
        INVERTER.replace("supply gnd 0", "supply vdd 0"),
        INVERTER.replace("src=gnd drn=out", "src=out drn=out"),
    ];
    for text in broken {
        let err = parse_netlist(&text).unwrap_err();
        println!("{err}");
    }
}
