//! Prints the device conduction table and what a conducting device passes.

use aptl::signal::{channel_polarity, device_conduction, resolve, transmit, Level, Signal};

fn main() {
    let levels = [Level::L0, Level::L1, Level::LX];
    println!("conduction (rows CG, columns PG)");
    println!("      {:>8} {:>8} {:>8}", "pg=0", "pg=1", "pg=x");
    for cg in levels {
        let row: Vec<String> = levels
            .iter()
            .map(|&pg| format!("{:>8}", format!("{:?}", device_conduction(cg, pg))))
            .collect();
        println!("cg={}  {}", cg.as_char(), row.join(" "));
    }

    println!("\npassing a strong value through a conducting device");
    for pg in [Level::L0, Level::L1] {
        let pol = channel_polarity(pg);
        for v in [Level::L0, Level::L1] {
            let out = transmit(pol, device_conduction(pg, pg), Signal::strong(v)).unwrap();
            println!("  {pol:?} passes {} as {} {}", v.as_char(), out.level().as_char(), out.strength().name());
        }
    }

    println!("\nresolution");
    let cases = [
        vec![Signal::weak(Level::L1), Signal::strong(Level::L0)],
        vec![Signal::weak(Level::L1), Signal::weak(Level::L0)],
        vec![Signal::charged(Level::L1), Signal::FLOATING],
    ];
    for c in cases {
        let r = resolve(c.iter().copied());
        let shown: Vec<String> = c
            .iter()
            .map(|s| format!("{}:{}", s.level().as_char(), s.strength().name()))
            .collect();
        println!("  {} -> {}:{}", shown.join(" + "), r.level().as_char(), r.strength().name());
    }
}
