//! Benchmarks 4-bit ripple-carry adders in every style and cascade over
//! 1,000 random additions and prints the comparison table.
//!
//! `cargo run --release --example ripple_benchmark -- [seed] [bits]`

use aptl::bench::{adder_inputs, default_configs, run_bench, Workload};
use aptl::sim::TimingEnergyParams;

fn main() {
    let mut args = std::env::args().skip(1);
    let seed = args.next().map_or(42, |s| s.parse().expect("seed"));
    let bits = args.next().map_or(4, |s| s.parse().expect("bits"));

    let workload = Workload::generate(seed, &adder_inputs(bits), 1000).unwrap();
    let report = run_bench(&default_configs(), bits, &workload, &TimingEnergyParams::default()).unwrap();

    println!(
        "{:<12} {:>4} {:>9} {:>9} {:>9} {:>10} {:>7} {:>7} {:>7} {:>7}",
        "config", "fets", "delay", "energy", "edp", "aedp", "d/b", "e/b", "edp/b", "aedp/b"
    );
    for r in &report.rows {
        let q = r.vs_baseline.unwrap();
        println!(
            "{:<12} {:>4} {:>9.3} {:>9.3} {:>9.3} {:>10.1} {:>7.3} {:>7.3} {:>7.3} {:>7.3}",
            r.config().to_string(),
            r.device_count,
            r.avg_delay,
            r.avg_energy,
            r.edp,
            r.aedp,
            q.delay,
            q.energy,
            q.edp,
            q.aedp
        );
    }
}
