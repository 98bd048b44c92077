//! Delay and energy of inverter chains driven through the control gate
//! versus the polarity gate.

use aptl::library::{gen_inverter_chain, Cascade};
use aptl::signal::Level;
use aptl::sim::{InputVector, Simulator, TimingEnergyParams};

fn main() {
    let params = TimingEnergyParams::default();
    println!("{:>6} {:>10} {:>10} {:>10} {:>10}", "stages", "cg delay", "pg delay", "cg energy", "pg energy");
    for n in [1, 2, 4, 8] {
        let mut cells = Vec::new();
        for cascade in Cascade::ALL {
            let c = gen_inverter_chain(cascade, n);
            let sim = Simulator::new(&c, params).unwrap();
            let mut v = InputVector::new();
            v.insert("in".into(), Level::L0);
            let st = sim.settle(&v, None).unwrap();
            v.insert("in".into(), Level::L1);
            let (_, frag) = sim.step_vector(&st, 0.0, &v).unwrap();
            cells.push((frag.delay, frag.energy));
        }
        println!(
            "{n:>6} {:>10.2} {:>10.2} {:>10.2} {:>10.2}",
            cells[0].0, cells[1].0, cells[0].1, cells[1].1
        );
    }
}
