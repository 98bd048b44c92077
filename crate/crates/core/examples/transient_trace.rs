//! Drives a Type III full adder through a few input changes and prints the
//! committed events and per-vector delay and energy.

use aptl::library::{gen_full_adder, Cascade, Style};
use aptl::signal::Level;
use aptl::sim::{run_waveform, InputVector, TimingEnergyParams};
use aptl::stimulus::complete_inputs;

fn main() {
    let c = gen_full_adder(Style::TypeIII, Cascade::Pg);
    let rows = [[0, 0, 0], [1, 0, 0], [1, 1, 0], [1, 1, 1], [0, 1, 1]];
    let vectors: Vec<InputVector> = rows
        .iter()
        .map(|r| {
            let v: InputVector = ["a", "b", "cin"]
                .iter()
                .zip(r)
                .map(|(n, &b)| (n.to_string(), Level::from_bool(b == 1)))
                .collect();
            complete_inputs(&c, &v)
        })
        .collect();
    let trace = run_waveform(&c, &vectors, &TimingEnergyParams::default()).unwrap();
    print!("{}", trace.to_csv(&c));
    println!();
    print!("{}", trace.summary_csv());
}
