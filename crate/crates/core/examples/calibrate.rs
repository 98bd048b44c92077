//! Fits the timing/energy model so that the Type III-PG adder's ratios to
//! the baseline approach the target reductions, then reports how close
//! each metric got.
//!
//! `cargo run --release --example calibrate -- [budget]`

use aptl::calibrate::{Calibration, CalibrationTargets};
use aptl::sim::TimingEnergyParams;

fn main() {
    let budget = std::env::args().nth(1).map_or(500, |s| s.parse().expect("budget"));
    let targets = CalibrationTargets::default();
    let cal = Calibration::new(targets, 4, 42, 1000).unwrap();
    let start = TimingEnergyParams::default();
    println!("objective at defaults: {:.5}", cal.objective(&start));

    let fit = cal.fit(&start, budget).unwrap();
    println!(
        "objective after fit:   {:.5} ({} iterations, {} evaluations{})",
        fit.objective,
        fit.iterations,
        fit.evaluations,
        if fit.exhausted { ", budget exhausted" } else { "" }
    );
    println!("{}", serde_json::to_string_pretty(&fit.params).unwrap());

    let achieved = fit.achieved.expect("fitted parameters simulate");
    let got = [achieved.delay, achieved.energy, achieved.edp, achieved.aedp];
    let ok = targets.within(&achieved, 0.2);
    for (i, (name, target)) in targets.named().into_iter().enumerate() {
        println!(
            "{name:<7} target {target:.4}  achieved {:.4}  ({:+.1}%) {}",
            got[i],
            100.0 * (got[i] / target - 1.0),
            if ok[i] { "within 20%" } else { "" }
        );
    }
}
