//! Switch-level simulation of ambipolar dual-gate FET logic.
//!
//! Each device has a control gate (CG), a polarity gate (PG) and a channel
//! between `src` and `drn`. It is n-type while PG is high and p-type while
//! PG is low, and it conducts exactly when CG equals PG.
//!
//! * [`signal`]: the level/strength lattice and pass rules.
//! * [`netlist`]: the flat netlist format, its parser and a builder.
//! * [`sim`]: zero-delay settling plus an event-driven timing/energy model.
//! * [`library`]: inverter, XNOR and full-adder generators.
//! * [`bench`] and [`calibrate`]: ripple-carry benchmarks and model fitting.

pub mod bench;
pub mod calibrate;
pub mod cli;
pub mod library;
pub mod netlist;
pub mod signal;
pub mod sim;
pub mod stimulus;
