use aptl::library::{
    core_nodes, gen_full_adder, gen_inverter, gen_inverter_chain, gen_ripple_carry, gen_xnor,
    Cascade, Style, XnorVariant,
};
use aptl::netlist::{parse_netlist, Circuit};
use aptl::signal::{Level, Signal, Strength};
use aptl::sim::{settle, step_vector, InputVector, SimState, TimingEnergyParams};
use aptl::stimulus::{complete_inputs, AdderPorts};

fn bit(v: u64, i: usize) -> Level {
    Level::from_bool(v >> i & 1 == 1)
}

fn fa_inputs(c: &Circuit, a: u64, b: u64, cin: u64) -> InputVector {
    let mut v = InputVector::new();
    v.insert("a".into(), bit(a, 0));
    v.insert("b".into(), bit(b, 0));
    v.insert("cin".into(), bit(cin, 0));
    complete_inputs(c, &v)
}

fn level(c: &Circuit, st: &SimState, name: &str) -> Level {
    st.get(c, name).unwrap().level()
}

#[test]
fn full_adders_match_arithmetic() {
    for style in Style::ALL {
        for cascade in Cascade::ALL {
            let c = gen_full_adder(style, cascade);
            let mut prior: Option<SimState> = None;
            for v in 0..8u64 {
                let (a, b, cin) = (v & 1, v >> 1 & 1, v >> 2 & 1);
                let total = a + b + cin;
                let inputs = fa_inputs(&c, a, b, cin);
                for st in [settle(&c, &inputs, None).unwrap(), settle(&c, &inputs, prior.as_ref()).unwrap()] {
                    assert_eq!(level(&c, &st, "sum"), bit(total, 0), "{style}/{cascade} {a}{b}{cin}");
                    assert_eq!(level(&c, &st, "cout"), bit(total, 1), "{style}/{cascade} {a}{b}{cin}");
                    if style != Style::Baseline {
                        assert_eq!(level(&c, &st, "sumb"), bit(total, 0).invert());
                        assert_eq!(level(&c, &st, "coutb"), bit(total, 1).invert());
                    }
                    prior = Some(st);
                }
            }
        }
    }
}

#[test]
fn four_bit_ripple_is_exhaustively_correct() {
    for style in Style::ALL {
        for cascade in Cascade::ALL {
            let c = gen_ripple_carry(style, cascade, 4).unwrap();
            let ports = AdderPorts::detect(&c).unwrap();
            assert_eq!(ports.bits(), 4);
            let mut prior: Option<SimState> = None;
            for v in 0..512u64 {
                let (a, b, cin) = (v & 15, v >> 4 & 15, v >> 8 & 1);
                let inputs = complete_inputs(&c, &ports.vector(a, b, cin == 1));
                let st = settle(&c, &inputs, prior.as_ref()).unwrap();
                let expect = a + b + cin;
                for i in 0..4 {
                    assert_eq!(level(&c, &st, &format!("s{i}")), bit(expect, i), "{style}/{cascade} {v}");
                }
                assert_eq!(level(&c, &st, "cout"), bit(expect, 4), "{style}/{cascade} {v}");
                assert_eq!(ports.read(&c, &st), Some(expect));
                prior = Some(st);
            }
        }
    }
}

fn core_strengths(style: Style) -> Vec<Strength> {
    let c = gen_full_adder(style, Cascade::Cg);
    let (s, co) = core_nodes(style).unwrap();
    let mut out = Vec::new();
    for v in 0..8u64 {
        let st = settle(&c, &fa_inputs(&c, v & 1, v >> 1 & 1, v >> 2 & 1), None).unwrap();
        out.push(st.get(&c, s).unwrap().strength());
        out.push(st.get(&c, co).unwrap().strength());
    }
    out
}

#[test]
fn transmission_gate_cores_are_full_swing() {
    for style in [Style::TypeI, Style::TypeIII] {
        assert!(core_strengths(style).iter().all(|&s| s == Strength::Strong), "{style}");
    }
}

#[test]
fn single_device_core_degrades() {
    let strengths = core_strengths(Style::TypeII);
    assert!(strengths.contains(&Strength::Weak));
    assert!(!strengths.contains(&Strength::Floating));
    // the restoring inverters still drive full-strength outputs
    let c = gen_full_adder(Style::TypeII, Cascade::Pg);
    for v in 0..8u64 {
        let st = settle(&c, &fa_inputs(&c, v & 1, v >> 1 & 1, v >> 2 & 1), None).unwrap();
        for out in ["sum", "cout", "sumb", "coutb"] {
            assert_eq!(st.get(&c, out).unwrap().strength(), Strength::Strong);
        }
    }
}

#[test]
fn xnor_gates() {
    let single = gen_xnor(XnorVariant::Single);
    let quad = gen_xnor(XnorVariant::Quad);
    for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        let mut v = InputVector::new();
        v.insert("a".into(), bit(a, 0));
        v.insert("b".into(), bit(b, 0));
        let st = settle(&single, &v, None).unwrap();
        let out = st.get(&single, "out").unwrap();
        if a == b {
            // n-type passes vdd degraded, p-type passes it intact
            let expect = if b == 1 { Signal::weak(Level::L1) } else { Signal::strong(Level::L1) };
            assert_eq!(out, expect);
        } else {
            assert_eq!(out.strength(), Strength::Floating);
        }
        let st = settle(&quad, &complete_inputs(&quad, &v), None).unwrap();
        assert_eq!(st.get(&quad, "out").unwrap().level(), Level::from_bool(a == b));
    }
}

#[test]
fn generated_netlists_round_trip() {
    let mut circuits = vec![
        gen_inverter(Cascade::Cg),
        gen_inverter(Cascade::Pg),
        gen_inverter_chain(Cascade::Cg, 3),
        gen_xnor(XnorVariant::Single),
        gen_xnor(XnorVariant::Quad),
    ];
    for style in Style::ALL {
        circuits.push(gen_full_adder(style, Cascade::Pg));
        circuits.push(gen_ripple_carry(style, Cascade::Cg, 3).unwrap());
    }
    for c in circuits {
        let text = c.to_netlist();
        let back = parse_netlist(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_netlist(), text);
    }
}

fn inverter_event_time(cascade: Cascade) -> (f64, f64) {
    let c = gen_inverter(cascade);
    let p = TimingEnergyParams::default();
    let mut v = InputVector::new();
    v.insert("in".into(), Level::L0);
    let st = settle(&c, &v, None).unwrap();
    v.insert("in".into(), Level::L1);
    let (st, frag) = step_vector(&c, &st, 5.0, &v, &p).unwrap();
    assert_eq!(st.get(&c, "out").unwrap(), Signal::strong(Level::L0));
    let out = c.node_id("out").unwrap();
    let ev = frag.events.iter().find(|e| e.node == out).unwrap();
    (ev.time, frag.energy)
}

#[test]
fn inverter_delays_follow_gate_kind() {
    let p = TimingEnergyParams::default();
    let (t, e) = inverter_event_time(Cascade::Cg);
    assert!((t - (5.0 + p.tau_cg)).abs() < 1e-12);
    assert!((e - p.e_node).abs() < 1e-12);
    let (t, _) = inverter_event_time(Cascade::Pg);
    assert!((t - (5.0 + p.tau_pg)).abs() < 1e-12);
}

#[test]
fn chain_delay_scales_with_length() {
    let p = TimingEnergyParams::default();
    for cascade in Cascade::ALL {
        let tau = match cascade {
            Cascade::Cg => p.tau_cg,
            Cascade::Pg => p.tau_pg,
        };
        for n in 1..=4 {
            let c = gen_inverter_chain(cascade, n);
            let mut v = InputVector::new();
            v.insert("in".into(), Level::L1);
            let st = settle(&c, &v, None).unwrap();
            v.insert("in".into(), Level::L0);
            let (_, frag) = step_vector(&c, &st, 0.0, &v, &p).unwrap();
            assert!((frag.delay - n as f64 * tau).abs() < 1e-9, "{cascade} {n}: {}", frag.delay);
            let internal = (n - 1) as f64;
            let gate = match cascade {
                Cascade::Cg => p.e_cg,
                Cascade::Pg => p.e_pg,
            };
            let expect = n as f64 * p.e_node + internal * 2.0 * gate;
            assert!((frag.energy - expect).abs() < 1e-9, "{cascade} {n}: {}", frag.energy);
        }
    }
}
