//! Acceptance gate: one line per criterion, non-zero exit if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use aptl::bench::{adder_inputs, default_configs, run_bench, Config, Workload};
use aptl::calibrate::{Calibration, CalibrationTargets};
use aptl::library::{
    core_nodes, gen_full_adder, gen_ripple_carry, gen_xnor, Cascade, Style, XnorVariant,
};
use aptl::netlist::{area_reduction, device_count, parse_netlist, serialize_netlist};
use aptl::signal::{Level, Signal, Strength};
use aptl::sim::{settle, InputVector, SimError, SimState, Simulator, TimingEnergyParams};
use aptl::stimulus::{complete_inputs, AdderPorts};
use common::{
    by_name, corrupt, exhaustive, generator_circuits, random_circuit, random_text, random_vector, ring,
    shuffled, vector, MUTATIONS,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {{
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    }};
}

fn fa_vector(c: &aptl::netlist::Circuit, v: u64) -> InputVector {
    let ports = AdderPorts::detect(c).unwrap();
    complete_inputs(c, &ports.vector(v & 1, v >> 1 & 1, v >> 2 & 1 == 1))
}

fn device_counts() -> Check {
    let expected = [(Style::Baseline, 28), (Style::TypeI, 16), (Style::TypeII, 12), (Style::TypeIII, 12)];
    let reduction = [(Style::TypeI, 43), (Style::TypeII, 57), (Style::TypeIII, 57)];
    for cascade in Cascade::ALL {
        let base = gen_full_adder(Style::Baseline, cascade);
        for (style, n) in expected {
            let got = device_count(&gen_full_adder(style, cascade));
            ensure!(got == n, "{style}-{cascade}: {got} devices, expected {n}");
        }
        for (style, pct) in reduction {
            let r = area_reduction(&gen_full_adder(style, cascade), &base).map_err(|e| e.to_string())?;
            ensure!((100.0 * r).round() as i64 == pct, "{style}: area reduction {r:.4}, expected {pct}%");
        }
        let r = area_reduction(&base, &base).map_err(|e| e.to_string())?;
        ensure!(r == 0.0, "baseline against itself gives {r}");
    }
    Ok("28/16/12/12 devices, 43%/57%/57% smaller".into())
}

fn functional_equivalence() -> Check {
    let mut weak_seen = false;
    for style in Style::ALL {
        for cascade in Cascade::ALL {
            let fa = gen_full_adder(style, cascade);
            let ports = AdderPorts::detect(&fa).unwrap();
            for v in 0..8u64 {
                let st = settle(&fa, &fa_vector(&fa, v), None).map_err(|e| e.to_string())?;
                let expect = (v & 1) + (v >> 1 & 1) + (v >> 2 & 1);
                ensure!(ports.read(&fa, &st) == Some(expect), "{style}-{cascade} FA vector {v:03b}");
            }

            let rca = gen_ripple_carry(style, cascade, 4).map_err(|e| e.to_string())?;
            let ports = AdderPorts::detect(&rca).unwrap();
            let cores: Vec<_> = rca
                .node_ids()
                .filter(|&id| {
                    let n = rca.node_name(id);
                    n.ends_with("_sumc") || n.ends_with("_coutc")
                })
                .collect();
            let mut prior: Option<SimState> = None;
            for v in 0..512u64 {
                let (a, b, cin) = (v & 15, v >> 4 & 15, v >> 8 & 1);
                let inputs = complete_inputs(&rca, &ports.vector(a, b, cin == 1));
                let st = settle(&rca, &inputs, prior.as_ref()).map_err(|e| e.to_string())?;
                ensure!(
                    ports.read(&rca, &st) == Some(a + b + cin),
                    "{style}-{cascade} 4-bit: {a} + {b} + {cin}"
                );
                if style == Style::TypeII {
                    weak_seen |= cores.iter().any(|&id| st.signal(id).strength() == Strength::Weak);
                }
                prior = Some(st);
            }
        }
    }
    ensure!(weak_seen, "Type II never produced a weak core signal");
    Ok("8 configurations x (8 + 512) vectors, Type II weak paths exercised".into())
}

fn signal_integrity() -> Check {
    let mut restored = 0;
    for style in Style::HYBRID {
        let c = gen_full_adder(style, Cascade::Cg);
        let (sum, cout) = core_nodes(style).unwrap();
        for v in 0..8u64 {
            let st = settle(&c, &fa_vector(&c, v), None).map_err(|e| e.to_string())?;
            for (core, inv) in [(sum, "sumb"), (cout, "coutb")] {
                let s = st.get(&c, core).unwrap();
                ensure!(s.level().is_defined(), "{style} {core} undefined at {v:03b}");
                if style != Style::TypeII {
                    ensure!(s.strength() != Strength::Weak, "{style} {core} weak at {v:03b}");
                } else if s.strength() == Strength::Weak {
                    let out = st.get(&c, inv).unwrap();
                    ensure!(
                        out == Signal::strong(s.level().invert()),
                        "{core} weak at {v:03b} but {inv} is {out:?}"
                    );
                    restored += 1;
                }
            }
        }
    }
    ensure!(restored > 0, "no weak Type II core signal found");

    let x = gen_xnor(XnorVariant::Single);
    let on = settle(&x, &vector(&[("a", 1), ("b", 1)]), None).map_err(|e| e.to_string())?;
    ensure!(on.get(&x, "out") == Some(Signal::weak(Level::L1)), "on-state output {:?}", on.get(&x, "out"));
    let off = settle(&x, &vector(&[("a", 0), ("b", 1)]), Some(&on)).map_err(|e| e.to_string())?;
    ensure!(
        off.get(&x, "out") == Some(Signal::charged(Level::L1)),
        "off-state output {:?}",
        off.get(&x, "out")
    );
    Ok(format!("TG cores full strength, {restored} weak Type II signals restored, XNOR retains charge"))
}

fn orderings() -> Check {
    let w = Workload::generate(42, &adder_inputs(4), 1000).map_err(|e| e.to_string())?;
    let r = run_bench(&default_configs(), 4, &w, &TimingEnergyParams::default()).map_err(|e| e.to_string())?;
    let row = |s, c| r.row(Config::new(s, c)).unwrap();
    for style in Style::HYBRID {
        let (cg, pg) = (row(style, Cascade::Cg), row(style, Cascade::Pg));
        ensure!(cg.avg_delay < pg.avg_delay, "{style}: CG delay {} >= PG {}", cg.avg_delay, pg.avg_delay);
        ensure!(pg.avg_energy < cg.avg_energy, "{style}: PG energy {} >= CG {}", pg.avg_energy, cg.avg_energy);
    }
    for cascade in Cascade::ALL {
        let t3 = row(Style::TypeIII, cascade).avg_delay;
        let rows: Vec<_> = r.rows.iter().filter(|x| x.cascade == cascade).collect();
        ensure!(rows.iter().all(|x| t3 <= x.avg_delay), "Type III not fastest with {cascade}");
        let t2 = row(Style::TypeII, cascade).avg_delay;
        ensure!(
            Style::HYBRID.iter().all(|&s| t2 >= row(s, cascade).avg_delay),
            "Type II not slowest hybrid with {cascade}"
        );
    }
    let t3 = row(Style::TypeIII, Cascade::Pg).vs_baseline.unwrap();
    Ok(format!(
        "all orderings hold; type3-pg vs baseline: delay {:.3}, energy {:.3}",
        t3.delay, t3.energy
    ))
}

fn calibration() -> Check {
    let targets = CalibrationTargets::default();
    let cal = Calibration::new(targets, 4, 42, 1000).map_err(|e| e.to_string())?;
    let start = TimingEnergyParams::default();
    let before = cal.objective(&start);
    let fit = cal.fit(&start, 500).map_err(|e| e.to_string())?;
    let achieved = fit.achieved.ok_or("fitted parameters do not simulate")?;
    let within = targets.within(&achieved, 0.2);
    let hits = within.iter().filter(|&&b| b).count();
    let got = [achieved.delay, achieved.energy, achieved.edp, achieved.aedp];
    let detail = targets
        .named()
        .iter()
        .zip(got)
        .map(|(&(name, t), a)| format!("{name} {a:.4}/{t} ({:+.1}%)", 100.0 * (a / t - 1.0)))
        .collect::<Vec<_>>()
        .join(", ");
    let summary = format!(
        "objective {before:.4} -> {:.4}, {hits}/4 within 20%: {detail}",
        fit.objective
    );
    ensure!(fit.objective < before, "no improvement: {summary}");
    ensure!(hits >= 3, "{summary}");
    Ok(summary)
}

fn engine_properties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for tag in 0..50 {
        let c = random_circuit(&mut rng, tag);
        let (v1, v2) = (random_vector(&c, &mut rng), random_vector(&c, &mut rng));
        let run = |c: &aptl::netlist::Circuit| {
            let first = settle(c, &v1, None);
            let second = match &first {
                Ok(st) => settle(c, &v2, Some(st)),
                Err(e) => Err(e.clone()),
            };
            (by_name(c, first), by_name(c, second))
        };
        let reference = run(&c);
        for k in 0..100 {
            ensure!(run(&shuffled(&c, &mut rng)) == reference, "circuit {tag} ordering {k} differs");
        }
    }

    let params = TimingEnergyParams::default();
    let mut steps = 0;
    for c in generator_circuits() {
        let sim = Simulator::new(&c, params).map_err(|e| e.to_string())?;
        let vectors = exhaustive(&c);
        let mut st = sim.settle(&vectors[0], None).map_err(|e| e.to_string())?;
        let mut order: Vec<usize> = (1..vectors.len()).collect();
        order.shuffle(&mut rng);
        for (k, &i) in order.iter().enumerate() {
            let settled = sim.settle(&vectors[i], Some(&st)).map_err(|e| e.to_string())?;
            let (next, _) = sim.step_vector(&st, k as f64 * 100.0, &vectors[i]).map_err(|e| e.to_string())?;
            for id in c.node_ids() {
                ensure!(
                    next.signal(id).level() == settled.signal(id).level(),
                    "{}: {} differs after vector {i}",
                    c.name(),
                    c.node_name(id)
                );
            }
            st = next;
            steps += 1;
        }
    }

    for cascade in Cascade::ALL {
        let c = ring(cascade);
        let sim = Simulator::new(&c, params).map_err(|e| e.to_string())?;
        let loaded = sim.settle(&vector(&[("d", 0), ("ld", 1), ("en", 0)]), None).map_err(|e| e.to_string())?;
        let run = vector(&[("d", 0), ("ld", 0), ("en", 1)]);
        ensure!(
            matches!(sim.settle(&run, Some(&loaded)), Err(SimError::Oscillation { .. })),
            "{cascade} ring settled"
        );
        ensure!(
            matches!(sim.step_vector(&loaded, 0.0, &run), Err(SimError::Oscillation { .. })),
            "{cascade} ring stepped to rest"
        );
    }
    Ok(format!("50 circuits x 100 orderings confluent, {steps} steps match settle, ring oscillation caught"))
}

fn toolchain() -> Check {
    for c in generator_circuits() {
        let text = serialize_netlist(&c);
        let back = parse_netlist(&text).map_err(|e| e.to_string())?;
        ensure!(back == c && serialize_netlist(&back) == text, "{} does not round-trip", c.name());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for k in 0..1000 {
        let c = parse_netlist(&random_text(&mut rng)).map_err(|e| format!("fuzz netlist {k}: {e}"))?;
        let text = serialize_netlist(&c);
        ensure!(parse_netlist(&text).as_ref() == Ok(&c), "fuzz netlist {k} does not round-trip");
    }
    let mut corrupted = 0;
    while corrupted < 1000 {
        let text = serialize_netlist(&parse_netlist(&random_text(&mut rng)).unwrap());
        let m = *MUTATIONS.choose(&mut rng).unwrap();
        let Some((bad, _)) = corrupt(&text, &mut rng, m) else {
            continue;
        };
        corrupted += 1;
        match parse_netlist(&bad) {
            Ok(_) => return Err(format!("{m:?} corruption accepted:\n{bad}")),
            Err(e) => ensure!(e.location().is_some(), "{m:?} error without location: {e}"),
        }
    }
    Ok("generator outputs and 1000 fuzzed netlists round-trip, 1000 corruptions located".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("device counts", Duration::from_secs(1), device_counts),
        ("functional equivalence", Duration::from_secs(10), functional_equivalence),
        ("signal integrity", Duration::from_secs(1), signal_integrity),
        ("ordering suite", Duration::from_secs(120), orderings),
        ("calibration", Duration::from_secs(600), calibration),
        ("engine properties", Duration::from_secs(60), engine_properties),
        ("toolchain", Duration::from_secs(30), toolchain),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let result = match result {
            Ok(d) if took > limit => Err(format!("{d}; took {took:.2?}, limit {limit:?}")),
            r => r,
        };
        match result {
            Ok(detail) => println!("criterion {} {name}: PASS ({took:.2?}) {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({took:.2?}) {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 7 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
