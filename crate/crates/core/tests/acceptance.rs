// SPDX-License-Identifier: Apache-2.0

//! Acceptance run against the reference delays and counts of the 45 nm
//! reference bus. Prints one PASS/FAIL line per criterion and exits non-zero
//! if any check fails that is not listed in `KNOWN_FAILURES`.

use std::process::ExitCode;
use std::time::Instant;

use xtalk::analytic::{crossing_time, five_wire_waveform, table_delay, three_wire_waveform, window_waveform};
use xtalk::analytic::{worst_pattern, ProfileEvaluator, WindowModel};
use xtalk::cac::DEFAULT_NODE_BUDGET;
use xtalk::cac::{certify, codebook_worst_delays, family_codebook, fpc_set, generate_codebook, Family};
use xtalk::search::{alg1, class_representative, exhaustive, AnalyticOracle, DelayOracle, DELAY_TIE};
use xtalk::sim::{build_network, default_t_end, simulate, ResponseBank};
use xtalk::{
    baseline_delay, classify_bus, delta_of, BusSpec, CrosstalkClass, Result, Transition, TransitionPattern, PS,
};

/// Checks expected to fail, with the reason recorded next to them. A listed
/// check that starts passing is reported but does not fail the run.
///
/// The buffered edge-wire model has no closed form; its 2C value is the
/// crossing of the buffered boundary expansion, 93.9 ps, which sits 4.9%
/// under the reference 98.76 ps. Both codebook rows that quote it miss the
/// 3% band.
const KNOWN_FAILURES: &[&str] = &["fpc T_b1", "foc T_b1"];

struct Check {
    name: String,
    pass: bool,
    detail: String,
}

#[derive(Default)]
struct Criterion {
    checks: Vec<Check>,
}

impl Criterion {
    fn within(&mut self, name: impl Into<String>, got: f64, want: f64, tol: f64) {
        let err = got / want - 1.0;
        self.checks.push(Check {
            name: name.into(),
            pass: err.abs() <= tol,
            detail: format!("{:.2} vs {:.2} ({:+.2}%)", got * PS, want * PS, 100.0 * err),
        });
    }

    fn holds(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), pass, detail: detail.into() });
    }

    fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn ps(values: &[f64]) -> Vec<f64> {
    values.iter().map(|v| v * 1e-12).collect()
}

fn spec(m: usize) -> BusSpec {
    BusSpec::reference_45nm(m).unwrap()
}

fn pattern(s: &str) -> TransitionPattern {
    s.parse().unwrap()
}

fn baseline() -> Result<Criterion> {
    let mut c = Criterion::default();
    let want = ["5.55", "73.50", "141.45", "209.40", "277.35"];
    for (class, want) in CrosstalkClass::ALL.into_iter().zip(want) {
        let p = worst_pattern(WindowModel::ThreeWire, class)?;
        let got = format!("{:.2}", baseline_delay(&delta_of(&p), 1, &spec(3))?.value * PS);
        c.holds(class.to_string(), got == want, format!("{got} vs {want}"));
    }
    Ok(c)
}

fn table_column(model: WindowModel, s: &BusSpec, want: &[f64], tol: f64) -> Result<Criterion> {
    let mut c = Criterion::default();
    for (class, want) in CrosstalkClass::ALL.into_iter().zip(ps(want)) {
        c.within(class.to_string(), table_delay(class, model, s, true)?, want, tol);
    }
    Ok(c)
}

fn simulated_column(bank: &ResponseBank, model: WindowModel, want: &[f64]) -> Result<Criterion> {
    let mut c = Criterion::default();
    for (class, want) in CrosstalkClass::ALL.into_iter().zip(ps(want)) {
        let p = worst_pattern(model, class)?;
        c.within(format!("{class} {p}"), bank.delay(&p, model.observed())?, want, 0.05);
    }
    Ok(c)
}

fn same_up_to_complement(a: &TransitionPattern, b: &TransitionPattern) -> bool {
    a == b || a.complemented() == *b
}

fn seventeen_wire(bank: &ResponseBank) -> Result<Criterion> {
    let mut c = Criterion::default();
    let want = [
        ("uuuuddduuuddduuuu", 42.17),
        ("uuuuudduu-dduuuuu", 67.50),
        ("dduuuud-u-duuuudd", 112.82),
        ("ddduuuddu-duuuddd", 165.44),
        ("uddduuududuuudddu", 228.46),
    ];
    for (class, (text, delay)) in CrosstalkClass::ALL.into_iter().zip(want) {
        let r = alg1(17, class, &class_representative(class), bank)?;
        let expected = pattern(text);
        c.holds(
            format!("{class} pattern"),
            same_up_to_complement(&r.pattern, &expected),
            format!("{} vs {}", r.pattern, expected),
        );
        c.within(format!("{class} delay"), r.delay, delay * 1e-12, 0.05);
    }
    Ok(c)
}

fn alg1_against_exhaustive(banks: &[(usize, &ResponseBank)]) -> Result<Criterion> {
    let mut c = Criterion::default();
    for &(m, bank) in banks {
        for class in CrosstalkClass::ALL {
            let greedy = alg1(m, class, &class_representative(class), bank)?;
            let full = exhaustive(m, class, bank, 3u64.pow(m as u32 - 3))?;
            c.holds(
                format!("m={m} {class}"),
                (greedy.delay - full.delay).abs() <= DELAY_TIE,
                format!(
                    "alg1 {} {:.3} ps, exhaustive {} {:.3} ps",
                    greedy.pattern,
                    greedy.delay * PS,
                    full.pattern,
                    full.delay * PS
                ),
            );
            if m == 11 && class == CrosstalkClass::C2 {
                let got: Vec<String> = greedy.trajectory.iter().map(|s| s.pattern.to_string()).collect();
                let want = ["dddd-u-dddd", "ddud-u-dudd", "duud-u-duud", "uuud-u-duuu"];
                c.holds("m=11 2C trajectory", got == want, got.join(" -> "));
            }
        }
    }
    Ok(c)
}

fn codebooks() -> Result<Criterion> {
    let mut c = Criterion::default();
    let two = generate_codebook(8, CrosstalkClass::C2, DEFAULT_NODE_BUDGET)?;
    let three = generate_codebook(8, CrosstalkClass::C3, DEFAULT_NODE_BUDGET)?;
    let fpc = fpc_set(8)?;
    let olc = family_codebook(8, Family::Olc, DEFAULT_NODE_BUDGET)?;
    c.holds("2C size", two.len() == 68 && two.is_optimal(), format!("{}", two.len()));
    c.holds("3C size", three.len() == 149 && three.is_optimal(), format!("{}", three.len()));
    c.holds("fpc size", fpc.len() == 68, format!("{}", fpc.len()));
    c.holds("fpc valid", certify(&fpc)?.valid, "pairwise 2C");
    c.holds("2C transitions", two.transition_count() == 4556, format!("{}", two.transition_count()));
    c.holds("3C transitions", three.transition_count() == 22052, format!("{}", three.transition_count()));
    c.holds("olc size", olc.len() == 16, format!("{} (reported)", olc.len()));
    Ok(c)
}

fn codebook_delays(bank: &ResponseBank) -> Result<Criterion> {
    let mut c = Criterion::default();
    let s = spec(8);
    let rows: [(Family, [f64; 8], [f64; 3]); 3] = [
        (Family::Olc, [55.36, 32.20, 51.40, 51.06, 50.79, 51.39, 32.46, 55.36], [62.09, 53.43, 42.52]),
        (Family::Fpc, [107.43, 102.71, 106.65, 101.91, 101.89, 106.53, 102.72, 107.39], [106.43, 98.76, 102.84]),
        (Family::Foc, [107.73, 159.65, 154.59, 162.61, 162.77, 154.62, 160.61, 108.88], [152.24, 98.76, 157.64]),
    ];
    for (family, wires, models) in rows {
        let book = family_codebook(8, family, DEFAULT_NODE_BUDGET)?;
        let delays = codebook_worst_delays(&book, bank)?;
        for (k, want) in ps(&wires).into_iter().enumerate() {
            let got = delays.per_wire[k].as_ref().map_or(f64::NAN, |w| w.delay);
            c.within(format!("{} wire {}", family.name(), k + 1), got, want, 0.05);
        }
        let cap = family.cap();
        for ((model, label), want) in
            [(WindowModel::FiveWire, "T_5"), (WindowModel::Boundary1, "T_b1"), (WindowModel::Boundary2, "T_b2")]
                .into_iter()
                .zip(ps(&models))
        {
            let got = table_delay(cap.min(model.max_class()), model, &s, true)?;
            c.within(format!("{} {label}", family.name()), got, want, 0.03);
        }
    }
    Ok(c)
}

fn all_patterns(m: usize) -> impl Iterator<Item = TransitionPattern> {
    let all = [Transition::Fall, Transition::Steady, Transition::Rise];
    (0..3usize.pow(m as u32)).map(move |code| {
        let t: Vec<Transition> = (0..m).map(|i| all[code / 3usize.pow(i as u32) % 3]).collect();
        TransitionPattern::from_transitions(&t).unwrap()
    })
}

fn spread(values: &[f64]) -> f64 {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    hi / lo - 1.0
}

fn properties(bank3: &ResponseBank, bank5: &ResponseBank) -> Result<Criterion> {
    let mut c = Criterion::default();

    // No coupling: every class of every model collapses to one delay.
    let flat3 = spec(3).with_coupling(0.0)?;
    let flat5 = spec(5).with_coupling(0.0)?;
    let flat_bank = ResponseBank::build(&flat3.clone().with_segments(40)?, bank3.dt(), default_t_end(&flat3))?;
    let mut models: Vec<(&str, Vec<f64>)> =
        vec![("baseline", vec![]), ("three-wire", vec![]), ("five-wire", vec![]), ("simulator", vec![])];
    for class in CrosstalkClass::ALL {
        let p3 = worst_pattern(WindowModel::ThreeWire, class)?;
        let p5 = worst_pattern(WindowModel::FiveWire, class)?;
        models[0].1.push(baseline_delay(&delta_of(&p3), 1, &flat3)?.value);
        models[1].1.push(crossing_time(&three_wire_waveform(&p3, &flat3, true)?, 0.5)?);
        models[2].1.push(crossing_time(&five_wire_waveform(&p5, &flat5, true)?, 0.5)?);
        models[3].1.push(flat_bank.delay(&p3, 1)?);
    }
    for (name, values) in &models {
        let s = spread(values);
        c.holds(format!("decoupled {name}"), s <= 1e-6, format!("spread {s:.1e}"));
    }

    // Superposition against direct integration.
    let small = spec(5).with_segments(20)?;
    let net = build_network(&small)?;
    let lin = ResponseBank::from_network(&net, bank5.dt(), default_t_end(&small))?;
    let mut worst: f64 = 0.0;
    for text in ["ududu", "d-u-d", "01101>10110", "uu-dd"] {
        let p = pattern(text);
        let direct = simulate(&net, &p, lin.dt(), default_t_end(&small))?;
        let combined = lin.trace(&p)?;
        for (a, b) in direct.voltages.iter().zip(&combined.voltages) {
            worst = a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(worst, f64::max);
        }
    }
    c.holds("linearity", worst <= 1e-6, format!("max deviation {worst:.1e}"));

    // Step and section refinement on the three-wire worst patterns.
    let s3 = spec(3);
    let half = ResponseBank::build(&s3, bank3.dt() / 2.0, default_t_end(&s3))?;
    let fine = s3.clone().with_segments(200)?;
    let sections = ResponseBank::build(&fine, bank3.dt(), default_t_end(&fine))?;
    let (mut dt_change, mut n_change): (f64, f64) = (0.0, 0.0);
    for class in CrosstalkClass::ALL {
        let p = worst_pattern(WindowModel::ThreeWire, class)?;
        let base = bank3.delay(&p, 1)?;
        dt_change = dt_change.max((half.delay(&p, 1)? / base - 1.0).abs());
        n_change = n_change.max((sections.delay(&p, 1)? / base - 1.0).abs());
    }
    c.holds("dt convergence", dt_change < 1e-3, format!("{:.2e}%", 100.0 * dt_change));
    c.holds("N convergence", n_change < 5e-3, format!("{:.2e}%", 100.0 * n_change));

    // Analytic waveforms start and end on the codeword levels.
    let s5 = spec(5);
    let mut endpoint: f64 = 0.0;
    for p in all_patterns(5) {
        for k in (0..5).filter(|&k| p.transition(k) != Transition::Steady) {
            let w = window_waveform(&p, k, &s5, true)?;
            let start = f64::from(u8::from(p.initial()[k]));
            let end = f64::from(u8::from(p.final_state()[k]));
            endpoint = endpoint.max((w.initial_value() - start).abs()).max((w.final_value() - end).abs());
        }
    }
    c.holds("waveform endpoints", endpoint < 1e-9, format!("max deviation {endpoint:.1e}"));

    // Sign and mirror symmetry.
    let mut classifier = true;
    for p in all_patterns(6) {
        let (fwd, _) = classify_bus(&delta_of(&p));
        let (mut rev, _) = classify_bus(&delta_of(&p.mirrored()));
        rev.reverse();
        classifier &= fwd == rev && fwd == classify_bus(&delta_of(&p.complemented())).0;
    }
    c.holds("classifier symmetry", classifier, "all 6-wire patterns");
    let mut sim_sym: f64 = 0.0;
    for p in all_patterns(5).filter(|p| !p.is_quiet()).step_by(7) {
        for k in (0..5).filter(|&k| p.transition(k) != Transition::Steady) {
            let d = bank5.delay(&p, k)?;
            sim_sym = sim_sym
                .max((bank5.delay(&p.mirrored(), 4 - k)? - d).abs())
                .max((bank5.delay(&p.complemented(), k)? - d).abs());
        }
    }
    c.holds("simulator symmetry", sim_sym < 1e-15, format!("max deviation {:.1e} s", sim_sym));

    // Greedy search ends at a pair-flip local maximum.
    let oracle = AnalyticOracle { spec: spec(11), evaluator: ProfileEvaluator::default() };
    let mut local = true;
    for class in CrosstalkClass::ALL {
        let r = alg1(11, class, &class_representative(class), &oracle)?;
        let mut t = r.pattern.transitions();
        for j in 0..4 {
            t[j] = t[j].flipped();
            t[10 - j] = t[10 - j].flipped();
            local &= oracle.delay(&TransitionPattern::from_transitions(&t)?, 5)? <= r.delay + DELAY_TIE;
            t[j] = t[j].flipped();
            t[10 - j] = t[10 - j].flipped();
        }
        local &= r.iterations <= 5;
    }
    c.holds("alg1 local maximum", local, "m=11, every class");
    Ok(c)
}

fn main() -> ExitCode {
    let start = Instant::now();
    let bank = |m: usize| ResponseBank::build_default(&spec(m)).expect("bank builds");
    let loaded = spec(5).with_load_capacitance(100e-15).unwrap();
    let (bank3, bank5) = (bank(3), bank(5));
    println!("acceptance: step {:.4} ps", bank3.dt() * PS);

    type Run<'a> = Box<dyn FnOnce() -> Result<Criterion> + 'a>;
    let criteria: Vec<(&str, Run)> = vec![
        ("baseline model", Box::new(baseline)),
        (
            "buffered three-wire model",
            Box::new(|| table_column(WindowModel::ThreeWire, &spec(3), &[4.04, 7.56, 74.55, 152.24, 207.36], 0.01)),
        ),
        (
            "buffered five-wire model",
            Box::new(|| table_column(WindowModel::FiveWire, &spec(5), &[23.15, 62.09, 106.43, 152.24, 207.36], 0.03)),
        ),
        (
            "five-wire model, 100 fF load",
            Box::new(|| table_column(WindowModel::FiveWire, &loaded, &[25.11, 67.35, 123.46, 164.62, 224.41], 0.03)),
        ),
        (
            "simulator, three wires",
            Box::new(|| simulated_column(&bank3, WindowModel::ThreeWire, &[3.96, 7.41, 72.28, 150.74, 206.40])),
        ),
        (
            "simulator, five wires",
            Box::new(|| simulated_column(&bank5, WindowModel::FiveWire, &[35.30, 63.09, 98.39, 134.19, 218.91])),
        ),
        ("alg1 on 17 wires", Box::new(|| seventeen_wire(&bank(17)))),
        ("alg1 equals exhaustive", Box::new(|| alg1_against_exhaustive(&[(9, &bank(9)), (11, &bank(11))]))),
        ("codebook sizes", Box::new(codebooks)),
        ("codebook worst delays", Box::new(|| codebook_delays(&bank(8)))),
        ("property suite", Box::new(|| properties(&bank3, &bank5))),
    ];

    let mut unexpected = Vec::new();
    for (i, (title, run)) in criteria.into_iter().enumerate() {
        let t0 = Instant::now();
        let criterion = match run() {
            Ok(c) => c,
            Err(e) => {
                println!("{:>2} FAIL {title}: {e}", i + 1);
                unexpected.push(format!("{title}: {e}"));
                continue;
            }
        };
        let verdict = if criterion.pass() { "PASS" } else { "FAIL" };
        println!("{:>2} {verdict} {title} ({:.1} s)", i + 1, t0.elapsed().as_secs_f64());
        for check in &criterion.checks {
            let known = KNOWN_FAILURES.contains(&check.name.as_str());
            let mark = match (check.pass, known) {
                (true, false) => "ok",
                (true, true) => "ok (listed as known failure)",
                (false, true) => "FAIL (known)",
                (false, false) => "FAIL",
            };
            println!("     {:<22} {:<28} {}", check.name, mark, check.detail);
            if !check.pass && !known {
                unexpected.push(format!("{title} / {}", check.name));
            }
        }
    }
    println!("acceptance: {:.1} s", start.elapsed().as_secs_f64());
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {}", unexpected.join(", "));
        ExitCode::FAILURE
    }
}
