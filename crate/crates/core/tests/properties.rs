// SPDX-License-Identifier: Apache-2.0

use proptest::prelude::*;
use xtalk::analytic::{
    crossing_time, five_wire_waveform, three_wire_waveform, window_waveform, wire_delay, ModalExpansion,
    ProfileEvaluator,
};
use xtalk::cac::{certify, fpc_set, generate_codebook, pair_class, Codebook, DEFAULT_NODE_BUDGET};
use xtalk::search::{alg1, class_representative, exhaustive, symmetric_enumerate, AnalyticOracle, DelayOracle};
use xtalk::sim::{build_network, simulate, superpose, ResponseBank};
use xtalk::{
    baseline_delay, classify_bus, classify_wire, delta_of, BusSpec, CrosstalkClass, DeltaVector, Transition,
    TransitionPattern,
};

fn transition() -> impl Strategy<Value = Transition> {
    prop_oneof![Just(Transition::Fall), Just(Transition::Steady), Just(Transition::Rise)]
}

fn pattern(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = TransitionPattern> {
    prop::collection::vec(transition(), len).prop_map(|t| TransitionPattern::from_transitions(&t).unwrap())
}

/// A pattern of the given width whose wire `k` switches.
fn pattern_switching(m: usize, k: usize) -> impl Strategy<Value = TransitionPattern> {
    (prop::collection::vec(transition(), m), prop::bool::ANY).prop_map(move |(mut t, up)| {
        t[k] = if up { Transition::Rise } else { Transition::Fall };
        TransitionPattern::from_transitions(&t).unwrap()
    })
}

fn spec(m: usize) -> BusSpec {
    BusSpec::reference_45nm(m).unwrap()
}

fn decoupled(m: usize) -> BusSpec {
    spec(m).with_coupling(0.0).unwrap()
}

proptest! {
    #[test]
    fn classes_are_even_in_sign(p in pattern(1..=12)) {
        let d = delta_of(&p);
        prop_assert_eq!(classify_bus(&d), classify_bus(&d.negated()));
        prop_assert_eq!(classify_bus(&d), classify_bus(&delta_of(&p.complemented())));
    }

    #[test]
    fn classes_mirror(p in pattern(1..=12)) {
        let (fwd, max) = classify_bus(&delta_of(&p));
        let (mut rev, rmax) = classify_bus(&delta_of(&p.mirrored()));
        rev.reverse();
        prop_assert_eq!(fwd, rev);
        prop_assert_eq!(max, rmax);
    }

    #[test]
    fn pattern_text_round_trips(bits in prop::collection::vec((any::<bool>(), any::<bool>()), 1..=20)) {
        let (from, to): (Vec<bool>, Vec<bool>) = bits.into_iter().unzip();
        let p = TransitionPattern::new(from, to).unwrap();
        prop_assert_eq!(&p.to_string().parse::<TransitionPattern>().unwrap(), &p);
        prop_assert_eq!(&p.bit_string().parse::<TransitionPattern>().unwrap(), &p);
        // Arrows drop the level of steady wires.
        prop_assert_eq!(p.arrow_string().parse::<TransitionPattern>().unwrap().transitions(), p.transitions());
        let json = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<TransitionPattern>(&json).unwrap(), p);
    }

    #[test]
    fn baseline_grows_with_class(p in pattern(2..=9), lambda in 0.01f64..20.0) {
        let s = spec(p.wire_count()).with_coupling(lambda * 8.263e-12).unwrap();
        let d = delta_of(&p);
        for j in 0..p.wire_count() {
            for k in 0..p.wire_count() {
                if d.as_slice()[j] == 0 || d.as_slice()[k] == 0 {
                    continue;
                }
                let (a, b) = (baseline_delay(&d, j, &s).unwrap(), baseline_delay(&d, k, &s).unwrap());
                if a.class < b.class {
                    prop_assert!(a.value < b.value);
                }
            }
        }
    }

    #[test]
    fn spec_json_round_trips(
        m in 1usize..40,
        r in 1.0f64..1e6,
        c in 1e-13f64..1e-9,
        cc in 0.0f64..1e-9,
        len in 1e-5f64..1e-1,
        rs in 0.0f64..1e4,
        cl in 0.0f64..1e-12,
        n in 1usize..400,
    ) {
        let s = BusSpec::new(m, r, c, cc, len, rs, cl).unwrap().with_segments(n).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        prop_assert_eq!(serde_json::from_str::<BusSpec>(&json).unwrap(), s);
    }

    #[test]
    fn three_wire_collapses_without_coupling(p in pattern_switching(3, 1), buffered in prop::bool::ANY) {
        let s = decoupled(3);
        let lone = crossing_time(&window_waveform(&"u".parse().unwrap(), 0, &spec(1), buffered).unwrap(), 0.5).unwrap();
        let d = crossing_time(&three_wire_waveform(&p, &s, buffered).unwrap(), 0.5).unwrap();
        prop_assert!((d / lone - 1.0).abs() < 1e-6, "{} vs {}", d, lone);
    }

    #[test]
    fn five_wire_collapses_without_coupling(p in pattern_switching(5, 2), buffered in prop::bool::ANY) {
        let s = decoupled(5);
        let lone = crossing_time(&window_waveform(&"u".parse().unwrap(), 0, &spec(1), buffered).unwrap(), 0.5).unwrap();
        let d = crossing_time(&five_wire_waveform(&p, &s, buffered).unwrap(), 0.5).unwrap();
        prop_assert!((d / lone - 1.0).abs() < 1e-6, "{} vs {}", d, lone);
    }

    #[test]
    fn waveform_endpoints(m in 1usize..9, seed in prop::collection::vec(transition(), 9), k in 0usize..9, up in prop::bool::ANY) {
        let k = k % m;
        let mut t = seed[..m].to_vec();
        t[k] = if up { Transition::Rise } else { Transition::Fall };
        let p = TransitionPattern::from_transitions(&t).unwrap();
        for buffered in [false, true] {
            let w = window_waveform(&p, k, &spec(m), buffered).unwrap();
            let start = if p.initial()[k] { 1.0 } else { 0.0 };
            let end = if p.final_state()[k] { 1.0 } else { 0.0 };
            prop_assert!((w.initial_value() - start).abs() < 1e-9);
            prop_assert!((w.final_value() - end).abs() < 1e-12);
            prop_assert!((w.value(1e3 * w.max_time_constant()) - end).abs() < 1e-9);
        }
    }

    #[test]
    fn crossing_hits_threshold(
        amps in prop::collection::vec(0.05f64..1.0, 1..4),
        taus in prop::collection::vec(1e-12f64..1e-9, 4),
        threshold in 0.05f64..0.95,
    ) {
        let total: f64 = amps.iter().sum();
        let terms = amps
            .iter()
            .zip(&taus)
            .map(|(a, t)| xtalk::analytic::ModalTerm { amplitude: a / total, time_constant: *t, weight: a / total })
            .collect();
        let w = ModalExpansion::new(1.0, terms).unwrap();
        let t = crossing_time(&w, threshold).unwrap();
        prop_assert!((w.value(t) - threshold).abs() < 1e-6);
    }

    #[test]
    fn profile_is_sign_and_mirror_symmetric(p in pattern(5..=9)) {
        let s = spec(p.wire_count());
        let m = p.wire_count();
        let ev = ProfileEvaluator::default();
        for k in (0..m).filter(|&k| p.transition(k) != Transition::Steady) {
            let d = wire_delay(&p, k, &s, ev).unwrap().value;
            let neg = wire_delay(&p.complemented(), k, &s, ev).unwrap().value;
            let mir = wire_delay(&p.mirrored(), m - 1 - k, &s, ev).unwrap().value;
            prop_assert!((d / neg - 1.0).abs() < 1e-8);
            prop_assert!((d / mir - 1.0).abs() < 1e-8);
        }
    }
}

#[test]
fn internal_class_formula_over_all_triples() {
    for a in -1i8..=1 {
        for b in -1i8..=1 {
            for c in -1i8..=1 {
                let d = DeltaVector::new(vec![a, b, c]).unwrap();
                let class = classify_wire(&d, 1).unwrap().index();
                let expect = if b == 0 { 0 } else { 2 - b * (a + c) };
                assert_eq!(i16::from(class), i16::from(expect), "{a} {b} {c}");
                assert!(class <= 4);
            }
        }
    }
}

// Simulator properties run on a coarse ladder to stay quick; the physics
// they check does not depend on the section count.

fn small(m: usize) -> BusSpec {
    spec(m).with_segments(8).unwrap()
}

const DT: f64 = 0.25e-12;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn simulator_is_linear(p in pattern(2..=5)) {
        prop_assume!(!p.is_quiet());
        let s = small(p.wire_count());
        let net = build_network(&s).unwrap();
        let t_end = 200e-12;
        let direct = simulate(&net, &p, DT, t_end).unwrap();
        // Initial state plus one single-wire step per switching wire.
        let m = p.wire_count();
        let hold = TransitionPattern::new(p.initial().to_vec(), p.initial().to_vec()).unwrap();
        let mut traces = vec![simulate(&net, &hold, DT, t_end).unwrap()];
        let mut weights = vec![1.0];
        for k in (0..m).filter(|&k| p.transition(k) != Transition::Steady) {
            let mut t = vec![Transition::Steady; m];
            t[k] = Transition::Rise;
            traces.push(simulate(&net, &TransitionPattern::from_transitions(&t).unwrap(), DT, t_end).unwrap());
            weights.push(f64::from(p.transition(k).delta()));
        }
        let sum = superpose(&traces, &weights).unwrap();
        let err = direct
            .voltages
            .iter()
            .zip(&sum.voltages)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()))
            .fold(0.0, f64::max);
        prop_assert!(err <= 1e-6, "{}", err);
    }

    #[test]
    fn simulator_mirror_and_sign(p in pattern(2..=5)) {
        prop_assume!(!p.is_quiet());
        let m = p.wire_count();
        let s = small(m);
        let net = build_network(&s).unwrap();
        let t_end = 200e-12;
        let a = simulate(&net, &p, DT, t_end).unwrap();
        let b = simulate(&net, &p.mirrored(), DT, t_end).unwrap();
        let c = simulate(&net, &p.complemented(), DT, t_end).unwrap();
        for k in 0..m {
            for i in 0..a.times.len() {
                prop_assert!((a.voltages[k][i] - b.voltages[m - 1 - k][i]).abs() < 1e-9);
                prop_assert!((a.voltages[k][i] + c.voltages[k][i] - 1.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn simulator_settles_to_final_codeword(p in pattern(1..=5)) {
        let s = small(p.wire_count());
        let net = build_network(&s).unwrap();
        let trace = simulate(&net, &p, DT, xtalk::sim::default_t_end(&s)).unwrap();
        for (k, series) in trace.voltages.iter().enumerate() {
            let target = if p.final_state()[k] { 1.0 } else { 0.0 };
            prop_assert!((series.last().unwrap() - target).abs() < 1e-4);
        }
    }
}

#[test]
fn decoupled_single_source_is_monotonic() {
    let s = decoupled(3).with_segments(10).unwrap();
    let net = build_network(&s).unwrap();
    let probes: Vec<_> =
        (0..3).flat_map(|w| (0..=10).map(move |j| xtalk::sim::Probe { wire: w, position: j })).collect();
    let trace = xtalk::sim::simulate_probes(&net, &"-u-".parse().unwrap(), DT, 300e-12, &probes, 1).unwrap();
    for series in &trace.voltages {
        for w in series.windows(2) {
            assert!(w[1] >= w[0] - 1e-12);
        }
    }
}

#[test]
fn decoupled_simulator_ignores_neighbours() {
    let s = decoupled(3).with_segments(10).unwrap();
    let bank = ResponseBank::build(&s, DT, 300e-12).unwrap();
    let lone = bank.delay(&"-u-".parse().unwrap(), 1).unwrap();
    for text in ["uuu", "uu-", "du-", "dud", "-ud"] {
        let d = bank.delay(&text.parse().unwrap(), 1).unwrap();
        assert!((d / lone - 1.0).abs() < 1e-6, "{text}");
    }
}

// Search properties with the analytic oracle.

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn alg1_terminates_at_a_local_maximum(half in 1usize..6, class in 0u8..5) {
        let m = 2 * half + 3;
        let class = CrosstalkClass::new(class).unwrap();
        let oracle = AnalyticOracle { spec: spec(m), evaluator: ProfileEvaluator::default() };
        let r = alg1(m, class, &class_representative(class), &oracle).unwrap();
        prop_assert!((r.delay - oracle.delay(&r.pattern, m / 2).unwrap()).abs() < 1e-18);
        for w in r.trajectory.windows(2) {
            prop_assert!(w[1].delay > w[0].delay);
        }
        let mut t = r.pattern.transitions();
        for j in 0..half {
            t[j] = t[j].flipped();
            t[m - 1 - j] = t[m - 1 - j].flipped();
            let d = oracle.delay(&TransitionPattern::from_transitions(&t).unwrap(), m / 2).unwrap();
            prop_assert!(d <= r.delay + 1e-15);
            t[j] = t[j].flipped();
            t[m - 1 - j] = t[m - 1 - j].flipped();
        }
    }
}

#[test]
fn symmetric_family_never_beats_exhaustive() {
    for m in [5, 7] {
        let oracle = AnalyticOracle { spec: spec(m), evaluator: ProfileEvaluator::default() };
        for class in CrosstalkClass::ALL {
            let all = exhaustive(m, class, &oracle, 10_000).unwrap();
            let sym = symmetric_enumerate(m, class, &oracle, 10_000).unwrap();
            assert!(sym.delay <= all.delay + 1e-15, "{m} {class}");
        }
    }
}

// Codebooks.

#[test]
fn fpc_counts_follow_fibonacci() {
    let counts: Vec<usize> = (1..=16).map(|n| fpc_set(n).unwrap().len()).collect();
    assert_eq!(&counts[..3], &[2, 4, 6]);
    for w in counts.windows(3) {
        assert_eq!(w[2], w[1] + w[0]);
    }
}

#[test]
fn codebooks_grow_with_cap_and_certify() {
    for n in 1..=6 {
        let mut last = 0;
        for cap in CrosstalkClass::ALL {
            let book = generate_codebook(n, cap, DEFAULT_NODE_BUDGET).unwrap();
            assert!(book.is_optimal());
            assert!(book.len() >= last, "n={n} {cap}");
            last = book.len();
            assert!(certify(&book).unwrap().valid);
            // Mirror closure: bit-reversed transitions keep their class.
            let rev = |w: u32| w.reverse_bits() >> (32 - n);
            for (u, v) in book.transitions() {
                assert_eq!(pair_class(u, v, n).unwrap(), pair_class(rev(u), rev(v), n).unwrap());
            }
        }
        assert_eq!(last, 1 << n);
    }
}

proptest! {
    #[test]
    fn pair_class_is_symmetric(n in 1usize..12, u in any::<u32>(), v in any::<u32>()) {
        let mask = (1u32 << n) - 1;
        let (u, v) = (u & mask, v & mask);
        prop_assert_eq!(pair_class(u, v, n).unwrap(), pair_class(v, u, n).unwrap());
    }

    #[test]
    fn codebook_json_round_trips(n in 1usize..10, words in prop::collection::btree_set(any::<u32>(), 0..20), cap in 0u8..5) {
        let mask = (1u32 << n) - 1;
        let words: std::collections::BTreeSet<u32> = words.into_iter().map(|w| w & mask).collect();
        let book = Codebook::new(n, words.into_iter().collect(), CrosstalkClass::new(cap).unwrap()).unwrap();
        prop_assert_eq!(Codebook::from_json(&book.to_json().unwrap()).unwrap(), book);
    }
}
