// SPDX-License-Identifier: Apache-2.0

//! Plain-text exports: SPICE deck and CSV traces.

use std::fmt::Write as _;

use super::transient::Trace;
use crate::bus::{BusSpec, TransitionPattern};

/// SPICE deck of the same π-section ladder the simulator builds. Node
/// `W{i}N{j}` is wire `i` (1-based) at position `j`; sources are `W{i}S`.
pub fn spice_netlist(spec: &BusSpec, pattern: &TransitionPattern, t_end: f64) -> String {
    let m = spec.wire_count();
    let n = spec.segments();
    let seg = spec.length() / n as f64;
    let r_seg = spec.r() * seg;
    let cg = spec.c() * seg;
    let cc = spec.cc() * seg;
    let mut out = String::new();
    let _ = writeln!(out, "* coupled RC bus: {m} wires, {n} sections, lambda = {:.6}", spec.lambda());
    let _ = writeln!(out, "* pattern {}", pattern.bit_string());
    let node = |w: usize, j: usize| format!("W{}N{}", w + 1, j);
    for w in 0..m {
        let v0 = if pattern.initial()[w] { 1.0 } else { 0.0 };
        let v1 = if pattern.final_state()[w] { 1.0 } else { 0.0 };
        let _ = writeln!(out, "V{} W{}S 0 PWL(0 {v0} 1e-18 {v1})", w + 1, w + 1);
        if spec.driver_resistance() > 0.0 {
            let _ = writeln!(out, "RS{} W{}S {} {:e}", w + 1, w + 1, node(w, 0), spec.driver_resistance());
        } else {
            let _ = writeln!(out, "RS{} W{}S {} 0", w + 1, w + 1, node(w, 0));
        }
        for j in 0..n {
            let _ = writeln!(out, "R{}_{} {} {} {:e}", w + 1, j + 1, node(w, j), node(w, j + 1), r_seg);
        }
        for j in 0..=n {
            let ends = if j == 0 || j == n { 0.5 } else { 1.0 };
            let _ = writeln!(out, "CG{}_{} {} 0 {:e}", w + 1, j, node(w, j), ends * cg);
            if w + 1 < m && cc > 0.0 {
                let _ = writeln!(out, "CC{}_{} {} {} {:e}", w + 1, j, node(w, j), node(w + 1, j), ends * cc);
            }
        }
        if spec.load_capacitance() > 0.0 {
            let _ = writeln!(out, "CL{} {} 0 {:e}", w + 1, node(w, n), spec.load_capacitance());
        }
    }
    let _ = writeln!(out, ".tran {:e} {:e}", t_end / 10000.0, t_end);
    let _ = writeln!(out, ".end");
    out
}

/// CSV with a `t_seconds` column and one column per probe.
pub fn trace_csv(trace: &Trace) -> String {
    let mut out = String::from("t_seconds");
    for p in &trace.probes {
        let _ = write!(out, ",W{}N{}", p.wire + 1, p.position);
    }
    out.push('\n');
    for (i, t) in trace.times.iter().enumerate() {
        let _ = write!(out, "{t:e}");
        for series in &trace.voltages {
            let _ = write!(out, ",{:.9}", series[i]);
        }
        out.push('\n');
    }
    out
}
