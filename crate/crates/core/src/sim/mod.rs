// SPDX-License-Identifier: Apache-2.0

//! Transient simulation of the segmented RC bus.

mod banded;
mod bank;
mod export;
mod network;
mod transient;

pub use banded::{BandCholesky, BandMatrix};
pub use bank::{choose_dt, ResponseBank, DT_TOLERANCE};
pub use export::{spice_netlist, trace_csv};
pub use network::{build_network, Network, NetworkSummary};
pub use transient::{
    default_dt, default_t_end, extract_crossing, far_end_probes, simulate, simulate_probes, superpose, Probe, Trace,
    SETTLE_TOLERANCE,
};

use crate::bus::{classify_wire, delta_of, BusSpec, DelayEstimate, ModelTag, Transition, TransitionPattern};
use crate::error::{Error, Result};

/// Simulates `pattern` on `spec` with the default step and end time and
/// reports the delay of every transitioning wire.
pub fn worst_delay_sim(pattern: &TransitionPattern, spec: &BusSpec) -> Result<Vec<DelayEstimate>> {
    if pattern.wire_count() != spec.wire_count() {
        return Err(Error::InvalidPattern(format!(
            "pattern has {} wires, bus has {}",
            pattern.wire_count(),
            spec.wire_count()
        )));
    }
    if pattern.is_quiet() {
        return Ok(Vec::new());
    }
    let net = build_network(spec)?;
    let trace = simulate(&net, pattern, choose_dt(spec)?, default_t_end(spec))?;
    delays_from_trace(&trace, pattern)
}

/// Per-wire delays from a far-end trace.
pub fn delays_from_trace(trace: &Trace, pattern: &TransitionPattern) -> Result<Vec<DelayEstimate>> {
    let delta = delta_of(pattern);
    (0..pattern.wire_count())
        .filter(|&k| pattern.transition(k) != Transition::Steady)
        .map(|k| {
            let probe = trace
                .probes
                .iter()
                .enumerate()
                .filter(|(_, p)| p.wire == k)
                .max_by_key(|(_, p)| p.position)
                .map(|(i, _)| i)
                .ok_or(Error::WireOutOfRange { index: k, count: trace.probes.len() })?;
            Ok(DelayEstimate {
                wire: k,
                value: extract_crossing(trace, probe, 0.5)?,
                source: ModelTag::Simulator,
                class: classify_wire(&delta, k)?,
            })
        })
        .collect()
}
