// SPDX-License-Identifier: Apache-2.0

//! Trapezoidal transient analysis and 50% crossing extraction.

use serde::{Deserialize, Serialize};

use super::network::Network;
use crate::analytic::buffered_mode;
use crate::bus::{BusSpec, TransitionPattern};
use crate::error::{Error, Result};

/// Settling tolerance on the last sample of a trace.
pub const SETTLE_TOLERANCE: f64 = 1e-4;

/// Recorded node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Probe {
    pub wire: usize,
    pub position: usize,
}

/// Sampled node voltages, normalized to a unit supply.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trace {
    pub times: Vec<f64>,
    pub probes: Vec<Probe>,
    /// One series per probe.
    pub voltages: Vec<Vec<f64>>,
    /// DC voltage of each probe once the sources have switched.
    pub targets: Vec<f64>,
}

impl Trace {
    pub fn probe_index(&self, wire: usize, position: usize) -> Option<usize> {
        self.probes.iter().position(|p| p.wire == wire && p.position == position)
    }

    pub fn series(&self, probe: usize) -> &[f64] {
        &self.voltages[probe]
    }

    /// Largest distance of a final sample from its DC target.
    pub fn settle_error(&self) -> f64 {
        self.voltages
            .iter()
            .zip(&self.targets)
            .map(|(v, t)| v.last().map_or(0.0, |x| (x - t).abs()))
            .fold(0.0, f64::max)
    }
}

/// Default step: 1/32 of the fastest buffered line constant.
pub fn default_dt(spec: &BusSpec) -> f64 {
    buffered_mode(spec, 1.0).1 / 32.0
}

/// Default end time: long enough for the slowest mode of any bus width to
/// settle below [`SETTLE_TOLERANCE`].
pub fn default_t_end(spec: &BusSpec) -> f64 {
    let lambda = spec.lambda();
    let slowest = buffered_mode(spec, 1.0 + 4.0 * lambda).1;
    (60.0 * (1.0 + 3.0 * lambda) * spec.tau()).max(12.0 * slowest)
}

fn levels(bits: &[bool]) -> Vec<f64> {
    bits.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect()
}

/// Far-end probes of every wire.
pub fn far_end_probes(net: &Network) -> Vec<Probe> {
    (0..net.wire_count()).map(|wire| Probe { wire, position: net.segments() }).collect()
}

/// Simulates `pattern` and records the far end of every wire.
pub fn simulate(net: &Network, pattern: &TransitionPattern, dt: f64, t_end: f64) -> Result<Trace> {
    simulate_probes(net, pattern, dt, t_end, &far_end_probes(net), 1)
}

/// Simulates `pattern`, recording `probes` every `stride` steps.
///
/// Starts from the DC solution of the initial codeword; the sources step to
/// the final codeword at `t = 0`. The first step is taken as two backward
/// Euler half steps, which share the trapezoidal system matrix and damp the
/// ringing that the trapezoidal rule otherwise keeps on the stiffest modes
/// after a discontinuous input. The rest is plain trapezoidal.
pub fn simulate_probes(
    net: &Network,
    pattern: &TransitionPattern,
    dt: f64,
    t_end: f64,
    probes: &[Probe],
    stride: usize,
) -> Result<Trace> {
    if pattern.wire_count() != net.wire_count() {
        return Err(Error::InvalidPattern(format!(
            "pattern has {} wires, network has {}",
            pattern.wire_count(),
            net.wire_count()
        )));
    }
    let taps = probe_taps(net, probes)?;
    let before = levels(pattern.initial());
    let after = levels(pattern.final_state());
    let start = net.dc_solution(&before)?;
    let settled = net.dc_solution(&after)?;
    let targets = taps
        .iter()
        .map(|tap| match *tap {
            Tap::Node(i) => settled[i],
            Tap::Source(w) => after[w],
        })
        .collect();
    let mut series = integrate(net, &[Run { start, before, after }], dt, t_end, &taps, stride)?;
    let (times, voltages) = series.pop().expect("one run");
    Ok(Trace { times, probes: probes.to_vec(), voltages, targets })
}

/// Where a probe reads its voltage.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Tap {
    Node(usize),
    /// Pinned driver node of an ideal source.
    Source(usize),
}

pub(crate) fn probe_taps(net: &Network, probes: &[Probe]) -> Result<Vec<Tap>> {
    probes
        .iter()
        .map(|p| {
            if p.wire >= net.wire_count() {
                return Err(Error::WireOutOfRange { index: p.wire, count: net.wire_count() });
            }
            if p.position > net.segments() {
                return Err(Error::InvalidSpec(format!("position {} beyond {} segments", p.position, net.segments())));
            }
            Ok(net.node(p.wire, p.position).map_or(Tap::Source(p.wire), Tap::Node))
        })
        .collect()
}

/// One excitation: DC state before the step and source levels before and
/// after it.
pub(crate) struct Run {
    pub start: Vec<f64>,
    pub before: Vec<f64>,
    pub after: Vec<f64>,
}

/// Integrates every run on one factorization. Returns `(times, series)` per
/// run, one series per tap.
#[allow(clippy::type_complexity)]
pub(crate) fn integrate(
    net: &Network,
    runs: &[Run],
    dt: f64,
    t_end: f64,
    taps: &[Tap],
    stride: usize,
) -> Result<Vec<(Vec<f64>, Vec<Vec<f64>>)>> {
    if !(dt > 0.0 && dt.is_finite()) || !(t_end > 0.0 && t_end.is_finite()) {
        return Err(Error::InvalidSpec(format!("dt = {dt} and t_end = {t_end} must be positive")));
    }
    let stride = stride.max(1);
    let steps = (t_end / dt).ceil() as usize;
    let factor = net.system_factor(dt)?;
    let n = net.node_count();
    let c = net.capacitance();
    let scale = 2.0 / dt;
    let mut rhs = vec![0.0; n];
    let mut bu = vec![0.0; n];

    let mut out = Vec::with_capacity(runs.len());
    for run in runs {
        let mut v = run.start.clone();
        net.source_vector(&run.after, &mut bu);
        let sample = |v: &[f64], sources: &[f64], series: &mut Vec<Vec<f64>>| {
            for (s, tap) in series.iter_mut().zip(taps) {
                s.push(match *tap {
                    Tap::Node(i) => v[i],
                    Tap::Source(w) => sources[w],
                });
            }
        };
        let mut times = Vec::with_capacity(steps / stride + 2);
        let mut series: Vec<Vec<f64>> = vec![Vec::with_capacity(steps / stride + 2); taps.len()];
        times.push(0.0);
        sample(&v, &run.before, &mut series);

        let half_step = |v: &[f64], rhs: &mut [f64]| {
            c.mul_vec(v, rhs);
            rhs.iter_mut().zip(&bu).for_each(|(r, b)| *r = *r * scale + b);
            factor.solve_in_place(rhs);
        };
        for step in 1..=steps {
            half_step(&v, &mut rhs);
            if step == 1 {
                v.copy_from_slice(&rhs);
                half_step(&v, &mut rhs);
                v.copy_from_slice(&rhs);
            } else {
                v.iter_mut().zip(&rhs).for_each(|(x, y)| *x = 2.0 * y - *x);
            }
            if step % stride == 0 || step == steps {
                times.push(step as f64 * dt);
                sample(&v, &run.after, &mut series);
            }
        }
        out.push((times, series));
    }
    Ok(out)
}

/// Last crossing of `threshold` on probe `probe`, by backward scan and linear
/// interpolation between samples.
pub fn extract_crossing(trace: &Trace, probe: usize, threshold: f64) -> Result<f64> {
    let v = trace.voltages.get(probe).ok_or(Error::WireOutOfRange { index: probe, count: trace.probes.len() })?;
    let target = trace.targets[probe];
    let deviation = v.last().map_or(f64::INFINITY, |x| (x - target).abs());
    if deviation > SETTLE_TOLERANCE {
        return Err(Error::NotSettled { deviation });
    }
    last_crossing(&trace.times, v, threshold)
}

pub(crate) fn last_crossing(times: &[f64], v: &[f64], threshold: f64) -> Result<f64> {
    let no_crossing = Error::NoCrossing { threshold };
    let n = v.len();
    if n < 2 {
        return Err(no_crossing);
    }
    let final_side = v[n - 1] > threshold;
    if v[n - 1] == threshold {
        return Err(no_crossing);
    }
    for i in (0..n - 1).rev() {
        let side = v[i] > threshold;
        if side != final_side || v[i] == threshold {
            let (t0, t1, v0, v1) = (times[i], times[i + 1], v[i], v[i + 1]);
            if v1 == v0 {
                return Ok(t0);
            }
            return Ok(t0 + (threshold - v0) * (t1 - t0) / (v1 - v0));
        }
    }
    Err(no_crossing)
}

/// Pointwise weighted sum of traces that share a time grid and probe set.
pub fn superpose(traces: &[Trace], weights: &[f64]) -> Result<Trace> {
    let first = traces.first().ok_or(Error::GridMismatch)?;
    if traces.len() != weights.len() {
        return Err(Error::GridMismatch);
    }
    if traces.iter().any(|t| t.times != first.times || t.probes != first.probes) {
        return Err(Error::GridMismatch);
    }
    let mut voltages = vec![vec![0.0; first.times.len()]; first.probes.len()];
    let mut targets = vec![0.0; first.probes.len()];
    for (trace, &w) in traces.iter().zip(weights) {
        for (acc, series) in voltages.iter_mut().zip(&trace.voltages) {
            acc.iter_mut().zip(series).for_each(|(a, x)| *a += w * x);
        }
        targets.iter_mut().zip(&trace.targets).for_each(|(a, x)| *a += w * x);
    }
    Ok(Trace { times: first.times.clone(), probes: first.probes.clone(), voltages, targets })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::build_network;

    #[test]
    fn crossing_interpolates() {
        let times = [0.0, 1.0, 2.0, 3.0];
        let v = [0.0, 0.4, 0.6, 1.0];
        assert!((last_crossing(&times, &v, 0.5).unwrap() - 1.5).abs() < 1e-12);
        let bumpy = [0.0, 0.6, 0.4, 0.8];
        assert!((last_crossing(&times, &bumpy, 0.5).unwrap() - 2.25).abs() < 1e-12);
        assert!(last_crossing(&times, &[0.7, 0.8, 0.9, 1.0], 0.5).is_err());
    }

    #[test]
    fn lumped_section_exponential() {
        // One ideal-driven section: far node sees a single RC pole.
        let spec = BusSpec::new(1, 1e3, 1e-9, 0.0, 1.0, 0.0, 0.0).unwrap().with_segments(1).unwrap();
        let net = build_network(&spec).unwrap();
        let tau = 1e3 * 1e-9 / 2.0;
        let dt = tau / 1000.0;
        let trace = simulate(&net, &"u".parse().unwrap(), dt, 20.0 * tau).unwrap();
        let t = extract_crossing(&trace, 0, 0.5).unwrap();
        assert!((t - tau * 2f64.ln()).abs() < dt, "{t}");
    }

    #[test]
    fn quiet_pattern_stays_put() {
        let spec = BusSpec::reference_45nm(3).unwrap().with_segments(10).unwrap();
        let net = build_network(&spec).unwrap();
        let trace = simulate(&net, &"010>010".parse().unwrap(), 1e-13, 1e-11).unwrap();
        for (series, level) in trace.voltages.iter().zip([0.0, 1.0, 0.0]) {
            assert!(series.iter().all(|v| (v - level).abs() < 1e-12));
        }
    }

    #[test]
    fn superpose_checks_grids() {
        let spec = BusSpec::reference_45nm(2).unwrap().with_segments(5).unwrap();
        let net = build_network(&spec).unwrap();
        let a = simulate(&net, &"u-".parse().unwrap(), 1e-13, 1e-11).unwrap();
        let b = simulate(&net, &"u-".parse().unwrap(), 2e-13, 1e-11).unwrap();
        assert!(matches!(superpose(&[a.clone(), b], &[1.0, 1.0]), Err(Error::GridMismatch)));
        let zero = superpose(std::slice::from_ref(&a), &[0.0]).unwrap();
        assert!(zero.voltages.iter().flatten().all(|v| *v == 0.0));
    }
}
