// SPDX-License-Identifier: Apache-2.0

//! Unit step responses of a bus, recombined by linearity.
//!
//! The far-end voltage of wire `o` under any pattern is
//! `V_o(t) = V_o(0) + Σ_s Δ_s·H_{s→o}(t)`, where `H_{s→o}` is the response
//! of wire `o` to a unit step on wire `s` alone. Mirror symmetry of the bus
//! gives `H_{s→o} = H_{m−1−s → m−1−o}`, so only half the sources are
//! simulated.

use super::network::{build_network, Network};
use super::transient::{
    default_dt, default_t_end, far_end_probes, integrate, probe_taps, Run, Trace, SETTLE_TOLERANCE,
};
use crate::bus::{classify_wire, delta_of, BusSpec, DelayEstimate, ModelTag, Transition, TransitionPattern};
use crate::error::{Error, Result};

/// Coarse stride of the backward crossing scan.
const SCAN_STRIDE: usize = 16;

#[derive(Debug, Clone)]
pub struct ResponseBank {
    spec: BusSpec,
    dt: f64,
    times: Vec<f64>,
    /// `unit[s][o]`: far end of wire `o` for a unit step on wire `s`,
    /// `s < ⌈m/2⌉`.
    unit: Vec<Vec<Vec<f64>>>,
}

impl ResponseBank {
    pub fn build(spec: &BusSpec, dt: f64, t_end: f64) -> Result<Self> {
        let net = build_network(spec)?;
        Self::from_network(&net, dt, t_end)
    }

    /// Uses [`choose_dt`] and [`default_t_end`].
    pub fn build_default(spec: &BusSpec) -> Result<Self> {
        let dt = choose_dt(spec)?;
        Self::build(spec, dt, default_t_end(spec))
    }

    pub fn from_network(net: &Network, dt: f64, t_end: f64) -> Result<Self> {
        let m = net.wire_count();
        let taps = probe_taps(net, &far_end_probes(net))?;
        let zeros = vec![0.0; m];
        let runs: Vec<Run> = (0..m.div_ceil(2))
            .map(|s| {
                let mut after = zeros.clone();
                after[s] = 1.0;
                Run { start: vec![0.0; net.node_count()], before: zeros.clone(), after }
            })
            .collect();
        let results = integrate(net, &runs, dt, t_end, &taps, 1)?;
        let times = results[0].0.clone();
        let unit: Vec<Vec<Vec<f64>>> = results.into_iter().map(|(_, series)| series).collect();
        for (s, responses) in unit.iter().enumerate() {
            for (o, series) in responses.iter().enumerate() {
                let target = if s == o { 1.0 } else { 0.0 };
                let deviation = (series.last().copied().unwrap_or(f64::NAN) - target).abs();
                if deviation.is_nan() || deviation > SETTLE_TOLERANCE / m as f64 {
                    return Err(Error::NotSettled { deviation });
                }
            }
        }
        Ok(ResponseBank { spec: net.spec().clone(), dt, times, unit })
    }

    pub fn spec(&self) -> &BusSpec {
        &self.spec
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn wire_count(&self) -> usize {
        self.spec.wire_count()
    }

    /// Far end of `observed` for a unit step on `source`.
    pub fn response(&self, source: usize, observed: usize) -> &[f64] {
        let m = self.wire_count();
        if source < self.unit.len() {
            &self.unit[source][observed]
        } else {
            &self.unit[m - 1 - source][m - 1 - observed]
        }
    }

    fn check(&self, pattern: &TransitionPattern, observed: usize) -> Result<()> {
        if pattern.wire_count() != self.wire_count() {
            return Err(Error::InvalidPattern(format!(
                "pattern has {} wires, bus has {}",
                pattern.wire_count(),
                self.wire_count()
            )));
        }
        if observed >= self.wire_count() {
            return Err(Error::WireOutOfRange { index: observed, count: self.wire_count() });
        }
        Ok(())
    }

    /// Far-end waveform of `observed` under `pattern`.
    pub fn waveform(&self, pattern: &TransitionPattern, observed: usize) -> Result<Vec<f64>> {
        self.check(pattern, observed)?;
        let delta = delta_of(pattern);
        let start = if pattern.initial()[observed] { 1.0 } else { 0.0 };
        let mut v = vec![start; self.times.len()];
        for (s, &d) in delta.as_slice().iter().enumerate() {
            if d != 0 {
                let d = f64::from(d);
                v.iter_mut().zip(self.response(s, observed)).for_each(|(x, h)| *x += d * h);
            }
        }
        Ok(v)
    }

    /// Far-end traces of every wire, as the simulator would record them.
    pub fn trace(&self, pattern: &TransitionPattern) -> Result<Trace> {
        let m = self.wire_count();
        let voltages = (0..m).map(|o| self.waveform(pattern, o)).collect::<Result<Vec<_>>>()?;
        let probes = (0..m).map(|wire| super::transient::Probe { wire, position: self.spec.segments() }).collect();
        let targets = pattern.final_state().iter().map(|&b| if b { 1.0 } else { 0.0 }).collect();
        Ok(Trace { times: self.times.clone(), probes, voltages, targets })
    }

    /// 50% delay of `observed`: last crossing, linear interpolation.
    pub fn delay(&self, pattern: &TransitionPattern, observed: usize) -> Result<f64> {
        self.check(pattern, observed)?;
        if pattern.transition(observed) == Transition::Steady {
            return Err(Error::NoTransition { wire: observed });
        }
        let delta = delta_of(pattern);
        let active: Vec<(f64, &[f64])> = delta
            .as_slice()
            .iter()
            .enumerate()
            .filter(|(_, d)| **d != 0)
            .map(|(s, d)| (f64::from(*d), self.response(s, observed)))
            .collect();
        let start = if pattern.initial()[observed] { 1.0 } else { 0.0 };
        let at = |i: usize| start + active.iter().map(|(d, h)| d * h[i]).sum::<f64>();
        let threshold = 0.5;
        let n = self.times.len();
        let last = at(n - 1);
        let target = if pattern.final_state()[observed] { 1.0 } else { 0.0 };
        if (last - target).abs() > SETTLE_TOLERANCE {
            return Err(Error::NotSettled { deviation: (last - target).abs() });
        }
        let final_side = last > threshold;

        // Coarse backward scan, then the fine scan inside the bracket.
        let mut hi = n - 1;
        let mut lo = None;
        while hi > 0 {
            let i = hi.saturating_sub(SCAN_STRIDE);
            if (at(i) > threshold) != final_side {
                lo = Some(i);
                break;
            }
            hi = i;
        }
        let lo = lo.ok_or(Error::NoCrossing { threshold })?;
        let mut v_next = at(hi);
        for i in (lo..hi).rev() {
            let v = at(i);
            if (v > threshold) != final_side {
                let (t0, t1) = (self.times[i], self.times[i + 1]);
                return Ok(t0 + (threshold - v) * (t1 - t0) / (v_next - v));
            }
            v_next = v;
        }
        Err(Error::NoCrossing { threshold })
    }

    /// Simulated delay of every transitioning wire.
    pub fn profile(&self, pattern: &TransitionPattern) -> Result<Vec<DelayEstimate>> {
        let delta = delta_of(pattern);
        (0..pattern.wire_count())
            .filter(|&k| pattern.transition(k) != Transition::Steady)
            .map(|k| {
                Ok(DelayEstimate {
                    wire: k,
                    value: self.delay(pattern, k)?,
                    source: ModelTag::Simulator,
                    class: classify_wire(&delta, k)?,
                })
            })
            .collect()
    }
}

/// Largest relative change allowed when the step is halved.
pub const DT_TOLERANCE: f64 = 1e-3;

/// Step size for `spec`, starting at [`default_dt`] and halving until the
/// worst-pattern delays of a three-wire bus with the same line parameters
/// move by less than [`DT_TOLERANCE`] when the step is halved once more.
pub fn choose_dt(spec: &BusSpec) -> Result<f64> {
    let probe = spec.clone().with_wire_count(3)?;
    let patterns: Vec<TransitionPattern> =
        ["uuu", "uu-", "-u-", "du-", "dud"].iter().map(|s| s.parse().expect("static pattern")).collect();
    let t_end = default_t_end(spec);
    let net = build_network(&probe)?;
    let delays = |dt: f64| -> Result<Vec<f64>> {
        let bank = ResponseBank::from_network(&net, dt, t_end)?;
        patterns.iter().map(|p| bank.delay(p, 1)).collect()
    };
    let mut dt = default_dt(spec);
    let mut coarse = delays(dt)?;
    for _ in 0..6 {
        let fine = delays(dt / 2.0)?;
        let change = coarse.iter().zip(&fine).map(|(a, b)| (a / b - 1.0).abs()).fold(0.0, f64::max);
        if change < DT_TOLERANCE {
            return Ok(dt);
        }
        dt /= 2.0;
        coarse = fine;
    }
    Ok(dt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{extract_crossing, simulate};

    #[test]
    fn bank_matches_direct_simulation() {
        let spec = BusSpec::reference_45nm(4).unwrap().with_segments(20).unwrap();
        let dt = 0.2e-12;
        let t_end = default_t_end(&spec);
        let bank = ResponseBank::build(&spec, dt, t_end).unwrap();
        let net = build_network(&spec).unwrap();
        for text in ["dud-", "1011>0110", "uuuu", "-du-"] {
            let pattern: TransitionPattern = text.parse().unwrap();
            let direct = simulate(&net, &pattern, dt, t_end).unwrap();
            let combined = bank.trace(&pattern).unwrap();
            for (a, b) in direct.voltages.iter().zip(&combined.voltages) {
                let err = a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
                assert!(err < 1e-9, "{text}: {err}");
            }
            for k in 0..4 {
                if pattern.transition(k) != Transition::Steady {
                    let want = extract_crossing(&direct, k, 0.5).unwrap();
                    let got = bank.delay(&pattern, k).unwrap();
                    assert!((want - got).abs() < 1e-15, "{text} wire {k}");
                }
            }
        }
    }

    #[test]
    fn quiet_observed_wire() {
        let spec = BusSpec::reference_45nm(2).unwrap().with_segments(5).unwrap();
        let bank = ResponseBank::build(&spec, 0.5e-12, default_t_end(&spec)).unwrap();
        assert!(matches!(bank.delay(&"u-".parse().unwrap(), 1), Err(Error::NoTransition { wire: 1 })));
        assert!(bank.delay(&"u--".parse().unwrap(), 0).is_err());
    }
}
