// SPDX-License-Identifier: Apache-2.0

//! Closed-form victim waveforms and their 50% crossings.

mod eigen;
mod models;
mod profile;
mod table;

pub use eigen::{buffered_mode, eigenmodes, modal_weights, single_line_mode, BufferRatios, Eigenmode};
pub use models::{
    boundary_waveform, five_wire_waveform, rtp_waveform, stp_waveform, three_wire_waveform, window_waveform, Boundary,
    Rtp, FIVE_WIRE_EIGENVALUES,
};
pub use profile::{bus_delay, bus_delay_profile, model_delay, wire_delay, Evaluation, ProfileEvaluator};
pub use table::{table_delay, worst_pattern, WindowModel};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One decaying exponential of a [`ModalExpansion`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModalTerm {
    pub amplitude: f64,
    /// Seconds.
    pub time_constant: f64,
    /// Exact share of the victim swing carried by this mode, before the
    /// spatial shape factor (4/π or B) is applied.
    pub weight: f64,
}

/// `V(t) = offset − Σ amplitude_i·exp(−t / time_constant_i)`, normalized to
/// a unit supply.
///
/// Only the slowest spatial term of each mode is kept, so `value(0)` is not
/// the initial voltage; the untruncated series starts at
/// [`ModalExpansion::initial_value`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModalExpansion {
    pub offset: f64,
    pub terms: Vec<ModalTerm>,
}

impl ModalExpansion {
    pub fn new(offset: f64, terms: Vec<ModalTerm>) -> Result<Self> {
        if let Some(t) = terms.iter().find(|t| !(t.time_constant > 0.0 && t.time_constant.is_finite())) {
            return Err(Error::InvalidSpec(format!("time constant must be positive, got {}", t.time_constant)));
        }
        Ok(ModalExpansion { offset, terms }.simplified())
    }

    pub fn value(&self, t: f64) -> f64 {
        self.offset - self.terms.iter().map(|term| term.amplitude * (-t / term.time_constant).exp()).sum::<f64>()
    }

    /// Starting voltage of the full modal series, `offset − Σ weight_i`.
    pub fn initial_value(&self) -> f64 {
        self.offset - self.terms.iter().map(|t| t.weight).sum::<f64>()
    }

    pub fn final_value(&self) -> f64 {
        self.offset
    }

    pub fn max_time_constant(&self) -> f64 {
        self.terms.iter().map(|t| t.time_constant).fold(0.0, f64::max)
    }

    /// Term-wise sum; terms sharing a time constant are merged.
    pub fn add(&self, other: &ModalExpansion) -> ModalExpansion {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        ModalExpansion { offset: self.offset + other.offset, terms }.simplified()
    }

    /// Merges equal time constants, drops vanishing terms and sorts by time
    /// constant.
    pub fn simplified(mut self) -> ModalExpansion {
        self.terms.sort_by(|a, b| a.time_constant.total_cmp(&b.time_constant));
        let mut merged: Vec<ModalTerm> = Vec::with_capacity(self.terms.len());
        for term in self.terms {
            match merged.last_mut() {
                Some(last) if (last.time_constant - term.time_constant).abs() <= 1e-12 * term.time_constant => {
                    last.amplitude += term.amplitude;
                    last.weight += term.weight;
                }
                _ => merged.push(term),
            }
        }
        merged.retain(|t| t.amplitude.abs() > 1e-12 || t.weight.abs() > 1e-12);
        ModalExpansion { offset: self.offset, terms: merged }
    }

    /// `samples` evenly spaced points on `[0, t_end]`.
    pub fn sample(&self, t_end: f64, samples: usize) -> Vec<(f64, f64)> {
        let n = samples.max(2);
        (0..n)
            .map(|i| {
                let t = t_end * i as f64 / (n - 1) as f64;
                (t, self.value(t))
            })
            .collect()
    }
}

/// Largest root of `V(t) = threshold`.
///
/// The bracket `[0, 50·max τ]` is scanned on a geometric grid from the end
/// backwards; the first sign change found is refined by bisection to a
/// relative tolerance of 1e−9.
pub fn crossing_time(wave: &ModalExpansion, threshold: f64) -> Result<f64> {
    let no_crossing = Error::NoCrossing { threshold };
    let start = wave.initial_value();
    let end = wave.final_value();
    let between = (start < threshold && threshold < end) || (end < threshold && threshold < start);
    if !between || wave.terms.is_empty() {
        return Err(no_crossing);
    }
    let rising = end > start;
    // true when the waveform is on the final side of the threshold
    let past = |t: f64| {
        let v = wave.value(t);
        if rising {
            v > threshold
        } else {
            v < threshold
        }
    };

    let t_max = 50.0 * wave.max_time_constant();
    let t_min = wave.terms.iter().map(|t| t.time_constant).fold(f64::INFINITY, f64::min) * 1e-6;
    if !past(t_max) {
        return Err(no_crossing);
    }
    const GRID: usize = 4096;
    let ratio = (t_max / t_min).powf(1.0 / (GRID - 1) as f64);
    let mut hi = t_max;
    let mut lo = None;
    let mut t = t_max;
    for _ in 0..GRID {
        t /= ratio;
        if !past(t) {
            lo = Some(t);
            break;
        }
        hi = t;
    }
    let mut lo = match lo {
        Some(t) => t,
        None if !past(0.0) => 0.0,
        None => return Err(no_crossing),
    };
    while hi - lo > 1e-9 * hi {
        let mid = 0.5 * (lo + hi);
        if past(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
