// SPDX-License-Identifier: Apache-2.0

//! Window models: three-wire, five-wire and the two boundary windows.

use std::f64::consts::PI;

use super::eigen::{buffered_mode, eigenmodes, modal_weights};
use super::{ModalExpansion, ModalTerm};
use crate::bus::{delta_of, BusSpec, Transition, TransitionPattern};
use crate::error::{Error, Result};

/// λ multipliers of the three modes kept by the five-wire model:
/// `p = 1`, `1 + 3λ/2`, `1 + 3λ`.
pub const FIVE_WIRE_EIGENVALUES: [f64; 3] = [0.0, 1.5, 3.0];

/// Builds an expansion from `(eigenvalue, weight)` pairs.
fn expansion(offset: f64, modes: &[(f64, f64)], spec: &BusSpec, buffered: bool) -> ModalExpansion {
    let terms = modes
        .iter()
        .filter(|(_, w)| w.abs() > 1e-12)
        .map(|&(p, weight)| {
            let (shape, time_constant) = if buffered { buffered_mode(spec, p) } else { (4.0 / PI, p * spec.tau()) };
            ModalTerm { amplitude: weight * shape, time_constant, weight }
        })
        .collect();
    ModalExpansion { offset, terms }.simplified()
}

fn require_width(pattern: &TransitionPattern, width: usize) -> Result<()> {
    if pattern.wire_count() != width {
        return Err(Error::InvalidPattern(format!("model needs {width} wires, pattern has {}", pattern.wire_count())));
    }
    Ok(())
}

fn require_transition(pattern: &TransitionPattern, observed: usize) -> Result<()> {
    if observed >= pattern.wire_count() {
        return Err(Error::WireOutOfRange { index: observed, count: pattern.wire_count() });
    }
    if pattern.transition(observed) == Transition::Steady {
        return Err(Error::NoTransition { wire: observed });
    }
    Ok(())
}

fn eigen_expansion(
    pattern: &TransitionPattern,
    observed: usize,
    lambda: f64,
    spec: &BusSpec,
    buffered: bool,
) -> ModalExpansion {
    let delta: Vec<f64> = delta_of(pattern).as_slice().iter().map(|&d| f64::from(d)).collect();
    let modes = eigenmodes(pattern.wire_count(), lambda);
    let weights = modal_weights(&modes, &delta, observed);
    let pairs: Vec<(f64, f64)> = modes.iter().map(|m| m.eigenvalue).zip(weights).collect();
    let offset = if pattern.final_state()[observed] { 1.0 } else { 0.0 };
    expansion(offset, &pairs, spec, buffered)
}

/// Waveform of wire `observed` from the eigenmodes of the whole window.
/// Works for any window width; the named models below are fixed widths.
pub fn window_waveform(
    pattern: &TransitionPattern,
    observed: usize,
    spec: &BusSpec,
    buffered: bool,
) -> Result<ModalExpansion> {
    require_transition(pattern, observed)?;
    Ok(eigen_expansion(pattern, observed, spec.lambda(), spec, buffered))
}

/// Middle wire of a three-wire bus. Modes at `p = 1` and `1 + 3λ`; the
/// `1 + λ` mode is odd and never reaches the middle wire.
pub fn three_wire_waveform(pattern: &TransitionPattern, spec: &BusSpec, buffered: bool) -> Result<ModalExpansion> {
    require_width(pattern, 3)?;
    window_waveform(pattern, 1, spec, buffered)
}

/// Middle wire of a five-wire bus, keeping modes at `p = 1`, `1 + 3λ/2` and
/// `1 + 3λ`.
///
/// Each wire contributes linearly. The outer pair acts through the `λ/2`
/// series coupling of the reduced `↓-↑-↓` pattern, the inner pair through
/// the three-wire window around the victim.
pub fn five_wire_waveform(pattern: &TransitionPattern, spec: &BusSpec, buffered: bool) -> Result<ModalExpansion> {
    require_width(pattern, 5)?;
    require_transition(pattern, 2)?;
    let d: Vec<f64> = delta_of(pattern).as_slice().iter().map(|&x| f64::from(x)).collect();
    let outer = d[0] + d[4];
    let inner = d[1] + d[3];
    let weights = [inner / 3.0 + outer / 6.0, 2.0 * d[2] / 3.0 - outer / 3.0, d[2] / 3.0 - inner / 3.0 + outer / 6.0];
    let lambda = spec.lambda();
    let pairs: Vec<(f64, f64)> = FIVE_WIRE_EIGENVALUES.iter().map(|k| 1.0 + k * lambda).zip(weights).collect();
    let offset = if pattern.final_state()[2] { 1.0 } else { 0.0 };
    Ok(expansion(offset, &pairs, spec, buffered))
}

/// Which boundary window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    /// Edge wire; window of three wires starting at the edge.
    Wire1,
    /// Wire next to the edge; window of four wires starting at the edge.
    Wire2,
}

impl Boundary {
    pub fn window_width(self) -> usize {
        match self {
            Boundary::Wire1 => 3,
            Boundary::Wire2 => 4,
        }
    }

    pub fn observed(self) -> usize {
        match self {
            Boundary::Wire1 => 0,
            Boundary::Wire2 => 1,
        }
    }
}

/// Boundary wire waveform. The pattern starts at the bus edge; mirror it
/// first to model the far edge.
pub fn boundary_waveform(
    pattern: &TransitionPattern,
    spec: &BusSpec,
    which: Boundary,
    buffered: bool,
) -> Result<ModalExpansion> {
    require_width(pattern, which.window_width())?;
    window_waveform(pattern, which.observed(), spec, buffered)
}

/// Reducible five-wire patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rtp {
    /// `↑↑↑↑↑`
    AllRise,
    /// `↓↓↓↓↓`
    AllFall,
    /// `↓-↑-↓`
    SplitRise,
    /// `↑-↓-↑`
    SplitFall,
}

impl Rtp {
    pub fn pattern(self) -> TransitionPattern {
        let text = match self {
            Rtp::AllRise => "uuuuu",
            Rtp::AllFall => "ddddd",
            Rtp::SplitRise => "d-u-d",
            Rtp::SplitFall => "u-d-u",
        };
        text.parse().expect("static pattern")
    }
}

/// Middle-wire waveform of a reducible pattern, computed on its equivalent
/// three-wire pattern. For the split patterns the quiet wires 2 and 4 are
/// treated as grounds, leaving two coupling capacitors in series: the
/// equivalent coupling factor is λ/2.
pub fn rtp_waveform(rtp: Rtp, spec: &BusSpec, buffered: bool) -> ModalExpansion {
    let (reduced, lambda) = match rtp {
        Rtp::AllRise => ("uuu", spec.lambda()),
        Rtp::AllFall => ("ddd", spec.lambda()),
        Rtp::SplitRise => ("dud", spec.lambda() / 2.0),
        Rtp::SplitFall => ("udu", spec.lambda() / 2.0),
    };
    let pattern: TransitionPattern = reduced.parse().expect("static pattern");
    eigen_expansion(&pattern, 1, lambda, spec, buffered)
}

/// Response of the five-wire middle wire to a lone transition on wire 2 or 4
/// (`wire` is zero-based: 1 or 3), computed on the three wires around the
/// victim.
pub fn stp_waveform(wire: usize, direction: Transition, spec: &BusSpec, buffered: bool) -> Result<ModalExpansion> {
    let local = match wire {
        1 => 0,
        3 => 2,
        _ => {
            return Err(Error::Unsupported(format!(
                "single transitions are modelled on wires 2 and 4, not {}",
                wire + 1
            )))
        }
    };
    let mut transitions = [Transition::Steady; 3];
    transitions[local] = direction;
    let pattern = TransitionPattern::from_transitions(&transitions)?;
    Ok(eigen_expansion(&pattern, 1, spec.lambda(), spec, buffered))
}
