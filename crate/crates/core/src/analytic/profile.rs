// SPDX-License-Identifier: Apache-2.0

//! Whole-bus delay profile: every wire is evaluated on a window around it.
//! Internal wires use the five-wire window, the two wires at each edge use
//! the boundary windows.

use serde::{Deserialize, Serialize};

use super::crossing_time;
use super::models::{boundary_waveform, five_wire_waveform, three_wire_waveform, window_waveform, Boundary};
use super::table::{table_delay, WindowModel};
use crate::bus::{classify_wire, delta_of, BusSpec, DelayEstimate, ModelTag, Transition, TransitionPattern};
use crate::error::{Error, Result};

/// How a window turns into a delay.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Evaluation {
    /// Root of the window's modal expansion.
    #[default]
    Crossing,
    /// Closed-form delay of the wire's class, whatever the actual pattern.
    Table,
}

impl std::str::FromStr for Evaluation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "crossing" => Ok(Evaluation::Crossing),
            "table" => Ok(Evaluation::Table),
            _ => Err(Error::InvalidScenario(format!("unknown evaluation {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProfileEvaluator {
    pub evaluation: Evaluation,
    pub buffered: bool,
}

impl Default for ProfileEvaluator {
    fn default() -> Self {
        ProfileEvaluator { evaluation: Evaluation::Crossing, buffered: true }
    }
}

/// Window around wire `k`: model, sub-pattern (mirrored at the far edge so
/// the observed wire sits where the model expects it).
fn window_for(pattern: &TransitionPattern, k: usize) -> Result<(Option<WindowModel>, TransitionPattern, usize)> {
    let m = pattern.wire_count();
    let edge = |model: WindowModel| -> Result<(Option<WindowModel>, TransitionPattern, usize)> {
        let w = model.width();
        if k < m / 2 {
            Ok((Some(model), pattern.window(0, w)?, model.observed()))
        } else {
            Ok((Some(model), pattern.window(m - w, w)?.mirrored(), model.observed()))
        }
    };
    match m {
        0..=2 => Ok((None, pattern.clone(), k)),
        3 if k == 1 => Ok((Some(WindowModel::ThreeWire), pattern.clone(), 1)),
        3 => edge(WindowModel::Boundary1),
        4 if k == 0 || k == 3 => edge(WindowModel::Boundary1),
        4 => edge(WindowModel::Boundary2),
        _ if k == 0 || k == m - 1 => edge(WindowModel::Boundary1),
        _ if k == 1 || k == m - 2 => edge(WindowModel::Boundary2),
        _ => Ok((Some(WindowModel::FiveWire), pattern.window(k - 2, 5)?, 2)),
    }
}

/// Delay of wire `k` alone. Quiet wires get zero delay and `0C`.
pub fn wire_delay(
    pattern: &TransitionPattern,
    k: usize,
    spec: &BusSpec,
    evaluator: ProfileEvaluator,
) -> Result<DelayEstimate> {
    let delta = delta_of(pattern);
    let class = classify_wire(&delta, k)?;
    let (model, window, observed) = window_for(pattern, k)?;
    let source = model.map(WindowModel::tag).unwrap_or(ModelTag::Boundary1);
    if pattern.transition(k) == Transition::Steady {
        return Ok(DelayEstimate { wire: k, value: 0.0, source, class });
    }
    let value = match (model, evaluator.evaluation) {
        (Some(model), Evaluation::Table) => table_delay(class, model, spec, evaluator.buffered)?,
        (Some(WindowModel::FiveWire), Evaluation::Crossing) => {
            crossing_time(&five_wire_waveform(&window, spec, evaluator.buffered)?, 0.5)?
        }
        (Some(WindowModel::ThreeWire), Evaluation::Crossing) => {
            crossing_time(&three_wire_waveform(&window, spec, evaluator.buffered)?, 0.5)?
        }
        _ => crossing_time(&window_waveform(&window, observed, spec, evaluator.buffered)?, 0.5)?,
    };
    Ok(DelayEstimate { wire: k, value, source, class })
}

/// Delay of wire `k` under one named window model. The window is cut
/// around `k` (mirrored at the right edge for the boundary models); wires
/// the model cannot sit on are `Unsupported`.
pub fn model_delay(
    pattern: &TransitionPattern,
    k: usize,
    model: WindowModel,
    spec: &BusSpec,
    evaluator: ProfileEvaluator,
) -> Result<DelayEstimate> {
    let m = pattern.wire_count();
    if k >= m {
        return Err(Error::WireOutOfRange { index: k, count: m });
    }
    if pattern.transition(k) == Transition::Steady {
        return Err(Error::NoTransition { wire: k });
    }
    let class = classify_wire(&delta_of(pattern), k)?;
    let w = model.width();
    let misplaced = || Error::Unsupported(format!("{model} window cannot observe wire {} of {m}", k + 1));
    if m < w {
        return Err(misplaced());
    }
    let window = match model {
        WindowModel::ThreeWire if k >= 1 && k + 2 <= m => pattern.window(k - 1, 3)?,
        WindowModel::FiveWire if k >= 2 && k + 3 <= m => pattern.window(k - 2, 5)?,
        WindowModel::Boundary1 | WindowModel::Boundary2 if k == model.observed() => pattern.window(0, w)?,
        WindowModel::Boundary1 | WindowModel::Boundary2 if k == m - 1 - model.observed() => {
            pattern.window(m - w, w)?.mirrored()
        }
        _ => return Err(misplaced()),
    };
    let buffered = evaluator.buffered;
    let value = match evaluator.evaluation {
        Evaluation::Table => table_delay(class, model, spec, buffered)?,
        Evaluation::Crossing => {
            let wave = match model {
                WindowModel::ThreeWire => three_wire_waveform(&window, spec, buffered)?,
                WindowModel::FiveWire => five_wire_waveform(&window, spec, buffered)?,
                WindowModel::Boundary1 => boundary_waveform(&window, spec, Boundary::Wire1, buffered)?,
                WindowModel::Boundary2 => boundary_waveform(&window, spec, Boundary::Wire2, buffered)?,
            };
            crossing_time(&wave, 0.5)?
        }
    };
    Ok(DelayEstimate { wire: k, value, source: model.tag(), class })
}

/// One estimate per transitioning wire, in wire order. The bus delay is the
/// maximum; see [`bus_delay`].
pub fn bus_delay_profile(
    pattern: &TransitionPattern,
    spec: &BusSpec,
    evaluator: ProfileEvaluator,
) -> Result<Vec<DelayEstimate>> {
    if pattern.wire_count() != spec.wire_count() {
        return Err(Error::InvalidPattern(format!(
            "pattern has {} wires, bus has {}",
            pattern.wire_count(),
            spec.wire_count()
        )));
    }
    (0..pattern.wire_count())
        .filter(|&k| pattern.transition(k) != Transition::Steady)
        .map(|k| wire_delay(pattern, k, spec, evaluator))
        .collect()
}

/// Largest estimate, if any wire transitions.
pub fn bus_delay(profile: &[DelayEstimate]) -> Option<&DelayEstimate> {
    profile.iter().max_by(|a, b| a.value.total_cmp(&b.value))
}
